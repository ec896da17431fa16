#include "orientarith/digits.hpp"

#include <doctest.h>

#include <random>

using namespace orient;

TEST_SUITE("digits") {

TEST_CASE("phi-adic expansions")
{
    // p = 2: a0 = 0, then 2 = 10 in base 2
    CHECK(phi_expand(2, 2) == PhiDigits{2, 0, {0, 1}});
    CHECK(phi_expand(4, 3) == PhiDigits{3, 0, {2}});
    CHECK(phi_expand(4, 5) == PhiDigits{5, 0, {1}});
    CHECK(phi_expand(2, 5) == PhiDigits{5, 2, {}});
    CHECK(phi_expand(0, 7) == PhiDigits{7, 0, {}});
    CHECK(phi_expand(7, 3).a0 == 1);
    CHECK(phi_expand(7, 3).digit(1) == 0);
    CHECK(phi_expand(7, 3).digit(2) == 1);
    CHECK(phi_expand(7, 3).digit(9) == 0);
    CHECK_THROWS_AS(phi_expand(5, 4), std::invalid_argument);
}

TEST_CASE("expansion round trip and digit ranges")
{
    for (Prime p : {2u, 3u, 5u, 7u, 11u})
        for (std::uint64_t n = 0; n < 3000; ++n) {
            PhiDigits d = phi_expand(n, p);
            CHECK(d.value() == n);
            CHECK(d.a0 <= (p == 2 ? 0u : p - 2));
            for (unsigned a : d.higher)
                CHECK(a < p);
            if (!d.higher.empty())
                CHECK(d.higher.back() != 0);
        }
}

TEST_CASE("phi of prime powers")
{
    CHECK(euler_phi_prime_power(2, 1) == 1);
    CHECK(euler_phi_prime_power(2, 4) == 8);
    CHECK(euler_phi_prime_power(3, 2) == 6);
    CHECK(euler_phi_prime_power(7, 3) == 294);
}

TEST_CASE("binomial digits are the base-p digits")
{
    CHECK(binom_digit_mod_p(10, 1, 3) == 0);  // 10 = 101_3
    CHECK(binom_digit_mod_p(10, 2, 3) == 1);
    CHECK(binom_digit_mod_p(0, 0, 5) == 0);
    for (Prime p : {2u, 3u, 5u, 7u})
        for (std::uint64_t n = 0; n < 700; ++n) {
            std::uint64_t q = n;
            for (unsigned j = 0; j < 5; ++j, q /= p) {
                CHECK(binom_digit_mod_p(n, j, p) == q % p);
                Int pj = 1;
                for (unsigned i = 0; i < j; ++i)
                    pj *= static_cast<unsigned long>(p);
                Int direct = binomial(n, pj.get_ui()) % static_cast<unsigned long>(p);
                CHECK(binom_digit_mod_p(n, j, p) == direct.get_ui());
            }
        }
}

TEST_CASE("Lucas congruence")
{
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 10) == 0);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 400; ++i) {
        Prime p = std::vector<Prime>{2, 3, 5, 7, 11, 13}[rng() % 6];
        std::uint64_t n = rng() % 2000, m = rng() % 2000;
        CHECK(lucas_check(n, m, p));
    }
}

}
