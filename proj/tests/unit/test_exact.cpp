#include "orientarith/exact.hpp"
#include "orientarith/padic_linear.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace orient;

TEST_SUITE("exact") {

TEST_CASE("integers and fractions parse exactly")
{
    CHECK(parse_int("-123456789012345678901234567890") == Int("-123456789012345678901234567890"));
    CHECK(parse_int("+7") == 7);
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("12") == Rational(12));
    CHECK(to_string(parse_rational("-691/2730")) == "-691/2730");
    CHECK_THROWS_AS(parse_int(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_int("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_int("1e3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
}

TEST_CASE("Bernoulli numbers")
{
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(1) == Rational(-1, 2));  // again, now from the cache
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK(bernoulli(20) == Rational(-174611, 330));
    for (unsigned k = 3; k < 40; k += 2)
        CHECK(bernoulli(k) == 0);
    CHECK(bernoulli(12).get_num() % 691 == 0);
}

TEST_CASE("Bernoulli numbers agree with the binomial recurrence")
{
    // sum_{j<=m} C(m+1, j) B_j = 0, solved for B_m
    const unsigned top = 80;
    std::vector<Rational> b = {Rational(1)};
    for (unsigned m = 1; m <= top; ++m) {
        Rational s = 0;
        Int c = 1;  // C(m+1, j)
        for (unsigned j = 0; j < m; ++j) {
            s += c * b[j];
            c = c * (m + 1 - j) / (j + 1);
        }
        b.push_back(-s / Rational(m + 1));
        CHECK(bernoulli(m) == b[m]);
    }
}

TEST_CASE("von Staudt-Clausen")
{
    for (unsigned n = 2; n <= 60; n += 2)
        CHECK(von_staudt_check(n));
    CHECK_THROWS_AS(von_staudt_check(3), std::invalid_argument);
    CHECK_THROWS_AS(von_staudt_check(0), std::invalid_argument);
}

TEST_CASE("p-adic valuations")
{
    CHECK(padic_valuation(Int(0), 2).is_infinite());
    CHECK(padic_valuation(Rational(0), 3).is_infinite());
    CHECK(padic_valuation(Int(40320), 2) == Valuation(7));
    CHECK(padic_valuation(Rational(1, 240), 2) == Valuation(-4));
    CHECK(padic_valuation(Rational(9, 8), 3) == Valuation(2));
    CHECK(Valuation::infinity() > Valuation(1000000));
    CHECK(Valuation::infinity() >= 5);
    CHECK(Valuation(3) < 4);
    CHECK_THROWS_AS(Valuation::infinity().value(), std::logic_error);

    // nu_p(B_n / n) = -r at n = phi(p^r)
    for (Prime p : {2u, 3u, 5u})
        for (unsigned r : {2u, 3u}) {
            unsigned n = static_cast<unsigned>((p - 1) * ipow(Int(static_cast<unsigned long>(p)), r - 1).get_ui());
            CHECK(padic_valuation(Rational(bernoulli(n) / n), p) == Valuation(-static_cast<long>(r)));
        }

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Int a = static_cast<long>(rng() % 100000) + 1, b = static_cast<long>(rng() % 100000) + 1;
        for (Prime p : {2u, 3u, 7u})
            CHECK(padic_valuation(Int(a * b), p).value() ==
                  padic_valuation(a, p).value() + padic_valuation(b, p).value());
    }
}

TEST_CASE("prime sets")
{
    CHECK(primes_S(1) == std::vector<Prime>{2, 3});
    CHECK(primes_S(2) == std::vector<Prime>{2, 3, 5});
    CHECK(primes_S(3) == std::vector<Prime>{2, 3, 5, 7});
    CHECK(primes_S(6) == std::vector<Prime>{2, 3, 5, 7, 11, 13});
    CHECK_THROWS_AS(primes_S(0), std::invalid_argument);
    CHECK(prime_divisors(5760) == std::vector<Prime>{2, 3, 5});
    CHECK(is_prime(691));
    CHECK_FALSE(is_prime(1));
}

TEST_CASE("CRT")
{
    CHECK(crt_solve({{8, 7}, {3, 1}}) == 7);
    CHECK(crt_solve({{128, 127}, {9, 7}, {5, 1}}) == 511);
    CHECK(crt_solve({}) == 0);
    CHECK(crt_solve({{1, 5}}) == 0);
    CHECK_THROWS_AS(crt_solve({{6, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(crt_solve({{4, 1}, {8, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(crt_solve({{0, 1}}), std::invalid_argument);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Int x = static_cast<long>(rng() % 1000000);
        Int m1 = 1024, m2 = 729, m3 = 125;
        Int y = crt_solve({{m1, x % m1}, {m2, x % m2}, {m3, x % m3}});
        CHECK(y == x % (m1 * m2 * m3));
    }
}

TEST_CASE("p-adic residues")
{
    PadicResidue a = PadicResidue::from_rational(Rational(1, 3), 2, 5);
    CHECK((a * Int(3)).residue() == 1);
    CHECK(a.is_unit());
    CHECK_THROWS_AS(PadicResidue::from_rational(Rational(1, 2), 2, 5), std::domain_error);
    CHECK_THROWS_AS(PadicResidue(2, 0, 1), std::invalid_argument);

    PadicResidue b(3, 4, 18);
    CHECK(b.valuation() == 2u);
    CHECK(b.shift_down(2) == PadicResidue(3, 2, 2));
    CHECK_THROWS_AS(b.shift_down(3), std::domain_error);
    CHECK_THROWS_AS(b.inverse(), std::domain_error);
    CHECK(PadicResidue(3, 4, 0).valuation() == std::nullopt);
    CHECK(PadicResidue(5, 2, -1).residue() == 24);
    CHECK(PadicResidue(5, 2, 24).balanced() == -1);

    PadicResidue c(2, 3, 5), d(2, 6, 13);
    CHECK((c + d).precision() == 3);
    CHECK((c + d).residue() == 2);
    CHECK(c.congruent(d));
    CHECK_THROWS_AS(c + PadicResidue(3, 3, 1), std::invalid_argument);
    CHECK(PadicResidue(7, 3, 10).inverse() * PadicResidue(7, 3, 10) == PadicResidue(7, 3, 1));
}

TEST_CASE("profinite residues")
{
    auto r = ProfiniteResidue::from_integer(-1, {{2, 3}, {3, 2}});
    CHECK(r.at(2).residue() == 7);
    CHECK(r.at(3).residue() == 8);
    CHECK_FALSE(r.contains(5));
    CHECK_THROWS_AS(r.at(5), std::out_of_range);
}

TEST_CASE("local linear systems")
{
    // 2u = 6 mod 8 pins u mod 4
    LocalLinearSystem s(2, 1);
    s.add({2}, 6, 3);
    auto sol = s.solve();
    REQUIRE(sol);
    CHECK(sol->precision[0] == 2);
    CHECK((2 * sol->values[0] - 6) % 8 == 0);

    LocalLinearSystem bad(3, 1);
    bad.add({3}, 1, 2);
    CHECK_FALSE(bad.solve());

    LocalLinearSystem empty(5, 2);
    auto z = empty.solve();
    REQUIRE(z);
    CHECK(z->precision == std::vector<unsigned>{0, 0});

    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        // random consistent systems: the returned values solve every row
        Prime p = std::vector<Prime>{2, 3, 5}[rng() % 3];
        std::vector<Int> u = {Int(static_cast<long>(rng() % 1000)), Int(static_cast<long>(rng() % 1000))};
        LocalLinearSystem sys(p, 2);
        std::vector<std::tuple<std::vector<Int>, Int, unsigned>> rows;
        for (int r = 0; r < 3; ++r) {
            std::vector<Int> a = {Int(static_cast<long>(rng() % 50)), Int(static_cast<long>(rng() % 50))};
            unsigned e = 1 + rng() % 4;
            Int rhs = a[0] * u[0] + a[1] * u[1];
            sys.add(a, rhs, e);
            rows.emplace_back(a, rhs, e);
        }
        auto s2 = sys.solve();
        REQUIRE(s2);
        for (auto& [a, rhs, e] : rows) {
            Int pe = ipow(Int(static_cast<unsigned long>(p)), e);
            CHECK((a[0] * s2->values[0] + a[1] * s2->values[1] - rhs) % pe == 0);
        }
        // forced digits agree with the planted solution
        for (int j = 0; j < 2; ++j) {
            Int pj = ipow(Int(static_cast<unsigned long>(p)), s2->precision[j]);
            CHECK((s2->values[j] - u[j]) % pj == 0);
        }
    }
}

}
