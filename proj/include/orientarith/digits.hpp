#pragma once

#include "orientarith/exact.hpp"

#include <cstdint>
#include <vector>

namespace orient {

// n = a0 + sum_{i>=1} a_i * phi(p^i) with a0 in [0, p-2] and a_i in [0, p-1].
struct PhiDigits {
    Prime p = 2;
    unsigned a0 = 0;
    std::vector<unsigned> higher;  // a_1, a_2, ...; trailing zeros trimmed

    unsigned digit(size_t i) const;  // digit(0) == a0
    std::uint64_t value() const;
    friend bool operator==(const PhiDigits&, const PhiDigits&) = default;
};

std::uint64_t euler_phi_prime_power(Prime p, unsigned i);  // phi(p^i), i >= 1

PhiDigits phi_expand(std::uint64_t n, Prime p);

Int binomial(std::uint64_t n, std::uint64_t k);
// binom(n, p^j) mod p, which is the j-th base-p digit of n.
unsigned binom_digit_mod_p(std::uint64_t n, unsigned j, Prime p);
// Lucas' congruence for the lowest digit split; used as a test oracle.
bool lucas_check(std::uint64_t n, std::uint64_t m, Prime p);

}  // namespace orient
