#include "orientarith/digits.hpp"

#include <stdexcept>

namespace orient {

unsigned PhiDigits::digit(size_t i) const
{
    if (i == 0)
        return a0;
    return i <= higher.size() ? higher[i - 1] : 0;
}

std::uint64_t euler_phi_prime_power(Prime p, unsigned i)
{
    if (i == 0)
        throw std::invalid_argument("phi(p^i) needs i >= 1");
    std::uint64_t v = p - 1;
    for (unsigned k = 1; k < i; ++k)
        v *= p;
    return v;
}

std::uint64_t PhiDigits::value() const
{
    std::uint64_t n = a0;
    std::uint64_t phi = p - 1;
    for (unsigned a : higher) {
        n += a * phi;
        phi *= p;
    }
    return n;
}

PhiDigits phi_expand(std::uint64_t n, Prime p)
{
    if (!is_prime(p))
        throw std::invalid_argument("phi-adic expansion needs a prime base");
    PhiDigits d;
    d.p = p;
    d.a0 = static_cast<unsigned>(n % (p - 1));
    for (std::uint64_t rest = (n - d.a0) / (p - 1); rest > 0; rest /= p)
        d.higher.push_back(static_cast<unsigned>(rest % p));
    return d;
}

Int binomial(std::uint64_t n, std::uint64_t k)
{
    Int r;
    if (k > n)
        return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

unsigned binom_digit_mod_p(std::uint64_t n, unsigned j, Prime p)
{
    std::uint64_t pj = 1;
    for (unsigned i = 0; i < j; ++i) {
        if (pj > n / p)
            return 0;  // p^j > n
        pj *= p;
    }
    Int b = binomial(n, pj);
    return static_cast<unsigned>(mpz_fdiv_ui(b.get_mpz_t(), p));
}

bool lucas_check(std::uint64_t n, std::uint64_t m, Prime p)
{
    Int lhs = binomial(n, m) % p;
    Int rhs = binomial(n % p, m % p) * binomial(n / p, m / p) % p;
    return lhs == rhs;
}

}  // namespace orient
