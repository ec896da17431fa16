#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orient {

using Int = mpz_class;
using Rational = mpq_class;
using Prime = std::uint64_t;

// Exact parsing; accepts "a", "-a", "a/b". Throws std::invalid_argument.
Int parse_int(std::string_view text);
Rational parse_rational(std::string_view text);
std::string to_string(const Int& x);
std::string to_string(const Rational& x);

Rational make_rational(const Int& num, const Int& den);
bool is_integer(const Rational& x);
Int ipow(const Int& base, unsigned long e);
Int factorial(unsigned long n);

// p-adic valuation with a distinguished +infinity for zero.
class Valuation {
public:
    constexpr Valuation() = default;
    constexpr explicit Valuation(long v) : v_(v), inf_(false) {}
    static constexpr Valuation infinity() { Valuation v; v.inf_ = true; return v; }

    bool is_infinite() const { return inf_; }
    long value() const;  // throws std::logic_error on infinity

    friend bool operator==(const Valuation&, const Valuation&) = default;
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
    friend bool operator>=(const Valuation& a, long r) { return a.inf_ || a.v_ >= r; }
    friend bool operator<(const Valuation& a, long r) { return !(a >= r); }

    std::string to_string() const;

private:
    long v_ = 0;
    bool inf_ = false;
};

Valuation padic_valuation(const Int& x, Prime p);
Valuation padic_valuation(const Rational& x, Prime p);
bool is_p_integral(const Rational& x, Prime p);

bool is_prime(std::uint64_t n);
std::vector<Prime> primes_up_to(std::uint64_t bound);
// {p : p - 1 <= 2k}, ascending.
std::vector<Prime> primes_S(unsigned k);
std::vector<Prime> prime_divisors(std::uint64_t n);

// B_k with B_1 = -1/2. Memoized; safe to call concurrently.
Rational bernoulli(unsigned k);
// B_n + sum_{(p-1)|n} 1/p is an integer. n must be even and >= 2.
bool von_staudt_check(unsigned n);

struct Congruence {
    Int modulus;  // a prime power
    Int value;
};

// Least non-negative solution. Moduli must be powers of pairwise distinct primes.
Int crt_solve(std::span<const Congruence> residues);
Int crt_solve(std::initializer_list<Congruence> residues);

// An element of Z_p known modulo p^N.
class PadicResidue {
public:
    PadicResidue(Prime p, unsigned precision, const Int& value);
    // Throws std::domain_error if x is not p-integral.
    static PadicResidue from_rational(const Rational& x, Prime p, unsigned precision);

    Prime prime() const { return p_; }
    unsigned precision() const { return n_; }
    const Int& residue() const { return r_; }
    Int modulus() const;

    bool is_zero() const { return r_ == 0; }
    bool is_unit() const;
    // Exact valuation when the residue is nonzero, nullopt when it is zero mod p^N.
    std::optional<unsigned> valuation() const;

    PadicResidue reduce(unsigned precision) const;
    PadicResidue inverse() const;  // requires a unit
    // Division by p^v; requires the residue divisible by p^v, loses v digits.
    PadicResidue shift_down(unsigned v) const;
    bool congruent(const PadicResidue& other) const;  // at the common precision
    Int balanced() const;  // representative in (-p^N/2, p^N/2]

    PadicResidue operator-() const;
    friend PadicResidue operator+(const PadicResidue& a, const PadicResidue& b);
    friend PadicResidue operator-(const PadicResidue& a, const PadicResidue& b);
    friend PadicResidue operator*(const PadicResidue& a, const PadicResidue& b);
    friend PadicResidue operator*(const PadicResidue& a, const Int& b);
    friend bool operator==(const PadicResidue& a, const PadicResidue& b);

    std::string to_string() const;  // "r mod p^N"

private:
    Prime p_;
    unsigned n_;
    Int r_;
};

// A finite family of p-adic residues: an element of the profinite integers to finite precision.
class ProfiniteResidue {
public:
    ProfiniteResidue() = default;
    static ProfiniteResidue from_integer(const Int& x, const std::map<Prime, unsigned>& precisions);

    void set(const PadicResidue& r);
    bool contains(Prime p) const { return entries_.count(p) != 0; }
    const PadicResidue& at(Prime p) const;
    const std::map<Prime, PadicResidue>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

private:
    std::map<Prime, PadicResidue> entries_;
};

}  // namespace orient
