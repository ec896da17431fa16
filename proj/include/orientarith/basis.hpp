#pragma once

#include "orientarith/digits.hpp"
#include "orientarith/exact.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace orient {

// Dense polynomial over Q, constant term first, no trailing zeros.
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<Rational> coeffs);
    static PolyQ constant(const Rational& c);
    static PolyQ monomial(unsigned degree, const Rational& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational leading() const;
    bool is_even() const;  // only even powers occur
    Rational eval(const Rational& x) const;

    friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator*(const Rational& s, const PolyQ& a);
    friend bool operator==(const PolyQ&, const PolyQ&) = default;

    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> c_;
};

PolyQ e_poly(Prime p, unsigned j);
PolyQ big_e_poly(Prime p, std::uint64_t n);

// C_p(k) = prod (p^i)!^{a_i} over the phi-adic digits of 2k, and its p-adic valuation.
Int leading_modulus(Prime p, unsigned k);
unsigned modulus_valuation(Prime p, unsigned k);

struct BasisData {
    Prime p;
    unsigned m;
    unsigned k;
    Int C;
    std::vector<Int> c;  // c[j] = c^{(k,p)}_{2j}, j = 0..k-1; multiplies X^{2(m+j)}

    unsigned valuation() const { return modulus_valuation(p, k); }
};

// C * E_{2k} * X^{2m} = X^{2(k+m)} - sum_j c[j] X^{2(m+j)}; throws std::logic_error if a c is not integral.
BasisData basis_data(Prime p, unsigned m, unsigned k);

// e_j(x) mod p evaluated from the factored form; throws std::domain_error on negative valuation.
unsigned e_value_mod_p(Prime p, unsigned j, const Int& x);
unsigned big_e_value_mod_p(Prime p, std::uint64_t n, const Int& x);

struct RankReport {
    unsigned rank;
    unsigned expected;
    bool full() const { return rank == expected; }
};

// Reductions of x^{k_shift} E_j on (Z/p^n)^*, or on (Z/p^n)^*/{+-1} for even j when even_only.
RankReport basis_rank(Prime p, unsigned n, unsigned k_shift, bool even_only);
bool basis_rank_check(Prime p, unsigned n, unsigned k_shift, bool even_only);

}  // namespace orient
