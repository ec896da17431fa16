#include "orientarith/basis.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace orient {

PolyQ::PolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

PolyQ PolyQ::constant(const Rational& c) { return PolyQ({c}); }

PolyQ PolyQ::monomial(unsigned degree, const Rational& c)
{
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return PolyQ(std::move(v));
}

void PolyQ::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Rational PolyQ::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

bool PolyQ::is_even() const
{
    for (size_t i = 1; i < c_.size(); i += 2)
        if (c_[i] != 0)
            return false;
    return true;
}

Rational PolyQ::eval(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

PolyQ operator+(const PolyQ& a, const PolyQ& b)
{
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = a.coeff(i) + b.coeff(i);
    return PolyQ(std::move(v));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) { return a + Rational(-1) * b; }

PolyQ operator*(const PolyQ& a, const PolyQ& b)
{
    if (a.is_zero() || b.is_zero())
        return PolyQ();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    }
    return PolyQ(std::move(v));
}

PolyQ operator*(const Rational& s, const PolyQ& a)
{
    std::vector<Rational> v = a.c_;
    for (auto& x : v)
        x *= s;
    return PolyQ(std::move(v));
}

std::string PolyQ::to_string() const
{
    if (c_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0)
            continue;
        if (!first)
            out << (c_[i] < 0 ? " - " : " + ");
        else if (c_[i] < 0)
            out << "-";
        Rational a = abs(c_[i]);
        if (a != 1 || i == 0)
            out << a.get_str() << (i > 0 ? "*" : "");
        if (i > 0)
            out << "X" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return out.str();
}

namespace {

std::uint64_t upow(Prime p, unsigned j)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < j; ++i)
        r *= p;
    return r;
}

// The a with X^2 - a^2 a factor of the numerator of e_j (j >= 1, not the p = 2, j = 1 case).
std::vector<std::uint64_t> e_roots(Prime p, unsigned j)
{
    std::uint64_t half = upow(p, j) / 2;
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 1; a <= half; ++a)
        if (a % p != 0)
            out.push_back(a);
    return out;
}

template <class Key>
class PolyCache {
public:
    template <class Make>
    PolyQ get(const Key& key, Make make)
    {
        {
            std::shared_lock lock(mutex_);
            auto it = map_.find(key);
            if (it != map_.end())
                return it->second;
        }
        PolyQ value = make();
        std::unique_lock lock(mutex_);
        return map_.emplace(key, std::move(value)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<Key, PolyQ> map_;
};

}  // namespace

PolyQ e_poly(Prime p, unsigned j)
{
    static PolyCache<std::pair<Prime, unsigned>> cache;
    return cache.get({p, j}, [&] {
        if (!is_prime(p))
            throw std::invalid_argument("e_j needs a prime");
        if (j == 0)
            return PolyQ::monomial(1);
        if (p == 2 && j == 1)
            return PolyQ({Rational(1, 2), Rational(1, 2)});
        PolyQ num = PolyQ::constant(1);
        for (auto a : e_roots(p, j)) {
            Int a2 = Int(static_cast<unsigned long>(a)) * a;
            num = num * PolyQ({Rational(-a2), Rational(0), Rational(1)});
        }
        return Rational(1) / Rational(factorial(upow(p, j))) * num;
    });
}

namespace {

PolyQ power(const PolyQ& f, unsigned e)
{
    PolyQ r = PolyQ::constant(1);
    for (unsigned i = 0; i < e; ++i)
        r = r * f;
    return r;
}

}  // namespace

PolyQ big_e_poly(Prime p, std::uint64_t n)
{
    static PolyCache<std::pair<Prime, std::uint64_t>> cache;
    return cache.get({p, n}, [&] {
        PhiDigits d = phi_expand(n, p);
        PolyQ r = power(e_poly(p, 0), d.a0);
        for (size_t i = 0; i < d.higher.size(); ++i)
            r = r * power(e_poly(p, static_cast<unsigned>(i + 1)), d.higher[i]);
        return r;
    });
}

Int leading_modulus(Prime p, unsigned k)
{
    PhiDigits d = phi_expand(2ull * k, p);
    Int C = 1;
    for (size_t i = 0; i < d.higher.size(); ++i)
        C *= ipow(factorial(upow(p, static_cast<unsigned>(i + 1))), d.higher[i]);
    return C;
}

unsigned modulus_valuation(Prime p, unsigned k)
{
    // nu_p((p^i)!) = (p^i - 1)/(p - 1)
    PhiDigits d = phi_expand(2ull * k, p);
    unsigned v = 0;
    for (size_t i = 0; i < d.higher.size(); ++i)
        v += d.higher[i] * static_cast<unsigned>((upow(p, static_cast<unsigned>(i + 1)) - 1) / (p - 1));
    return v;
}

BasisData basis_data(Prime p, unsigned m, unsigned k)
{
    if (k == 0)
        throw std::invalid_argument("basis_data needs k >= 1");
    struct Entry {
        Int C;
        std::vector<Int> c;
    };
    static std::shared_mutex mutex;
    static std::map<std::pair<Prime, unsigned>, Entry> cache;

    BasisData out{p, m, k, 0, {}};
    {
        std::shared_lock lock(mutex);
        auto it = cache.find({p, k});
        if (it != cache.end()) {
            out.C = it->second.C;
            out.c = it->second.c;
            return out;
        }
    }
    Int C = leading_modulus(p, k);
    PolyQ scaled = Rational(C) * big_e_poly(p, 2ull * k);
    if (scaled.degree() != static_cast<int>(2 * k) || scaled.leading() != 1)
        throw std::logic_error("C_p(k) E_2k is not monic of degree 2k");
    std::vector<Int> c(k);
    for (unsigned j = 0; j < k; ++j) {
        if (scaled.coeff(2 * j + 1) != 0)
            throw std::logic_error("E_2k has an odd coefficient");
        Rational cj = -scaled.coeff(2 * j);
        if (!is_integer(cj))
            throw std::logic_error("non-integral basis coefficient c_" + std::to_string(2 * j) +
                                   " at p = " + std::to_string(p) + ", k = " + std::to_string(k));
        c[j] = cj.get_num();
    }
    std::unique_lock lock(mutex);
    auto& e = cache.emplace(std::make_pair(p, k), Entry{C, c}).first->second;
    out.C = e.C;
    out.c = e.c;
    return out;
}

namespace {

// Tracks a rational's p-adic valuation and its unit part mod p.
struct ValUnit {
    long v = 0;
    std::uint64_t unit = 1;
    bool zero = false;

    void mul(const Int& f, Prime p)
    {
        if (f == 0) {
            zero = true;
            return;
        }
        Int rest;
        Int pp(static_cast<unsigned long>(p));
        v += static_cast<long>(mpz_remove(rest.get_mpz_t(), f.get_mpz_t(), pp.get_mpz_t()));
        unit = unit * mpz_fdiv_ui(rest.get_mpz_t(), p) % p;
    }
};

std::uint64_t inv_mod_p(std::uint64_t a, Prime p)
{
    std::uint64_t r = 1, e = p - 2;
    for (a %= p; e; e >>= 1, a = a * a % p)
        if (e & 1)
            r = r * a % p;
    return r;
}

}  // namespace

unsigned e_value_mod_p(Prime p, unsigned j, const Int& x)
{
    ValUnit num, den;
    if (j == 0) {
        num.mul(x, p);
    } else if (p == 2 && j == 1) {
        num.mul(x + 1, p);
        den.mul(2, p);
    } else {
        for (auto a : e_roots(p, j)) {
            Int a2 = Int(static_cast<unsigned long>(a)) * a;
            num.mul(x * x - a2, p);
        }
        den.mul(factorial(upow(p, j)), p);
    }
    if (num.zero)
        return 0;
    long v = num.v - den.v;
    if (v < 0)
        throw std::domain_error("e_" + std::to_string(j) + "(" + x.get_str() + ") is not " +
                                std::to_string(p) + "-integral");
    if (v > 0)
        return 0;
    if (p == 2)
        return 1;
    return static_cast<unsigned>(num.unit * inv_mod_p(den.unit, p) % p);
}

unsigned big_e_value_mod_p(Prime p, std::uint64_t n, const Int& x)
{
    PhiDigits d = phi_expand(n, p);
    std::uint64_t r = 1;
    for (size_t i = 0; i <= d.higher.size(); ++i) {
        unsigned a = d.digit(i);
        if (a == 0)
            continue;
        std::uint64_t e = e_value_mod_p(p, static_cast<unsigned>(i), x);
        for (unsigned t = 0; t < a; ++t)
            r = r * e % p;
    }
    return static_cast<unsigned>(r);
}

namespace {

unsigned rank_mod_p(std::vector<std::vector<std::uint64_t>> M, Prime p)
{
    unsigned rank = 0;
    size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && M[piv][col] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(M[piv], M[rank]);
        std::uint64_t inv = inv_mod_p(M[rank][col], p);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || M[r][col] == 0)
                continue;
            std::uint64_t f = M[r][col] * inv % p;
            for (size_t c = col; c < cols; ++c)
                M[r][c] = (M[r][c] + (p - f) * M[rank][c]) % p;
        }
        ++rank;
    }
    return rank;
}

}  // namespace

RankReport basis_rank(Prime p, unsigned n, unsigned k_shift, bool even_only)
{
    if (!is_prime(p) || n == 0)
        throw std::invalid_argument("basis_rank needs a prime and a level >= 1");
    if (k_shift % 2 != 0)
        throw std::invalid_argument("shift must be even");
    std::uint64_t pn = upow(p, n);
    std::uint64_t phi = euler_phi_prime_power(p, n);

    std::vector<std::uint64_t> points;
    for (std::uint64_t x = 1; x < pn; ++x) {
        if (x % p == 0)
            continue;
        if (even_only && pn - x < x)
            continue;  // represent the class of +-x by min(x, p^n - x)
        points.push_back(x);
    }
    std::vector<std::uint64_t> funcs;
    for (std::uint64_t j = 0; j < phi; ++j)
        if (!even_only || j % 2 == 0)
            funcs.push_back(j);

    std::vector<std::vector<std::uint64_t>> M(funcs.size(), std::vector<std::uint64_t>(points.size()));
    for (size_t c = 0; c < points.size(); ++c) {
        Int x(static_cast<unsigned long>(points[c]));
        std::uint64_t shift = 1;
        for (unsigned i = 0; i < k_shift; ++i)
            shift = shift * (points[c] % p) % p;
        std::vector<std::uint64_t> ev(n);
        for (unsigned i = 0; i < n; ++i)
            ev[i] = e_value_mod_p(p, i, x);
        for (size_t r = 0; r < funcs.size(); ++r) {
            PhiDigits d = phi_expand(funcs[r], p);
            std::uint64_t v = shift;
            for (size_t i = 0; i <= d.higher.size(); ++i)
                for (unsigned t = 0; t < d.digit(i); ++t)
                    v = v * ev[i] % p;
            M[r][c] = v;
        }
    }
    unsigned expected = static_cast<unsigned>(points.size());
    if (funcs.size() != points.size())
        throw std::logic_error("function and point counts differ");
    return {rank_mod_p(std::move(M), p), expected};
}

bool basis_rank_check(Prime p, unsigned n, unsigned k_shift, bool even_only)
{
    return basis_rank(p, n, k_shift, even_only).full();
}

}  // namespace orient
