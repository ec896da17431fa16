#include "orientarith/exact.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace orient {

Int parse_int(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty integer");
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size() || !std::all_of(s.begin() + start, s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw std::invalid_argument("malformed integer: " + s);
    if (s[0] == '+')
        s.erase(0, 1);
    return Int(s, 10);
}

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        throw std::invalid_argument("sign belongs on the numerator: " + std::string(text));
    return make_rational(num, parse_int(den_text));
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

Rational make_rational(const Int& num, const Int& den)
{
    if (den == 0)
        throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Int ipow(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int factorial(unsigned long n)
{
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

long Valuation::value() const
{
    if (inf_)
        throw std::logic_error("valuation of zero is infinite");
    return v_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b)
{
    if (a.inf_ || b.inf_)
        return a.inf_ == b.inf_ ? std::strong_ordering::equal
                                : (a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less);
    return a.v_ <=> b.v_;
}

std::string Valuation::to_string() const { return inf_ ? "inf" : std::to_string(v_); }

Valuation padic_valuation(const Int& x, Prime p)
{
    if (x == 0)
        return Valuation::infinity();
    Int pp(static_cast<unsigned long>(p));
    Int rest;
    return Valuation(static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t())));
}

Valuation padic_valuation(const Rational& x, Prime p)
{
    if (x == 0)
        return Valuation::infinity();
    return Valuation(padic_valuation(x.get_num(), p).value() - padic_valuation(x.get_den(), p).value());
}

bool is_p_integral(const Rational& x, Prime p) { return mpz_divisible_ui_p(x.get_den_mpz_t(), p) == 0; }

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<Prime> primes_up_to(std::uint64_t bound)
{
    std::vector<Prime> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

std::vector<Prime> primes_S(unsigned k)
{
    if (k == 0)
        throw std::invalid_argument("primes_S needs k >= 1");
    return primes_up_to(2ull * k + 1);
}

std::vector<Prime> prime_divisors(std::uint64_t n)
{
    std::vector<Prime> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

namespace {

// Akiyama-Tanigawa. The working row is kept so the table extends incrementally.
struct BernoulliCache {
    std::shared_mutex mutex;
    std::vector<Rational> row;
    std::vector<Rational> values;
};

BernoulliCache& bernoulli_cache()
{
    static BernoulliCache cache;
    return cache;
}

}  // namespace

Rational bernoulli(unsigned k)
{
    auto& cache = bernoulli_cache();
    {
        std::shared_lock lock(cache.mutex);
        if (k < cache.values.size())
            return cache.values[k];
    }
    std::unique_lock lock(cache.mutex);
    while (cache.values.size() <= k) {
        unsigned m = static_cast<unsigned>(cache.values.size());
        cache.row.emplace_back(1, m + 1);
        for (unsigned j = m; j >= 1; --j)
            cache.row[j - 1] = j * (cache.row[j - 1] - cache.row[j]);
        // the recurrence produces B_1 = +1/2
        cache.values.push_back(m == 1 ? Rational(-cache.row[0]) : cache.row[0]);
    }
    return cache.values[k];
}

bool von_staudt_check(unsigned n)
{
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("von Staudt-Clausen needs an even n >= 2");
    Rational s = bernoulli(n);
    for (Prime p : primes_up_to(n + 1))
        if (n % (p - 1) == 0)
            s += Rational(1, p);
    return is_integer(s);
}

namespace {

// The prime q with n = q^e, or 0 when n is not a prime power.
Prime prime_power_base(const Int& n)
{
    for (unsigned long d = 2;; ++d) {
        if (Int(d) * d > n)
            return n.fits_ulong_p() ? n.get_ui() : 0;  // n itself is prime
        if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            Int rest;
            Int dd(d);
            mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), dd.get_mpz_t());
            return rest == 1 ? d : 0;
        }
    }
}

}  // namespace

Int crt_solve(std::span<const Congruence> residues)
{
    std::vector<Prime> seen;
    Int x = 0, mod = 1;
    for (const auto& c : residues) {
        if (c.modulus < 1)
            throw std::invalid_argument("CRT modulus must be positive");
        if (c.modulus > 1) {
            Prime q = prime_power_base(c.modulus);
            if (q == 0)
                throw std::invalid_argument("CRT modulus is not a prime power: " + c.modulus.get_str());
            if (std::find(seen.begin(), seen.end(), q) != seen.end())
                throw std::invalid_argument("CRT moduli share a prime");
            seen.push_back(q);
        }
        // x + mod * t = value (mod modulus)
        Int inv;
        mpz_invert(inv.get_mpz_t(), Int(mod % c.modulus).get_mpz_t(), c.modulus.get_mpz_t());
        Int t = ((c.value - x) % c.modulus) * inv % c.modulus;
        if (t < 0)
            t += c.modulus;
        if (c.modulus == 1)
            t = 0;
        x += mod * t;
        mod *= c.modulus;
    }
    return x;
}

Int crt_solve(std::initializer_list<Congruence> residues)
{
    return crt_solve(std::span<const Congruence>(residues.begin(), residues.size()));
}

PadicResidue::PadicResidue(Prime p, unsigned precision, const Int& value) : p_(p), n_(precision)
{
    if (precision == 0)
        throw std::invalid_argument("p-adic precision must be >= 1");
    Int m = modulus();
    r_ = value % m;
    if (r_ < 0)
        r_ += m;
}

PadicResidue PadicResidue::from_rational(const Rational& x, Prime p, unsigned precision)
{
    if (!is_p_integral(x, p))
        throw std::domain_error("rational " + x.get_str() + " is not " + std::to_string(p) + "-integral");
    Int m = ipow(Int(static_cast<unsigned long>(p)), precision);
    Int inv;
    mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), m.get_mpz_t());
    return PadicResidue(p, precision, Int(x.get_num()) * inv);
}

Int PadicResidue::modulus() const { return ipow(Int(static_cast<unsigned long>(p_)), n_); }

bool PadicResidue::is_unit() const { return mpz_divisible_ui_p(r_.get_mpz_t(), p_) == 0; }

std::optional<unsigned> PadicResidue::valuation() const
{
    if (r_ == 0)
        return std::nullopt;
    return static_cast<unsigned>(padic_valuation(r_, p_).value());
}

PadicResidue PadicResidue::reduce(unsigned precision) const
{
    if (precision > n_)
        throw std::invalid_argument("cannot raise p-adic precision by reduction");
    return PadicResidue(p_, precision, r_);
}

PadicResidue PadicResidue::inverse() const
{
    if (!is_unit())
        throw std::domain_error("p-adic residue is not a unit");
    Int inv, m = modulus();
    mpz_invert(inv.get_mpz_t(), r_.get_mpz_t(), m.get_mpz_t());
    return PadicResidue(p_, n_, inv);
}

PadicResidue PadicResidue::shift_down(unsigned v) const
{
    if (v >= n_)
        throw std::domain_error("shift exhausts the p-adic precision");
    Int pv = ipow(Int(static_cast<unsigned long>(p_)), v);
    if (r_ % pv != 0)
        throw std::domain_error("p-adic residue is not divisible by p^" + std::to_string(v));
    return PadicResidue(p_, n_ - v, r_ / pv);
}

bool PadicResidue::congruent(const PadicResidue& other) const
{
    if (p_ != other.p_)
        throw std::invalid_argument("p-adic residues at different primes");
    unsigned n = std::min(n_, other.n_);
    return reduce(n).r_ == other.reduce(n).r_;
}

Int PadicResidue::balanced() const
{
    Int m = modulus();
    return 2 * r_ > m ? Int(r_ - m) : r_;
}

namespace {

unsigned common_precision(const PadicResidue& a, const PadicResidue& b)
{
    if (a.prime() != b.prime())
        throw std::invalid_argument("p-adic residues at different primes");
    return std::min(a.precision(), b.precision());
}

}  // namespace

PadicResidue PadicResidue::operator-() const { return PadicResidue(p_, n_, -r_); }

PadicResidue operator+(const PadicResidue& a, const PadicResidue& b)
{
    return PadicResidue(a.p_, common_precision(a, b), a.r_ + b.r_);
}

PadicResidue operator-(const PadicResidue& a, const PadicResidue& b)
{
    return PadicResidue(a.p_, common_precision(a, b), a.r_ - b.r_);
}

PadicResidue operator*(const PadicResidue& a, const PadicResidue& b)
{
    return PadicResidue(a.p_, common_precision(a, b), a.r_ * b.r_);
}

PadicResidue operator*(const PadicResidue& a, const Int& b) { return PadicResidue(a.p_, a.n_, a.r_ * b); }

bool operator==(const PadicResidue& a, const PadicResidue& b)
{
    return a.p_ == b.p_ && a.n_ == b.n_ && a.r_ == b.r_;
}

std::string PadicResidue::to_string() const
{
    return r_.get_str() + " mod " + std::to_string(p_) + "^" + std::to_string(n_);
}

ProfiniteResidue ProfiniteResidue::from_integer(const Int& x, const std::map<Prime, unsigned>& precisions)
{
    ProfiniteResidue out;
    for (auto [p, n] : precisions)
        out.set(PadicResidue(p, n, x));
    return out;
}

void ProfiniteResidue::set(const PadicResidue& r)
{
    entries_.insert_or_assign(r.prime(), r);
}

const PadicResidue& ProfiniteResidue::at(Prime p) const
{
    auto it = entries_.find(p);
    if (it == entries_.end())
        throw std::out_of_range("no profinite component at p = " + std::to_string(p));
    return it->second;
}

}  // namespace orient
