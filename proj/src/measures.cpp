#include "orientarith/measures.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace orient {

namespace {

std::uint64_t upow(Prime p, unsigned n)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < n; ++i)
        r *= p;
    return r;
}

Int powmod(const Int& b, const Int& e, const Int& m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int mod_pos(const Int& x, const Int& m)
{
    Int r = x % m;
    if (r < 0)
        r += m;
    return r;
}

Int big(Prime p) { return Int(static_cast<unsigned long>(p)); }

}  // namespace

QuotientGroup::QuotientGroup(Prime p, unsigned level) : p_(p), n_(level)
{
    if (!is_prime(p) || level == 0)
        throw std::invalid_argument("quotient group needs a prime and a level >= 1");
    pn_ = upow(p, level);
    if (pn_ > (1ull << 26))
        throw std::invalid_argument("quotient group too large to enumerate");
    index_.assign(pn_, -1);
    for (std::uint64_t x = 1; x < pn_; ++x) {
        if (x % p == 0 || pn_ - x < x)
            continue;
        index_[x] = static_cast<std::int64_t>(reps_.size());
        index_[pn_ - x] = static_cast<std::int64_t>(reps_.size());
        reps_.push_back(x);
    }
}

std::shared_ptr<const QuotientGroup> QuotientGroup::get(Prime p, unsigned level)
{
    static std::shared_mutex mutex;
    static std::map<std::pair<Prime, unsigned>, std::shared_ptr<const QuotientGroup>> cache;
    {
        std::shared_lock lock(mutex);
        auto it = cache.find({p, level});
        if (it != cache.end())
            return it->second;
    }
    auto g = std::make_shared<const QuotientGroup>(p, level);
    std::unique_lock lock(mutex);
    return cache.emplace(std::make_pair(p, level), g).first->second;
}

size_t QuotientGroup::index_of(const Int& x) const
{
    Int r = mod_pos(x, Int(static_cast<unsigned long>(pn_)));
    auto i = index_[r.get_ui()];
    if (i < 0)
        throw std::domain_error(x.get_str() + " is not a unit mod " + std::to_string(p_));
    return static_cast<size_t>(i);
}

bool generates_quotient(const Int& c, Prime p, unsigned level)
{
    if (mpz_divisible_ui_p(c.get_mpz_t(), p))
        return false;
    std::uint64_t pn = upow(p, level);
    std::uint64_t h = p == 2 ? (level <= 2 ? 1 : pn / 4) : (pn / p) * (p - 1) / 2;
    Int mod(static_cast<unsigned long>(pn));
    for (Prime q : prime_divisors(h)) {
        Int t = powmod(c, Int(static_cast<unsigned long>(h / q)), mod);
        if (t == 1 || t == mod - 1)
            return false;
    }
    return true;
}

Int default_generator(Prime p)
{
    if (p == 2)
        return 3;
    for (unsigned long g = 2;; ++g)
        if (generates_quotient(Int(g), p, 2))
            return Int(g);
}

CosetMeasure::CosetMeasure(Prime p, unsigned level, unsigned precision)
    : group_(QuotientGroup::get(p, level)), n_(precision)
{
    if (precision == 0)
        throw std::invalid_argument("coefficient precision must be >= 1");
    values_.assign(group_->size(), Int(0));
    mod_ = ipow(big(p), precision);
}

CosetMeasure CosetMeasure::dirac(Prime p, unsigned level, unsigned precision, const Int& x)
{
    CosetMeasure mu(p, level, precision);
    mu.set(x, 1);
    return mu;
}

PadicResidue CosetMeasure::value(const Int& x) const
{
    return PadicResidue(prime(), n_, values_[group_->index_of(x)]);
}

void CosetMeasure::set(const Int& x, const Int& v) { values_[group_->index_of(x)] = mod_pos(v, mod_); }

void CosetMeasure::add(const Int& x, const Int& v)
{
    auto& slot = values_[group_->index_of(x)];
    slot = mod_pos(slot + v, mod_);
}

PadicResidue CosetMeasure::total_mass() const
{
    Int s = 0;
    for (const auto& v : values_)
        s += v;
    return PadicResidue(prime(), n_, s);
}

CosetMeasure CosetMeasure::pushforward(unsigned lower_level) const
{
    if (lower_level == 0 || lower_level > level())
        throw std::invalid_argument("pushforward target level out of range");
    CosetMeasure out(prime(), lower_level, n_);
    for (size_t i = 0; i < values_.size(); ++i)
        out.add(Int(static_cast<unsigned long>(group_->rep(i))), values_[i]);
    return out;
}

CosetMeasure CosetMeasure::multiply_by(const Int& c) const
{
    CosetMeasure out(prime(), level(), n_);
    for (size_t i = 0; i < values_.size(); ++i)
        out.add(c * static_cast<unsigned long>(group_->rep(i)), values_[i]);
    return out;
}

namespace {

void require_compatible(const CosetMeasure& a, const CosetMeasure& b)
{
    if (a.prime() != b.prime() || a.level() != b.level() || a.precision() != b.precision())
        throw std::invalid_argument("measures differ in prime, level or precision");
}

}  // namespace

CosetMeasure operator+(const CosetMeasure& a, const CosetMeasure& b)
{
    require_compatible(a, b);
    CosetMeasure out = a;
    for (size_t i = 0; i < out.values_.size(); ++i)
        out.values_[i] = mod_pos(a.values_[i] + b.values_[i], a.mod_);
    return out;
}

CosetMeasure operator-(const CosetMeasure& a, const CosetMeasure& b)
{
    require_compatible(a, b);
    CosetMeasure out = a;
    for (size_t i = 0; i < out.values_.size(); ++i)
        out.values_[i] = mod_pos(a.values_[i] - b.values_[i], a.mod_);
    return out;
}

CosetMeasure operator*(const Int& s, const CosetMeasure& a)
{
    CosetMeasure out = a;
    for (auto& v : out.values_)
        v = mod_pos(s * v, a.mod_);
    return out;
}

bool operator==(const CosetMeasure& a, const CosetMeasure& b)
{
    return a.prime() == b.prime() && a.level() == b.level() && a.n_ == b.n_ && a.values_ == b.values_;
}

std::vector<PadicResidue> moments_of(const CosetMeasure& mu, std::span<const unsigned> weights)
{
    unsigned prec = std::min(mu.precision(), mu.level());
    Int mod = ipow(big(mu.prime()), prec);
    std::vector<PadicResidue> out;
    for (unsigned w : weights) {
        if (w % 2 != 0)
            throw std::invalid_argument("moments are taken at even weights");
        Int s = 0;
        for (size_t i = 0; i < mu.values().size(); ++i)
            if (mu.values()[i] != 0)
                s += mu.values()[i] * powmod(Int(static_cast<unsigned long>(mu.group().rep(i))), Int(w), mod);
        out.emplace_back(mu.prime(), prec, s);
    }
    return out;
}

EvenSeq<PadicResidue> moment_sequence(const CosetMeasure& mu, unsigned m, unsigned K)
{
    std::vector<unsigned> weights;
    for (unsigned k = m; k <= K; ++k)
        weights.push_back(2 * k);
    return EvenSeq<PadicResidue>(m, moments_of(mu, weights));
}

CosetMeasure convolve(const CosetMeasure& a, const CosetMeasure& b)
{
    require_compatible(a, b);
    CosetMeasure out(a.prime(), a.level(), a.precision());
    const auto& g = a.group();
    for (size_t i = 0; i < g.size(); ++i) {
        if (a.values()[i] == 0)
            continue;
        for (size_t j = 0; j < g.size(); ++j) {
            if (b.values()[j] == 0)
                continue;
            Int xy = Int(static_cast<unsigned long>(g.rep(i))) * static_cast<unsigned long>(g.rep(j));
            out.add(xy, a.values()[i] * b.values()[j]);
        }
    }
    return out;
}

CosetMeasure apply_id_minus_c(const CosetMeasure& mu, const Int& c) { return mu - mu.multiply_by(c); }

CosetMeasure regularize(const CosetMeasure& mu_c, const Int& c)
{
    if (!mu_c.total_mass().is_zero())
        throw std::domain_error("not in the image of id - c_*: total mass is nonzero");
    if (!generates_quotient(c, mu_c.prime(), mu_c.level()))
        throw std::invalid_argument("c does not generate the finite quotient");
    const auto& g = mu_c.group();
    Int mod(static_cast<unsigned long>(g.modulus()));
    // mu(c^i) = mu(1) + sum_{j=1..i} mu_c(c^j)
    std::vector<Int> partial(g.size());
    std::vector<size_t> orbit(g.size());
    Int x = 1;
    Int s = 0;
    for (size_t i = 0; i < g.size(); ++i) {
        orbit[i] = g.index_of(x);
        if (i > 0)
            s += mu_c.value(x).balanced();
        partial[i] = s;
        x = x * c % mod;
    }
    Int lowest = *std::min_element(partial.begin(), partial.end());
    CosetMeasure mu(mu_c.prime(), mu_c.level(), mu_c.precision());
    for (size_t i = 0; i < g.size(); ++i)
        mu.set(Int(static_cast<unsigned long>(g.rep(orbit[i]))), partial[i] - lowest);
    return mu;
}

CoeffMeasure coefficients_from_moments(const EvenSeq<PadicResidue>& b, Prime p, unsigned m)
{
    CoeffMeasure out{p, m, {}};
    if (b.empty())
        return out;
    for (unsigned k = m; k <= b.last(); ++k) {
        if (k == m) {
            out.alphas.push_back(b.at(m));
            continue;
        }
        BasisData bd = basis_data(p, m, k - m);
        PadicResidue r = b.at(k);
        for (unsigned j = 0; j < k - m; ++j)
            r = r - b.at(m + j) * bd.c[j];
        unsigned v = bd.valuation();
        auto rv = r.valuation();
        if (rv && *rv < v)
            throw std::domain_error("moments admit no measure: congruence fails at weight " + std::to_string(2 * k));
        if (v >= r.precision())
            throw std::domain_error("precision exhausted at weight " + std::to_string(2 * k));
        Int unit_part = bd.C / ipow(big(p), v);
        out.alphas.push_back(r.shift_down(v) * PadicResidue(p, r.precision() - v, unit_part).inverse().residue());
    }
    return out;
}

EvenSeq<PadicResidue> moments_from_coefficients(const CoeffMeasure& alpha)
{
    EvenSeq<PadicResidue> b;
    std::vector<PadicResidue> entries;
    for (size_t i = 0; i < alpha.alphas.size(); ++i) {
        unsigned k = alpha.m + static_cast<unsigned>(i);
        if (i == 0) {
            entries.push_back(alpha.alphas[0]);
            continue;
        }
        BasisData bd = basis_data(alpha.p, alpha.m, k - alpha.m);
        const PadicResidue& a = alpha.alphas[i];
        PadicResidue r(alpha.p, a.precision() + bd.valuation(), a.residue() * bd.C);
        for (unsigned j = 0; j < k - alpha.m; ++j)
            r = r + entries[j] * bd.c[j];
        entries.push_back(r);
    }
    return EvenSeq<PadicResidue>(alpha.m, std::move(entries));
}

CoeffMeasure coefficients_of(const CosetMeasure& mu, unsigned m, unsigned L)
{
    CoeffMeasure out{mu.prime(), m, {}};
    for (unsigned i = 0; i < L; ++i) {
        PolyQ f = PolyQ::monomial(2 * m) * big_e_poly(mu.prime(), 2ull * i);
        Rational s = 0;
        for (size_t z = 0; z < mu.values().size(); ++z)
            if (mu.values()[z] != 0)
                s += Rational(mu.values()[z]) * f.eval(Rational(Int(static_cast<unsigned long>(mu.group().rep(z)))));
        out.alphas.push_back(PadicResidue::from_rational(s, mu.prime(), mu.precision()));
    }
    return out;
}

namespace {

CheckReport bp_report(Prime p, unsigned K)
{
    CheckReport r = pass_report("Bp", 2 * K);
    r.prime = p;
    return r;
}

void require_range(unsigned first, unsigned last, unsigned m, unsigned K)
{
    if (m == 0)
        throw std::invalid_argument("shift m must be >= 1");
    if (first > m || last < K)
        throw std::invalid_argument("sequence does not cover half-weights " + std::to_string(m) + ".." +
                                    std::to_string(K));
}

}  // namespace

CheckReport check_Bp(const EvenSeq<Rational>& seq, Prime p, unsigned m, unsigned K)
{
    CheckReport rep = bp_report(p, K);
    if (K < m)
        return rep;
    require_range(seq.first(), seq.last(), m, K);
    for (unsigned k = m; k <= K; ++k) {
        if (!is_p_integral(seq.at(k), p)) {
            rep.status = CheckStatus::not_integral;
            rep.first_failure_weight = 2 * k;
            rep.required_valuation = 0;
            rep.observed_valuation = padic_valuation(seq.at(k), p);
            rep.detail = "entry " + seq.at(k).get_str() + " is not " + std::to_string(p) + "-integral";
            return rep;
        }
    }
    for (unsigned k = m + 1; k <= K; ++k) {
        unsigned v = modulus_valuation(p, k - m);
        if (v == 0)
            continue;
        BasisData bd = basis_data(p, m, k - m);
        Rational r = seq.at(k);
        for (unsigned j = 0; j < k - m; ++j)
            r -= Rational(bd.c[j]) * seq.at(m + j);
        Valuation obs = padic_valuation(r, p);
        if (obs < static_cast<long>(v)) {
            rep.status = CheckStatus::fail;
            rep.first_failure_weight = 2 * k;
            rep.required_valuation = v;
            rep.observed_valuation = obs;
            rep.detail = "congruence modulo " + std::to_string(p) + "^" + std::to_string(v) + " fails";
            return rep;
        }
    }
    return rep;
}

CheckReport check_Bp(const EvenSeq<PadicResidue>& seq, Prime p, unsigned m, unsigned K)
{
    CheckReport rep = bp_report(p, K);
    if (K < m)
        return rep;
    require_range(seq.first(), seq.last(), m, K);
    for (const auto& e : seq.entries())
        if (e.prime() != p)
            throw std::invalid_argument("residue at the wrong prime");
    std::optional<CheckReport> short_of_precision;
    for (unsigned k = m + 1; k <= K; ++k) {
        unsigned v = modulus_valuation(p, k - m);
        if (v == 0)
            continue;
        BasisData bd = basis_data(p, m, k - m);
        PadicResidue r = seq.at(k);
        for (unsigned j = 0; j < k - m; ++j)
            r = r - seq.at(m + j) * bd.c[j];
        auto obs = r.valuation();
        if (obs && *obs < v) {
            rep.status = CheckStatus::fail;
            rep.first_failure_weight = 2 * k;
            rep.required_valuation = v;
            rep.observed_valuation = Valuation(*obs);
            rep.detail = "congruence modulo " + std::to_string(p) + "^" + std::to_string(v) + " fails";
            return rep;
        }
        if (r.precision() < v && !short_of_precision) {
            CheckReport s = rep;
            s.status = CheckStatus::insufficient_precision;
            s.first_failure_weight = 2 * k;
            s.required_valuation = v;
            s.observed_valuation = Valuation(r.precision());
            s.detail = "residues known only modulo " + std::to_string(p) + "^" + std::to_string(r.precision());
            short_of_precision = s;
        }
    }
    return short_of_precision ? *short_of_precision : rep;
}

namespace {

CheckReport tilde_result(CheckReport r, const std::string& c)
{
    r.check = "Bp-tilde";
    if (!r.passed())
        r.detail += " (twist c = " + c + ")";
    return r;
}

}  // namespace

CheckReport check_Bp_tilde(const EvenSeq<Rational>& seq, Prime p, unsigned m, unsigned K,
                           std::span<const Int> c_values)
{
    for (const auto& c : c_values)
        if (mpz_divisible_ui_p(c.get_mpz_t(), p))
            throw std::invalid_argument("twist " + c.get_str() + " is not a unit at " + std::to_string(p));
    CheckReport out = pass_report("Bp-tilde", 2 * K);
    out.prime = p;
    for (const auto& c : c_values) {
        auto twisted = seq.map([&](unsigned k, const Rational& b) { return Rational((1 - ipow(c, 2 * k)) * b); });
        CheckReport r = check_Bp(twisted, p, m, K);
        if (!r.passed())
            return tilde_result(r, c.get_str());
    }
    return out;
}

CheckReport check_Bp_tilde(const EvenSeq<Rational>& seq, Prime p, unsigned m, unsigned K,
                           std::span<const PadicResidue> c_values)
{
    for (const auto& c : c_values)
        if (c.prime() != p || !c.is_unit())
            throw std::invalid_argument("twist " + c.to_string() + " is not a unit at " + std::to_string(p));
    CheckReport out = pass_report("Bp-tilde", 2 * K);
    out.prime = p;
    for (const auto& c : c_values) {
        std::vector<PadicResidue> twisted;
        for (unsigned k = seq.first(); k <= seq.last(); ++k) {
            Rational t = (1 - ipow(c.residue(), 2 * k)) * seq.at(k);
            if (!is_p_integral(t, p)) {
                CheckReport r = out;
                r.status = CheckStatus::not_integral;
                r.first_failure_weight = 2 * k;
                r.required_valuation = 0;
                r.observed_valuation = padic_valuation(t, p);
                r.detail = "twisted entry is not " + std::to_string(p) + "-integral (twist c = " + c.to_string() + ")";
                return r;
            }
            twisted.push_back(PadicResidue::from_rational(t, p, c.precision()));
        }
        CheckReport r = check_Bp(EvenSeq<PadicResidue>(seq.first(), std::move(twisted)), p, m, K);
        if (!r.passed())
            return tilde_result(r, c.to_string());
    }
    return out;
}

Rational zeta_moment(Prime p, const Int& c, unsigned k)
{
    if (k == 0)
        throw std::invalid_argument("zeta moments start at k = 1");
    Int euler = 1 - ipow(big(p), 2 * k - 1);
    Int twist = 1 - ipow(c, 2 * k);
    return -Rational(euler * twist) * bernoulli(2 * k) / Rational(4 * k);
}

EvenSeq<PadicResidue> zeta_moments(Prime p, const Int& c, unsigned m, unsigned K, unsigned precision)
{
    if (mpz_divisible_ui_p(c.get_mpz_t(), p))
        throw std::invalid_argument("zeta measure needs a unit c");
    unsigned first = std::max(m, 1u);
    std::vector<PadicResidue> out;
    for (unsigned k = first; k <= K; ++k) {
        Rational z = zeta_moment(p, c, k);
        if (!is_p_integral(z, p))
            throw std::logic_error("zeta moment at weight " + std::to_string(2 * k) + " is not p-integral");
        out.push_back(PadicResidue::from_rational(z, p, precision));
    }
    return EvenSeq<PadicResidue>(first, std::move(out));
}

ZetaQuotient divide_by_zeta(const EvenSeq<PadicResidue>& seq, Prime p, const Int& c, unsigned m, unsigned K)
{
    ZetaQuotient out;
    unsigned first = std::max(m, 1u);
    std::vector<PadicResidue> q;
    for (unsigned k = first; k <= K; ++k) {
        Rational z = zeta_moment(p, c, k);
        if (z == 0)
            throw std::invalid_argument("zeta moment vanishes at weight " + std::to_string(2 * k));
        unsigned vz = static_cast<unsigned>(padic_valuation(z, p).value());
        const PadicResidue& s = seq.at(k);
        auto vs = s.valuation();
        if (vs && *vs < vz) {
            out.status = ZetaQuotient::Status::not_in_ideal;
            out.weight = 2 * k;
            out.deficit = static_cast<long>(vz) - static_cast<long>(*vs);
            return out;
        }
        if (s.precision() <= vz) {
            out.status = ZetaQuotient::Status::insufficient_precision;
            out.weight = 2 * k;
            out.deficit = static_cast<long>(vz) - static_cast<long>(s.precision()) + 1;
            return out;
        }
        Rational unit = z / Rational(ipow(big(p), vz));
        PadicResidue shifted = s.shift_down(vz);
        q.push_back(shifted * PadicResidue::from_rational(unit, p, shifted.precision()).inverse());
    }
    out.quotient = EvenSeq<PadicResidue>(first, std::move(q));
    return out;
}

}  // namespace orient
