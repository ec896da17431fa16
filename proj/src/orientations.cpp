#include "orientarith/orientations.hpp"

#include "orientarith/basis.hpp"
#include "orientarith/padic_linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace orient {

namespace {

Int big(Prime p) { return Int(static_cast<unsigned long>(p)); }

Int euler_factor(Prime p, unsigned k) { return 1 - ipow(big(p), 2 * k - 1); }

Int mod_pos(const Int& x, const Int& m)
{
    Int r = x % m;
    if (r < 0)
        r += m;
    return r;
}

// Smallest prime dividing the denominator of x.
Prime denominator_prime(const Rational& x)
{
    Int d = x.get_den();
    for (unsigned long q = 2;; ++q) {
        if (mpz_divisible_ui_p(d.get_mpz_t(), q))
            return q;
        if (Int(q) * q > d)
            return d.get_ui();
    }
}

CheckReport integrality_failure(std::string check, unsigned K, unsigned weight, const Rational& x, std::string detail)
{
    CheckReport r = pass_report(std::move(check), 2 * K);
    r.status = CheckStatus::not_integral;
    r.prime = denominator_prime(x);
    r.first_failure_weight = weight;
    r.required_valuation = 0;
    r.observed_valuation = padic_valuation(x, *r.prime);
    r.detail = std::move(detail);
    return r;
}

}  // namespace

unsigned start_half_weight(Variant v) { return v == Variant::spin ? 1 : 2; }

std::string to_string(Variant v) { return v == Variant::spin ? "spin" : "string"; }

Variant parse_variant(const std::string& s)
{
    if (s == "spin")
        return Variant::spin;
    if (s == "string")
        return Variant::string;
    throw std::invalid_argument("unknown variant: " + s);
}

QExpansion operator*(const Int& s, const QExpansion& f)
{
    QExpansion out = f;
    out.a0 *= s;
    for (auto& x : out.a)
        x *= s;
    return out;
}

Rational eisenstein_constant(unsigned weight)
{
    if (weight == 0)
        throw std::invalid_argument("weight must be positive");
    return -bernoulli(weight) / Rational(2 * weight);
}

QExpansion eisenstein(unsigned weight, unsigned T)
{
    if (weight < 4 || weight % 2 != 0)
        throw std::invalid_argument("Eisenstein series need an even weight >= 4");
    QExpansion f{weight, eisenstein_constant(weight), std::vector<Int>(T, Int(0))};
    for (unsigned d = 1; d <= T; ++d) {
        Int dk = ipow(Int(d), weight - 1);
        for (unsigned n = d; n <= T; n += d)
            f.a[n - 1] += dk;
    }
    return f;
}

QExpansion hecke_Tp(const QExpansion& f, Prime p, unsigned T)
{
    if (f.terms() < p * T)
        throw std::invalid_argument("Hecke operator T(" + std::to_string(p) + ") needs " + std::to_string(p * T) +
                                    " input terms");
    Int pk = ipow(big(p), f.weight - 1);
    QExpansion g{f.weight, f.a0 * Rational(1 + pk), std::vector<Int>(T)};
    for (unsigned n = 1; n <= T; ++n) {
        g.a[n - 1] = f.a[n * p - 1];
        if (n % p == 0)
            g.a[n - 1] += pk * f.a[n / p - 1];
    }
    return g;
}

EvenSeq<Rational> torsor_coordinate(const KOSeq& seq)
{
    return seq.b.map([](unsigned k, const Rational& b) { return Rational(b - eisenstein_constant(2 * k)); });
}

CheckReport ko_check(const KOSeq& seq, unsigned K, std::span<const Int> c_samples)
{
    unsigned m = start_half_weight(seq.variant);
    std::string name = "ko-" + to_string(seq.variant);
    if (seq.b.empty() || seq.b.first() != m || seq.b.last() < K)
        throw std::invalid_argument(name + " sequence must cover half-weights " + std::to_string(m) + ".." +
                                    std::to_string(K));
    EvenSeq<Rational> t = torsor_coordinate(seq);
    std::vector<Int> ints;
    for (unsigned k = m; k <= K; ++k) {
        if (!is_integer(t.at(k)))
            return integrality_failure(name, K, 2 * k, t.at(k), "b_k + B_k/2k is not an integer");
        ints.push_back(t.at(k).get_num());
    }
    CheckReport r = mom_euler_check(EvenSeq<Int>(m, ints), m, K);
    r.check = name;
    if (!r.passed() || c_samples.empty() || K <= m)
        return r;
    for (Prime p : primes_S(K - m)) {
        std::vector<Int> cs;
        for (const auto& c : c_samples)
            if (!mpz_divisible_ui_p(c.get_mpz_t(), p))
                cs.push_back(c);
        if (cs.empty())
            continue;
        auto stripped = seq.b.slice(m, K).map([&](unsigned k, const Rational& b) { return Rational(euler_factor(p, k) * b); });
        CheckReport direct = check_Bp_tilde(stripped, p, m, K, cs);
        if (!direct.passed()) {
            direct.check = name;
            direct.detail = "twisted measure check disagrees with the torsor check: " + direct.detail;
            return direct;
        }
    }
    return r;
}

KOSeq ko_from_lattice(Variant v, const std::vector<Int>& l, unsigned K)
{
    unsigned m = start_half_weight(v);
    EvenSeq<Int> t = phi_apply(m, l, K);
    return {v, t.map([](unsigned k, const Int& x) { return Rational(Rational(x) + eisenstein_constant(2 * k)); })};
}

std::vector<Int> ko_to_lattice(const KOSeq& seq, unsigned K)
{
    unsigned m = start_half_weight(seq.variant);
    EvenSeq<Rational> t = torsor_coordinate(seq);
    std::vector<Int> ints;
    for (unsigned k = m; k <= K; ++k) {
        if (!is_integer(t.at(k)))
            throw MembershipError("ko", k - m, "torsor coordinate at weight " + std::to_string(2 * k) +
                                                   " is not an integer");
        ints.push_back(t.at(k).get_num());
    }
    return phi_invert(m, EvenSeq<Int>(m, ints), K);
}

CheckReport tmf_check(const TmfSeq& seq, unsigned K, unsigned q_terms)
{
    const auto& r = seq.multipliers;
    if (r.empty() || r.first() != 2 || r.last() < K)
        throw std::invalid_argument("tmf multipliers must cover half-weights 2.." + std::to_string(K));
    std::vector<Int> q;
    for (unsigned k = 2; k <= K; ++k) {
        Rational qk = r.at(k) - 1;
        if (!is_integer(qk))
            return integrality_failure("tmf", K, 2 * k, qk, "q-coefficient r_k - 1 is not an integer");
        Rational constant = eisenstein_constant(2 * k) * qk;
        if (!is_integer(constant))
            return integrality_failure("tmf", K, 2 * k, constant, "-(B_k/2k) q_k is not an integer");
        q.push_back(qk.get_num());
    }
    Mom0Result mom0 = mom0_check(EvenSeq<Int>(2, q), 2, K);
    if (!mom0.report.passed()) {
        mom0.report.check = "tmf";
        return mom0.report;
    }
    if (q_terms > 0) {
        for (unsigned k = 2; k <= K; ++k) {
            Int rk = r.at(k).get_num();
            for (Prime p : {2u, 3u, 5u}) {
                QExpansion g = rk * eisenstein(2 * k, p * q_terms);
                QExpansion lhs = hecke_Tp(g, p, q_terms);
                QExpansion rhs = (1 + ipow(big(p), 2 * k - 1)) * (rk * eisenstein(2 * k, q_terms));
                if (lhs != rhs) {
                    CheckReport fail = pass_report("tmf", 2 * K);
                    fail.status = CheckStatus::fail;
                    fail.prime = p;
                    fail.first_failure_weight = 2 * k;
                    fail.detail = "Hecke eigenvalue identity fails on the truncation";
                    return fail;
                }
            }
        }
    }
    return pass_report("tmf", 2 * K);
}

TmfSeq psi2_apply(const EvenSeq<Int>& q, unsigned K)
{
    if (q.empty() || q.first() != 2 || q.last() < K)
        throw std::invalid_argument("psi2 needs q for half-weights 2.." + std::to_string(K));
    Mom0Result check = mom0_check(q, 2, K);
    if (!check.report.passed())
        throw MembershipError("mom0", check.report.first_failure_weight.value_or(0),
                              "q is not in Mom^(0): " + check.report.detail);
    return {q.slice(2, K).map([](unsigned, const Int& x) { return Rational(x + 1); })};
}

KOSeq cusp_evaluate(const TmfSeq& seq)
{
    return {Variant::string,
            seq.multipliers.map([](unsigned k, const Rational& r) { return Rational(r * eisenstein_constant(2 * k)); })};
}

LiftResult lift_to_tmf(const KOSeq& seq, unsigned K)
{
    if (seq.variant != Variant::string)
        throw std::invalid_argument("lifting applies to string orientations");
    if (seq.b.empty() || seq.b.first() != 2 || seq.b.last() < K)
        throw std::invalid_argument("KO sequence must cover half-weights 2.." + std::to_string(K));
    std::vector<Int> q;
    std::optional<Obstruction> integrality;
    for (unsigned k = 2; k <= K; ++k) {
        Rational beta = seq.b.at(k) / eisenstein_constant(2 * k);
        if (!is_integer(beta)) {
            Prime p = denominator_prime(beta);
            integrality = Obstruction{p, 2 * k, -padic_valuation(beta, p).value(),
                                      "b_k / (-B_k/2k) is not " + std::to_string(p) + "-integral"};
            break;
        }
        q.push_back(beta.get_num() - 1);
    }
    unsigned reach = 1 + static_cast<unsigned>(q.size());
    if (reach >= 2) {
        Mom0Result mom0 = mom0_check(EvenSeq<Int>(2, q), 2, reach);
        if (!mom0.report.passed()) {
            const auto& r = mom0.report;
            long deficit = r.required_valuation.value_or(0) -
                           (r.observed_valuation && !r.observed_valuation->is_infinite() ? r.observed_valuation->value() : 0);
            return Obstruction{r.prime.value_or(0), r.first_failure_weight.value_or(0), deficit,
                               "b_k / (-B_k/2k) - 1 is not in Mom^(0): " + r.detail};
        }
    }
    if (integrality)
        return *integrality;
    return psi2_apply(EvenSeq<Int>(2, q), K);
}

CheckReport zeta_ideal_check(const KOSeq& seq, Prime p, const Int& c, unsigned K, unsigned precision)
{
    const unsigned m = 2;
    if (seq.variant != Variant::string)
        throw std::invalid_argument("zeta-ideal check applies to string orientations");
    if (precision == 0) {
        unsigned need = 1, vz = 0;
        for (unsigned k = m; k <= K; ++k) {
            need = std::max(need, modulus_valuation(p, k - m) + 1);
            vz = std::max(vz, static_cast<unsigned>(padic_valuation(zeta_moment(p, c, k), p).value()));
        }
        precision = need + vz;
    }
    std::vector<PadicResidue> s;
    for (unsigned k = m; k <= K; ++k) {
        Rational x = Rational((1 - ipow(c, 2 * k)) * euler_factor(p, k)) * seq.b.at(k);
        if (!is_p_integral(x, p)) {
            CheckReport r = integrality_failure("zeta-ideal", K, 2 * k, x, "twisted moment is not p-integral");
            r.prime = p;
            r.observed_valuation = padic_valuation(x, p);
            return r;
        }
        s.push_back(PadicResidue::from_rational(x, p, precision));
    }
    ZetaQuotient z = divide_by_zeta(EvenSeq<PadicResidue>(m, s), p, c, m, K);
    CheckReport r = pass_report("zeta-ideal", 2 * K);
    r.prime = p;
    if (z.status != ZetaQuotient::Status::ok) {
        r.status = z.status == ZetaQuotient::Status::not_in_ideal ? CheckStatus::fail
                                                                  : CheckStatus::insufficient_precision;
        r.first_failure_weight = z.weight;
        unsigned k = *z.weight / 2;
        long vz = padic_valuation(zeta_moment(p, c, k), p).value();
        r.required_valuation = vz;
        r.observed_valuation = Valuation(vz - z.deficit);
        r.detail = "quotient by the zeta measure is not p-integral";
        return r;
    }
    CheckReport q = check_Bp(z.quotient, p, m, K);
    q.check = "zeta-ideal";
    return q;
}

EvenSeq<Rational> spin_extend(Prime p, const PadicResidue& b2_target, const std::vector<Int>& l_string, unsigned K)
{
    if (b2_target.prime() != p)
        throw std::invalid_argument("target residue lives at another prime");
    std::vector<Int> b{b2_target.residue()};
    for (unsigned k = 2; k <= K; ++k) {
        unsigned v = modulus_valuation(p, k - 1);
        Int x = 0;
        if (v > 0) {
            Int mod = ipow(big(p), v);
            BasisData bd = basis_data(p, 1, k - 1);
            Int rhs = 0;
            for (unsigned i = 1; i < k; ++i)
                rhs += bd.c[i - 1] * euler_factor(p, i) * b[i - 1];
            Int inv;
            mpz_invert(inv.get_mpz_t(), Int(mod_pos(euler_factor(p, k), mod)).get_mpz_t(), mod.get_mpz_t());
            x = mod_pos(rhs * inv, mod);
            if (k - 2 < l_string.size())
                x += l_string[k - 2] * mod;
        } else if (k - 2 < l_string.size()) {
            x = l_string[k - 2];
        }
        b.push_back(x);
    }
    std::vector<Rational> out(b.begin(), b.end());
    return EvenSeq<Rational>(1, std::move(out));
}

CheckReport local_euler_check(const EvenSeq<Rational>& seq, Prime p, unsigned m, unsigned K)
{
    auto stripped = seq.slice(m, K).map([&](unsigned k, const Rational& b) { return Rational(euler_factor(p, k) * b); });
    CheckReport r = check_Bp(stripped, p, m, K);
    r.check = "local-euler";
    return r;
}

PadicResidue string_to_zp(Prime p, const EvenSeq<Rational>& string_seq, unsigned K)
{
    if (string_seq.empty() || string_seq.first() != 2 || string_seq.last() < K)
        throw std::invalid_argument("string data must cover half-weights 2.." + std::to_string(K));
    LocalLinearSystem sys(p, 1);
    for (unsigned k = 2; k <= K; ++k) {
        unsigned v = modulus_valuation(p, k - 1);
        if (v == 0)
            continue;
        BasisData bd = basis_data(p, 1, k - 1);
        auto local = [&](const Rational& x) { return PadicResidue::from_rational(x, p, v).residue(); };
        Int rhs = -euler_factor(p, k) * local(string_seq.at(k));
        for (unsigned i = 2; i < k; ++i)
            rhs += bd.c[i - 1] * euler_factor(p, i) * local(string_seq.at(i));
        sys.add({-bd.c[0] * euler_factor(p, 1)}, rhs, v);
    }
    auto sol = sys.solve();
    if (!sol)
        throw MembershipError("string", 0, "string data admits no spin extension at p = " + std::to_string(p));
    if (sol->precision[0] == 0)
        throw PrecisionError("the tail does not determine b_2 at this truncation");
    return PadicResidue(p, sol->precision[0], sol->values[0]);
}

bool pullback_check(const EvenSeq<Rational>& spin_seq, const EvenSeq<Rational>& string_seq, Prime p, unsigned K)
{
    if (spin_seq.empty() || spin_seq.first() != 1 || spin_seq.last() < K)
        return false;
    if (string_seq.empty() || string_seq.first() != 2 || string_seq.last() < K)
        return false;
    if (spin_seq.slice(2, K) != string_seq.slice(2, K))
        return false;
    return local_euler_check(spin_seq, p, 1, K).passed() && local_euler_check(string_seq, p, 2, K).passed();
}

}  // namespace orient
