#include "orientarith/momgroups.hpp"

#include "orientarith/basis.hpp"
#include "orientarith/padic_linear.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace orient {

MembershipError::MembershipError(std::string group, unsigned index, const std::string& detail)
    : std::domain_error(detail), group_(std::move(group)), index_(index)
{
}

namespace {

Int big(Prime p) { return Int(static_cast<unsigned long>(p)); }

Int mod_pos(const Int& x, const Int& m)
{
    Int r = x % m;
    if (r < 0)
        r += m;
    return r;
}

Int euler_factor(Prime p, unsigned k)  // 1 - p^{2k-1}
{
    return 1 - ipow(big(p), 2 * k - 1);
}

Int prime_power(Prime p, unsigned v) { return ipow(big(p), v); }

void require_cover(const EvenSeq<Int>& seq, unsigned m, unsigned K)
{
    if (m == 0)
        throw std::invalid_argument("shift m must be >= 1");
    if (seq.empty() || seq.first() > m || seq.last() < K)
        throw std::invalid_argument("sequence does not cover half-weights " + std::to_string(m) + ".." +
                                    std::to_string(K));
}

}  // namespace

Int moment_modulus(unsigned k)
{
    if (k == 0)
        return 1;
    Int M = 1;
    for (Prime p : primes_S(k))
        M *= prime_power(p, modulus_valuation(p, k));
    return M;
}

namespace {

// Solves (1 - p^{2(k+m)-1}) x = sum_{i<k} c_{2i} (1 - p^{2(i+m)-1}) col[i] (mod p^v) for every p in S_k.
Int phi_entry(unsigned m, unsigned k, const std::vector<Int>& col)
{
    std::vector<Congruence> system;
    for (Prime p : primes_S(k)) {
        unsigned v = modulus_valuation(p, k);
        Int mod = prime_power(p, v);
        BasisData bd = basis_data(p, m, k);
        Int rhs = 0;
        for (unsigned i = 0; i < k; ++i)
            rhs += bd.c[i] * euler_factor(p, i + m) * col[i];
        Int inv;
        mpz_invert(inv.get_mpz_t(), Int(mod_pos(euler_factor(p, k + m), mod)).get_mpz_t(), mod.get_mpz_t());
        system.push_back({mod, mod_pos(rhs * inv, mod)});
    }
    return crt_solve(system);
}

void verify_entry(unsigned m, unsigned k, const std::vector<Int>& col, const Int& x, const Int& Mk)
{
    if (x < 0 || x > Mk || (x == Mk && col.size() != k + 1))
        throw std::logic_error("Phi entry out of range");
    for (Prime p : primes_S(k)) {
        unsigned v = modulus_valuation(p, k);
        BasisData bd = basis_data(p, m, k);
        Int r = euler_factor(p, k + m) * x;
        for (unsigned i = 0; i < k; ++i)
            r -= bd.c[i] * euler_factor(p, i + m) * col[i];
        if (r % prime_power(p, v) != 0)
            throw std::logic_error("Phi entry violates its defining congruence");
    }
}

std::mutex phi_mutex;
std::map<unsigned, PhiMatrix> phi_cache;

}  // namespace

PhiMatrix phi_matrix(unsigned m, unsigned R)
{
    if (m == 0)
        throw std::invalid_argument("Phi^(m) needs m >= 1");
    std::lock_guard lock(phi_mutex);
    PhiMatrix& P = phi_cache[m];
    P.m = m;
    while (P.rows.size() <= R) {
        unsigned k = static_cast<unsigned>(P.rows.size());
        std::vector<Int> row(k + 1);
        if (k == 0) {
            row[0] = 1;
            P.prime_sets.push_back({});
        } else {
            Int Mk = moment_modulus(k);
            for (unsigned j = 0; j < k; ++j) {
                std::vector<Int> col(k);
                for (unsigned i = j; i < k; ++i)
                    col[i] = P.rows[i][j];
                row[j] = phi_entry(m, k, col);
                verify_entry(m, k, col, row[j], Mk);
            }
            row[k] = Mk;
            P.prime_sets.push_back(primes_S(k));
        }
        P.rows.push_back(std::move(row));
    }
    PhiMatrix out;
    out.m = m;
    out.rows.assign(P.rows.begin(), P.rows.begin() + R + 1);
    out.prime_sets.assign(P.prime_sets.begin(), P.prime_sets.begin() + R + 1);
    return out;
}

CheckReport mom_euler_check(const EvenSeq<Int>& seq, unsigned m, unsigned K)
{
    CheckReport out = pass_report("mom-euler", 2 * K);
    require_cover(seq, m, K);
    if (K <= m)
        return out;
    std::vector<Prime> failing;
    for (Prime p : primes_S(K - m)) {
        EvenSeq<Rational> stripped = seq.slice(m, K).map(
            [&](unsigned k, const Int& b) { return Rational(euler_factor(p, k) * b); });
        CheckReport r = check_Bp(stripped, p, m, K);
        if (r.passed())
            continue;
        if (!out.passed() && r.first_failure_weight == out.first_failure_weight)
            failing.push_back(p);
        else if (out.passed() || r.first_failure_weight < out.first_failure_weight) {
            out = r;
            failing = {p};
        }
    }
    out.check = "mom-euler";
    out.truncation_weight = 2 * K;
    if (!out.passed()) {
        std::ostringstream d;
        d << "Euler-stripped congruence fails at weight " << *out.first_failure_weight << " for p in {";
        for (size_t i = 0; i < failing.size(); ++i)
            d << (i ? "," : "") << failing[i];
        d << "}";
        out.detail = d.str();
    }
    return out;
}

EvenSeq<Int> phi_apply(unsigned m, const std::vector<Int>& l, unsigned K)
{
    if (K < m)
        throw std::invalid_argument("truncation below the start weight");
    unsigned R = K - m;
    PhiMatrix P = phi_matrix(m, R);
    std::vector<Int> out(R + 1, Int(0));
    for (unsigned i = 0; i <= R; ++i)
        for (unsigned j = 0; j <= i && j < l.size(); ++j)
            out[i] += P.rows[i][j] * l[j];
    return EvenSeq<Int>(m, std::move(out));
}

std::vector<Int> phi_invert(unsigned m, const EvenSeq<Int>& seq, unsigned K)
{
    require_cover(seq, m, K);
    unsigned R = K - m;
    PhiMatrix P = phi_matrix(m, R);
    std::vector<Int> l(R + 1);
    for (unsigned n = 0; n <= R; ++n) {
        Int r = seq.at(m + n);
        for (unsigned j = 0; j < n; ++j)
            r -= P.rows[n][j] * l[j];
        if (r % P.rows[n][n] != 0)
            throw MembershipError("mom-euler", n,
                                  "not in Mom^Euler: parameter l_" + std::to_string(n) + " is not an integer");
        l[n] = r / P.rows[n][n];
    }
    return l;
}

namespace {

// Largest exponent e <= v at which the system plus this row (mod p^e) stays solvable.
unsigned best_exponent(const LocalLinearSystem& base, const std::vector<Int>& coeffs, const Int& rhs, unsigned v)
{
    unsigned e = 0;
    while (e < v) {
        LocalLinearSystem trial = base;
        trial.add(coeffs, rhs, e + 1);
        if (!trial.solve())
            break;
        ++e;
    }
    return e;
}

struct LocalMom0 {
    std::optional<CheckReport> failure;
    std::vector<PadicResidue> low;
    std::vector<unsigned> determined;
};

LocalMom0 mom0_at_prime(const EvenSeq<Int>& seq, unsigned m, unsigned K, Prime p)
{
    LocalMom0 out;
    LocalLinearSystem sys(p, m);
    unsigned E = 1;
    for (unsigned k = 1; k <= K; ++k)
        E = std::max(E, modulus_valuation(p, k));
    // mass zero is pinned first so the earliest inconsistent weight is the one reported
    std::vector<Int> unit_row(m, Int(0));
    unit_row[0] = 1;
    sys.add(unit_row, 0, E);
    for (unsigned k = 1; k <= K; ++k) {
        unsigned v = modulus_valuation(p, k);
        if (v == 0)
            continue;
        BasisData bd = basis_data(p, 1, k);
        // b_{2k} - sum_{i<k} c_{2i} b_{2i} = 0 (mod p^v), unknowns b_0 .. b_{2m-2}
        std::vector<Int> coeffs(m, Int(0));
        Int rhs = 0;
        if (k < m)
            coeffs[k] += 1;
        else
            rhs -= seq.at(k);
        for (unsigned i = 0; i < k; ++i) {
            if (i < m)
                coeffs[i] -= bd.c[i];
            else
                rhs += bd.c[i] * seq.at(i);
        }
        LocalLinearSystem next = sys;
        next.add(coeffs, rhs, v);
        if (!next.solve()) {
            CheckReport r = pass_report("mom0", 2 * K);
            r.status = CheckStatus::fail;
            r.prime = p;
            r.first_failure_weight = 2 * k;
            r.required_valuation = v;
            r.observed_valuation = Valuation(best_exponent(sys, coeffs, rhs, v));
            r.detail = "no measure interpolates the moments up to this weight";
            out.failure = r;
            return out;
        }
        sys = std::move(next);
    }
    auto sol = sys.solve();
    unsigned N = E;
    for (unsigned i = 0; i < m; ++i) {
        out.low.emplace_back(p, N, sol->values[i]);
        out.determined.push_back(i == 0 ? N : sol->precision[i]);
    }
    return out;
}

}  // namespace

Mom0Result mom0_check(const EvenSeq<Int>& seq, unsigned m, unsigned K, const std::map<Prime, unsigned>& prime_precisions)
{
    require_cover(seq, m, K);
    Mom0Result out{pass_report("mom0", 2 * K), Mom0Witness{m, {}, {}}};
    for (Prime p : primes_S(K)) {
        LocalMom0 local = mom0_at_prime(seq, m, K, p);
        if (local.failure) {
            out.report = earliest_failure(out.report, *local.failure);
            continue;
        }
        auto budget = prime_precisions.find(p);
        if (budget != prime_precisions.end() && budget->second > 0) {
            for (auto& r : local.low)
                r = r.reduce(std::min(budget->second, r.precision()));
            for (auto& d : local.determined)
                d = std::min(d, budget->second);
        }
        out.witness.low.emplace(p, std::move(local.low));
        out.witness.determined.emplace(p, std::move(local.determined));
    }
    if (!out.report.passed())
        out.witness = Mom0Witness{m, {}, {}};
    return out;
}

std::map<Prime, unsigned> psi0_working_precision(unsigned K)
{
    std::map<Prime, unsigned> out;
    if (K == 0)
        return out;
    for (Prime p : primes_S(K)) {
        unsigned N = 1;
        for (unsigned k = 1; k <= K; ++k)
            N = std::max(N, modulus_valuation(p, k));
        out[p] = N;
    }
    return out;
}

unsigned psi0_param_precision(Prime p, unsigned k, unsigned K)
{
    auto N = psi0_working_precision(K);
    auto it = N.find(p);
    if (it == N.end())
        return 0;
    unsigned v = modulus_valuation(p, k);
    return it->second > v ? it->second - v : 0;
}

namespace {

// CRT base point in [0, M_k) from the history at every p in S_k.
Int base_point(unsigned k, const std::map<Prime, std::vector<Int>>& history)
{
    std::vector<Congruence> system;
    for (Prime p : primes_S(k)) {
        unsigned v = modulus_valuation(p, k);
        BasisData bd = basis_data(p, 1, k);
        const auto& h = history.at(p);
        Int s = 0;
        for (unsigned i = 0; i < k; ++i)
            s += bd.c[i] * h[i];
        Int mod = prime_power(p, v);
        system.push_back({mod, mod_pos(s, mod)});
    }
    return crt_solve(system);
}

}  // namespace

EvenSeq<Int> psi0_apply(unsigned m, const Psi0Params& params, unsigned K)
{
    if (m == 0 || K < m)
        throw std::invalid_argument("psi0 needs 1 <= m <= K");
    if (params.low.size() != m - 1)
        throw std::invalid_argument("psi0 needs exactly m - 1 profinite parameters");
    if (params.high.size() < K - m + 1)
        throw std::invalid_argument("psi0 needs integer parameters for half-weights m..K");
    auto N = psi0_working_precision(K);
    // history[p][i] = b_{2i} modulo p^{N_p}
    std::map<Prime, std::vector<Int>> history;
    for (auto [p, n] : N)
        history[p].push_back(0);
    std::vector<Int> out;
    for (unsigned k = 1; k <= K; ++k) {
        Int Mk = moment_modulus(k);
        Int base = base_point(k, history);
        if (k < m) {
            const ProfiniteResidue& l = params.low[k - 1];
            for (auto [p, n] : N) {
                unsigned need = psi0_param_precision(p, k, K);
                Int lp = 0;
                if (need > 0) {
                    if (!l.contains(p) || l.at(p).precision() < need)
                        throw PrecisionError("profinite parameter l_" + std::to_string(k) + " needs precision " +
                                             std::to_string(need) + " at p = " + std::to_string(p));
                    lp = l.at(p).residue();
                }
                history[p].push_back(mod_pos(base + lp * Mk, prime_power(p, n)));
            }
        } else {
            Int b = base + params.high[k - m] * Mk;
            out.push_back(b);
            for (auto [p, n] : N)
                history[p].push_back(mod_pos(b, prime_power(p, n)));
        }
    }
    return EvenSeq<Int>(m, std::move(out));
}

Psi0Inverse psi0_invert(unsigned m, const EvenSeq<Int>& seq, unsigned K, const std::map<Prime, unsigned>& prime_precisions)
{
    require_cover(seq, m, K);
    Mom0Result check = mom0_check(seq, m, K);
    if (!check.report.passed())
        throw MembershipError("mom0", check.report.first_failure_weight.value_or(0),
                              "not in Mom^(0): " + check.report.detail);
    auto N = psi0_working_precision(K);
    std::map<Prime, std::vector<Int>> history;
    for (auto [p, n] : N)
        history[p].push_back(0);

    Psi0Inverse out;
    for (unsigned k = 1; k <= K; ++k) {
        Int Mk = moment_modulus(k);
        Int base = base_point(k, history);
        if (k < m) {
            ProfiniteResidue l;
            std::map<Prime, unsigned> fixed;
            for (auto [p, n] : N) {
                const PadicResidue& b = check.witness.low.at(p)[k];
                unsigned vM = modulus_valuation(p, k);
                history[p].push_back(b.residue());
                unsigned need = psi0_param_precision(p, k, K);
                if (need == 0)
                    continue;
                Int diff = b.residue() - base;
                Int pv = prime_power(p, vM);
                if (diff % pv != 0)
                    throw std::logic_error("witness violates its own congruence");
                Int unit = Mk / pv;
                PadicResidue q(p, need, diff / pv);
                l.set(q * PadicResidue(p, need, unit).inverse());
                unsigned det = check.witness.determined.at(p)[k];
                fixed[p] = det > vM ? det - vM : 0;
                auto budget = prime_precisions.find(p);
                if (budget != prime_precisions.end() && budget->second > 0)
                    fixed[p] = std::min(fixed[p], budget->second);
            }
            out.params.low.push_back(std::move(l));
            out.determined.push_back(std::move(fixed));
        } else {
            Int diff = seq.at(k) - base;
            if (diff % Mk != 0)
                throw MembershipError("mom0", 2 * k, "not in Mom^(0): weight " + std::to_string(2 * k) +
                                                         " is off its base point");
            out.params.high.push_back(diff / Mk);
            for (auto [p, n] : N)
                history[p].push_back(mod_pos(seq.at(k), prime_power(p, n)));
        }
    }
    return out;
}

}  // namespace orient
