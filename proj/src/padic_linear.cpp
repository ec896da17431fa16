#include "orientarith/padic_linear.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace orient {

namespace {

Int mod_pos(const Int& x, const Int& m)
{
    Int r = x % m;
    if (r < 0)
        r += m;
    return r;
}

// Valuation of x mod p^E, capped at E.
unsigned val_mod(const Int& x, Prime p, unsigned E)
{
    if (x == 0)
        return E;
    auto v = padic_valuation(x, p).value();
    return static_cast<unsigned>(std::min<long>(v, E));
}

Int unit_inverse(const Int& u, const Int& mod)
{
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("pivot is not a unit");
    return inv;
}

}  // namespace

LocalLinearSystem::LocalLinearSystem(Prime p, size_t unknowns) : p_(p), n_(unknowns) {}

void LocalLinearSystem::add(std::vector<Int> coeffs, Int rhs, unsigned exponent)
{
    if (coeffs.size() != n_)
        throw std::invalid_argument("congruence has the wrong number of coefficients");
    rows_.push_back({std::move(coeffs), std::move(rhs), exponent});
}

// Smith form over Z/p^E: U A V = diag(p^d_t * unit), then u = V w.
std::optional<LocalLinearSystem::Solution> LocalLinearSystem::solve() const
{
    unsigned E = 0;
    for (const auto& r : rows_)
        E = std::max(E, r.exponent);
    Solution sol{std::vector<Int>(n_, 0), std::vector<unsigned>(n_, 0)};
    if (E == 0)
        return sol;

    const Int pp(static_cast<unsigned long>(p_));
    const Int P = ipow(pp, E);
    size_t R = rows_.size();
    std::vector<std::vector<Int>> A(R, std::vector<Int>(n_));
    std::vector<Int> b(R);
    for (size_t i = 0; i < R; ++i) {
        Int scale = ipow(pp, E - rows_[i].exponent);
        for (size_t j = 0; j < n_; ++j)
            A[i][j] = mod_pos(rows_[i].coeffs[j] * scale, P);
        b[i] = mod_pos(rows_[i].rhs * scale, P);
    }
    std::vector<std::vector<Int>> V(n_, std::vector<Int>(n_, 0));
    for (size_t j = 0; j < n_; ++j)
        V[j][j] = 1;

    std::vector<unsigned> d;
    size_t rank = 0;
    for (size_t t = 0; t < std::min(R, n_); ++t) {
        size_t bi = R, bj = n_;
        unsigned best = E;
        for (size_t i = t; i < R; ++i)
            for (size_t j = t; j < n_; ++j) {
                unsigned v = val_mod(A[i][j], p_, E);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi == R)
            break;
        std::swap(A[t], A[bi]);
        std::swap(b[t], b[bi]);
        for (size_t i = 0; i < R; ++i)
            std::swap(A[i][t], A[i][bj]);
        for (size_t j = 0; j < n_; ++j)
            std::swap(V[j][t], V[j][bj]);

        Int pd = ipow(pp, best);
        Int uinv = unit_inverse(Int(A[t][t] / pd), P);
        for (size_t i = t + 1; i < R; ++i) {
            if (A[i][t] == 0)
                continue;
            Int f = mod_pos(Int(A[i][t] / pd) * uinv, P);
            for (size_t j = t; j < n_; ++j)
                A[i][j] = mod_pos(A[i][j] - f * A[t][j], P);
            b[i] = mod_pos(b[i] - f * b[t], P);
        }
        for (size_t j = t + 1; j < n_; ++j) {
            if (A[t][j] == 0)
                continue;
            Int f = mod_pos(Int(A[t][j] / pd) * uinv, P);
            for (size_t i = t; i < R; ++i)
                A[i][j] = mod_pos(A[i][j] - f * A[i][t], P);
            for (size_t k = 0; k < n_; ++k)
                V[k][j] = mod_pos(V[k][j] - f * V[k][t], P);
        }
        d.push_back(best);
        rank = t + 1;
    }

    for (size_t i = rank; i < R; ++i)
        if (b[i] != 0)
            return std::nullopt;

    std::vector<Int> w(n_, 0);
    std::vector<unsigned> wprec(n_, 0);
    for (size_t t = 0; t < rank; ++t) {
        if (val_mod(b[t], p_, E) < d[t])
            return std::nullopt;
        Int pd = ipow(pp, d[t]);
        Int mod_t = ipow(pp, E - d[t]);
        w[t] = mod_pos(Int(b[t] / pd) * unit_inverse(Int(A[t][t] / pd), mod_t), mod_t);
        wprec[t] = E - d[t];
    }

    for (size_t j = 0; j < n_; ++j) {
        Int x = 0;
        unsigned prec = std::numeric_limits<unsigned>::max();
        for (size_t t = 0; t < n_; ++t) {
            x += V[j][t] * w[t];
            if (V[j][t] != 0)
                prec = std::min(prec, val_mod(V[j][t], p_, E) + wprec[t]);
        }
        prec = std::min(prec, E);
        sol.precision[j] = prec;
        sol.values[j] = mod_pos(x, P);
    }
    return sol;
}

}  // namespace orient
