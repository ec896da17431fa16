#include "orientarith/momgroups.hpp"

#include <doctest.h>

#include <random>

using namespace orient;

namespace {

std::vector<Int> ints(std::initializer_list<const char*> xs)
{
    std::vector<Int> out;
    for (const char* x : xs)
        out.emplace_back(x);
    return out;
}

Int big(Prime p) { return Int(static_cast<unsigned long>(p)); }

// Every Euler-stripped congruence through row k, tested directly on a column of integers.
bool column_congruences_hold(unsigned m, const std::vector<Int>& col, unsigned k)
{
    for (unsigned kk = 1; kk <= k; ++kk)
        for (Prime p : primes_S(kk)) {
            unsigned v = modulus_valuation(p, kk);
            if (v == 0)
                continue;
            BasisData bd = basis_data(p, m, kk);
            Int r = (1 - ipow(big(p), 2 * (kk + m) - 1)) * col[kk];
            for (unsigned i = 0; i < kk; ++i)
                r -= bd.c[i] * (1 - ipow(big(p), 2 * (i + m) - 1)) * col[i];
            if (r % ipow(big(p), v) != 0)
                return false;
        }
    return true;
}

std::vector<Int> random_ints(std::mt19937_64& rng, size_t n, long range)
{
    std::vector<Int> out;
    for (size_t i = 0; i < n; ++i)
        out.emplace_back(static_cast<long>(rng() % (2 * range + 1)) - range);
    return out;
}

}  // namespace

TEST_SUITE("momgroups") {

TEST_CASE("moment moduli")
{
    CHECK(moment_modulus(0) == 1);
    CHECK(moment_modulus(1) == 24);
    CHECK(moment_modulus(2) == 5760);
    CHECK(moment_modulus(3) == 2903040);
    CHECK(moment_modulus(4) == 1393459200);
    CHECK(moment_modulus(5) == Int("367873228800"));
    CHECK(moment_modulus(6) == Int("24103053950976000"));
}

TEST_CASE("Phi^(1) rows")
{
    PhiMatrix P = phi_matrix(1, 5);
    CHECK(P.rows[0] == ints({"1"}));
    CHECK(P.rows[1] == ints({"7", "24"}));
    CHECK(P.rows[2] == ints({"511", "4080", "5760"}));
    CHECK(P.rows[3] == ints({"1302127", "197064", "846720", "2903040"}));
    CHECK(P.rows[4] == ints({"218917951", "1262196960", "733259520", "987033600", "1393459200"}));
    CHECK(P.rows[5] ==
          ints({"106193170447", "38633736504", "297209975040", "300876871680", "107296358400", "367873228800"}));
    CHECK(P.prime_sets[0].empty());
    CHECK(P.prime_sets[2] == std::vector<Prime>{2, 3, 5});
    for (unsigned k = 0; k <= 5; ++k)
        CHECK(P.diagonal(k) == moment_modulus(k));
    CHECK(phi_matrix(1, 0).row_count() == 1);
}

TEST_CASE("Phi^(2) rows")
{
    PhiMatrix P = phi_matrix(2, 4);
    CHECK(P.rows[1] == ints({"1", "24"}));
    CHECK(P.rows[2] == ints({"1801", "4080", "5760"}));
    CHECK(P.rows[3] == ints({"710641", "378504", "846720", "2903040"}));
    CHECK(P.rows[4] == ints({"712114201", "950120160", "1081624320", "987033600", "1393459200"}));
}

TEST_CASE("Phi rows agree with a brute-force search")
{
    for (unsigned m : {1u, 2u}) {
        PhiMatrix P = phi_matrix(m, 4);
        for (unsigned j = 0; j <= 4; ++j) {
            std::vector<Int> col;
            for (unsigned k = 0; k < j; ++k)
                col.push_back(0);
            col.push_back(moment_modulus(j));
            for (unsigned k = j + 1; k <= 4; ++k) {
                if (k <= 3) {
                    // scan [0, M_k) for the unique entry passing the row-k congruence at every p in S_k;
                    // earlier rows were fixed by the previous scans
                    struct Row {
                        unsigned long mod, factor, rhs;
                    };
                    std::vector<Row> rows;
                    for (Prime p : primes_S(k)) {
                        unsigned v = modulus_valuation(p, k);
                        Int pv = ipow(big(p), v);
                        BasisData bd = basis_data(p, m, k);
                        Int rhs = 0;
                        for (unsigned i = 0; i < k; ++i)
                            rhs += bd.c[i] * (1 - ipow(big(p), 2 * (i + m) - 1)) * col[i];
                        Int f = (1 - ipow(big(p), 2 * (k + m) - 1)) % pv;
                        rhs %= pv;
                        if (f < 0)
                            f += pv;
                        if (rhs < 0)
                            rhs += pv;
                        rows.push_back({pv.get_ui(), f.get_ui(), rhs.get_ui()});
                    }
                    unsigned long Mk = moment_modulus(k).get_ui();
                    long found = -1;
                    int hits = 0;
                    for (unsigned long x = 0; x < Mk; ++x) {
                        bool ok = true;
                        for (const auto& r : rows)
                            ok = ok && (x % r.mod) * r.factor % r.mod == r.rhs;
                        if (ok) {
                            ++hits;
                            found = static_cast<long>(x);
                        }
                    }
                    CHECK(hits == 1);
                    CHECK(Int(found) == P.at(k, j));
                    col.push_back(Int(found));
                    CHECK(column_congruences_hold(m, col, k));
                } else {
                    // prime by prime: the admissible residues mod p^v, compared with the CRT entry
                    for (Prime p : primes_S(k)) {
                        Int pv = ipow(big(p), modulus_valuation(p, k));
                        Int hit = -1;
                        col.push_back(0);
                        for (Int x = 0; x < pv; ++x) {
                            col[k] = x;
                            bool ok = true;
                            BasisData bd = basis_data(p, m, k);
                            Int r = (1 - ipow(big(p), 2 * (k + m) - 1)) * col[k];
                            for (unsigned i = 0; i < k; ++i)
                                r -= bd.c[i] * (1 - ipow(big(p), 2 * (i + m) - 1)) * col[i];
                            ok = r % pv == 0;
                            if (ok) {
                                CHECK(hit == -1);
                                hit = x;
                            }
                        }
                        col.pop_back();
                        CHECK(hit == P.at(k, j) % pv);
                    }
                    col.push_back(P.at(k, j));
                }
            }
            if (j == 0)
                CHECK(col[0] == 1);
        }
    }
}

TEST_CASE("Mom^Euler checks")
{
    CHECK(mom_euler_check(EvenSeq<Int>(1, ints({"1", "7", "511"})), 1, 3).passed());
    CheckReport r = mom_euler_check(EvenSeq<Int>(1, ints({"1", "7", "512"})), 1, 3);
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.first_failure_weight == 6u);
    CHECK(r.prime == Prime(2));
    CHECK(r.truncation_weight == 6);
    CHECK(mom_euler_check(EvenSeq<Int>(1, ints({"0", "24", "4080"})), 1, 3).passed());
    CHECK(mom_euler_check(EvenSeq<Int>(1, ints({"0", "0", "0"})), 1, 3).passed());
    CHECK_THROWS_AS(mom_euler_check(EvenSeq<Int>(1, ints({"1"})), 1, 3), std::invalid_argument);
}

TEST_CASE("phi_apply and phi_invert")
{
    CHECK(phi_apply(1, {}, 4) == EvenSeq<Int>(1, ints({"0", "0", "0", "0"})));
    CHECK(phi_apply(1, {1}, 3) == EvenSeq<Int>(1, ints({"1", "7", "511"})));
    CHECK_THROWS_AS(phi_invert(1, EvenSeq<Int>(1, ints({"1", "7", "512"})), 3), MembershipError);
    try {
        phi_invert(1, EvenSeq<Int>(1, ints({"1", "7", "512"})), 3);
    } catch (const MembershipError& e) {
        CHECK(e.index() == 2);
        CHECK(e.group() == "mom-euler");
    }

    std::mt19937_64 rng(41);
    for (unsigned m : {1u, 2u})
        for (int t = 0; t < 40; ++t) {
            unsigned K = m + static_cast<unsigned>(rng() % (17 - m));
            auto l = random_ints(rng, K - m + 1, 1000000);
            auto l2 = random_ints(rng, K - m + 1, 1000);
            EvenSeq<Int> s = phi_apply(m, l, K);
            CHECK(mom_euler_check(s, m, K).passed());
            CHECK(phi_invert(m, s, K) == l);
            // additivity
            std::vector<Int> sum(l.size());
            for (size_t i = 0; i < l.size(); ++i)
                sum[i] = l[i] + l2[i];
            EvenSeq<Int> s2 = phi_apply(m, l2, K);
            EvenSeq<Int> ssum = phi_apply(m, sum, K);
            for (unsigned k = m; k <= K; ++k)
                CHECK(ssum.at(k) == s.at(k) + s2.at(k));
        }
}

TEST_CASE("Mom^(0) membership")
{
    // b_0 = 0 alone: the zero sequence is in the group
    CHECK(mom0_check(EvenSeq<Int>(1, ints({"0", "0", "0", "0"})), 1, 4).report.passed());
    CheckReport r = mom0_check(EvenSeq<Int>(2, ints({"1", "1", "1"})), 2, 4).report;
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.prime == Prime(2));

    // m = 1: b_2 = 24 l_1 for the first step
    CHECK(mom0_check(EvenSeq<Int>(1, ints({"24"})), 1, 1).report.passed());
    CheckReport one = mom0_check(EvenSeq<Int>(1, ints({"1"})), 1, 1).report;
    CHECK(one.status == CheckStatus::fail);
    CHECK(one.first_failure_weight == 2u);
}

TEST_CASE("Psi^(0) examples")
{
    auto zero_params = [](unsigned m, unsigned K) {
        Psi0Params params;
        auto working = psi0_working_precision(K);
        for (unsigned k = 1; k < m; ++k) {
            std::map<Prime, unsigned> prec;
            for (auto [p, n] : working)
                prec[p] = std::max(1u, psi0_param_precision(p, k, K));
            params.low.push_back(ProfiniteResidue::from_integer(0, prec));
        }
        params.high.assign(K - m + 1, Int(0));
        return params;
    };
    Psi0Params z = zero_params(2, 4);
    CHECK(psi0_apply(2, z, 4) == EvenSeq<Int>(2, ints({"0", "0", "0"})));
    z.high[0] = 1;
    EvenSeq<Int> s = psi0_apply(2, z, 4);
    CHECK(s.at(2) == 5760);
    CHECK(s.at(3) == 846720);
    CHECK(s.at(4) == Int("1081624320"));
    CHECK(mom0_check(s, 2, 4).report.passed());
    Psi0Inverse inv = psi0_invert(2, s, 4);
    CHECK(inv.params.high == ints({"1", "0", "0"}));
    CHECK_THROWS_AS(psi0_invert(2, EvenSeq<Int>(2, ints({"1", "1", "1"})), 4), MembershipError);

    Psi0Params missing = zero_params(3, 5);
    missing.low[0] = ProfiniteResidue();
    CHECK_THROWS_AS(psi0_apply(3, missing, 5), PrecisionError);
}

TEST_CASE("Psi^(0) round trips")
{
    std::mt19937_64 rng(43);
    for (unsigned m : {1u, 2u, 3u})
        for (int t = 0; t < 12; ++t) {
            unsigned K = 8;
            Psi0Params params;
            auto working = psi0_working_precision(K);
            for (unsigned k = 1; k < m; ++k) {
                ProfiniteResidue l;
                for (auto [p, n] : working) {
                    unsigned need = std::max(1u, psi0_param_precision(p, k, K));
                    l.set(PadicResidue(p, need, Int(static_cast<unsigned long>(rng() % 1000000))));
                }
                params.low.push_back(l);
            }
            params.high = random_ints(rng, K - m + 1, 1000);
            EvenSeq<Int> s = psi0_apply(m, params, K);
            REQUIRE(mom0_check(s, m, K).report.passed());
            Psi0Inverse inv = psi0_invert(m, s, K);
            CHECK(inv.params.high == params.high);
            for (unsigned k = 1; k < m; ++k)
                for (auto [p, r] : inv.params.low[k - 1].entries()) {
                    unsigned d = inv.determined[k - 1].at(p);
                    if (d > 0)
                        CHECK(r.reduce(d).congruent(params.low[k - 1].at(p)));
                }
            CHECK(psi0_apply(m, inv.params, K) == s);
        }
}

TEST_CASE("Psi^(0) is not additive")
{
    Psi0Params a;
    auto working = psi0_working_precision(4);
    std::map<Prime, unsigned> prec;
    for (auto [p, n] : working)
        prec[p] = std::max(1u, psi0_param_precision(p, 1, 4));
    a.low.push_back(ProfiniteResidue::from_integer(1, prec));
    a.high = {0, 0, 0};
    Psi0Params b = a;
    b.low[0] = ProfiniteResidue::from_integer(2, prec);
    EvenSeq<Int> sa = psi0_apply(2, a, 4), sb = psi0_apply(2, b, 4);
    bool additive = true;
    for (unsigned k = 2; k <= 4; ++k)
        additive = additive && sb.at(k) == 2 * sa.at(k);
    CHECK_FALSE(additive);
}

TEST_CASE("moments at phi(p^r) tend to zero")
{
    // mass zero forces b_{phi(p^r)} = 0 mod p^r
    std::mt19937_64 rng(47);
    for (int t = 0; t < 10; ++t) {
        unsigned K = 9;
        Psi0Params params;
        params.high = random_ints(rng, K, 100000);
        EvenSeq<Int> s = psi0_apply(1, params, K);
        for (Prime p : {2u, 3u})
            for (unsigned r = 1;; ++r) {
                std::uint64_t w = euler_phi_prime_power(p, r);
                if (w > 2 * K)
                    break;
                if (w % 2 == 0)
                    CHECK(padic_valuation(s.at(static_cast<unsigned>(w / 2)), p) >= static_cast<long>(r));
            }
    }
}

}
