#pragma once

#include "orientarith/basis.hpp"
#include "orientarith/exact.hpp"
#include "orientarith/report.hpp"
#include "orientarith/sequence.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace orient {

// (Z/p^n)^*/{+-1} with canonical representatives x <= p^n/2 (all units when p^n <= 2).
class QuotientGroup {
public:
    QuotientGroup(Prime p, unsigned level);
    static std::shared_ptr<const QuotientGroup> get(Prime p, unsigned level);

    Prime prime() const { return p_; }
    unsigned level() const { return n_; }
    std::uint64_t modulus() const { return pn_; }
    size_t size() const { return reps_.size(); }
    std::uint64_t rep(size_t i) const { return reps_[i]; }
    const std::vector<std::uint64_t>& reps() const { return reps_; }
    size_t index_of(const Int& x) const;  // x must be a unit mod p

private:
    Prime p_;
    unsigned n_;
    std::uint64_t pn_;
    std::vector<std::uint64_t> reps_;
    std::vector<std::int64_t> index_;  // by residue mod p^n, -1 off the units
};

// True iff the class of c generates (Z/p^n)^*/{+-1}.
bool generates_quotient(const Int& c, Prime p, unsigned level);
// 3 for p = 2, else the least positive generator of (Z/p^2)^*/{+-1}.
Int default_generator(Prime p);

// A measure on Z_p^*/{+-1} known through its values on level-n cosets, each mod p^N.
class CosetMeasure {
public:
    CosetMeasure(Prime p, unsigned level, unsigned precision);
    static CosetMeasure dirac(Prime p, unsigned level, unsigned precision, const Int& x);

    Prime prime() const { return group_->prime(); }
    unsigned level() const { return group_->level(); }
    unsigned precision() const { return n_; }
    const QuotientGroup& group() const { return *group_; }
    const std::vector<Int>& values() const { return values_; }

    PadicResidue value(const Int& x) const;
    void set(const Int& x, const Int& v);
    void add(const Int& x, const Int& v);

    PadicResidue total_mass() const;
    CosetMeasure pushforward(unsigned lower_level) const;
    CosetMeasure multiply_by(const Int& c) const;  // c_* mu

    friend CosetMeasure operator+(const CosetMeasure& a, const CosetMeasure& b);
    friend CosetMeasure operator-(const CosetMeasure& a, const CosetMeasure& b);
    friend CosetMeasure operator*(const Int& s, const CosetMeasure& a);
    friend bool operator==(const CosetMeasure& a, const CosetMeasure& b);

private:
    std::shared_ptr<const QuotientGroup> group_;
    unsigned n_;
    std::vector<Int> values_;  // indexed like group().reps(), reduced mod p^N
    Int mod_;
};

// Moments at the given even weights, to precision min(N, level).
std::vector<PadicResidue> moments_of(const CosetMeasure& mu, std::span<const unsigned> weights);
EvenSeq<PadicResidue> moment_sequence(const CosetMeasure& mu, unsigned m, unsigned K);

CosetMeasure convolve(const CosetMeasure& a, const CosetMeasure& b);
CosetMeasure apply_id_minus_c(const CosetMeasure& mu, const Int& c);
// Solves (id - c_*) mu = mu_c. Among the solutions (they differ by constants) returns the
// one obtained from balanced partial sums along powers of c, shifted so its least entry is 0.
CosetMeasure regularize(const CosetMeasure& mu_c, const Int& c);

// Coefficients alpha_{2k}, k in [m, m + L), against the basis X^{2m} E_{2(k-m)}.
struct CoeffMeasure {
    Prime p;
    unsigned m;
    std::vector<PadicResidue> alphas;
};

// Throws std::domain_error when the moments admit no interpolating measure at their precision.
CoeffMeasure coefficients_from_moments(const EvenSeq<PadicResidue>& b, Prime p, unsigned m);
EvenSeq<PadicResidue> moments_from_coefficients(const CoeffMeasure& alpha);
// Integrates the basis functions against mu, read as point masses at the representatives.
CoeffMeasure coefficients_of(const CosetMeasure& mu, unsigned m, unsigned L);

// Condition (B)_p up to half-weight K: the congruences of the moment characterization.
CheckReport check_Bp(const EvenSeq<Rational>& seq, Prime p, unsigned m, unsigned K);
CheckReport check_Bp(const EvenSeq<PadicResidue>& seq, Prime p, unsigned m, unsigned K);
// Runs check_Bp on (1 - c^{2k}) b_{2k} for each c; every c must be a unit.
CheckReport check_Bp_tilde(const EvenSeq<Rational>& seq, Prime p, unsigned m, unsigned K,
                           std::span<const Int> c_values);
CheckReport check_Bp_tilde(const EvenSeq<Rational>& seq, Prime p, unsigned m, unsigned K,
                           std::span<const PadicResidue> c_values);

// -(1 - p^{2k-1})(1 - c^{2k}) B_{2k}/(4k)
Rational zeta_moment(Prime p, const Int& c, unsigned k);
EvenSeq<PadicResidue> zeta_moments(Prime p, const Int& c, unsigned m, unsigned K, unsigned precision);

struct ZetaQuotient {
    enum class Status { ok, not_in_ideal, insufficient_precision };
    Status status = Status::ok;
    EvenSeq<PadicResidue> quotient;
    std::optional<unsigned> weight;  // offending weight 2k
    long deficit = 0;                // missing p-adic valuation at that weight
};

ZetaQuotient divide_by_zeta(const EvenSeq<PadicResidue>& seq, Prime p, const Int& c, unsigned m, unsigned K);

}  // namespace orient
