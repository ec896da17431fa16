#pragma once

#include "orientarith/exact.hpp"
#include "orientarith/measures.hpp"
#include "orientarith/report.hpp"
#include "orientarith/sequence.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace orient {

// Raised when a sequence is not in the group; index() is the failing parameter or half-weight.
class MembershipError : public std::domain_error {
public:
    MembershipError(std::string group, unsigned index, const std::string& detail);
    const std::string& group() const { return group_; }
    unsigned index() const { return index_; }

private:
    std::string group_;
    unsigned index_;
};

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// M_k = prod_{p in S_k} p^{nu_p(C_p(k))}; M_0 = 1.
Int moment_modulus(unsigned k);

struct PhiMatrix {
    unsigned m = 1;
    std::vector<std::vector<Int>> rows;           // rows[k][j] for j <= k
    std::vector<std::vector<Prime>> prime_sets;   // S_k, empty for k = 0

    const Int& at(unsigned k, unsigned j) const { return rows.at(k).at(j); }
    const Int& diagonal(unsigned k) const { return rows.at(k).at(k); }
    unsigned row_count() const { return static_cast<unsigned>(rows.size()); }
};

// Rows 0..R of Phi^(m).
PhiMatrix phi_matrix(unsigned m, unsigned R);

CheckReport mom_euler_check(const EvenSeq<Int>& seq, unsigned m, unsigned K);
EvenSeq<Int> phi_apply(unsigned m, const std::vector<Int>& l, unsigned K);
std::vector<Int> phi_invert(unsigned m, const EvenSeq<Int>& seq, unsigned K);

struct Mom0Witness {
    unsigned m = 0;
    // Per prime: b_0, ..., b_{2m-2} as one solution of the truncated congruences, with b_0 = 0.
    std::map<Prime, std::vector<PadicResidue>> low;
    // Per prime: how many digits of each low entry the tail actually forces.
    std::map<Prime, std::vector<unsigned>> determined;
};

struct Mom0Result {
    CheckReport report;
    Mom0Witness witness;
};

Mom0Result mom0_check(const EvenSeq<Int>& seq, unsigned m, unsigned K,
                      const std::map<Prime, unsigned>& prime_precisions = {});

struct Psi0Params {
    std::vector<ProfiniteResidue> low;  // l_1, ..., l_{m-1}
    std::vector<Int> high;              // l_m, ..., l_K
};

// Digits of p-adic precision needed at p for the low parameters when truncating at K.
std::map<Prime, unsigned> psi0_working_precision(unsigned K);
unsigned psi0_param_precision(Prime p, unsigned k, unsigned K);

EvenSeq<Int> psi0_apply(unsigned m, const Psi0Params& params, unsigned K);

struct Psi0Inverse {
    Psi0Params params;
    std::vector<std::map<Prime, unsigned>> determined;  // per low parameter: digits fixed by the tail
};

Psi0Inverse psi0_invert(unsigned m, const EvenSeq<Int>& seq, unsigned K,
                        const std::map<Prime, unsigned>& prime_precisions = {});

}  // namespace orient
