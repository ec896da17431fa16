#pragma once

#include "orientarith/exact.hpp"

#include <optional>
#include <vector>

namespace orient {

// Congruences sum_j a_j u_j = r (mod p^e) in unknowns u_j ranging over Z_p.
class LocalLinearSystem {
public:
    LocalLinearSystem(Prime p, size_t unknowns);

    void add(std::vector<Int> coeffs, Int rhs, unsigned exponent);
    size_t unknowns() const { return n_; }
    size_t rows() const { return rows_.size(); }

    struct Solution {
        std::vector<Int> values;          // one solution, modulo p^E for the largest row exponent E
        std::vector<unsigned> precision;  // u_j is forced modulo p^precision[j]
    };
    std::optional<Solution> solve() const;

private:
    struct Row {
        std::vector<Int> coeffs;
        Int rhs;
        unsigned exponent;
    };
    Prime p_;
    size_t n_;
    std::vector<Row> rows_;
};

}  // namespace orient
