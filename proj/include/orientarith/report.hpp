#pragma once

#include "orientarith/exact.hpp"

#include <optional>
#include <string>

namespace orient {

enum class CheckStatus { pass, fail, insufficient_precision, not_integral };

std::string to_string(CheckStatus s);

// Verdicts hold up to the stated truncation weight only.
struct CheckReport {
    std::string check;
    CheckStatus status = CheckStatus::pass;
    std::optional<Prime> prime;
    std::optional<unsigned> first_failure_weight;
    std::optional<long> required_valuation;
    std::optional<Valuation> observed_valuation;
    unsigned truncation_weight = 0;
    std::string detail;

    bool passed() const { return status == CheckStatus::pass; }
};

CheckReport pass_report(std::string check, unsigned truncation_weight);

// Earliest failure by weight, then by prime; a pass only if both pass.
CheckReport earliest_failure(const CheckReport& a, const CheckReport& b);

}  // namespace orient
