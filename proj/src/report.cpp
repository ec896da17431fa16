#include "orientarith/report.hpp"

namespace orient {

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::insufficient_precision: return "insufficient_precision";
    case CheckStatus::not_integral: return "not_integral";
    }
    return "unknown";
}

CheckReport pass_report(std::string check, unsigned truncation_weight)
{
    CheckReport r;
    r.check = std::move(check);
    r.truncation_weight = truncation_weight;
    return r;
}

CheckReport earliest_failure(const CheckReport& a, const CheckReport& b)
{
    if (a.passed())
        return b;
    if (b.passed())
        return a;
    auto key = [](const CheckReport& r) {
        return std::make_pair(r.first_failure_weight.value_or(0), r.prime.value_or(0));
    };
    return key(b) < key(a) ? b : a;
}

}  // namespace orient
