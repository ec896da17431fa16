// Thin layer: numbers cross as decimal strings, structured results as JSON text.
// python/orientarith/__init__.py turns both into int / Fraction / dict.
#include "orientarith/cli.hpp"
#include "orientarith/serialize.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace orient;

namespace {

using Strings = std::vector<std::string>;

std::vector<Int> ints(const Strings& xs)
{
    std::vector<Int> out;
    for (const auto& x : xs)
        out.push_back(parse_int(x));
    return out;
}

std::vector<Rational> rationals(const Strings& xs)
{
    std::vector<Rational> out;
    for (const auto& x : xs)
        out.push_back(parse_rational(x));
    return out;
}

Strings strings(const std::vector<Int>& xs)
{
    Strings out;
    for (const auto& x : xs)
        out.push_back(to_string(x));
    return out;
}

Strings strings(const std::vector<Rational>& xs)
{
    Strings out;
    for (const auto& x : xs)
        out.push_back(to_string(x));
    return out;
}

std::string dump(const Json& j) { return j.dump(); }

std::string lift_json(const LiftResult& r)
{
    if (const auto* t = std::get_if<TmfSeq>(&r)) {
        Json j = to_json(*t);
        j["status"] = "lifted";
        return j.dump();
    }
    return to_json(std::get<Obstruction>(r)).dump();
}

}  // namespace

PYBIND11_MODULE(_orientarith, mod)
{
    py::register_exception<MembershipError>(mod, "MembershipError", PyExc_ValueError);
    py::register_exception<PrecisionError>(mod, "PrecisionError", PyExc_ArithmeticError);

    mod.attr("SCHEMA_VERSION") = kSchemaVersion;

    mod.def("bernoulli", [](unsigned n) { return to_string(bernoulli(n)); });
    mod.def("padic_valuation", [](const std::string& x, Prime p) {
        Valuation v = padic_valuation(parse_rational(x), p);
        return v.is_infinite() ? std::optional<long>() : std::optional<long>(v.value());
    });
    mod.def("moment_modulus", [](unsigned k) { return to_string(moment_modulus(k)); });

    mod.def("phi_matrix", [](unsigned m, unsigned rows) { return dump(to_json(phi_matrix(m, rows))); });
    mod.def("phi_apply", [](unsigned m, const Strings& l, unsigned K) {
        return strings(phi_apply(m, ints(l), K).entries());
    });
    mod.def("phi_invert", [](unsigned m, unsigned first, const Strings& seq, unsigned K) {
        return strings(phi_invert(m, EvenSeq<Int>(first, ints(seq)), K));
    });
    mod.def("mom_euler_check", [](unsigned m, unsigned first, const Strings& seq, unsigned K) {
        return dump(to_json(mom_euler_check(EvenSeq<Int>(first, ints(seq)), m, K)));
    });
    mod.def("mom0_check", [](unsigned m, unsigned first, const Strings& seq, unsigned K) {
        Mom0Result r = mom0_check(EvenSeq<Int>(first, ints(seq)), m, K);
        Json j = to_json(r.report);
        if (r.report.passed())
            j["witness"] = to_json(r.witness);
        return dump(j);
    });

    // low[k-1] maps p to the residue of l_k; the precision is the one psi0 works at for K.
    mod.def("psi0_apply", [](unsigned m, const std::vector<std::map<Prime, std::string>>& low,
                             const Strings& high, unsigned K) {
        Psi0Params params;
        for (size_t k = 1; k <= low.size(); ++k) {
            ProfiniteResidue l;
            for (auto [p, n] : psi0_working_precision(K)) {
                auto it = low[k - 1].find(p);
                Int x = it == low[k - 1].end() ? Int(0) : parse_int(it->second);
                l.set(PadicResidue(p, std::max(1u, psi0_param_precision(p, static_cast<unsigned>(k), K)), x));
            }
            params.low.push_back(l);
        }
        params.high = ints(high);
        return strings(psi0_apply(m, params, K).entries());
    });
    mod.def("psi0_invert", [](unsigned m, unsigned first, const Strings& seq, unsigned K) {
        return dump(to_json(psi0_invert(m, EvenSeq<Int>(first, ints(seq)), K)));
    });
    mod.def("psi2_apply", [](const Strings& q, unsigned K) {
        return strings(psi2_apply(EvenSeq<Int>(2, ints(q)), K).multipliers.entries());
    });

    mod.def("eisenstein", [](unsigned k, unsigned terms) { return dump(to_json(eisenstein(k, terms))); });
    mod.def("ko_check", [](const std::string& variant, const Strings& seq, unsigned K) {
        Variant v = parse_variant(variant);
        KOSeq s{v, EvenSeq<Rational>(start_half_weight(v), rationals(seq))};
        return dump(to_json(ko_check(s, K)));
    });
    mod.def("tmf_check", [](const Strings& multipliers, unsigned K, unsigned q_terms) {
        return dump(to_json(tmf_check(TmfSeq{EvenSeq<Rational>(2, rationals(multipliers))}, K, q_terms)));
    });
    mod.def("cusp_evaluate", [](const Strings& multipliers) {
        return strings(cusp_evaluate(TmfSeq{EvenSeq<Rational>(2, rationals(multipliers))}).b.entries());
    });
    mod.def("lift_to_tmf", [](const std::string& variant, const Strings& seq, unsigned K) {
        Variant v = parse_variant(variant);
        return lift_json(lift_to_tmf(KOSeq{v, EvenSeq<Rational>(start_half_weight(v), rationals(seq))}, K));
    });

    mod.def("basis_data", [](Prime p, unsigned k, unsigned m) { return dump(to_json(basis_data(p, m, k))); });
    mod.def("basis_rank_check", &basis_rank_check);
    mod.def("spin_extend", [](Prime p, const std::string& b2, unsigned precision, const Strings& l_string,
                              unsigned K) {
        return strings(spin_extend(p, PadicResidue(p, precision, parse_int(b2)), ints(l_string), K).entries());
    });

    mod.def("run_cli", [](const Strings& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
