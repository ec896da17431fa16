#include "orientarith/serialize.hpp"

namespace orient {

namespace {

std::string schema(const std::string& name) { return "orientarith/" + name + "/" + kSchemaVersion; }

Json optional_number(const std::optional<unsigned>& x) { return x ? Json(*x) : Json(nullptr); }

Json valuation_json(const std::optional<Valuation>& v)
{
    if (!v)
        return nullptr;
    if (v->is_infinite())
        return "inf";
    return v->value();
}

template <class T>
Json entries_json(const std::vector<T>& v)
{
    Json a = Json::array();
    for (const auto& x : v)
        a.push_back(x.get_str());
    return a;
}

}  // namespace

Json to_json(const CheckReport& r)
{
    return Json{{"schema", schema("check-report")},
                {"check", r.check},
                {"status", to_string(r.status)},
                {"prime", r.prime ? Json(*r.prime) : Json(nullptr)},
                {"first_failure_weight", optional_number(r.first_failure_weight)},
                {"required_valuation", r.required_valuation ? Json(*r.required_valuation) : Json(nullptr)},
                {"observed_valuation", valuation_json(r.observed_valuation)},
                {"truncation_weight", r.truncation_weight},
                {"detail", r.detail}};
}

Json to_json(const PhiMatrix& P)
{
    Json rows = Json::array(), diag = Json::array(), sets = Json::array();
    for (unsigned k = 0; k < P.row_count(); ++k) {
        rows.push_back(entries_json(P.rows[k]));
        diag.push_back(P.diagonal(k).get_str());
        sets.push_back(P.prime_sets[k]);
    }
    return Json{{"schema", schema("phi-matrix")}, {"m", P.m}, {"rows", rows}, {"diagonal", diag}, {"prime_sets", sets}};
}

Json to_json(const EvenSeq<Int>& seq, const std::string& kind)
{
    return Json{{"schema", schema("sequence")},
                {"kind", kind},
                {"first_weight", 2 * seq.first()},
                {"entries", entries_json(seq.entries())}};
}

Json to_json(const EvenSeq<Rational>& seq, const std::string& kind)
{
    return Json{{"schema", schema("sequence")},
                {"kind", kind},
                {"first_weight", 2 * seq.first()},
                {"entries", entries_json(seq.entries())}};
}

Json to_json(const KOSeq& seq) { return to_json(seq.b, "ko-" + to_string(seq.variant)); }

Json to_json(const TmfSeq& seq) { return to_json(seq.multipliers, "tmf-multipliers"); }

Json to_json(const Obstruction& o)
{
    return Json{{"schema", schema("lift")},
                {"status", "obstructed"},
                {"prime", o.prime},
                {"weight", o.weight},
                {"valuation_deficit", o.deficit},
                {"reason", o.reason}};
}

Json to_json(const QExpansion& f)
{
    return Json{{"schema", schema("q-expansion")},
                {"weight", f.weight},
                {"a0", f.a0.get_str()},
                {"coefficients", entries_json(f.a)}};
}

Json to_json(const PolyQ& f)
{
    return Json{{"degree", f.degree()}, {"coefficients", entries_json(f.coefficients())}, {"text", f.to_string()}};
}

Json to_json(const BasisData& d)
{
    return Json{{"p", d.p}, {"m", d.m}, {"k", d.k}, {"C", d.C.get_str()}, {"valuation", d.valuation()},
                {"c", entries_json(d.c)}};
}

Json to_json(const PadicResidue& r)
{
    return Json{{"p", r.prime()}, {"precision", r.precision()}, {"residue", r.residue().get_str()}};
}

Json to_json(const Mom0Witness& w)
{
    Json primes = Json::array();
    for (const auto& [p, low] : w.low) {
        Json entries = Json::array();
        const auto& det = w.determined.at(p);
        for (size_t i = 0; i < low.size(); ++i)
            entries.push_back(Json{{"weight", 2 * i}, {"residue", low[i].residue().get_str()},
                                   {"precision", low[i].precision()}, {"determined", det[i]}});
        primes.push_back(Json{{"p", p}, {"low_moments", entries}});
    }
    return Json{{"m", w.m}, {"primes", primes}};
}

Json to_json(const Psi0Inverse& inv)
{
    Json low = Json::array();
    for (size_t i = 0; i < inv.params.low.size(); ++i) {
        Json comps = Json::array();
        for (const auto& [p, r] : inv.params.low[i].entries()) {
            Json c = to_json(r);
            c["determined"] = inv.determined[i].at(p);
            comps.push_back(c);
        }
        low.push_back(Json{{"half_weight", i + 1}, {"components", comps}});
    }
    return Json{{"schema", schema("psi0-params")}, {"low", low}, {"high", entries_json(inv.params.high)}};
}

EvenSeq<Rational> sequence_from_json(const Json& j, unsigned default_first_half_weight)
{
    unsigned first = default_first_half_weight;
    if (j.contains("first_weight")) {
        unsigned w = j.at("first_weight").get<unsigned>();
        if (w % 2 != 0 || w == 0)
            throw std::invalid_argument("first_weight must be even and positive");
        first = w / 2;
    }
    std::vector<Rational> entries;
    for (const auto& e : j.at("entries")) {
        if (e.is_string())
            entries.push_back(parse_rational(e.get<std::string>()));
        else if (e.is_number_integer())
            entries.push_back(Rational(Int(std::to_string(e.get<long long>()))));
        else
            throw std::invalid_argument("sequence entries must be integers or \"p/q\" strings");
    }
    return EvenSeq<Rational>(first, std::move(entries));
}

}  // namespace orient
