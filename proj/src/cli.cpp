#include "orientarith/cli.hpp"

#include "orientarith/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

namespace orient::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    unsigned m = 0;  // 0 picks the command's default
    std::string variant = "string";
    std::optional<unsigned> K;
    unsigned rows = 4;
    std::string primes;
    unsigned precision = 12;
    unsigned terms = 100;
    std::string format = "json";
    std::string in;
    std::string out;
    std::string seq;
    std::vector<std::string> sets;
    std::optional<unsigned> weight;
    std::optional<Prime> p;
    std::string b2;
    std::string lattice;
    std::string c;
    std::string checker;
};

constexpr unsigned kDefaultK = 12;

struct Output {
    Json json;
    std::string csv;
    std::string text;
    int code = exit_ok;
};

// ---- input parsing

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',' || ch == ';' || std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' ||
            ch == '[' || ch == ']') {
            if (!cur.empty())
                out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

std::vector<Int> parse_int_list(const std::string& s)
{
    std::vector<Int> out;
    for (const auto& tok : split_list(s))
        out.push_back(parse_int(tok));
    return out;
}

std::vector<Prime> parse_prime_list(const std::string& s)
{
    std::vector<Prime> out;
    for (const auto& tok : split_list(s)) {
        Int x = parse_int(tok);
        if (x < 2 || !x.fits_ulong_p() || !is_prime(x.get_ui()))
            throw UsageError("not a prime: " + tok);
        out.push_back(x.get_ui());
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw UsageError("cannot read " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

struct LoadedSeq {
    EvenSeq<Rational> seq;
    std::string kind;  // from a JSON input, empty otherwise
};

std::optional<LoadedSeq> load_sequence(const Config& cfg, unsigned default_first)
{
    std::string body;
    if (!cfg.seq.empty())
        body = cfg.seq;
    else if (!cfg.in.empty())
        body = read_file(cfg.in);
    else
        return std::nullopt;

    LoadedSeq out;
    auto start = body.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && body[start] == '{') {
        Json j = Json::parse(body);
        if (j.contains("multipliers"))  // a lift report
            j = j.at("multipliers");
        out.seq = sequence_from_json(j, default_first);
        out.kind = j.value("kind", "");
    } else {
        std::vector<Rational> entries;
        for (const auto& tok : split_list(body))
            entries.push_back(parse_rational(tok));
        out.seq = EvenSeq<Rational>(default_first, std::move(entries));
    }
    if (out.seq.empty())
        throw UsageError("empty sequence");
    return out;
}

LoadedSeq require_sequence(const Config& cfg, unsigned default_first)
{
    auto s = load_sequence(cfg, default_first);
    if (!s)
        throw UsageError("no sequence given (use --seq or --in)");
    return *s;
}

EvenSeq<Int> integer_sequence(const EvenSeq<Rational>& s)
{
    return s.map([](unsigned k, const Rational& x) {
        if (!is_integer(x))
            throw UsageError("entry at weight " + std::to_string(2 * k) + " must be an integer");
        return Int(x.get_num());
    });
}

unsigned resolve_K(const Config& cfg, const EvenSeq<Rational>& seq, unsigned first)
{
    if (seq.first() != first)
        throw UsageError("sequence must start at weight " + std::to_string(2 * first));
    if (!cfg.K)
        return seq.last();
    if (*cfg.K < first || *cfg.K > seq.last())
        throw UsageError("--K " + std::to_string(*cfg.K) + " is outside the sequence's range of half-weights " +
                         std::to_string(first) + ".." + std::to_string(seq.last()));
    return *cfg.K;
}

std::map<Prime, unsigned> budget(const Config& cfg, unsigned K)
{
    std::map<Prime, unsigned> out;
    for (Prime p : primes_S(K))
        out[p] = cfg.precision;
    return out;
}

// --set lK=v
std::map<unsigned, Int> parse_sets(const Config& cfg)
{
    std::map<unsigned, Int> out;
    for (const auto& s : cfg.sets) {
        auto eq = s.find('=');
        if (s.size() < 4 || s[0] != 'l' || eq == std::string::npos || eq < 2)
            throw UsageError("--set expects lK=value, got " + s);
        Int k = parse_int(s.substr(1, eq - 1));
        if (k < 1 || !k.fits_uint_p())
            throw UsageError("parameter index must be >= 1: " + s);
        out[static_cast<unsigned>(k.get_ui())] = parse_int(s.substr(eq + 1));
    }
    return out;
}

Psi0Params params_from_sets(const Config& cfg, unsigned m, unsigned K)
{
    auto sets = parse_sets(cfg);
    for (const auto& [k, v] : sets)
        if (k > K)
            throw UsageError("parameter l" + std::to_string(k) + " exceeds --K");
    Psi0Params params;
    auto working = psi0_working_precision(K);
    for (unsigned k = 1; k < m; ++k) {
        std::map<Prime, unsigned> prec;
        for (auto [p, n] : working)
            prec[p] = std::max(1u, psi0_param_precision(p, k, K));
        params.low.push_back(ProfiniteResidue::from_integer(sets.count(k) ? sets[k] : Int(0), prec));
    }
    for (unsigned k = m; k <= K; ++k)
        params.high.push_back(sets.count(k) ? sets[k] : Int(0));
    return params;
}

// ---- output formatting

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"')
            q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string scalar_text(const Json& v)
{
    if (v.is_null())
        return "";
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

std::string flat_csv(const Json& j)
{
    std::string s = "field,value\n";
    for (const auto& [key, v] : j.items())
        if (key != "schema")
            s += key + "," + csv_field(scalar_text(v)) + "\n";
    return s;
}

std::string flat_text(const Json& j)
{
    std::string s;
    for (const auto& [key, v] : j.items())
        if (key != "schema" && !v.is_null() && !(v.is_string() && v.get<std::string>().empty()))
            s += key + ": " + scalar_text(v) + "\n";
    return s;
}

template <class T>
std::string seq_csv(const EvenSeq<T>& seq)
{
    std::string s = "weight,value\n";
    for (unsigned k = seq.first(); !seq.empty() && k <= seq.last(); ++k)
        s += std::to_string(2 * k) + "," + seq.at(k).get_str() + "\n";
    return s;
}

template <class T>
std::string seq_text(const EvenSeq<T>& seq, const std::string& symbol)
{
    std::string s;
    for (unsigned k = seq.first(); !seq.empty() && k <= seq.last(); ++k)
        s += symbol + "_" + std::to_string(2 * k) + " = " + seq.at(k).get_str() + "\n";
    return s;
}

Output report_output(const CheckReport& r)
{
    Output o;
    o.json = to_json(r);
    o.csv = flat_csv(o.json);
    o.text = flat_text(o.json);
    o.code = r.passed() ? exit_ok : exit_negative;
    return o;
}

// ---- commands

Output cmd_phi_matrix(const Config& cfg)
{
    unsigned m = cfg.m ? cfg.m : 1;
    PhiMatrix P = phi_matrix(m, cfg.rows);
    Output o;
    o.json = to_json(P);
    o.csv = "k,j,value\n";
    for (unsigned k = 0; k < P.row_count(); ++k) {
        for (unsigned j = 0; j <= k; ++j)
            o.csv += std::to_string(k) + "," + std::to_string(j) + "," + P.at(k, j).get_str() + "\n";
        std::string primes;
        for (Prime p : P.prime_sets[k])
            primes += (primes.empty() ? "" : ",") + std::to_string(p);
        std::string row;
        for (const auto& x : P.rows[k])
            row += (row.empty() ? "" : ", ") + x.get_str();
        o.text += "k=" + std::to_string(k) + "  M=" + P.diagonal(k).get_str() + "  S={" + primes + "}  (" + row + ")\n";
    }
    return o;
}

Output cmd_verify(const Config& cfg)
{
    const std::string& c = cfg.checker;
    if (c == "mom-euler" || c == "mom0") {
        unsigned m = cfg.m ? cfg.m : 1;
        auto in = require_sequence(cfg, m);
        unsigned K = resolve_K(cfg, in.seq, m);
        EvenSeq<Int> seq = integer_sequence(in.seq);
        if (c == "mom-euler")
            return report_output(mom_euler_check(seq, m, K));
        Mom0Result r = mom0_check(seq, m, K, budget(cfg, K));
        Output o = report_output(r.report);
        if (r.report.passed() && m > 1)
            o.json["witness"] = to_json(r.witness);
        return o;
    }
    if (c == "ko-spin" || c == "ko-string") {
        Variant v = c == "ko-spin" ? Variant::spin : Variant::string;
        unsigned first = start_half_weight(v);
        auto in = require_sequence(cfg, first);
        unsigned K = resolve_K(cfg, in.seq, first);
        auto cs = parse_int_list(cfg.c);
        return report_output(ko_check(KOSeq{v, in.seq}, K, cs));
    }
    if (c == "tmf") {
        auto in = require_sequence(cfg, 2);
        unsigned K = resolve_K(cfg, in.seq, 2);
        return report_output(tmf_check(TmfSeq{in.seq}, K, cfg.terms));
    }
    throw UsageError("unknown checker " + c);
}

Output cmd_psi0(const Config& cfg)
{
    unsigned m = cfg.m ? cfg.m : 2;
    Output o;
    if (auto in = load_sequence(cfg, m)) {
        unsigned K = resolve_K(cfg, in->seq, m);
        Psi0Inverse inv = psi0_invert(m, integer_sequence(in->seq), K, budget(cfg, K));
        o.json = to_json(inv);
        o.json["m"] = m;
        o.json["truncation_weight"] = 2 * K;
        o.csv = "half_weight,prime,value,precision\n";
        for (size_t i = 0; i < inv.params.low.size(); ++i)
            for (const auto& [p, r] : inv.params.low[i].entries()) {
                o.csv += std::to_string(i + 1) + "," + std::to_string(p) + "," + r.residue().get_str() + "," +
                         std::to_string(inv.determined[i].at(p)) + "\n";
                o.text += "l_" + std::to_string(i + 1) + " = " + r.to_string() + " (determined to " +
                          std::to_string(inv.determined[i].at(p)) + " digits)\n";
            }
        for (size_t i = 0; i < inv.params.high.size(); ++i) {
            o.csv += std::to_string(m + i) + ",," + inv.params.high[i].get_str() + ",\n";
            o.text += "l_" + std::to_string(m + i) + " = " + inv.params.high[i].get_str() + "\n";
        }
        return o;
    }
    unsigned K = cfg.K.value_or(kDefaultK);
    if (K < m)
        throw UsageError("--K must be at least --m");
    EvenSeq<Int> seq = psi0_apply(m, params_from_sets(cfg, m, K), K);
    o.json = to_json(seq, "mom0");
    o.csv = seq_csv(seq);
    o.text = seq_text(seq, "b");
    return o;
}

Output cmd_psi2(const Config& cfg)
{
    EvenSeq<Int> q;
    unsigned K;
    if (auto in = load_sequence(cfg, 2)) {
        K = resolve_K(cfg, in->seq, 2);
        q = integer_sequence(in->seq);
    } else {
        K = cfg.K.value_or(kDefaultK);
        if (K < 2)
            throw UsageError("--K must be at least 2");
        q = psi0_apply(2, params_from_sets(cfg, 2, K), K);
    }
    TmfSeq r = psi2_apply(q, K);
    Output o;
    o.json = to_json(r);
    o.csv = seq_csv(r.multipliers);
    o.text = seq_text(r.multipliers, "r");
    return o;
}

Output cmd_eisenstein(const Config& cfg)
{
    if (!cfg.weight)
        throw UsageError("eisenstein needs --k");
    QExpansion f = eisenstein(*cfg.weight, cfg.terms);
    Output o;
    o.json = to_json(f);
    std::string w = std::to_string(f.weight);
    o.csv = "weight,n,coefficient\n" + w + ",0," + f.a0.get_str() + "\n";
    o.text = "G_" + w + " = " + f.a0.get_str();
    for (size_t n = 1; n <= f.a.size(); ++n) {
        o.csv += w + "," + std::to_string(n) + "," + f.a[n - 1].get_str() + "\n";
        o.text += " + " + f.a[n - 1].get_str() + " q^" + std::to_string(n);
    }
    o.text += " + O(q^" + std::to_string(f.a.size() + 1) + ")\n";
    return o;
}

KOSeq ko_input(const Config& cfg, Variant v, unsigned& K)
{
    unsigned first = start_half_weight(v);
    if (!cfg.lattice.empty()) {
        if (!cfg.seq.empty() || !cfg.in.empty())
            throw UsageError("give either --lattice or a sequence, not both");
        K = cfg.K.value_or(kDefaultK);
        if (K < first)
            throw UsageError("--K is below the first half-weight");
        return ko_from_lattice(v, parse_int_list(cfg.lattice), K);
    }
    auto in = require_sequence(cfg, first);
    if (in.kind == "tmf-multipliers") {
        if (v != Variant::string)
            throw UsageError("tmf multipliers give string sequences");
        K = resolve_K(cfg, in.seq, 2);
        return cusp_evaluate(TmfSeq{in.seq});
    }
    K = resolve_K(cfg, in.seq, first);
    return {v, in.seq};
}

Output cmd_check_ko(const Config& cfg)
{
    unsigned K = 0;
    KOSeq seq = ko_input(cfg, parse_variant(cfg.variant), K);
    return report_output(ko_check(seq, K, parse_int_list(cfg.c)));
}

Output cmd_check_tmf(const Config& cfg)
{
    auto in = require_sequence(cfg, 2);
    unsigned K = resolve_K(cfg, in.seq, 2);
    return report_output(tmf_check(TmfSeq{in.seq}, K, cfg.terms));
}

Output cmd_lift(const Config& cfg)
{
    unsigned K = 0;
    KOSeq seq = ko_input(cfg, Variant::string, K);
    LiftResult res = lift_to_tmf(seq, K);
    Output o;
    bool lifted = std::holds_alternative<TmfSeq>(res);
    if (lifted) {
        const auto& r = std::get<TmfSeq>(res);
        o.json = Json{{"schema", std::string("orientarith/lift/") + kSchemaVersion},
                      {"status", "lifted"},
                      {"truncation_weight", 2 * K},
                      {"multipliers", to_json(r)}};
        o.csv = seq_csv(r.multipliers);
        o.text = "lifted up to weight " + std::to_string(2 * K) + "\n" + seq_text(r.multipliers, "r");
    } else {
        o.json = to_json(std::get<Obstruction>(res));
        o.json["truncation_weight"] = 2 * K;
        o.csv = flat_csv(o.json);
        o.text = flat_text(o.json);
        o.code = exit_negative;
    }
    if (!cfg.primes.empty()) {
        Json checks = Json::array();
        for (Prime p : parse_prime_list(cfg.primes)) {
            CheckReport z = zeta_ideal_check(seq, p, default_generator(p), K);
            checks.push_back(to_json(z));
            o.text += "zeta-ideal cross-check at p = " + std::to_string(p) + ": " + to_string(z.status) + "\n";
        }
        o.json["zeta_cross_checks"] = checks;
    }
    return o;
}

Output cmd_spin_extend(const Config& cfg)
{
    if (!cfg.p || !is_prime(*cfg.p))
        throw UsageError("spin-extend needs a prime --p");
    Prime p = *cfg.p;
    unsigned K = cfg.K.value_or(kDefaultK);
    if (K < 1)
        throw UsageError("--K must be at least 1");
    std::string b2 = cfg.b2.empty() ? "0" : cfg.b2;
    unsigned N = cfg.precision;
    auto colon = b2.find(':');
    if (colon != std::string::npos) {
        Int n = parse_int(b2.substr(colon + 1));
        if (n < 1 || !n.fits_uint_p())
            throw UsageError("--b2 precision must be >= 1");
        N = static_cast<unsigned>(n.get_ui());
        b2 = b2.substr(0, colon);
    }
    if (N < 1)
        throw UsageError("precision must be >= 1");
    PadicResidue target = PadicResidue::from_rational(parse_rational(b2), p, N);
    EvenSeq<Rational> seq = spin_extend(p, target, parse_int_list(cfg.lattice), K);
    CheckReport check = local_euler_check(seq, p, 1, K);
    Output o;
    o.json = Json{{"schema", std::string("orientarith/spin-extension/") + kSchemaVersion},
                  {"p", p},
                  {"b2_target", to_json(target)},
                  {"sequence", to_json(seq, "spin-torsor-local")},
                  {"local_check", to_json(check)}};
    o.csv = seq_csv(seq);
    o.text = "p-local spin extension at p = " + std::to_string(p) + ", b_2 target " + target.to_string() + "\n" +
             seq_text(seq, "t") + "local congruences: " + to_string(check.status) + "\n";
    o.code = check.passed() ? exit_ok : exit_negative;
    return o;
}

Output cmd_basis_dump(const Config& cfg)
{
    std::vector<Prime> primes;
    if (cfg.p)
        primes.push_back(*cfg.p);
    for (Prime q : parse_prime_list(cfg.primes))
        primes.push_back(q);
    if (primes.empty())
        primes = {2, 3, 5};
    for (Prime q : primes)
        if (!is_prime(q))
            throw UsageError("not a prime: " + std::to_string(q));
    unsigned kmax = cfg.weight.value_or(2);
    unsigned m = cfg.m ? cfg.m : 1;
    if (kmax < 1)
        throw UsageError("--k must be at least 1");

    Output o;
    o.json = Json{{"schema", std::string("orientarith/basis/") + kSchemaVersion}, {"m", m}, {"primes", Json::array()}};
    o.csv = "p,m,k,C,valuation,c\n";
    for (Prime p : primes) {
        Json e = Json::array(), E = Json::array(), data = Json::array();
        o.text += "p = " + std::to_string(p) + "\n";
        for (unsigned j = 0; j == 0 || euler_phi_prime_power(p, j) <= 2 * kmax; ++j) {
            PolyQ f = e_poly(p, j);
            Json fj = to_json(f);
            fj["j"] = j;
            e.push_back(fj);
            o.text += "  e_" + std::to_string(j) + " = " + f.to_string() + "\n";
        }
        for (unsigned n = 2; n <= 2 * kmax; n += 2) {
            PolyQ f = big_e_poly(p, n);
            Json fj = to_json(f);
            fj["n"] = n;
            E.push_back(fj);
            o.text += "  E_" + std::to_string(n) + " = " + f.to_string() + "\n";
        }
        for (unsigned k = 1; k <= kmax; ++k) {
            BasisData d = basis_data(p, m, k);
            data.push_back(to_json(d));
            std::string cs;
            for (const auto& x : d.c)
                cs += (cs.empty() ? "" : ";") + x.get_str();
            o.csv += std::to_string(p) + "," + std::to_string(m) + "," + std::to_string(k) + "," + d.C.get_str() + "," +
                     std::to_string(d.valuation()) + "," + cs + "\n";
            o.text += "  C_" + std::to_string(p) + "(" + std::to_string(k) + ") = " + d.C.get_str() + "  c = (" + cs +
                      ")\n";
        }
        o.json["primes"].push_back(Json{{"p", p}, {"e", e}, {"E", E}, {"basis_data", data}});
    }
    return o;
}

// ---- plumbing

void add_io(CLI::App* sub, Config& cfg)
{
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", cfg.out, "Write the output to this file");
}

void add_sequence_input(CLI::App* sub, Config& cfg)
{
    sub->add_option("--seq", cfg.seq, "Inline sequence, comma separated; fractions as num/den");
    sub->add_option("--in", cfg.in, "Sequence file: a sequence JSON document or a plain list");
}

void add_K(CLI::App* sub, Config& cfg)
{
    sub->add_option("--K", cfg.K, "Truncation half-weight");
}

void write_output(const Output& o, const Config& cfg, std::ostream& out)
{
    std::string body;
    if (cfg.format == "csv")
        body = o.csv;
    else if (cfg.format == "text")
        body = o.text;
    else
        body = o.json.dump(2) + "\n";
    if (cfg.out.empty()) {
        out << body;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f)
        throw UsageError("cannot write " + cfg.out);
    f << body;
}

Output membership_output(const MembershipError& e)
{
    Output o;
    o.json = Json{{"schema", std::string("orientarith/membership/") + kSchemaVersion},
                  {"status", "not_in_group"},
                  {"group", e.group()},
                  {"index", e.index()},
                  {"detail", e.what()}};
    o.csv = flat_csv(o.json);
    o.text = flat_text(o.json);
    o.code = exit_negative;
    return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Exact arithmetic for multiplicative KO and tmf orientations", "orientarith"};
    app.require_subcommand(1, 1);

    auto* phi = app.add_subcommand("phi-matrix", "Rows of the lattice matrix Phi^(m)");
    phi->add_option("--m", cfg.m, "Shift m >= 1 (default 1)");
    phi->add_option("--rows", cfg.rows, "Last row index R (default 4)");
    add_io(phi, cfg);

    auto* verify = app.add_subcommand("verify", "Run a membership checker on a sequence");
    verify->add_option("checker", cfg.checker, "mom-euler | mom0 | ko-spin | ko-string | tmf")
        ->required()
        ->check(CLI::IsMember({"mom-euler", "mom0", "ko-spin", "ko-string", "tmf"}));
    verify->add_option("sequence", cfg.seq, "Inline sequence (same as --seq)");
    verify->add_option("--m", cfg.m, "Shift m for mom-euler and mom0 (default 1)");
    verify->add_option("--precision", cfg.precision, "p-adic digits reported in the mom0 witness (default 12)");
    verify->add_option("--terms", cfg.terms, "q-expansion terms for the tmf Hecke spot check (default 100)");
    verify->add_option("--c", cfg.c, "Twist units for the direct KO measure cross-check");
    add_sequence_input(verify, cfg);
    add_K(verify, cfg);
    add_io(verify, cfg);

    auto* psi0 = app.add_subcommand("psi0", "The bijection Psi^(0)_m; inverts when a sequence is given");
    psi0->add_option("--m", cfg.m, "Shift m >= 1 (default 2)");
    psi0->add_option("--set", cfg.sets, "Parameter lK=value; repeatable")->take_all();
    psi0->add_option("--precision", cfg.precision, "p-adic digits for recovered profinite parameters (default 12)");
    add_sequence_input(psi0, cfg);
    add_K(psi0, cfg);
    add_io(psi0, cfg);

    auto* psi2 = app.add_subcommand("psi2", "tmf multipliers r = 1 + q for q in Mom^(0) from weight 4");
    psi2->add_option("--set", cfg.sets, "Psi^(0)_2 parameter lK=value; repeatable")->take_all();
    add_sequence_input(psi2, cfg);
    add_K(psi2, cfg);
    add_io(psi2, cfg);

    auto* eis = app.add_subcommand("eisenstein", "q-expansion of the Eisenstein series G_k");
    eis->add_option("--k", cfg.weight, "Even weight >= 4")->required();
    eis->add_option("--terms", cfg.terms, "Number of coefficients a_1..a_T (default 100)");
    add_io(eis, cfg);

    auto* ko = app.add_subcommand("check-ko", "Check a KO characteristic sequence");
    ko->add_option("--variant", cfg.variant, "spin | string (default string)")
        ->check(CLI::IsMember({"spin", "string"}));
    ko->add_option("--lattice", cfg.lattice, "Build the sequence from lattice coordinates instead");
    ko->add_option("--c", cfg.c, "Twist units for the direct measure cross-check");
    add_sequence_input(ko, cfg);
    add_K(ko, cfg);
    add_io(ko, cfg);

    auto* tmf = app.add_subcommand("check-tmf", "Check tmf multipliers r_k (the forms r_k G_k)");
    tmf->add_option("--terms", cfg.terms, "q-expansion terms for the Hecke spot check (default 100, 0 skips)");
    add_sequence_input(tmf, cfg);
    add_K(tmf, cfg);
    add_io(tmf, cfg);

    auto* lift = app.add_subcommand("lift", "Lift a KO string sequence to tmf or name the obstruction");
    lift->add_option("--lattice", cfg.lattice, "Build the sequence from string lattice coordinates");
    lift->add_option("--primes", cfg.primes, "Also run the zeta-ideal cross-check at these primes");
    add_sequence_input(lift, cfg);
    add_K(lift, cfg);
    add_io(lift, cfg);

    auto* spin = app.add_subcommand("spin-extend", "p-local spin extension of string data");
    spin->add_option("--p", cfg.p, "Prime")->required();
    spin->add_option("--b2", cfg.b2, "Target b_2 as value or value:N (default 0)");
    spin->add_option("--lattice", cfg.lattice, "Free string parameters, one per half-weight from 2");
    spin->add_option("--precision", cfg.precision, "Digits N when --b2 has no :N (default 12)");
    add_K(spin, cfg);
    add_io(spin, cfg);

    auto* basis = app.add_subcommand("basis-dump", "Basis polynomials and the constants C_p(k), c^(k,p)");
    basis->add_option("--p", cfg.p, "Prime");
    basis->add_option("--primes", cfg.primes, "Comma separated primes (default 2,3,5)");
    basis->add_option("--k", cfg.weight, "Largest half-weight k (default 2)");
    basis->add_option("--m", cfg.m, "Shift m (default 1)");
    add_io(basis, cfg);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    try {
        Output o;
        try {
            if (phi->parsed())
                o = cmd_phi_matrix(cfg);
            else if (verify->parsed())
                o = cmd_verify(cfg);
            else if (psi0->parsed())
                o = cmd_psi0(cfg);
            else if (psi2->parsed())
                o = cmd_psi2(cfg);
            else if (eis->parsed())
                o = cmd_eisenstein(cfg);
            else if (ko->parsed())
                o = cmd_check_ko(cfg);
            else if (tmf->parsed())
                o = cmd_check_tmf(cfg);
            else if (lift->parsed())
                o = cmd_lift(cfg);
            else if (spin->parsed())
                o = cmd_spin_extend(cfg);
            else
                o = cmd_basis_dump(cfg);
        } catch (const MembershipError& e) {
            o = membership_output(e);
        }
        write_output(o, cfg, out);
        return o.code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const PrecisionError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const Json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
    return exit_usage;
}

}  // namespace orient::cli
