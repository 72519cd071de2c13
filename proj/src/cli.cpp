#include "lecf/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lecf/confrac.hpp"
#include "lecf/constructions.hpp"
#include "lecf/errors.hpp"
#include "lecf/poset_io.hpp"
#include "lecf/search.hpp"

namespace lecf::cli {

namespace {

using nlohmann::json;

constexpr char kBracketGuard = '\x01';

struct Config {
    std::string command;
    std::vector<std::string> inputs;
    std::string format = "auto";
    std::string verify = "dp";
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::uint64_t ideal_cap = CountOptions{}.ideal_cap;
    std::size_t dp_cap = VerifyOptions{}.dp_cap;
    SearchBounds bounds;
    std::string scope = "tail";
    double slack = 2.0;
    std::size_t candidates = 3;
    std::uint64_t numerator = 0; // scan gr: 0 means "best candidates"
    std::string catalog;
    std::optional<Element> x;
};

json config_json(const Config& c) {
    json j;
    j["command"] = c.command;
    j["inputs"] = c.inputs;
    j["format"] = c.format;
    j["verify"] = c.verify;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    j["ideal_cap"] = c.ideal_cap;
    j["dp_cap"] = c.dp_cap;
    j["bounds"] = {{"max_depth", c.bounds.max_depth},
                   {"max_numerator", c.bounds.max_numerator},
                   {"max_quotient", c.bounds.max_quotient},
                   {"max_alpha_den", c.bounds.max_alpha_den}};
    j["scope"] = c.scope;
    j["slack"] = c.slack;
    j["candidates"] = c.candidates;
    j["numerator"] = c.numerator;
    j["catalog"] = c.catalog;
    j["x"] = c.x ? json(*c.x) : json(nullptr);
    return j;
}

// Resolved output format: the per-command default when "auto".
std::string format_for(const Config& c, const std::string& fallback, std::initializer_list<const char*> allowed) {
    std::string f = c.format == "auto" ? fallback : c.format;
    for (const char* a : allowed) {
        if (f == a) {
            return f;
        }
    }
    throw DomainError("format '" + f + "' is not available for '" + c.command + "'");
}

void expect_inputs(const Config& c, std::size_t lo, std::size_t hi) {
    if (c.inputs.size() < lo || c.inputs.size() > hi) {
        throw DomainError("'" + c.command + "' expects " +
                          (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                          " argument(s), got " + std::to_string(c.inputs.size()));
    }
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
    BigInt v = parse_integer(s);
    if (v < 0) {
        throw DomainError(std::string(what) + " must be non-negative, got " + s);
    }
    return to_u64(v);
}

ReducedScope parse_scope(const std::string& s) {
    if (s == "tail") {
        return ReducedScope::kTail;
    }
    if (s == "all") {
        return ReducedScope::kAll;
    }
    throw DomainError("scope must be 'tail' or 'all', got '" + s + "'");
}

VerifyOptions verify_options(const Config& c) {
    VerifyOptions v;
    v.dp_cap = c.dp_cap;
    v.count.ideal_cap = c.ideal_cap;
    if (c.verify == "none") {
        v.level = Verification::kNone;
    } else if (c.verify == "dp") {
        v.level = Verification::kDp;
    } else if (c.verify == "bruteforce") {
        v.level = Verification::kBruteForce;
    } else {
        throw DomainError("verification level must be none, dp or bruteforce, got '" + c.verify + "'");
    }
    return v;
}

json convergents_json(const ConvergentTable& t) {
    json rows = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        rows.push_back({{"i", i}, {"C", to_string(t[i].numerator)}, {"D", to_string(t[i].denominator)}});
    }
    return rows;
}

void print_convergents(const Config& c, const ConvergentTable& t, std::ostream& out) {
    auto f = format_for(c, "text", {"text", "csv", "json"});
    if (f == "json") {
        out << convergents_json(t).dump(2) << '\n';
    } else if (f == "csv") {
        out << "i,C,D\n";
        for (std::size_t i = 0; i < t.size(); ++i) {
            out << i << ',' << t[i].numerator << ',' << t[i].denominator << '\n';
        }
    } else {
        for (std::size_t i = 0; i < t.size(); ++i) {
            out << "C" << i << " = " << t[i].numerator << "  D" << i << " = " << t[i].denominator << '\n';
        }
    }
}

// Single scalar result: text prints the value, json wraps it.
void print_value(const Config& c, const std::string& key, const json& value, const std::string& text,
                 std::ostream& out) {
    auto f = format_for(c, "text", {"text", "json"});
    if (f == "json") {
        out << json{{"input", c.inputs}, {key, value}}.dump(2) << '\n';
    } else {
        out << text << '\n';
    }
}

// ---------------------------------------------------------------------------

int cmd_cf(const std::string& op, const Config& c, std::ostream& out) {
    expect_inputs(c, 1, 1);
    const std::string& in = c.inputs[0];
    if (op == "expand") {
        SimpleCF cf = cf_expand(parse_rational(in));
        json q = json::array();
        for (const auto& b : cf.quotients) {
            q.push_back(to_string(b));
        }
        print_value(c, "quotients", q, to_string(cf), out);
    } else if (op == "eval") {
        Rational v = cf_eval(parse_simple_cf(in));
        print_value(c, "value", to_string(v), to_string(v), out);
    } else {
        BigInt w = weight_s(parse_rational(in));
        print_value(c, "weight", to_string(w), to_string(w), out);
    }
    return kExitOk;
}

int cmd_gcf(const std::string& op, const Config& c, std::ostream& out) {
    expect_inputs(c, 1, 1);
    GCF g = parse_gcf(c.inputs[0]);
    if (op == "eval") {
        Rational v = gcf_eval(g);
        print_value(c, "value", to_string(v), to_string(v), out);
    } else if (op == "balanced") {
        bool b = gcf_is_balanced(g);
        print_value(c, "balanced", b, b ? "true" : "false", out);
    } else if (op == "weight") {
        BigInt w = weight_g(g);
        print_value(c, "weight", to_string(w), to_string(w), out);
    } else {
        print_convergents(c, gcf_convergents(g), out);
    }
    return kExitOk;
}

int cmd_rgcf(const std::string& op, const Config& c, std::ostream& out) {
    expect_inputs(c, 1, 1);
    RGCF r = parse_rgcf(c.inputs[0]);
    if (op == "eval") {
        Rational v = rgcf_eval(r);
        print_value(c, "value", to_string(v), to_string(v), out);
    } else if (op == "weight") {
        BigInt w = weight_r(r);
        print_value(c, "weight", to_string(w), to_string(w), out);
    } else {
        print_convergents(c, rgcf_convergents(r), out);
    }
    return kExitOk;
}

int cmd_minimize(const std::string& op, const Config& c, std::ostream& out) {
    expect_inputs(c, 1, 1);
    Rational value = parse_rational(c.inputs[0]);
    std::string witness;
    BigInt weight;
    bool from_seed = false;
    std::uint64_t nodes = 0;
    if (op == "g") {
        auto m = minimize_g(value, c.bounds);
        witness = to_string(m.witness);
        weight = m.weight;
        from_seed = m.from_seed;
        nodes = m.nodes;
    } else {
        auto m = minimize_r(value, c.bounds, parse_scope(c.scope));
        witness = to_string(m.witness);
        weight = m.weight;
        from_seed = m.from_seed;
        nodes = m.nodes;
    }
    auto f = format_for(c, "text", {"text", "json"});
    if (f == "json") {
        out << json{{"value", to_string(value)},
                    {"weight", to_string(weight)},
                    {"witness", witness},
                    {"from_seed", from_seed},
                    {"nodes", nodes},
                    {"s", to_string(weight_s(value))}}
                   .dump(2)
            << '\n';
    } else {
        out << op << "(" << to_string(value) << ") <= " << weight << "  witness " << witness << '\n';
        out << "s = " << weight_s(value) << ", nodes = " << nodes << (from_seed ? ", seed not improved" : "")
            << '\n';
    }
    return kExitOk;
}

json report_json(const ConstructionReport& r) {
    auto opt_bool = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
    auto opt_count = [](const std::optional<BigCount>& v) { return v ? json(to_string(*v)) : json(nullptr); };
    json details = json::object();
    for (const auto& [k, v] : r.details) {
        details[k] = v;
    }
    return {
        {"kind", r.kind},
        {"input", r.input},
        {"witness", r.witness},
        {"poset", to_json(r.poset, r.point)},
        {"point_minimal", r.point_minimal},
        {"claimed",
         {{"e", to_string(r.claimed_e)},
          {"e_minus", opt_count(r.claimed_e_minus)},
          {"size", r.claimed_size},
          {"width_bound", r.claimed_width_bound},
          {"rho", r.claimed_rho ? json(to_string(*r.claimed_rho)) : json(nullptr)},
          {"scale", to_string(r.scale)}}},
        {"verified",
         {{"e", opt_bool(r.checks.e)},
          {"e_minus", opt_bool(r.checks.e_minus)},
          {"size", opt_bool(r.checks.size)},
          {"width", opt_bool(r.checks.width)},
          {"rho", opt_bool(r.checks.rho)},
          {"bruteforce", opt_bool(r.checks.bruteforce)}}},
        {"measured",
         {{"e", opt_count(r.checks.measured_e)},
          {"e_minus", opt_count(r.checks.measured_e_minus)},
          {"width", r.checks.measured_width ? json(*r.checks.measured_width) : json(nullptr)}}},
        {"details", details},
        {"consistent", r.consistent()},
    };
}

void print_report_text(const ConstructionReport& r, std::ostream& out) {
    auto flag = [](const std::optional<bool>& b) -> std::string { return b ? (*b ? "ok" : "FAILED") : "unchecked"; };
    out << r.kind << " " << r.input << "  witness " << r.witness << '\n';
    out << "size " << r.poset.size() << " (claimed " << r.claimed_size << ", " << flag(r.checks.size) << ")\n";
    out << "e(P) = " << r.claimed_e << " (" << flag(r.checks.e) << ")\n";
    if (r.claimed_e_minus) {
        out << "e(P - x) = " << *r.claimed_e_minus << " (" << flag(r.checks.e_minus) << ")\n";
    }
    if (r.claimed_rho) {
        out << "rho = " << to_string(*r.claimed_rho) << " (" << flag(r.checks.rho) << ")\n";
    }
    out << "width <= " << r.claimed_width_bound;
    if (r.checks.measured_width) {
        out << " (measured " << *r.checks.measured_width << ", " << flag(r.checks.width) << ")";
    }
    out << '\n';
    if (r.checks.bruteforce) {
        out << "brute force " << flag(r.checks.bruteforce) << '\n';
    }
    if (r.scale != 1) {
        out << "scale " << r.scale << '\n';
    }
    for (const auto& [k, v] : r.details) {
        out << k << " " << v << '\n';
    }
}

int cmd_build(const std::string& op, const Config& c, std::ostream& out, std::ostream& err) {
    VerifyOptions v = verify_options(c);
    ConstructionReport report;
    if (op == "cf" || op == "relative") {
        expect_inputs(c, 2, 2);
        BigInt cc = parse_integer(c.inputs[0]);
        BigInt dd = parse_integer(c.inputs[1]);
        report = op == "cf" ? poset_from_simple_cf(cc, dd, v) : relative_poset(cc, dd, v);
    } else if (op == "gcf") {
        expect_inputs(c, 1, 1);
        report = poset_from_gcf(parse_gcf(c.inputs[0]), v);
    } else if (op == "rgcf") {
        expect_inputs(c, 1, 1);
        report = poset_from_rgcf(parse_rgcf(c.inputs[0]), v);
    } else {
        expect_inputs(c, 1, 1);
        report = factorization_poset(parse_u64(c.inputs[0], "d"), v);
    }
    auto f = format_for(c, "json", {"json", "dot", "text"});
    if (f == "json") {
        out << report_json(report).dump(2) << '\n';
    } else if (f == "dot") {
        out << to_dot(report.poset, report.point);
    } else {
        print_report_text(report, out);
    }
    if (!report.consistent()) {
        err << "error: verification contradicts the claimed values\n";
        return kExitClaimFailed;
    }
    return kExitOk;
}

PosetDocument read_document(const std::string& source, std::istream& in) {
    std::string text;
    if (source == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    } else {
        std::ifstream file(source);
        if (!file) {
            throw DomainError("cannot open '" + source + "'");
        }
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    }
    return parse_poset_document(text);
}

int cmd_poset(const std::string& op, const Config& c, std::istream& in, std::ostream& out) {
    expect_inputs(c, 1, 1);
    PosetDocument doc = read_document(c.inputs[0], in);
    CountOptions count{c.ideal_cap};
    if (c.x) {
        doc.x = *c.x;
    }
    if (op == "count") {
        CountResult r = count_le_detailed(doc.poset, count);
        auto f = format_for(c, "text", {"text", "json"});
        if (f == "json") {
            out << json{{"n", doc.poset.size()}, {"e", to_string(r.extensions)}, {"ideals", r.ideals}}.dump(2)
                << '\n';
        } else {
            out << r.extensions << '\n';
        }
    } else if (op == "width") {
        std::size_t w = width(doc.poset);
        print_value(c, "width", w, std::to_string(w), out);
    } else if (op == "rho") {
        if (!doc.x) {
            throw DomainError("rho needs a distinguished element: give \"x\" in the document or --x");
        }
        Rational r = rho(doc.poset, *doc.x, count);
        print_value(c, "rho", to_string(r), to_string(r), out);
    } else if (op == "dual") {
        Poset d = dual(doc.poset);
        auto f = format_for(c, "json", {"json", "dot"});
        if (f == "json") {
            out << to_json(d).dump(2) << '\n';
        } else {
            out << to_dot(d);
        }
    } else {
        format_for(c, "dot", {"dot"});
        out << to_dot(doc.poset, doc.x);
    }
    return kExitOk;
}

std::vector<PosetCatalog> catalogs_for(const Config& c, std::size_t k) {
    if (k > kMaxCatalogSize) {
        throw ResourceError("catalogs are limited to " + std::to_string(kMaxCatalogSize) + " elements, asked for " +
                            std::to_string(k));
    }
    std::vector<PosetCatalog> levels;
    if (!c.catalog.empty() && std::filesystem::exists(c.catalog)) {
        std::ifstream file(c.catalog);
        levels = load_catalogs(file);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (levels[i].n != i) {
                throw DomainError("catalog file '" + c.catalog + "' is missing level " + std::to_string(i));
            }
        }
    }
    if (levels.empty()) {
        levels.push_back({0, {Poset()}});
    }
    const std::size_t had = levels.size();
    while (levels.size() <= k) {
        levels.push_back(extend_catalog(levels.back(), c.threads));
    }
    if (!c.catalog.empty() && levels.size() > had) {
        std::ofstream file(c.catalog);
        for (const auto& level : levels) {
            save_catalog(file, level);
        }
    }
    levels.resize(k + 1);
    return levels;
}

std::string mu_cell(const std::optional<std::size_t>& mu, std::size_t k_max) {
    return mu ? std::to_string(*mu) : "> " + std::to_string(k_max);
}

int cmd_scan(const std::string& op, const Config& c, std::ostream& out) {
    std::ostringstream buf; // doubles are printed with fixed precision
    buf << std::setprecision(6);
    if (op == "zaremba") {
        expect_inputs(c, 1, 2);
        std::uint64_t lo = parse_u64(c.inputs[0], "d");
        std::uint64_t hi = c.inputs.size() > 1 ? parse_u64(c.inputs[1], "d") : lo;
        auto rows = zaremba_scan(lo, hi, c.slack, c.threads);
        auto f = format_for(c, "csv", {"csv", "text", "json"});
        if (f == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                arr.push_back({{"d", r.d}, {"best_c", r.best_c}, {"min_weight", r.min_weight}, {"phi", r.phi},
                               {"bound_value", r.bound_value}, {"within_bound", r.within_bound}});
            }
            buf << arr.dump(2) << '\n';
        } else {
            std::size_t within = 0;
            buf << "d,best_c,min_weight,phi,bound_value,within_bound\n";
            for (const auto& r : rows) {
                buf << r.d << ',' << r.best_c << ',' << r.min_weight << ',' << r.phi << ',' << r.bound_value << ','
                    << (r.within_bound ? "true" : "false") << '\n';
                within += r.within_bound;
            }
            if (f == "text") {
                buf << "# " << within << "/" << rows.size() << " within " << c.slack
                    << " * (12/pi^2) ln d ln ln d (empirical)\n";
            }
        }
    } else if (op == "histogram") {
        expect_inputs(c, 1, 1);
        auto h = weight_histogram(parse_u64(c.inputs[0], "d"), c.threads);
        auto f = format_for(c, "text", {"csv", "text", "json"});
        if (f == "json") {
            json counts = json::object();
            for (const auto& [w, n] : h.counts) {
                counts[std::to_string(w)] = n;
            }
            buf << json{{"d", h.d}, {"total", h.total}, {"mean", h.mean}, {"yk_reference", h.yk_reference},
                        {"ruka_reference", h.ruka_reference}, {"counts", counts}}
                       .dump(2)
                << '\n';
        } else {
            buf << "weight,count\n";
            for (const auto& [w, n] : h.counts) {
                buf << w << ',' << n << '\n';
            }
            if (f == "text") {
                buf << "# numerators " << h.total << ", mean " << h.mean << '\n';
                buf << "# (6/pi^2) (ln d)^2 = " << h.yk_reference << ", ratio " << h.mean / h.yk_reference
                    << " (empirical)\n";
                buf << "# (12/pi^2) ln d ln ln d = " << h.ruka_reference << " (empirical)\n";
            }
        }
    } else if (op == "tset") {
        expect_inputs(c, 1, 1);
        std::size_t k = parse_u64(c.inputs[0], "k");
        auto table = count_table(catalogs_for(c, k), c.threads);
        auto t = t_set(table, k);
        auto f = format_for(c, "text", {"csv", "text", "json"});
        if (f == "json") {
            buf << json{{"k", k}, {"size", t.size()}, {"values", t}}.dump(2) << '\n';
        } else if (f == "csv") {
            buf << "e\n";
            for (auto e : t) {
                buf << e << '\n';
            }
        } else {
            buf << "|T(" << k << ")| = " << t.size() << '\n';
            bool first = true;
            buf << "T(" << k << ") = {";
            for (auto e : t) {
                buf << (first ? "" : ",") << e;
                first = false;
            }
            buf << "}\n";
        }
    } else if (op == "mu") {
        expect_inputs(c, 2, 2);
        std::uint64_t max_n = parse_u64(c.inputs[0], "N");
        std::size_t k_max = parse_u64(c.inputs[1], "k_max");
        auto table = count_table(catalogs_for(c, k_max), c.threads);
        auto mu = mu_table(table, max_n, k_max);
        auto direct = mu_table_direct(table, max_n, k_max);
        if (mu.mu != direct.mu) {
            throw std::logic_error("incremental and direct mu tables disagree");
        }
        auto f = format_for(c, "csv", {"csv", "text", "json"});
        if (f == "json") {
            json arr = json::array();
            for (std::uint64_t n = 1; n <= max_n; ++n) {
                arr.push_back({{"n", n}, {"mu", mu.mu[n] ? json(*mu.mu[n]) : json(nullptr)}});
            }
            buf << json{{"k_max", k_max}, {"mu", arr}}.dump(2) << '\n';
        } else {
            buf << "n,mu\n";
            for (std::uint64_t n = 1; n <= max_n; ++n) {
                buf << n << ',' << mu_cell(mu.mu[n], k_max) << '\n';
            }
        }
    } else if (op == "density") {
        expect_inputs(c, 2, 2);
        std::size_t k = parse_u64(c.inputs[0], "k");
        std::uint64_t limit = parse_u64(c.inputs[1], "L");
        auto table = count_table(catalogs_for(c, k), c.threads);
        auto d = density_check(table, k, limit);
        auto f = format_for(c, "text", {"csv", "text", "json"});
        if (f == "json") {
            buf << json{{"k", d.k}, {"limit", d.limit}, {"t_size", d.t_size}, {"hits", d.hits},
                        {"fraction", d.fraction}}
                       .dump(2)
                << '\n';
        } else {
            buf << "k,limit,t_size,hits,fraction\n";
            buf << d.k << ',' << d.limit << ',' << d.t_size << ',' << d.hits << ',' << d.fraction << '\n';
        }
    } else {
        expect_inputs(c, 1, 2);
        std::uint64_t lo = parse_u64(c.inputs[0], "d");
        std::uint64_t hi = c.inputs.size() > 1 ? parse_u64(c.inputs[1], "d") : lo;
        std::vector<GrRow> rows;
        if (c.numerator != 0) {
            if (lo != hi) {
                throw DomainError("--numerator needs a single d");
            }
            rows.push_back(gr_row(lo, c.numerator, c.bounds));
        } else {
            GrOptions opts{c.bounds, c.candidates, c.threads};
            rows = gr_scan(lo, hi, opts);
        }
        auto f = format_for(c, "csv", {"csv", "text", "json"});
        if (f == "json") {
            json arr = json::array();
            for (const auto& r : rows) {
                arr.push_back({{"d", r.d}, {"c", r.c}, {"s", r.s}, {"g", r.g}, {"r", r.r},
                               {"g_witness", to_string(r.g_witness)}, {"r_witness", to_string(r.r_witness)}});
            }
            buf << arr.dump(2) << '\n';
        } else {
            buf << "d,c,s,g,r,g_witness,r_witness\n";
            for (const auto& r : rows) {
                buf << r.d << ',' << r.c << ',' << r.s << ',' << r.g << ',' << r.r << ",\"" << to_string(r.g_witness)
                    << "\",\"" << to_string(r.r_witness) << "\"\n";
            }
        }
    }
    out << buf.str();
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Linear extensions and continued fractions"};
    app.name("lecf");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "json | dot | csv | text (default depends on the command)")
        ->check(CLI::IsMember({"auto", "json", "dot", "csv", "text"}));
    app.add_option("--verify", cfg.verify, "none | dp | bruteforce")
        ->check(CLI::IsMember({"none", "dp", "bruteforce"}));
    app.add_option("--seed", cfg.seed, "recorded in the config echo; all algorithms are deterministic");
    app.add_option("--threads", cfg.threads, "worker threads for scans")->check(CLI::Range(1u, 256u));
    app.add_option("--ideal-cap", cfg.ideal_cap, "order-ideal cap for the counting DP");
    app.add_option("--dp-cap", cfg.dp_cap, "largest construction re-counted by --verify dp");
    app.add_option("--max-depth", cfg.bounds.max_depth, "search: depth m");
    app.add_option("--max-numerator", cfg.bounds.max_numerator, "search: partial numerators a_i");
    app.add_option("--max-quotient", cfg.bounds.max_quotient, "search: quotients b_i (0 = s(input))");
    app.add_option("--max-alpha-den", cfg.bounds.max_alpha_den, "search: denominators of alpha_i");
    app.add_option("--scope", cfg.scope, "minimize r: reducedness over i >= 1 (tail) or all i")
        ->check(CLI::IsMember({"tail", "all"}));
    app.add_option("--slack", cfg.slack, "scan zaremba: factor on the reference bound");
    app.add_option("--candidates", cfg.candidates, "scan gr: numerators tried per d");
    app.add_option("--numerator", cfg.numerator, "scan gr: fixed numerator c");
    app.add_option("--catalog", cfg.catalog, "catalog file, read if present and extended in place");
    app.add_option("--x", cfg.x, "poset: distinguished element");

    struct Leaf {
        std::string group;
        std::string op;
        CLI::App* app;
    };
    std::vector<Leaf> leaves;
    auto group = [&](const std::string& name, const std::string& help,
                     std::vector<std::pair<std::string, std::string>> ops) {
        CLI::App* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        for (const auto& [op, op_help] : ops) {
            CLI::App* leaf = g->add_subcommand(op, op_help);
            leaf->add_option("inputs", cfg.inputs, "arguments");
            leaves.push_back({name, op, leaf});
        }
    };
    group("cf", "simple continued fractions",
          {{"expand", "rational -> [b0;b1,...]"}, {"eval", "[b0;b1,...] -> rational"}, {"weight", "s(rational)"}});
    group("gcf", "generalized continued fractions [a1,..,am ; b0,..,bm]",
          {{"eval", "value"}, {"balanced", "balance check"}, {"weight", "G"}, {"convergents", "C_i, D_i"}});
    group("rgcf", "rational generalized continued fractions [q1,..,qm ; b0,..,bm]",
          {{"eval", "value"}, {"weight", "R"}, {"convergents", "C_i, D_i"}});
    group("minimize", "bounded searches for g and r", {{"g", "bounded g(value)"}, {"r", "bounded r(value)"}});
    group("build", "posets realizing continued fractions",
          {{"cf", "c d: e = d, e - x = c"},
           {"gcf", "balanced GCF"},
           {"rgcf", "RGCF"},
           {"relative", "c d with d >= 3c: rho = d/c"},
           {"factor", "d: linear sum over the prime factorization"}});
    group("poset", "poset JSON documents (file or -)",
          {{"count", "e(P)"}, {"width", "width"}, {"rho", "e(P)/e(P-x)"}, {"dual", "dual poset"}, {"dot", "Graphviz"}});
    group("scan", "small-instance experiments",
          {{"zaremba", "lo [hi]"},
           {"histogram", "d"},
           {"tset", "k"},
           {"mu", "N k_max"},
           {"density", "k L"},
           {"gr", "lo [hi]"}});

    try {
        // CLI11 reads "[...]" as an inline list; shield fraction literals.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        for (auto& a : reversed) {
            if (!a.empty() && a.front() == '[') {
                a.insert(a.begin(), kBracketGuard);
            }
        }
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }

    const Leaf* chosen = nullptr;
    for (const auto& leaf : leaves) {
        if (leaf.app->parsed()) {
            chosen = &leaf;
        }
    }
    if (!chosen) {
        err << "error: no command given\n";
        return kExitDomain;
    }
    cfg.command = chosen->group + " " + chosen->op;
    for (auto& a : cfg.inputs) {
        if (!a.empty() && a.front() == kBracketGuard) {
            a.erase(0, 1);
        }
    }
    err << "# config: " << config_json(cfg).dump() << '\n';

    try {
        const std::string& op = chosen->op;
        if (chosen->group == "cf") {
            return cmd_cf(op, cfg, out);
        }
        if (chosen->group == "gcf") {
            return cmd_gcf(op, cfg, out);
        }
        if (chosen->group == "rgcf") {
            return cmd_rgcf(op, cfg, out);
        }
        if (chosen->group == "minimize") {
            return cmd_minimize(op, cfg, out);
        }
        if (chosen->group == "build") {
            return cmd_build(op, cfg, out, err);
        }
        if (chosen->group == "poset") {
            return cmd_poset(op, cfg, in, out);
        }
        return cmd_scan(op, cfg, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitResource;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return run(args, std::cin, out, err);
}

} // namespace lecf::cli
