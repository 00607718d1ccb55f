#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stpor/explorer.hpp"
#include "stpor/generators.hpp"
#include "stpor/heuristics.hpp"
#include "stpor/model_io.hpp"
#include "stpor/verifier.hpp"

namespace stpor::cli {
namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_file(path, text);
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) names.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) names.push_back(std::move(cur));
    return names;
}

ActionSet parse_action_set(const System& sys, const std::string& text) {
    ActionSet s = sys.no_actions();
    for (const auto& n : split_names(text)) s.insert(sys.find_action(n));
    return s;
}

// Unbiased draw from [0, n) for a portable shuffle.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = rng();
    while (x >= lim);
    return x % n;
}

std::string model_id(const std::string& arg) {
    if (std::filesystem::exists(arg)) return std::filesystem::path(arg).stem().string();
    return arg;
}

Cnf load_cnf(const std::string& dimacs, int vars, int clauses, std::uint64_t seed) {
    if (!dimacs.empty()) return parse_dimacs(read_file(dimacs));
    if (vars <= 0 || clauses <= 0) throw InputError("give --dimacs or positive --vars and --clauses");
    return random_cnf(vars, clauses, seed);
}

// ---------------------------------------------------------------- explore

struct ExploreOpts {
    std::string model;
    std::string preset = "full+sleep";
    std::string order = "decl";
    std::uint64_t seed = 0;
    std::size_t node_limit = 0;
    double time_limit = 0;
    std::string oracle;  // empty keeps the preset's oracle
    std::string sleep;   // empty keeps the preset's sleep setting
    bool tree = false;
};

ExploreConfig make_config(const ExploreOpts& o) {
    ExploreConfig cfg = preset(o.preset);
    cfg.node_limit = o.node_limit;
    cfg.time_limit_s = o.time_limit;
    if (!o.oracle.empty()) {
        static const std::map<std::string, OracleKind> kinds = {{"none", OracleKind::always_true},
                                                                {"exact", OracleKind::exact_ifs},
                                                                {"pifs", OracleKind::pifs},
                                                                {"rpifs", OracleKind::rpifs}};
        const auto it = kinds.find(o.oracle);
        if (it == kinds.end()) throw InputError("unknown oracle '" + o.oracle + "'");
        cfg.oracle = it->second;
    }
    if (!o.sleep.empty()) {
        cfg.sleep = o.sleep == "on";
        // Sleep-aware subsumption is the only sound pairing with sleep sets.
        if (cfg.subsumption != Subsumption::off)
            cfg.subsumption = cfg.sleep ? Subsumption::sleep_subset : Subsumption::state_equality;
    }
    if (o.tree) cfg.subsumption = Subsumption::off;
    return cfg;
}

ExploreResult run_explore(const System& sys, const ExploreOpts& o) {
    const ExploreConfig cfg = make_config(o);
    return o.tree ? explore_tree(sys, cfg) : explore(sys, cfg);
}

void add_explore_flags(CLI::App* sub, ExploreOpts& o) {
    sub->add_option("model", o.model, "Model file or shorthand (fig1, dp10, bg3, ml-C-L-K-S, ...)")
        ->required();
    sub->add_option("--preset", o.preset, "reach, pset+sleep, minclosure+sleep, apifs+sleep, full-sleep, full+sleep")
        ->capture_default_str();
    sub->add_option("--order", o.order, "decl, alpha, process, random, or a file of action names")
        ->capture_default_str();
    sub->add_option("--seed", o.seed, "Seed for --order random");
    sub->add_option("--node-limit", o.node_limit, "Stop after this many nodes (0 = none)");
    sub->add_option("--time-limit", o.time_limit, "Wall-clock limit in seconds (0 = none)");
    sub->add_option("--oracle", o.oracle, "Override the preset oracle: none, exact, pifs, rpifs");
    sub->add_option("--sleep", o.sleep, "Override the preset sleep setting: on, off")
        ->check(CLI::IsMember({"on", "off"}));
    sub->add_flag("--tree", o.tree, "Explore without subsumption (tree output)");
}

System prepare_system(const ExploreOpts& o) {
    System sys = resolve_model(o.model);
    require_valid(sys);
    if (o.order != "decl") sys = sys.with_order(resolve_order(sys, o.order, o.seed));
    return sys;
}

int cmd_explore(const ExploreOpts& o, const std::string& dot, bool paths, const std::string& stats,
                bool timing, std::ostream& out) {
    const System sys = prepare_system(o);
    ExploreResult r = run_explore(sys, o);
    if (paths && !r.stats.partial()) r.stats.full_paths = count_full_paths(r.ts);
    if (!dot.empty()) emit(dot, export_dot(sys, r.ts), out);
    const StatsRow row{model_id(o.model), o.preset, order_digest(sys), r.stats};
    if (stats == "json") {
        std::vector<std::string> names;
        if (!sys.has_declaration_order())
            for (ActionId a : sys.order()) names.push_back(sys.action_name(a));
        if (!timing) {
            StatsRow copy = row;
            copy.stats.wall_ms = 0;
            out << export_stats_json(copy, names);
        } else {
            out << export_stats_json(row, names);
        }
    } else {
        CsvOptions csv;
        csv.timing = timing;
        out << export_stats_csv({row}, csv);
    }
    return r.stats.partial() ? kLimit : kOk;
}

// ----------------------------------------------------------------- verify

struct VerifyOpts {
    ExploreOpts explore;
    std::size_t full_limit = 4'000'000;
    std::size_t family_cap = 100'000;
    std::size_t run_limit = 100'000;
    bool unfiltered = false;
    std::optional<std::size_t> corrupt_edge;
    std::optional<NodeId> truncate_node;
    std::string report;
};

ordered_json verdict_json(const System& sys, const Verdict& v) {
    ordered_json j;
    j["check"] = v.check;
    j["status"] = std::string(to_string(v.status));
    j["detail"] = v.detail;
    if (v.node) j["node"] = *v.node;
    if (v.edge) j["edge"] = *v.edge;
    if (v.first_set) j["first_set"] = format_actions(sys, *v.first_set);
    if (v.check == "soundness") j["sleep_blocked_sinks"] = v.sleep_blocked_sinks;
    if (v.check == "trace-optimality") {
        j["tree_runs"] = v.tree_runs;
        j["classes"] = v.classes;
    }
    return j;
}

// Relabels an edge with an action that is not enabled at its source, so
// replay must reject it. Falls back to any other action.
void corrupt(const System& sys, ReducedTS& ts, std::size_t i) {
    auto& edges = ts.mutable_edges();
    if (i >= edges.size()) throw InputError("--corrupt-edge " + std::to_string(i) + " out of range");
    Edge& e = edges[i];
    const ActionSet en = enabled(sys, ts.state(e.from));
    for (ActionId a = 0; a < sys.num_actions(); ++a)
        if (!en.contains(a)) {
            e.action = a;
            return;
        }
    e.action = (e.action + 1) % static_cast<ActionId>(sys.num_actions());
}

int cmd_verify(const VerifyOpts& o, std::ostream& out) {
    const System sys = prepare_system(o.explore);
    ExploreResult r = run_explore(sys, o.explore);
    if (o.corrupt_edge) corrupt(sys, r.ts, *o.corrupt_edge);
    if (o.truncate_node) {
        if (*o.truncate_node >= r.ts.num_nodes()) throw InputError("--truncate-node out of range");
        r.ts.truncate_node(*o.truncate_node);
    }

    std::vector<Verdict> verdicts;
    if (r.stats.partial()) {
        Verdict v;
        v.check = "exploration";
        v.status = VerdictStatus::inconclusive;
        v.detail = "exploration stopped: " + std::string(to_string(r.stats.status));
        verdicts.push_back(v);
    } else {
        VerifyLimits lim;
        lim.node_limit = o.explore.node_limit ? o.explore.node_limit : o.full_limit;
        lim.family_cap = o.family_cap;
        lim.run_limit = o.run_limit;
        Verifier ver(sys, lim);
        verdicts.push_back(ver.soundness(r.ts));
        verdicts.push_back(ver.completeness(r.ts, !o.unfiltered));
        if (o.explore.tree) verdicts.push_back(ver.trace_optimality(r.ts));
    }

    VerdictStatus overall = VerdictStatus::pass;
    for (const auto& v : verdicts) {
        if (v.status == VerdictStatus::fail) overall = VerdictStatus::fail;
        else if (v.status == VerdictStatus::inconclusive && overall == VerdictStatus::pass)
            overall = VerdictStatus::inconclusive;
    }
    ordered_json j;
    j["model"] = model_id(o.explore.model);
    j["preset"] = o.explore.preset;
    j["order"] = order_digest(sys);
    j["mode"] = o.explore.tree ? "tree" : "graph";
    j["nodes"] = r.stats.nodes;
    j["edges"] = r.stats.edges;
    j["status"] = std::string(to_string(overall));
    j["checks"] = ordered_json::array();
    for (const auto& v : verdicts) j["checks"].push_back(verdict_json(sys, v));
    const std::string text = j.dump(2) + "\n";
    out << text;
    if (!o.report.empty()) write_file(o.report, text);
    switch (overall) {
        case VerdictStatus::pass: return kOk;
        case VerdictStatus::fail: return kFail;
        case VerdictStatus::inconclusive: return kLimit;
    }
    return kFail;
}

// ------------------------------------------------------------------ debug

struct DebugOpts {
    std::string model;
    std::string op = "pifs";
    std::string after;
    std::string set;
    std::string action;
    std::string sleep;
};

int cmd_debug(const DebugOpts& o, std::ostream& out) {
    System sys = resolve_model(o.model);
    require_valid(sys);
    GlobalState s = initial_state(sys);
    for (ActionId a : parse_word(sys, o.after)) s = step(sys, s, a);
    const HeuristicIndex idx(sys);
    out << "state";
    for (ProcessId p = 0; p < sys.num_processes(); ++p)
        out << ' ' << sys.process(p).name << '=' << sys.process(p).state_names[s[p]];
    out << "\nenabled " << format_actions(sys, enabled(sys, s)) << '\n';
    auto observer = [&](std::size_t round, const ActionSet& B, bool wraps) {
        out << "round " << round << " B=" << format_actions(sys, B) << " wraps=" << (wraps ? "yes" : "no")
            << '\n';
    };
    if (o.op == "pifs" || o.op == "rpifs" || o.op == "apifs") {
        const ActionSet B = parse_action_set(sys, o.set);
        const auto res = pifs_fixpoint(idx, s, B, o.op != "rpifs", observer);
        out << o.op << ' ' << (res.verdict ? "true" : "false") << " B=" << format_actions(sys, res.set)
            << " rounds=" << res.rounds << '\n';
    } else if (o.op == "closure" || o.op == "p-set") {
        if (o.action.empty()) throw InputError("--action is required for " + o.op);
        const ActionId b = sys.find_action(o.action);
        if (o.op == "closure") {
            const ActionSet c = closure(idx, s, b, observer);
            out << "closure " << format_actions(sys, c) << '\n';
        } else {
            out << "p_closure " << format_processes(sys, p_closure(idx, s, b)) << '\n';
            out << "p_set " << format_actions(sys, p_set(idx, s, b)) << '\n';
        }
    } else if (o.op == "source") {
        const ActionSet sl = parse_action_set(sys, o.sleep);
        out << "min_closure " << format_actions(sys, min_closure(idx, s, sl)) << '\n';
        out << "lex_closure " << format_actions(sys, lex_closure(idx, s, sl)) << '\n';
        out << "min_pset " << format_actions(sys, min_pset(idx, s, sl)) << '\n';
        const ActionSet A = enabled(sys, s) - sl;
        if (!A.empty()) out << "choose " << sys.action_name(choose_action(idx, s, A)) << '\n';
    } else {
        throw InputError("unknown debug op '" + o.op + "'");
    }
    return kOk;
}

// -------------------------------------------------------------------- gen

struct GenOpts {
    std::string out;
    int n = 0;
    int meals = 1;
    int clients = 0;
    int locks = 0;
    int k = 0;
    int height = 0;
    std::uint64_t seed = 0;
    std::string dimacs;
    int vars = 0;
    int clauses = 0;
    std::string query;
    std::string name;
    RandomSystemParams rand;
};

void need(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

}  // namespace

// ----------------------------------------------------------- public helpers

System resolve_model(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) return parse_system(read_file(arg));
    if (auto m = named_model(arg)) return std::move(*m);
    throw InputError("no such model file or shorthand: '" + arg + "'");
}

std::vector<ActionId> resolve_order(const System& sys, const std::string& spec, std::uint64_t seed) {
    if (spec == "decl") return declaration_order(sys);
    if (spec == "alpha") return alphabetic_order(sys);
    if (spec == "process") return process_major_order(sys);
    if (spec == "random") {
        std::vector<ActionId> order = declaration_order(sys);
        std::mt19937_64 rng(seed);
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[below(rng, i)]);
        return order;
    }
    std::string text = read_file(spec);
    std::vector<ActionId> order;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
        for (const auto& n : split_names(line)) {
            if (!sys.has_action(n)) throw InputError("order file names unknown action '" + n + "'");
            order.push_back(sys.find_action(n));
        }
    }
    std::vector<ActionId> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() != sys.num_actions() ||
        std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("order file must list every action exactly once");
    return order;
}

BenchMatrix parse_bench_matrix(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    BenchMatrix m;
    if (!j.is_object()) throw InputError("bench matrix must be a JSON object");
    m.timeout_s = j.value("timeout_s", 0.0);
    m.node_limit = j.value("node_limit", std::size_t{0});
    m.paths = j.value("paths", false);
    m.order = j.value("order", std::string("decl"));
    m.seed = j.value("seed", std::uint64_t{0});
    const std::vector<std::string> all = preset_names();
    const auto default_presets = j.value("presets", all);

    auto values = [](const nlohmann::json& e, const char* key, std::vector<std::int64_t> dflt) {
        if (!e.contains(key)) return dflt;
        const auto& v = e.at(key);
        if (v.is_number_integer()) return std::vector<std::int64_t>{v.get<std::int64_t>()};
        if (v.is_array()) return v.get<std::vector<std::int64_t>>();
        if (v.is_object()) {
            std::vector<std::int64_t> out;
            for (auto x = v.at("from").get<std::int64_t>(); x <= v.at("to").get<std::int64_t>(); ++x)
                out.push_back(x);
            return out;
        }
        throw InputError(std::string("bad value for '") + key + "'");
    };

    for (const auto& e : j.value("models", nlohmann::json::array())) {
        std::vector<std::string> ids;
        std::vector<std::string> presets = default_presets;
        if (e.is_string()) {
            ids.push_back(e.get<std::string>());
        } else {
            presets = e.value("presets", default_presets);
            if (e.contains("file")) {
                ids.push_back(e.at("file").get<std::string>());
            } else if (e.contains("name")) {
                ids.push_back(e.at("name").get<std::string>());
            } else {
                const std::string gen = e.at("gen").get<std::string>();
                const auto seeds = values(e, e.contains("seeds") ? "seeds" : "seed", {0});
                if (gen == "dp") {
                    for (auto n : values(e, "n", {}))
                        for (auto meals : values(e, "meals", {1}))
                            ids.push_back("dp" + std::to_string(n) +
                                          (meals == 1 ? "" : "-m" + std::to_string(meals)));
                } else if (gen == "multilocks") {
                    for (auto c : values(e, "clients", {}))
                        for (auto l : values(e, "locks", {}))
                            for (auto k : values(e, "k", {}))
                                for (auto s : seeds)
                                    ids.push_back("ml-" + std::to_string(c) + "-" + std::to_string(l) + "-" +
                                                  std::to_string(k) + "-" + std::to_string(s));
                } else if (gen == "bg") {
                    for (auto h : values(e, "height", {})) ids.push_back("bg" + std::to_string(h));
                } else if (gen == "fig6") {
                    for (auto n : values(e, "n", {4})) ids.push_back("fig6-" + std::to_string(n));
                } else if (gen == "random") {
                    for (auto s : seeds) ids.push_back("rand-" + std::to_string(s));
                } else {
                    throw InputError("unknown generator '" + gen + "' in bench matrix");
                }
            }
        }
        for (const auto& p : presets) preset(p);  // reject unknown names up front
        for (const auto& id : ids)
            for (const auto& p : presets) m.cells.push_back({id, p});
    }
    return m;
}

std::string run_bench(const BenchMatrix& m, const CsvOptions& csv) {
    std::string out = stats_csv_header(csv) + "\n";
    for (const auto& cell : m.cells) {
        StatsRow row{model_id(cell.model), cell.preset, "decl", {}};
        try {
            ExploreOpts o;
            o.model = cell.model;
            o.preset = cell.preset;
            o.order = m.order;
            o.seed = m.seed;
            o.node_limit = m.node_limit;
            o.time_limit = m.timeout_s;
            const System sys = prepare_system(o);
            row.order = order_digest(sys);
            ExploreConfig cfg = make_config(o);
            cfg.record_edges = m.paths;
            ExploreResult r = explore(sys, cfg);
            if (m.paths && !r.stats.partial()) r.stats.full_paths = count_full_paths(r.ts);
            row.stats = r.stats;
            out += export_stats_csv_row(row, csv) + "\n";
        } catch (const std::exception& e) {
            // Keep the matrix shape: one row per cell, status marks the failure.
            std::string line = export_stats_csv_row(row, CsvOptions{false, false});
            if (csv.status_column) line += ",error";
            out += line + "\n";
        }
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partial-order reduction explorer for client/server systems", "stpor"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "stpor 0.1.0");

    // gen
    GenOpts g;
    auto* gen = app.add_subcommand("gen", "Write a generated model");
    gen->require_subcommand(1);
    auto out_opt = [&](CLI::App* s) { s->add_option("-o,--out", g.out, "Output file (default stdout)"); };
    auto* g_dp = gen->add_subcommand("dp", "Dining philosophers");
    g_dp->add_option("--n", g.n, "Philosophers")->required();
    g_dp->add_option("--meals", g.meals, "Meals before the final unfolded take")->capture_default_str();
    auto* g_ml = gen->add_subcommand("multilocks", "Clients taking k of l locks");
    g_ml->add_option("--clients", g.clients)->required();
    g_ml->add_option("--locks", g.locks)->required();
    g_ml->add_option("--k", g.k)->required();
    g_ml->add_option("--seed", g.seed);
    auto* g_bg = gen->add_subcommand("bg", "Boolean gate tree");
    g_bg->add_option("--height", g.height)->required();
    auto cnf_opts = [&](CLI::App* s) {
        s->add_option("--dimacs", g.dimacs, "CNF in DIMACS format");
        s->add_option("--vars", g.vars, "Random CNF variables (without --dimacs)");
        s->add_option("--clauses", g.clauses, "Random CNF clauses (without --dimacs)");
        s->add_option("--seed", g.seed);
    };
    auto* g_sat = gen->add_subcommand("satifs", "SAT gadget plus a sidecar query file");
    cnf_opts(g_sat);
    g_sat->add_option("--query", g.query, "Query sidecar path (default <out>.query)");
    auto* g_lb = gen->add_subcommand("lowerbound", "Lower-bound gadget");
    cnf_opts(g_lb);
    auto* g_cnf = gen->add_subcommand("cnf", "Random 3-CNF in DIMACS format");
    g_cnf->add_option("--vars", g.vars)->required();
    g_cnf->add_option("--clauses", g.clauses)->required();
    g_cnf->add_option("--seed", g.seed);
    auto* g_rand = gen->add_subcommand("random", "Small random valid system");
    g_rand->add_option("--seed", g.seed);
    g_rand->add_option("--processes", g.rand.max_processes)->capture_default_str();
    g_rand->add_option("--states", g.rand.max_states)->capture_default_str();
    g_rand->add_option("--actions", g.rand.max_actions)->capture_default_str();
    auto* g_fig = gen->add_subcommand("fig", "Built-in example system");
    g_fig->add_option("--name", g.name, "fig1, fig3, fig4, fig5, fig6 or fig6-N")->required();
    for (auto* s : {g_dp, g_ml, g_bg, g_sat, g_lb, g_cnf, g_rand, g_fig}) out_opt(s);

    // explore
    ExploreOpts eo;
    std::string dot, stats = "csv";
    bool paths = false, no_timing = false;
    auto* ex = app.add_subcommand("explore", "Explore a model and print one stats row");
    add_explore_flags(ex, eo);
    ex->add_option("--dot", dot, "Write the reduced graph as DOT");
    ex->add_flag("--paths", paths, "Count full paths (exact big integer)");
    ex->add_option("--stats", stats, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    ex->add_flag("--no-timing", no_timing, "Omit wall-clock time for byte-stable output");

    // verify
    VerifyOpts vo;
    auto* ve = app.add_subcommand("verify", "Explore, then check soundness and completeness");
    add_explore_flags(ve, vo.explore);
    ve->add_option("--full-limit", vo.full_limit, "State cap for the full transition system")
        ->capture_default_str();
    ve->add_option("--family-cap", vo.family_cap, "First-set family cap per state")->capture_default_str();
    ve->add_option("--run-limit", vo.run_limit, "Run cap for trace optimality")->capture_default_str();
    ve->add_flag("--unfiltered", vo.unfiltered, "Completeness without sleep filtering");
    ve->add_option("--report", vo.report, "Also write the JSON report here");
    ve->add_option("--corrupt-edge", vo.corrupt_edge, "Test hook: relabel edge N before checking");
    ve->add_option("--truncate-node", vo.truncate_node, "Test hook: drop the out-edges of node N");

    // bench
    std::string matrix_path, bench_out;
    bool bench_no_timing = false;
    auto* be = app.add_subcommand("bench", "Run a JSON experiment matrix and write CSV");
    be->add_option("matrix", matrix_path, "Matrix file")->required();
    be->add_option("-o,--out", bench_out, "CSV output (default stdout)");
    be->add_flag("--no-timing", bench_no_timing, "Omit wall-clock time for byte-stable output");

    // debug
    DebugOpts dbg;
    auto* de = app.add_subcommand("debug", "Print heuristic rounds at one state");
    de->add_option("model", dbg.model)->required();
    de->add_option("--op", dbg.op, "pifs, rpifs, apifs, closure, p-set, source")->capture_default_str();
    de->add_option("--after", dbg.after, "Action word leading from the initial state");
    de->add_option("--set", dbg.set, "Action set B for the pifs family");
    de->add_option("--action", dbg.action, "Action b for closure and p-set");
    de->add_option("--sleep", dbg.sleep, "Sleep set for source");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (gen->parsed()) {
            if (g_dp->parsed()) {
                need(g.n >= 2 && g.meals >= 1, "dp needs --n >= 2 and --meals >= 1");
                emit(g.out, format_system(gen_philosophers(g.n, g.meals)), out);
            } else if (g_ml->parsed()) {
                need(g.clients >= 1 && g.locks >= 1 && g.k >= 1 && g.k <= g.locks,
                     "multilocks needs clients, locks >= 1 and 1 <= k <= locks");
                emit(g.out, format_system(gen_multilocks(g.clients, g.locks, g.k, g.seed)), out);
            } else if (g_bg->parsed()) {
                need(g.height >= 1, "bg needs --height >= 1");
                emit(g.out, format_system(gen_boolean_gates(g.height)), out);
            } else if (g_sat->parsed()) {
                const SatIfsGadget gad = gen_sat_ifs(load_cnf(g.dimacs, g.vars, g.clauses, g.seed));
                emit(g.out, format_system(gad.system), out);
                std::string qpath = g.query;
                if (qpath.empty() && !g.out.empty() && g.out != "-") qpath = g.out + ".query";
                std::string q = "# includes-first-set question at the initial state\nstate initial\nquery";
                for (ActionId a : gad.system.order())
                    if (gad.query.contains(a)) q += " " + gad.system.action_name(a);
                q += "\nexcluded " + gad.system.action_name(gad.f_take) + "\n";
                if (qpath.empty())
                    err << q;
                else
                    write_file(qpath, q);
            } else if (g_lb->parsed()) {
                emit(g.out, format_system(gen_lowerbound(load_cnf(g.dimacs, g.vars, g.clauses, g.seed))), out);
            } else if (g_cnf->parsed()) {
                need(g.vars >= 1 && g.clauses >= 1, "cnf needs --vars and --clauses >= 1");
                emit(g.out, format_dimacs(random_cnf(g.vars, g.clauses, g.seed)), out);
            } else if (g_rand->parsed()) {
                emit(g.out, format_system(random_system(g.seed, g.rand)), out);
            } else if (g_fig->parsed()) {
                if (g.name.rfind("fig", 0) != 0) throw InputError("unknown figure '" + g.name + "'");
                emit(g.out, format_system(resolve_model(g.name)), out);
            }
            return kOk;
        }
        if (ex->parsed()) return cmd_explore(eo, dot, paths, stats, !no_timing, out);
        if (ve->parsed()) return cmd_verify(vo, out);
        if (be->parsed()) {
            const BenchMatrix m = parse_bench_matrix(read_file(matrix_path));
            CsvOptions csv;
            csv.status_column = true;
            csv.timing = !bench_no_timing;
            emit(bench_out, run_bench(m, csv), out);
            return kOk;
        }
        if (de->parsed()) return cmd_debug(dbg, out);
    } catch (const LimitExceededError& e) {
        err << "error: " << e.what() << '\n';
        return kLimit;
    } catch (const TripleBudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kLimit;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ActionNotEnabled& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace stpor::cli
