#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "stpor/generators.hpp"
#include "stpor/model_io.hpp"
#include "stpor/traces.hpp"

using namespace stpor;
namespace fs = std::filesystem;

namespace {

const std::string kGolden = STPOR_GOLDEN_DIR;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Outcome run_line(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> args;
    for (std::string tok; in >> tok;) args.push_back(tok);
    return run_cli(args);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (std::size_t i = 0; (i = s.find(from, i)) != std::string::npos; i += to.size()) s.replace(i, from.size(), to);
    return s;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / ("stpor-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::vector<fs::path> files_with(const fs::path& dir, const std::string& ext) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ext) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("golden models: canonical text, runs and classes") {
    const auto models = files_with(kGolden + "/models", ".sys");
    REQUIRE(models.size() >= 5);
    for (const auto& path : models) {
        CAPTURE(path.string());
        const System sys = load_system(slurp(path));
        fs::path base = path;
        const std::string canon = format_system(sys);
        CHECK(canon == slurp(base.replace_extension(".canon")));
        CHECK(format_system(load_system(canon)) == canon);

        std::vector<std::string> runs;
        const auto all = enumerate_maximal_runs(sys, initial_state(sys), 100'000);
        for (const auto& r : all.value()) runs.push_back(format_word(sys, r.actions) + "\n");
        std::sort(runs.begin(), runs.end());
        std::string joined;
        for (const auto& r : runs) joined += r;
        CHECK(joined == slurp(base.replace_extension(".runs")));

        std::set<std::string> classes;
        for (const auto& r : all.value()) classes.insert(format_word(sys, lex_normal_form(sys, r.actions)) + "\n");
        joined.clear();
        for (const auto& c : classes) joined += c;
        CHECK(joined == slurp(base.replace_extension(".classes")));
    }
}

TEST_CASE("golden errors") {
    const auto bad = files_with(kGolden + "/errors", ".sys");
    REQUIRE(bad.size() >= 6);
    for (const auto& path : bad) {
        CAPTURE(path.string());
        fs::path want = path;
        std::string msg = slurp(want.replace_extension(".err"));
        msg.erase(msg.find_last_not_of('\n') + 1);
        CHECK_THROWS_WITH_AS(load_system(slurp(path)), doctest::Contains(msg.c_str()), ModelError);
        const Outcome o = run_cli({"explore", path.string()});
        CHECK(o.code == cli::kInputError);
        CHECK(o.err.find(msg) != std::string::npos);
    }
}

// Each .args file is one invocation. Expected stdout, stderr and exit code sit
// next to it. STPOR_UPDATE_GOLDEN=1 rewrites them.
TEST_CASE("golden command lines") {
    const bool update = std::getenv("STPOR_UPDATE_GOLDEN") != nullptr;
    const fs::path tmp = scratch_dir();
    const auto cases = files_with(kGolden + "/cli", ".args");
    REQUIRE(cases.size() >= 15);
    for (const auto& path : cases) {
        CAPTURE(path.string());
        std::string line = replace_all(slurp(path), "@GOLDEN@", kGolden);
        // Matrix files refer to models by path, so they are instantiated first.
        std::istringstream in(line);
        std::vector<std::string> args;
        for (std::string tok; in >> tok;) {
            if (fs::path(tok).extension() == ".json") {
                const fs::path copy = tmp / fs::path(tok).filename();
                spit(copy, replace_all(slurp(tok), "@GOLDEN@", kGolden));
                tok = copy.string();
            }
            args.push_back(tok);
        }
        const Outcome o = run_cli(args);
        const std::string out = replace_all(o.out, kGolden, "@GOLDEN@");
        const std::string err = replace_all(o.err, kGolden, "@GOLDEN@");
        fs::path base = path;
        if (update) {
            spit(base.replace_extension(".out"), out);
            spit(base.replace_extension(".err"), err);
            spit(base.replace_extension(".code"), std::to_string(o.code) + "\n");
            continue;
        }
        CHECK(out == slurp(base.replace_extension(".out")));
        CHECK(err == slurp(base.replace_extension(".err")));
        CHECK(std::to_string(o.code) + "\n" == slurp(base.replace_extension(".code")));
    }
    fs::remove_all(tmp);
}

TEST_CASE("help and argument errors") {
    CHECK(run_line("--help").code == cli::kOk);
    CHECK(run_line("").code == cli::kInputError);
    CHECK(run_line("explore").code == cli::kInputError);
    CHECK(run_line("explore fig1 --bogus").code == cli::kInputError);
    CHECK(run_line("explore fig1 --stats xml").code == cli::kInputError);
    CHECK(run_line("explore fig1 --oracle maybe").code == cli::kInputError);
    CHECK(run_line("gen dp").code == cli::kInputError);
    CHECK(run_line("debug fig1 --op pifs --set zz").code == cli::kInputError);
    CHECK(run_line("bench /no/such/matrix.json").code == cli::kInputError);
}

TEST_CASE("generated models are deterministic and re-parse") {
    for (const char* line : {"gen dp --n 3 --meals 2", "gen multilocks --clients 3 --locks 5 --k 2 --seed 4",
                             "gen bg --height 2", "gen random --seed 11", "gen fig --name fig4",
                             "gen satifs --vars 3 --clauses 5 --seed 2", "gen cnf --vars 4 --clauses 6 --seed 1"}) {
        CAPTURE(line);
        const Outcome a = run_line(line), b = run_line(line);
        CHECK(a.code == cli::kOk);
        CHECK(a.out == b.out);
        if (std::string(line).find("cnf") == std::string::npos) CHECK(is_valid(load_system(a.out)));
    }
    CHECK(run_line("gen dp --n 3").out == format_system(gen_philosophers(3)));
    CHECK(run_line("gen random --seed 5").out == format_system(random_system(5)));
    CHECK(run_line("gen multilocks --clients 2 --locks 4 --k 2 --seed 9").out ==
          format_system(gen_multilocks(2, 4, 2, 9)));
}

TEST_CASE("SAT gadget writes a sidecar query") {
    const fs::path tmp = scratch_dir();
    const fs::path cnf = tmp / "f.cnf", out = tmp / "gadget.sys";
    spit(cnf, "p cnf 2 2\n1 2 0\n-1 0\n");
    CHECK(run_cli({"gen", "satifs", "--dimacs", cnf.string(), "-o", out.string()}).code == cli::kOk);
    const System sys = load_system(slurp(out));
    const std::string q = slurp(out.string() + ".query");
    CHECK(q.find("state initial") != std::string::npos);
    CHECK(q.find("excluded f^.F") != std::string::npos);
    const auto g = gen_sat_ifs(parse_dimacs(slurp(cnf)));
    CHECK(format_system(sys) == format_system(g.system));
    fs::remove_all(tmp);
}

TEST_CASE("explore and verify exit codes") {
    CHECK(run_line("explore fig1").code == cli::kOk);
    CHECK(run_line("explore dp5 --preset reach --node-limit 10").code == cli::kLimit);
    CHECK(run_line("verify fig1 --preset pset+sleep").code == cli::kOk);
    CHECK(run_line("verify fig1 --preset reach --corrupt-edge 3").code == cli::kFail);
    CHECK(run_line("verify dp3 --preset minclosure+sleep --truncate-node 0").code == cli::kFail);
    CHECK(run_line("verify dp4 --full-limit 10").code == cli::kLimit);
    CHECK(run_line("verify fig1 --preset full+sleep --unfiltered").code == cli::kFail);
    CHECK(run_line("verify fig6-3 --preset reach --oracle exact --sleep on --tree").code == cli::kOk);
    CHECK(run_line("verify fig1 --corrupt-edge 99").code == cli::kInputError);

    const fs::path tmp = scratch_dir();
    const fs::path report = tmp / "r.json";
    const Outcome o = run_cli({"verify", "bg1", "--report", report.string()});
    CHECK(o.code == cli::kOk);
    CHECK(slurp(report) == o.out);
    fs::remove_all(tmp);
}

TEST_CASE("action orders from the command line") {
    const System f6 = fig6(3);
    const auto alpha = cli::resolve_order(f6, "alpha", 0);
    CHECK(alpha == alphabetic_order(f6));
    CHECK(cli::resolve_order(f6, "decl", 0) == f6.order());
    CHECK(cli::resolve_order(f6, "process", 0) == process_major_order(f6));
    const auto r1 = cli::resolve_order(f6, "random", 3), r2 = cli::resolve_order(f6, "random", 3);
    CHECK(r1 == r2);
    std::vector<ActionId> sorted = r1;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted.size() == f6.num_actions());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(cli::resolve_order(f6, "random", 4) != r1);

    const fs::path tmp = scratch_dir();
    const fs::path file = tmp / "rev.order";
    std::string names;
    for (auto it = f6.order().rbegin(); it != f6.order().rend(); ++it) names += f6.action_name(*it) + "\n";
    spit(file, names);
    const auto rev = cli::resolve_order(f6, file.string(), 0);
    CHECK(rev == std::vector<ActionId>(f6.order().rbegin(), f6.order().rend()));
    spit(file, "a1 a1\n");
    CHECK_THROWS_AS(cli::resolve_order(f6, file.string(), 0), cli::InputError);
    CHECK_THROWS_AS(cli::resolve_order(f6, "sideways", 0), cli::InputError);
    fs::remove_all(tmp);
}

TEST_CASE("bench matrices") {
    CsvOptions csv{true, false};
    const auto empty = cli::parse_bench_matrix(R"({"models": []})");
    CHECK(empty.cells.empty());
    CHECK(cli::run_bench(empty, csv) == stats_csv_header(csv) + "\n");

    const auto m = cli::parse_bench_matrix(R"({
        "presets": ["reach"],
        "models": [{"gen": "dp", "n": {"from": 2, "to": 4}},
                   {"gen": "multilocks", "clients": [2, 3], "locks": 3, "k": 1, "seeds": [1, 2]},
                   {"gen": "fig6", "n": 2, "presets": ["full+sleep", "pset+sleep"]},
                   {"gen": "random", "seeds": {"from": 0, "to": 1}},
                   {"name": "bg1"}, "fig4"]})");
    std::vector<std::string> ids;
    for (const auto& c : m.cells) ids.push_back(c.model + "/" + c.preset);
    CHECK(ids == std::vector<std::string>{"dp2/reach", "dp3/reach", "dp4/reach", "ml-2-3-1-1/reach",
                                          "ml-2-3-1-2/reach", "ml-3-3-1-1/reach", "ml-3-3-1-2/reach",
                                          "fig6-2/full+sleep", "fig6-2/pset+sleep", "rand-0/reach", "rand-1/reach",
                                          "bg1/reach", "fig4/reach"});
    const std::string a = cli::run_bench(m, csv), b = cli::run_bench(m, csv);
    CHECK(a == b);
    CHECK(std::count(a.begin(), a.end(), '\n') == 14);
    CHECK(a.find(",error") == std::string::npos);

    const auto defaults = cli::parse_bench_matrix(R"({"models": ["fig1"]})");
    CHECK(defaults.cells.size() == preset_names().size());
    const auto broken = cli::parse_bench_matrix(R"({"models": ["nosuch"], "presets": ["reach"]})");
    CHECK(cli::run_bench(broken, csv).find("nosuch,reach,decl,0,0,0,,0,,error") != std::string::npos);
    CHECK_THROWS(cli::parse_bench_matrix(R"({"models": [{"gen": "zz"}]})"));
    CHECK_THROWS(cli::parse_bench_matrix(R"({"models": ["fig1"], "presets": ["nope"]})"));
    CHECK_THROWS(cli::parse_bench_matrix("not json"));
}
