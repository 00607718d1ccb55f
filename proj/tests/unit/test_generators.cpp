#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "stpor/generators.hpp"
#include "stpor/model_io.hpp"
#include "stpor/traces.hpp"
#include "stpor/verifier.hpp"

using namespace stpor;

namespace {

std::size_t count_kind(const System& sys, ProcessKind k) {
    std::size_t n = 0;
    for (const auto& p : sys.processes()) n += p.kind == k;
    return n;
}

std::set<std::string> run_strings(const System& sys) {
    std::set<std::string> out;
    const auto runs = enumerate_maximal_runs(sys, initial_state(sys), 10'000);
    for (const auto& r : runs.value()) out.insert(format_word(sys, r.actions));
    return out;
}

Cnf cnf_of(int vars, std::vector<std::array<int, 3>> clauses) { return Cnf{vars, std::move(clauses)}; }

}  // namespace

TEST_CASE("philosophers") {
    const System dp10 = gen_philosophers(10);
    CHECK(dp10.num_processes() == 20);
    CHECK(count_kind(dp10, ProcessKind::client) == 10);
    CHECK(is_valid(dp10));
    // One meal: take, take, release, release, take.
    CHECK(dp10.process(dp10.find_process("P0")).transitions.size() == 5);
    CHECK(gen_philosophers(3, 2).process(0).transitions.size() == 9);
    CHECK(is_valid(gen_philosophers(2, 3)));
    // 5^n - 1 reachable states.
    for (int n = 2, pow5 = 25; n <= 5; ++n, pow5 *= 5) CHECK(oracle::bfs_state_count(gen_philosophers(n)) == pow5 - 1u);
}

TEST_CASE("multilocks") {
    const System a = gen_multilocks(3, 4, 2, 7);
    CHECK(format_system(a) == format_system(gen_multilocks(3, 4, 2, 7)));
    CHECK(is_valid(a));
    CHECK(count_kind(a, ProcessKind::client) == 3);
    CHECK(count_kind(a, ProcessKind::server) == 4);
    for (ProcessId p = 0; p < 3; ++p) CHECK(a.process(p).transitions.size() == 4);

    // k = 1: each client takes and releases one lock.
    const System one = gen_multilocks(4, 3, 1, 2);
    for (ProcessId p = 0; p < 4; ++p) CHECK(one.process(p).transitions.size() == 2);
    CHECK_THROWS_AS(gen_multilocks(2, 2, 3, 0), std::invalid_argument);
}

TEST_CASE("boolean gates") {
    const System bg3 = gen_boolean_gates(3);
    CHECK(count_kind(bg3, ProcessKind::client) == 15);
    CHECK(count_kind(bg3, ProcessKind::server) == 14);
    CHECK(is_valid(bg3));
    const System bg1 = gen_boolean_gates(1);
    CHECK(count_kind(bg1, ProcessKind::client) == 3);
    CHECK(count_kind(bg1, ProcessKind::server) == 2);
    CHECK(is_valid(bg1));
    // One class per pair of leaf bits.
    CHECK(count_trace_classes(bg1, initial_state(bg1), 10'000).value() == 4);
}

TEST_CASE("SAT gadget answers satisfiability") {
    const std::vector<Cnf> cases = {
        cnf_of(1, {{1, 1, 1}}),
        cnf_of(1, {{1, 1, 1}, {-1, -1, -1}}),
        cnf_of(2, {{1, 2, 2}, {-1, 2, 2}, {1, -2, -2}, {-1, -2, -2}}),
        cnf_of(2, {{1, 2, 2}, {-1, -2, -2}}),
    };
    for (const auto& cnf : cases) {
        CAPTURE(format_dimacs(cnf));
        const auto g = gen_sat_ifs(cnf);
        CHECK(is_valid(g.system));
        CHECK(g.state == initial_state(g.system));
        CHECK_FALSE(g.query.contains(g.f_take));
        CHECK(g.query.size() + 1 == g.system.num_actions());
        const bool sat = oracle::satisfiable(cnf);
        CHECK(sat_truth_table(cnf) == sat);
        CHECK(ifs_exact(g.system, g.state, g.query, 10'000'000).value() == sat);
    }
}

TEST_CASE("lower-bound construction") {
    const Cnf unsat = cnf_of(1, {{1, 1, 1}, {-1, -1, -1}});
    const Cnf sat = cnf_of(2, {{1, 2, -1}, {-2, -2, -2}});
    for (const auto& [cnf, satisfiable] : std::vector<std::pair<Cnf, bool>>{{unsat, false}, {sat, true}}) {
        const System sys = gen_lowerbound(cnf);
        CHECK(is_valid(sys));
        const ActionId e = sys.find_action("e"), ne = sys.find_action("!e");
        const auto fam = first_family(sys, initial_state(sys), 1'000'000).value();
        bool e_everywhere = true;
        for (const auto& F : fam.sets) e_everywhere = e_everywhere && F.contains(e);
        CHECK(e_everywhere == !satisfiable);
        bool some_ne = false;
        const auto runs = enumerate_maximal_runs(sys, initial_state(sys), 1'000'000);
        for (const auto& r : runs.value())
            some_ne = some_ne || std::find(r.actions.begin(), r.actions.end(), ne) != r.actions.end();
        CHECK(some_ne == satisfiable);
    }
}

TEST_CASE("figures") {
    CHECK(run_strings(fig1()) == std::set<std::string>{"e a b", "e b", "b e", "b c", "c b"});
    CHECK(run_strings(fig4()) == std::set<std::string>{"a c", "c a", "b"});
    CHECK(run_strings(fig5()) == std::set<std::string>{"a b", "b a", "b c"});
    CHECK_FALSE(is_valid(fig3()));
    for (int n = 1; n <= 5; ++n) {
        const System f = fig6(n);
        CHECK(f.num_actions() == static_cast<std::size_t>(4 * n));
        CHECK(f.num_processes() == static_cast<std::size_t>(2 * n));
        CHECK(is_valid(f));
    }
    CHECK(builtin_figures().size() == 5);
    CHECK_THROWS_AS(fig6(0), std::invalid_argument);
}

TEST_CASE("random systems are valid and reproducible") {
    std::size_t total_states = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const System sys = random_system(seed);
        CHECK(is_valid(sys));
        CHECK(format_system(sys) == format_system(random_system(seed)));
        CHECK(sys.num_processes() <= 4);
        CHECK(count_kind(sys, ProcessKind::client) >= 1);
        CHECK(count_kind(sys, ProcessKind::server) >= 1);
        total_states += oracle::bfs_state_count(sys);
    }
    CHECK(total_states > 200 * 3);
    CHECK_THROWS_AS(random_system(0, {1, 4, 6}), std::invalid_argument);
}

TEST_CASE("DIMACS") {
    const Cnf c = parse_dimacs("c comment\np cnf 3 2\n1 -2 3 0\n-1 0\n");
    CHECK(c.num_vars == 3);
    REQUIRE(c.clauses.size() == 2);
    CHECK(c.clauses[1] == std::array<int, 3>{-1, -1, -1});
    CHECK(parse_dimacs(format_dimacs(c)).clauses == c.clauses);
    // A clause may span lines.
    CHECK(parse_dimacs("p cnf 2 1\n1\n2 0\n").clauses.size() == 1);
    for (const char* bad : {"", "1 2 0\n", "p cnf 2 1\n1 3 0\n", "p cnf 2 1\n1 2 -1 2 0\n",
                            "p cnf 2 2\n1 0\n", "p cnf 2 1\n1 x 0\n", "p cnf 2 1\n1 2\n", "p cnf 2 1\n0\n"})
        CHECK_THROWS_AS(parse_dimacs(bad), std::invalid_argument);
    CHECK(format_dimacs(random_cnf(3, 5, 9)) == format_dimacs(random_cnf(3, 5, 9)));
}

TEST_CASE("named models") {
    CHECK(named_model("dp4")->num_processes() == 8);
    CHECK(named_model("dp3-m2").has_value());
    CHECK(named_model("bg2")->num_processes() == 13);
    CHECK(named_model("fig6")->num_actions() == 16);
    CHECK(named_model("fig6-2")->num_actions() == 8);
    CHECK(format_system(*named_model("ml-2-3-1-4")) == format_system(gen_multilocks(2, 3, 1, 4)));
    CHECK(format_system(*named_model("rand-12")) == format_system(random_system(12)));
    CHECK_FALSE(named_model("dp").has_value());
    CHECK_FALSE(named_model("nonsense").has_value());
}
