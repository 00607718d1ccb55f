#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "stpor/explorer.hpp"
#include "stpor/generators.hpp"
#include "stpor/verifier.hpp"

using namespace stpor;

namespace {

ExploreConfig lex_tree() {
    ExploreConfig c;
    c.oracle = OracleKind::exact_ifs;
    c.sleep = true;
    c.subsumption = Subsumption::off;
    return c;
}

ExploreConfig as_tree(ExploreConfig c) {
    c.subsumption = Subsumption::off;
    return c;
}

}  // namespace

TEST_CASE("full transition system") {
    const System f1 = fig1();
    const auto b1 = build_full_ts(f1, 1000);
    const FullTS& t1 = b1.value();
    CHECK(t1.num_states() == 8);
    CHECK(t1.num_edges() == 9);
    CHECK(t1.states.state(t1.root) == initial_state(f1));

    const auto b4 = build_full_ts(fig4(), 1000);
    CHECK(b4.value().num_states() == 5);

    CHECK(build_full_ts(gen_philosophers(4), 10).limit_exceeded());
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const System sys = random_system(seed);
        const auto b = build_full_ts(sys, 100'000);
        CHECK(b.value().num_states() == oracle::bfs_state_count(sys));
    }
}

TEST_CASE("bottom-up first sets equal the run-based families") {
    std::vector<System> systems = {fig1(), fig4(), fig5(), fig6(2), gen_philosophers(3)};
    for (std::uint64_t seed = 0; seed < 40; ++seed) systems.push_back(random_system(seed));
    for (const auto& sys : systems) {
        const auto b = build_full_ts(sys, 100'000);
        const FullTS& ts = b.value();
        const FirstSets fs = first_sets_bottom_up(sys, ts, 100'000);
        CHECK_FALSE(fs.overflow_state.has_value());
        REQUIRE(fs.families.size() == ts.num_states());
        for (StateId id = 0; id < ts.num_states(); ++id)
            CHECK(fs.families[id] == first_family(sys, ts.states.state(id), 1'000'000).value());
    }
    const auto b = build_full_ts(gen_philosophers(3), 1000);
    CHECK(first_sets_bottom_up(gen_philosophers(3), b.value(), 1).overflow_state.has_value());
}

TEST_CASE("every preset is sound and complete on small systems") {
    std::vector<System> systems = {fig1(), fig4(), fig5(), fig6(3), gen_philosophers(3), gen_boolean_gates(1),
                                   gen_multilocks(3, 3, 2, 1)};
    for (std::uint64_t seed = 0; seed < 60; ++seed) systems.push_back(random_system(seed));
    for (const auto& sys : systems) {
        Verifier v(sys);
        for (const auto& name : preset_names()) {
            CAPTURE(sys.name());
            CAPTURE(name);
            const auto r = explore(sys, preset(name));
            const Verdict c = v.completeness(r.ts);
            const Verdict s = v.soundness(r.ts);
            CHECK(c.passed());
            CHECK(s.passed());
            CHECK(c.check == "completeness");
            CHECK(s.check == "soundness");
        }
    }
}

TEST_CASE("completeness failure names a witness") {
    const System sys = fig1();
    const GlobalState s0 = initial_state(sys);
    ReducedTS ts(sys.num_processes(), sys.num_actions());
    ts.add_node(s0, sys.no_actions());
    const NodeId n1 = ts.add_node(step(sys, s0, sys.find_action("c")), sys.no_actions());
    ts.add_edge(0, sys.find_action("c"), n1);
    const Verdict v = check_completeness(sys, ts);
    CHECK(v.status == VerdictStatus::fail);
    REQUIRE(v.node.has_value());
    CHECK(*v.node == 0);
    REQUIRE(v.first_set.has_value());
    CHECK(*v.first_set == make_action_set(sys, {"e"}));
    CHECK_FALSE(v.detail.empty());

    // The sleep-filtered check on a sleep-set graph may pass where the unfiltered one fails.
    const auto full = explore(sys, preset("full+sleep"));
    CHECK(check_completeness(sys, full.ts).passed());
    const Verdict un = check_completeness(sys, full.ts, {}, false);
    CHECK(un.check == "completeness-unfiltered");
    CHECK(un.status == VerdictStatus::fail);
}

TEST_CASE("soundness catches corrupted edges and truncated nodes") {
    const System sys = fig1();
    SUBCASE("relabelled edge") {
        auto r = explore(sys, preset("reach"));
        auto& e = r.ts.mutable_edges()[0];
        const ActionSet en = enabled(sys, r.ts.state(e.from));
        for (ActionId a = 0; a < sys.num_actions(); ++a)
            if (!en.contains(a)) {
                e.action = a;
                break;
            }
        const Verdict v = check_soundness(sys, r.ts);
        CHECK(v.status == VerdictStatus::fail);
        REQUIRE(v.edge.has_value());
        CHECK(*v.edge == 0);
    }
    SUBCASE("wrong target") {
        auto r = explore(sys, preset("reach"));
        auto& e = r.ts.mutable_edges()[0];
        e.to = e.from;
        CHECK(check_soundness(sys, r.ts).status == VerdictStatus::fail);
    }
    SUBCASE("truncated node") {
        auto r = explore(sys, preset("reach"));
        r.ts.truncate_node(0);
        const Verdict v = check_soundness(sys, r.ts);
        CHECK(v.status == VerdictStatus::fail);
        REQUIRE(v.node.has_value());
        CHECK(*v.node == 0);
    }
    SUBCASE("sleep-blocked sinks are counted") {
        const auto r = explore(sys, preset("full+sleep"));
        const Verdict v = check_soundness(sys, r.ts);
        CHECK(v.passed());
        // After b in fig5 both remaining runs start with a sleeping action.
        const System f5 = fig5();
        const GlobalState s0 = initial_state(f5);
        const ActionId a = f5.find_action("a"), b = f5.find_action("b");
        ReducedTS ts(f5.num_processes(), f5.num_actions());
        ts.add_node(s0, f5.no_actions());
        const NodeId na = ts.add_node(step(f5, s0, a), f5.no_actions());
        const NodeId nab = ts.add_node(step(f5, step(f5, s0, a), b), f5.no_actions());
        const NodeId nb = ts.add_node(step(f5, s0, b), make_action_set(f5, {"a", "c"}));
        ts.add_edge(0, a, na);
        ts.add_edge(na, b, nab);
        ts.add_edge(0, b, nb);
        const Verdict sv = check_soundness(f5, ts);
        CHECK(sv.passed());
        CHECK(sv.sleep_blocked_sinks == 1);
        ts.add_node(step(f5, s0, b), make_action_set(f5, {"a"}));
        ts.add_edge(0, b, 4);
        CHECK(check_soundness(f5, ts).status == VerdictStatus::fail);
    }
}

TEST_CASE("trace optimality of lex trees") {
    const std::vector<std::pair<System, std::size_t>> cases = {
        {fig1(), 3}, {fig4(), 2}, {fig5(), 2}, {fig6(4), 16}, {gen_philosophers(4), 45}, {gen_boolean_gates(2), 16}};
    for (const auto& [sys, classes] : cases) {
        CAPTURE(sys.name());
        const auto t = explore_tree(sys, lex_tree());
        const Verdict v = check_trace_optimality(sys, t.ts);
        CHECK(v.passed());
        CHECK(v.check == "trace-optimality");
        CHECK(v.classes == classes);
        CHECK(v.tree_runs == classes);
    }
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const System sys = random_system(seed);
        const auto t = explore_tree(sys, lex_tree());
        const Verdict v = check_trace_optimality(sys, t.ts);
        CHECK(v.passed());
        CHECK(v.classes == count_trace_classes(sys, initial_state(sys), 1'000'000).value());
    }
}

TEST_CASE("trace optimality reports both counts on failure") {
    // Without sleep sets the plain reachability tree repeats classes.
    const System sys = fig1();
    ExploreConfig c = as_tree(preset("reach"));
    const auto t = explore_tree(sys, c);
    const Verdict v = check_trace_optimality(sys, t.ts);
    CHECK(v.status == VerdictStatus::fail);
    CHECK(v.tree_runs == 5);
    CHECK(v.classes == 3);

    const auto p = explore_tree(fig6(3), as_tree(preset("full+sleep")));
    const Verdict pv = check_trace_optimality(fig6(3), p.ts);
    CHECK(pv.classes == 8);
    CHECK(pv.tree_runs >= 8);
}

TEST_CASE("limits give inconclusive verdicts") {
    const System sys = gen_philosophers(4);
    auto r = explore(sys, preset("full+sleep"));
    VerifyLimits tiny;
    tiny.node_limit = 5;
    CHECK(check_completeness(sys, r.ts, tiny).status == VerdictStatus::inconclusive);
    // Soundness needs the first sets only for a non-terminal sink.
    CHECK(check_soundness(sys, r.ts, tiny).passed());
    r.ts.truncate_node(0);
    CHECK(check_soundness(sys, r.ts, tiny).status == VerdictStatus::inconclusive);
    VerifyLimits cap;
    cap.family_cap = 1;
    CHECK(check_completeness(sys, r.ts, cap).status == VerdictStatus::inconclusive);
    VerifyLimits runs;
    runs.run_limit = 3;
    const auto t = explore_tree(sys, lex_tree());
    CHECK(check_trace_optimality(sys, t.ts, runs).status == VerdictStatus::inconclusive);
    CHECK(to_string(VerdictStatus::inconclusive) == "inconclusive");

    Verifier v(sys, tiny);
    CHECK(v.full_ts() == nullptr);
    CHECK(v.first_sets() == nullptr);
}

TEST_CASE("truth-table satisfiability") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Cnf cnf = random_cnf(1 + seed % 5, 1 + seed % 13, seed);
        CHECK(sat_truth_table(cnf) == oracle::satisfiable(cnf));
    }
    CHECK(sat_truth_table(Cnf{3, {}}));
    CHECK_THROWS_AS(sat_truth_table(Cnf{21, {}}), std::invalid_argument);
}
