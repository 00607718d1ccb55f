#include <benchmark/benchmark.h>

#include <random>

#include "stpor/explorer.hpp"
#include "stpor/generators.hpp"
#include "stpor/heuristics.hpp"
#include "stpor/traces.hpp"
#include "stpor/verifier.hpp"

using namespace stpor;

namespace {

const std::vector<std::string>& presets() { return preset_names(); }

void set_counters(benchmark::State& state, const ExploreStats& s) {
    state.counters["nodes"] = static_cast<double>(s.nodes);
    state.counters["edges"] = static_cast<double>(s.edges);
    state.counters["oracle_calls"] = static_cast<double>(s.oracle_calls);
}

// Arg 0 is the philosopher count, arg 1 the preset index.
void BM_ExplorePhilosophers(benchmark::State& state) {
    const System sys = gen_philosophers(static_cast<int>(state.range(0)));
    const std::string& name = presets()[static_cast<std::size_t>(state.range(1))];
    state.SetLabel(name);
    ExploreStats last;
    for (auto _ : state) {
        auto r = explore(sys, preset(name));
        last = r.stats;
        benchmark::DoNotOptimize(r.ts.num_nodes());
    }
    set_counters(state, last);
}
BENCHMARK(BM_ExplorePhilosophers)->ArgsProduct({{4, 6}, {0, 1, 2, 3, 4, 5}})->Unit(benchmark::kMillisecond);

void BM_ExploreMultilocks(benchmark::State& state) {
    const System sys = gen_multilocks(static_cast<int>(state.range(0)), 10, 2, 7);
    const std::string& name = presets()[static_cast<std::size_t>(state.range(1))];
    state.SetLabel(name);
    ExploreStats last;
    for (auto _ : state) {
        auto r = explore(sys, preset(name));
        last = r.stats;
        benchmark::DoNotOptimize(r.ts.num_nodes());
    }
    set_counters(state, last);
}
BENCHMARK(BM_ExploreMultilocks)->ArgsProduct({{4, 6}, {0, 1, 5}})->Unit(benchmark::kMillisecond);

// Exact-oracle graph on fig6(n) under alphabetic (0) or process-major (1) order.
void BM_OrderSensitivity(benchmark::State& state) {
    const System sys = fig6(static_cast<int>(state.range(0)));
    ExploreConfig c;
    c.oracle = OracleKind::exact_ifs;
    c.sleep = true;
    c.subsumption = Subsumption::sleep_subset;
    c.order = state.range(1) == 0 ? alphabetic_order(sys) : process_major_order(sys);
    state.SetLabel(state.range(1) == 0 ? "alpha" : "process");
    ExploreStats last;
    for (auto _ : state) {
        auto r = explore(sys, c);
        last = r.stats;
        benchmark::DoNotOptimize(r.ts.num_nodes());
    }
    set_counters(state, last);
}
BENCHMARK(BM_OrderSensitivity)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

// Oracle queries on random subsets at every reachable state of dp4.
template <typename Query>
void oracle_queries(benchmark::State& state, Query query) {
    const System sys = gen_philosophers(4);
    const HeuristicIndex idx(sys);
    const auto built = build_full_ts(sys, 1'000'000);
    const FullTS& ts = built.value();
    std::mt19937_64 rng(1);
    std::vector<std::pair<GlobalState, ActionSet>> work;
    for (StateId id = 0; id < ts.num_states(); id += 7) {
        ActionSet B = sys.no_actions();
        for (ActionId a = 0; a < sys.num_actions(); ++a)
            if (rng() % 4 == 0) B.insert(a);
        work.emplace_back(ts.states.state(id), B);
    }
    for (auto _ : state)
        for (const auto& [s, B] : work) benchmark::DoNotOptimize(query(sys, idx, s, B));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * work.size()));
}

void BM_Pifs(benchmark::State& state) {
    oracle_queries(state, [](const System&, const HeuristicIndex& idx, const GlobalState& s, const ActionSet& B) {
        return pifs(idx, s, B);
    });
}
BENCHMARK(BM_Pifs);

void BM_Rpifs(benchmark::State& state) {
    oracle_queries(state, [](const System&, const HeuristicIndex& idx, const GlobalState& s, const ActionSet& B) {
        return rpifs(idx, s, B);
    });
}
BENCHMARK(BM_Rpifs);

void BM_IfsExact(benchmark::State& state) {
    oracle_queries(state, [](const System& sys, const HeuristicIndex&, const GlobalState& s, const ActionSet& B) {
        return ifs_exact(sys, s, B, 10'000'000).value();
    });
}
BENCHMARK(BM_IfsExact)->Unit(benchmark::kMillisecond);

void BM_LexNormalForm(benchmark::State& state) {
    const System sys = fig6(8);
    std::mt19937_64 rng(3);
    Word w;
    for (int i = 0; i < state.range(0); ++i) w.push_back(static_cast<ActionId>(rng() % sys.num_actions()));
    for (auto _ : state) benchmark::DoNotOptimize(lex_normal_form(sys, w));
}
BENCHMARK(BM_LexNormalForm)->Arg(16)->Arg(256);

void BM_HeuristicIndex(benchmark::State& state) {
    const System sys = gen_multilocks(static_cast<int>(state.range(0)), 20, 3, 5);
    for (auto _ : state) {
        HeuristicIndex idx(sys);
        benchmark::DoNotOptimize(&idx);
    }
}
BENCHMARK(BM_HeuristicIndex)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_VerifyCompleteness(benchmark::State& state) {
    const System sys = gen_philosophers(static_cast<int>(state.range(0)));
    const auto r = explore(sys, preset("full+sleep"));
    for (auto _ : state) benchmark::DoNotOptimize(check_completeness(sys, r.ts).passed());
}
BENCHMARK(BM_VerifyCompleteness)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
