#include "stpor/verifier.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace stpor {

std::size_t FullTS::num_edges() const {
    std::size_t n = 0;
    for (const auto& s : succ) n += s.size();
    return n;
}

Bounded<FullTS> build_full_ts(const System& sys, std::size_t node_limit) {
    FullTS ts(sys.num_processes());
    const GlobalState s0 = initial_state(sys);
    ts.root = ts.states.intern(s0).first;
    std::vector<LocalState> next(sys.num_processes());
    ActionSet en = sys.no_actions();
    // States are appended in discovery order, so a plain index sweep is a BFS.
    for (StateId s = 0; s < ts.states.size(); ++s) {
        sys.enabled_into(ts.states.data(s), en);
        std::vector<std::pair<ActionId, StateId>> out;
        for (ActionId a : sys.order()) {
            if (!en.contains(a)) continue;
            sys.step_into(ts.states.data(s), a, next.data());
            const auto [id, fresh] = ts.states.intern(next.data());
            if (fresh && ts.states.size() > node_limit) return Bounded<FullTS>::exceeded(node_limit);
            out.emplace_back(a, id);
        }
        ts.succ.push_back(std::move(out));
    }
    return ts;
}

FirstSets first_sets_bottom_up(const System& sys, const FullTS& ts, std::size_t family_cap) {
    const std::size_t n = ts.num_states();
    FirstSets res;
    res.families.resize(n);
    // Post-order over the acyclic product.
    std::vector<std::uint8_t> done(n, 0);
    std::vector<std::pair<StateId, std::size_t>> stack;
    for (StateId start = 0; start < n; ++start) {
        if (done[start]) continue;
        stack.emplace_back(start, 0);
        done[start] = 1;
        while (!stack.empty()) {
            auto& [u, i] = stack.back();
            if (i < ts.succ[u].size()) {
                const StateId v = ts.succ[u][i++].second;
                if (!done[v]) {
                    done[v] = 1;
                    stack.emplace_back(v, 0);
                }
                continue;
            }
            auto& fam = res.families[u];
            if (ts.succ[u].empty()) {
                fam.sets.push_back(sys.no_actions());
            } else {
                std::unordered_set<ActionSet, DenseSetHash> acc;
                for (const auto& [a, v] : ts.succ[u])
                    for (const auto& F : res.families[v].sets) {
                        ActionSet G = F - sys.dependents(a);
                        G.insert(a);
                        acc.insert(std::move(G));
                    }
                if (acc.size() > family_cap) {
                    res.overflow_state = u;
                    return res;
                }
                fam.sets.assign(acc.begin(), acc.end());
                std::sort(fam.sets.begin(), fam.sets.end());
            }
            stack.pop_back();
        }
    }
    return res;
}

std::string_view to_string(VerdictStatus v) {
    switch (v) {
        case VerdictStatus::pass: return "pass";
        case VerdictStatus::fail: return "fail";
        case VerdictStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

// -------------------------------------------------------------- Verifier

Verifier::Verifier(const System& sys, VerifyLimits limits) : sys_(sys), limits_(limits) {}

const FullTS* Verifier::full_ts() {
    if (!built_) {
        built_ = true;
        auto ts = build_full_ts(sys_, limits_.node_limit);
        if (ts.limit_exceeded()) {
            failure_ = "full transition system exceeds " + std::to_string(limits_.node_limit) + " states";
            return nullptr;
        }
        full_ = std::make_unique<FullTS>(std::move(ts.value()));
        auto fs = first_sets_bottom_up(sys_, *full_, limits_.family_cap);
        if (fs.overflow_state) {
            failure_ = "first-set family of state " + std::to_string(*fs.overflow_state) +
                       " exceeds " + std::to_string(limits_.family_cap) + " sets";
            return full_.get();
        }
        firsts_ = std::make_unique<FirstSets>(std::move(fs));
    }
    return full_.get();
}

const FirstSets* Verifier::first_sets() {
    full_ts();
    return firsts_.get();
}

bool Verifier::prepare(Verdict& v) {
    if (first_sets()) return true;
    v.status = VerdictStatus::inconclusive;
    v.detail = failure_;
    return false;
}

std::optional<StateId> Verifier::lookup(const ReducedTS& rts, NodeId n) const {
    const StateId id = full_->states.find(rts.state_data(n));
    if (id == StateStore::kNoStateId) return std::nullopt;
    return id;
}

Verdict Verifier::completeness(const ReducedTS& rts, bool filter_sleep) {
    Verdict v;
    v.check = filter_sleep ? "completeness" : "completeness-unfiltered";
    if (!prepare(v)) return v;
    const auto adj = rts.adjacency();
    ActionSet labels = sys_.no_actions();
    for (NodeId n = 0; n < rts.num_nodes(); ++n) {
        const auto sid = lookup(rts, n);
        if (!sid) {
            v.status = VerdictStatus::fail;
            v.node = n;
            v.detail = "node " + std::to_string(n) + " holds an unreachable state";
            return v;
        }
        if (full_->succ[*sid].empty()) continue;  // terminal: no obligation
        labels.clear();
        for (std::size_t k = adj.offset[n]; k < adj.offset[n + 1]; ++k)
            labels.insert(rts.edges()[adj.edge[k]].action);
        const ActionSet& sleep = rts.sleep(n);
        for (const auto& F : firsts_->families[*sid].sets) {
            if (F.empty()) continue;
            if (filter_sleep && F.intersects(sleep)) continue;
            if (!F.intersects(labels)) {
                v.status = VerdictStatus::fail;
                v.node = n;
                v.first_set = F;
                v.detail = "node " + std::to_string(n) + " misses first set " +
                           format_actions(sys_, F) + " (out-labels " +
                           format_actions(sys_, labels) + ")";
                return v;
            }
        }
    }
    v.detail = std::to_string(rts.num_nodes()) + " nodes covered";
    return v;
}

Verdict Verifier::soundness(const ReducedTS& rts) {
    Verdict v;
    v.check = "soundness";
    std::vector<LocalState> next(sys_.num_processes());
    ActionSet en = sys_.no_actions();
    for (std::size_t i = 0; i < rts.num_edges(); ++i) {
        const Edge& e = rts.edges()[i];
        const LocalState* s = rts.state_data(e.from);
        sys_.enabled_into(s, en);
        bool ok = e.action < sys_.num_actions() && en.contains(e.action);
        if (ok) {
            sys_.step_into(s, e.action, next.data());
            ok = std::equal(next.begin(), next.end(), rts.state_data(e.to));
        }
        if (!ok) {
            v.status = VerdictStatus::fail;
            v.edge = i;
            v.node = e.from;
            v.detail = "edge " + std::to_string(i) + " (" + std::to_string(e.from) + " -" +
                       (e.action < sys_.num_actions() ? sys_.action_name(e.action) : "?") + "-> " +
                       std::to_string(e.to) + ") does not replay";
            return v;
        }
    }
    const auto adj = rts.adjacency();
    for (NodeId n = 0; n < rts.num_nodes(); ++n) {
        if (adj.offset[n] != adj.offset[n + 1]) continue;
        sys_.enabled_into(rts.state_data(n), en);
        if (en.empty()) continue;
        // Non-terminal sink: acceptable only if sleep blocks every first set.
        if (!prepare(v)) return v;
        const auto sid = lookup(rts, n);
        bool blocked = sid.has_value();
        if (sid)
            for (const auto& F : firsts_->families[*sid].sets)
                if (!F.intersects(rts.sleep(n))) {
                    blocked = false;
                    v.first_set = F;
                    break;
                }
        if (!blocked) {
            v.status = VerdictStatus::fail;
            v.node = n;
            v.detail = "node " + std::to_string(n) + " is a non-terminal sink not justified by its sleep set " +
                       format_actions(sys_, rts.sleep(n));
            return v;
        }
        ++v.sleep_blocked_sinks;
    }
    v.detail = std::to_string(rts.num_edges()) + " edges replayed, " +
               std::to_string(v.sleep_blocked_sinks) + " sleep-blocked sinks";
    return v;
}

Verdict Verifier::trace_optimality(const ReducedTS& tree) {
    Verdict v;
    v.check = "trace-optimality";
    auto runs = enumerate_full_runs(tree, limits_.run_limit);
    if (runs.limit_exceeded()) {
        v.status = VerdictStatus::inconclusive;
        v.detail = "tree has more than " + std::to_string(limits_.run_limit) + " full runs";
        return v;
    }
    v.tree_runs = runs.value().size();
    std::set<Word> seen;
    bool all_lex = true, distinct = true;
    for (const auto& w : runs.value()) {
        const Word nf = lex_normal_form(sys_, w);
        if (nf != w && all_lex) {
            all_lex = false;
            v.detail = "run '" + format_word(sys_, w) + "' is not lex-minimal";
        }
        if (!seen.insert(nf).second && distinct) {
            distinct = false;
            if (all_lex) v.detail = "two tree runs share the trace of '" + format_word(sys_, w) + "'";
        }
    }
    // One lex-normal maximal run per trace class of the full system.
    std::set<Word> classes;
    const bool ok = for_each_lex_normal_run(sys_, initial_state(sys_), limits_.run_limit,
                                            [&](std::span<const ActionId> w) {
                                                classes.emplace(w.begin(), w.end());
                                            });
    if (!ok) {
        v.status = VerdictStatus::inconclusive;
        v.detail = "system has more than " + std::to_string(limits_.run_limit) + " trace classes";
        return v;
    }
    v.classes = classes.size();
    const bool complete = std::includes(seen.begin(), seen.end(), classes.begin(), classes.end());
    if (!all_lex || !distinct || v.tree_runs != v.classes || !complete) {
        v.status = VerdictStatus::fail;
        if (v.detail.empty())
            v.detail = complete ? "tree runs do not match trace classes" : "a trace class has no tree run";
    }
    v.detail = (v.detail.empty() ? "" : v.detail + "; ") + std::to_string(v.tree_runs) +
               " tree runs, " + std::to_string(v.classes) + " classes";
    return v;
}

Verdict check_completeness(const System& sys, const ReducedTS& rts, VerifyLimits limits,
                           bool filter_sleep) {
    return Verifier(sys, limits).completeness(rts, filter_sleep);
}

Verdict check_soundness(const System& sys, const ReducedTS& rts, VerifyLimits limits) {
    return Verifier(sys, limits).soundness(rts);
}

Verdict check_trace_optimality(const System& sys, const ReducedTS& tree, VerifyLimits limits) {
    return Verifier(sys, limits).trace_optimality(tree);
}

bool sat_truth_table(const Cnf& cnf) {
    if (cnf.num_vars > 20) throw std::invalid_argument("sat_truth_table: more than 20 variables");
    for (std::uint32_t m = 0; m < (1u << cnf.num_vars); ++m) {
        bool all = true;
        for (const auto& cl : cnf.clauses) {
            bool any = false;
            for (int lit : cl) {
                const bool val = (m >> (std::abs(lit) - 1)) & 1u;
                if ((lit > 0) == val) any = true;
            }
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

}  // namespace stpor
