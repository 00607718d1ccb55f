#include "stpor/heuristics.hpp"

#include <algorithm>
#include <deque>

namespace stpor {

namespace {

ProcessId partner(const System& sys, ActionId c, ProcessId p) {
    const auto& users = sys.action(c).users;
    return users[0] == p ? users[1] : users[0];
}

// Adds R to an antichain of minimal sets; returns false if R was dominated.
bool insert_minimal(std::vector<ProcessSet>& anti, const ProcessSet& R) {
    for (const auto& x : anti)
        if (x.subset_of(R)) return false;
    std::erase_if(anti, [&](const ProcessSet& x) { return R.subset_of(x); });
    anti.push_back(R);
    return true;
}

}  // namespace

HeuristicIndex::HeuristicIndex(const System& sys, IndexBudget budget)
    : sys_(&sys), empty_actions_(sys.no_actions()) {
    const std::size_t np = sys.num_processes();
    alpha_.resize(np);
    local_index_.assign(np, std::vector<std::int32_t>(sys.num_actions(), -1));
    reach_any_.resize(np);
    first_to_.resize(np);
    guarded_.resize(np);
    fallback_.assign(np, 0);
    for (ProcessId p = 0; p < np; ++p) {
        const auto& proc = sys.process(p);
        proc.alphabet.for_each([&](std::size_t a) {
            local_index_[p][a] = static_cast<std::int32_t>(alpha_[p].size());
            alpha_[p].push_back(static_cast<ActionId>(a));
        });
        const std::size_t ns = proc.num_states();
        // Local footprints by a search from every state; local TSs are small.
        reach_any_[p].assign(ns, sys.no_actions());
        for (std::size_t t0 = 0; t0 < ns; ++t0) {
            std::vector<char> seen(ns, 0);
            std::vector<std::size_t> todo{t0};
            seen[t0] = 1;
            while (!todo.empty()) {
                const std::size_t u = todo.back();
                todo.pop_back();
                reach_any_[p][t0] |= proc.local_enabled[u];
                for (const auto& [a, w] : proc.out[u])
                    if (!seen[w]) {
                        seen[w] = 1;
                        todo.push_back(w);
                    }
            }
        }
        first_to_[p].assign(ns * alpha_[p].size(), sys.no_actions());
        for (std::size_t t = 0; t < ns; ++t)
            for (const auto& [c, w] : proc.out[t])
                reach_any_[p][w].for_each([&](std::size_t b) {
                    first_to_[p][slot(p, static_cast<LocalState>(t), static_cast<ActionId>(b))]
                        .insert(c);
                });
        build_guarded(p, budget);
    }
}

void HeuristicIndex::build_guarded(ProcessId p, IndexBudget budget) {
    const auto& sys = *sys_;
    const auto& proc = sys.process(p);
    const std::size_t ns = proc.num_states();
    const std::size_t na = alpha_[p].size();
    auto& table = guarded_[p];
    table.assign(ns * na, {});
    std::size_t local_stored = 0;
    auto over_budget = [&] {
        if (budget.fallback) {
            fallback_[p] = 1;
            stored_ -= local_stored;
            table.clear();
            return true;
        }
        throw TripleBudgetExceeded("guarded triple budget of " +
                                   std::to_string(budget.max_triples) + " exceeded in process " +
                                   proc.name);
    };
    for (std::size_t li = 0; li < na; ++li) {
        const ActionId b = alpha_[p][li];
        std::vector<std::vector<ProcessSet>> M(ns);
        for (std::size_t t = 0; t < ns; ++t)
            if (proc.local_enabled[t].contains(b)) M[t].push_back(sys.no_processes());
        // Chaotic iteration to the least antichain fixpoint; terminates because
        // each state's upward closure only grows.
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t t = 0; t < ns; ++t) {
                if (proc.local_enabled[t].contains(b)) continue;
                std::vector<ProcessSet> cand;
                for (const auto& [a, w] : proc.out[t])
                    for (const auto& R : M[w]) insert_minimal(cand, R | sys.action(a).dom);
                std::sort(cand.begin(), cand.end());
                if (cand != M[t]) {
                    M[t] = std::move(cand);
                    changed = true;
                }
            }
        }
        for (std::size_t t = 0; t < ns; ++t) {
            local_stored += M[t].size();
            stored_ += M[t].size();
            table[t * na + li] = std::move(M[t]);
        }
        if (stored_ > budget.max_triples && over_budget()) return;
    }
}

const ActionSet& HeuristicIndex::first_to(ProcessId p, LocalState t, ActionId b) const {
    if (local_index_[p][b] < 0) return empty_actions_;
    return first_to_[p][slot(p, t, b)];
}

const std::vector<ProcessSet>& HeuristicIndex::guarded_sets(ProcessId p, LocalState t,
                                                            ActionId b) const {
    static const std::vector<ProcessSet> none;
    if (fallback_[p] || local_index_[p][b] < 0) return none;
    return guarded_[p][slot(p, t, b)];
}

bool HeuristicIndex::guarded(ProcessId p, LocalState t, const ProcessSet& R, ActionId b) const {
    if (local_index_[p][b] < 0) return false;
    if (fallback_[p]) return guarded_search(p, t, R, b);
    for (const auto& m : guarded_[p][slot(p, t, b)])
        if (m.subset_of(R)) return true;
    return false;
}

bool HeuristicIndex::guarded_search(ProcessId p, LocalState t, const ProcessSet& R,
                                    ActionId b) const {
    const auto& proc = sys_->process(p);
    std::vector<char> seen(proc.num_states(), 0);
    std::vector<LocalState> todo{t};
    seen[t] = 1;
    while (!todo.empty()) {
        const LocalState u = todo.back();
        todo.pop_back();
        if (proc.local_enabled[u].contains(b)) return true;
        for (const auto& [a, w] : proc.out[u])
            if (!seen[w] && sys_->action(a).dom.subset_of(R)) {
                seen[w] = 1;
                todo.push_back(w);
            }
    }
    return false;
}

// ------------------------------------------------------------- Queries

bool wraps(const System& sys, const ProcessSet& R, StateView s) {
    ActionSet en = sys.no_actions();
    sys.enabled_into(s.data(), en);
    bool ok = true;
    en.for_each([&](std::size_t e) {
        if (ok && !sys.action(static_cast<ActionId>(e)).dom.intersects(R)) ok = false;
    });
    return ok;
}

FixpointResult pifs_fixpoint(const HeuristicIndex& idx, StateView s, const ActionSet& B0,
                             bool guarded, const RoundObserver& observe) {
    const System& sys = idx.system();
    ActionSet en = sys.no_actions();
    sys.enabled_into(s.data(), en);
    std::vector<const ProcessSet*> en_doms;
    en.for_each([&](std::size_t e) { en_doms.push_back(&sys.action(static_cast<ActionId>(e)).dom); });
    auto wraps_en = [&](const ProcessSet& R) {
        for (const auto* d : en_doms)
            if (!d->intersects(R)) return false;
        return true;
    };

    FixpointResult res;
    res.set = B0;
    for (std::size_t round = 0;; ++round) {
        const ProcessSet R = dom_of(sys, res.set);
        const bool w = wraps_en(R);
        if (observe) observe(round, res.set, w);
        res.rounds = round;
        if (w) {
            res.verdict = true;
            return res;
        }
        ActionSet C = sys.no_actions();
        for (ProcessId p = 0; p < sys.num_processes(); ++p) {
            const auto& proc = sys.process(p);
            const LocalState sp = s[p];
            const ActionSet Bp = res.set & proc.local_enabled[sp];
            if (Bp.empty()) continue;
            Bp.for_each([&](std::size_t bi) {
                const LocalState t2 = proc.next(sp, static_cast<ActionId>(bi));
                const ActionSet& reach = idx.reach_any(p, t2);
                reach.for_each([&](std::size_t ci) {
                    const auto c = static_cast<ActionId>(ci);
                    if (res.set.contains(c) || C.contains(c)) return;
                    if (sys.action(c).users.size() != 2) return;
                    const ProcessId q = partner(sys, c, p);
                    if (!sys.locally_enabled(q, s[q], c)) return;
                    if (guarded && !idx.guarded(p, t2, R, c)) return;
                    C.insert(c);
                });
            });
        }
        if (C.empty()) {
            res.verdict = false;
            return res;
        }
        res.set |= C;
    }
}

bool pifs(const HeuristicIndex& idx, StateView s, const ActionSet& B) {
    return pifs_fixpoint(idx, s, B, true).verdict;
}

bool rpifs(const HeuristicIndex& idx, StateView s, const ActionSet& B) {
    return pifs_fixpoint(idx, s, B, false).verdict;
}

FixpointResult apifs(const HeuristicIndex& idx, StateView s, const ActionSet& B) {
    return pifs_fixpoint(idx, s, B, true);
}

ActionSet closure(const HeuristicIndex& idx, StateView s, ActionId b, const RoundObserver& observe) {
    const System& sys = idx.system();
    ActionSet C = sys.no_actions();
    for (ProcessId p : sys.action(b).users) C |= sys.process(p).local_enabled[s[p]];
    std::deque<ActionId> work;
    C.for_each([&](std::size_t a) { work.push_back(static_cast<ActionId>(a)); });
    std::size_t wave = 0;
    if (observe) observe(wave++, C, false);
    while (!work.empty()) {
        const ActionId bp = work.front();
        work.pop_front();
        const auto& users = sys.action(bp).users;
        if (users.size() != 2) continue;
        ActionSet added = sys.no_actions();
        for (int k = 0; k < 2; ++k) {
            const ProcessId p = users[k], q = users[1 - k];
            if (!sys.locally_enabled(p, s[p], bp)) continue;
            added |= idx.first_to(q, s[q], bp) - C;
        }
        if (added.empty()) continue;
        C |= added;
        added.for_each([&](std::size_t a) { work.push_back(static_cast<ActionId>(a)); });
        if (observe) observe(wave++, C, false);
    }
    return C;
}

ProcessSet p_closure(const HeuristicIndex& idx, StateView s, ActionId b) {
    const System& sys = idx.system();
    ProcessSet R = sys.action(b).dom;
    ProcessSet done = sys.no_processes();
    for (bool grew = true; grew;) {
        grew = false;
        const ProcessSet todo = R - done;
        todo.for_each([&](std::size_t p) {
            done.insert(p);
            idx.reach_any(static_cast<ProcessId>(p), s[p]).for_each([&](std::size_t c) {
                const auto& d = sys.action(static_cast<ActionId>(c)).dom;
                if (!d.subset_of(R)) {
                    R |= d;
                    grew = true;
                }
            });
        });
    }
    return R;
}

ActionSet p_set(const HeuristicIndex& idx, StateView s, ActionId b) {
    const System& sys = idx.system();
    const ProcessSet R = p_closure(idx, s, b);
    ActionSet en = sys.no_actions();
    sys.enabled_into(s.data(), en);
    ActionSet out = sys.no_actions();
    en.for_each([&](std::size_t a) {
        if (sys.action(static_cast<ActionId>(a)).dom.subset_of(R)) out.insert(a);
    });
    return out;
}

namespace {

template <class Source>
ActionSet min_over_candidates(const HeuristicIndex& idx, StateView s, const ActionSet& sleep,
                              Source&& source) {
    const System& sys = idx.system();
    ActionSet en = sys.no_actions();
    sys.enabled_into(s.data(), en);
    const ActionSet E = en - sleep;
    ActionSet best = E;
    std::size_t best_size = best.size();
    for (ActionId b : sys.order()) {
        if (!E.contains(b)) continue;
        if (best_size <= 1) break;  // nothing smaller than a singleton can follow
        ActionSet cand = source(b) & E;
        const std::size_t n = cand.size();
        if (n < best_size) {
            best = std::move(cand);
            best_size = n;
        }
    }
    return best;
}

}  // namespace

ActionSet min_closure(const HeuristicIndex& idx, StateView s, const ActionSet& sleep) {
    return min_over_candidates(idx, s, sleep, [&](ActionId b) { return closure(idx, s, b); });
}

ActionSet min_pset(const HeuristicIndex& idx, StateView s, const ActionSet& sleep) {
    return min_over_candidates(idx, s, sleep, [&](ActionId b) { return p_set(idx, s, b); });
}

ActionSet lex_closure(const HeuristicIndex& idx, StateView s, const ActionSet& sleep) {
    const System& sys = idx.system();
    ActionSet en = sys.no_actions();
    sys.enabled_into(s.data(), en);
    for (ActionId b : sys.order())
        if (en.contains(b)) return closure(idx, s, b) & (en - sleep);
    return sys.no_actions();
}

ActionId choose_action(const HeuristicIndex& idx, StateView s, const ActionSet& A) {
    if (A.empty()) throw std::invalid_argument("choose_action: empty candidate set");
    const System& sys = idx.system();
    ActionId best = 0;
    std::size_t best_size = 0;
    bool have = false;
    for (ActionId b : sys.order()) {
        if (!A.contains(b)) continue;
        ActionSet single = sys.no_actions();
        single.insert(b);
        const auto r = apifs(idx, s, single);
        if (r.verdict) return b;
        const std::size_t n = r.set.size();
        if (!have || n > best_size) {
            best = b;
            best_size = n;
            have = true;
        }
    }
    return best;
}

}  // namespace stpor
