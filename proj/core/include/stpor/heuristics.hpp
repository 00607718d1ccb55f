#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "stpor/system.hpp"
#include "stpor/traces.hpp"

namespace stpor {

/// Caps the number of stored guarded sets across all processes.
struct IndexBudget {
    std::size_t max_triples = 4'000'000;
    /// Past the cap, answer guarded queries by local search instead of failing.
    bool fallback = false;
};

class TripleBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Per-process local reachability tables. Immutable after construction; the
/// referenced System must outlive the index.
class HeuristicIndex {
public:
    explicit HeuristicIndex(const System& sys, IndexBudget budget = {});

    const System& system() const noexcept { return *sys_; }

    /// Actions labelling some local path from t.
    const ActionSet& reach_any(ProcessId p, LocalState t) const { return reach_any_[p][t]; }
    /// Actions c enabled at t with b occurring strictly later on a path starting with c.
    const ActionSet& first_to(ProcessId p, LocalState t, ActionId b) const;
    /// Some local path t -x-> t' with b enabled at t' and dom(x) inside R.
    bool guarded(ProcessId p, LocalState t, const ProcessSet& R, ActionId b) const;
    /// Minimal sets stored for (p, t, b); empty when p runs on the fallback.
    const std::vector<ProcessSet>& guarded_sets(ProcessId p, LocalState t, ActionId b) const;

    bool uses_fallback(ProcessId p) const { return fallback_[p] != 0; }
    std::size_t stored_triples() const noexcept { return stored_; }

private:
    std::size_t slot(ProcessId p, LocalState t, ActionId b) const {
        return static_cast<std::size_t>(t) * alpha_[p].size() +
               static_cast<std::size_t>(local_index_[p][b]);
    }
    bool guarded_search(ProcessId p, LocalState t, const ProcessSet& R, ActionId b) const;
    void build_guarded(ProcessId p, IndexBudget budget);

    const System* sys_;
    std::vector<std::vector<ActionId>> alpha_;        // per process, by dense index
    std::vector<std::vector<std::int32_t>> local_index_;  // per process, action -> slot or -1
    std::vector<std::vector<ActionSet>> reach_any_;
    std::vector<std::vector<ActionSet>> first_to_;
    std::vector<std::vector<std::vector<ProcessSet>>> guarded_;
    std::vector<char> fallback_;
    std::size_t stored_ = 0;
    ActionSet empty_actions_;
};

/// Every enabled action has a domain meeting R. Vacuous at terminal states.
bool wraps(const System& sys, const ProcessSet& R, StateView s);
inline bool wraps(const System& sys, const ProcessSet& R, const GlobalState& s) {
    return wraps(sys, R, StateView(s));
}

struct FixpointResult {
    bool verdict = false;
    ActionSet set;         // final accumulated B
    std::size_t rounds = 0;
};

/// Observer for debug traces: called with the round number and B at round start.
using RoundObserver = std::function<void(std::size_t round, const ActionSet& B, bool wraps)>;

bool pifs(const HeuristicIndex& idx, StateView s, const ActionSet& B);
bool rpifs(const HeuristicIndex& idx, StateView s, const ActionSet& B);
FixpointResult apifs(const HeuristicIndex& idx, StateView s, const ActionSet& B);
/// Shared fixpoint; `guarded` selects pifs (true) or rpifs (false).
FixpointResult pifs_fixpoint(const HeuristicIndex& idx, StateView s, const ActionSet& B,
                             bool guarded, const RoundObserver& observe = {});

/// Least fixpoint from the actions locally enabled in dom(b), closed under
/// first_to of the partner process. Observer gets each worklist addition wave.
ActionSet closure(const HeuristicIndex& idx, StateView s, ActionId b,
                  const RoundObserver& observe = {});
ProcessSet p_closure(const HeuristicIndex& idx, StateView s, ActionId b);
ActionSet p_set(const HeuristicIndex& idx, StateView s, ActionId b);

/// Smallest closure(s,b) ∩ (enabled − sleep) over b in enabled − sleep, seeded
/// with enabled − sleep; earlier b in action order wins ties.
ActionSet min_closure(const HeuristicIndex& idx, StateView s, const ActionSet& sleep);
/// closure of the order-least enabled action, cut down to enabled − sleep.
ActionSet lex_closure(const HeuristicIndex& idx, StateView s, const ActionSet& sleep);
/// Same selection rule as min_closure with p_set in place of closure.
ActionSet min_pset(const HeuristicIndex& idx, StateView s, const ActionSet& sleep);

/// First b of A (action order) with a positive apifs answer, else the b with
/// the largest accumulated set. Throws std::invalid_argument when A is empty.
ActionId choose_action(const HeuristicIndex& idx, StateView s, const ActionSet& A);

}  // namespace stpor
