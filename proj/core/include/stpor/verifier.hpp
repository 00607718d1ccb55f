#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stpor/explorer.hpp"
#include "stpor/generators.hpp"
#include "stpor/traces.hpp"

namespace stpor {

/// The complete product transition system.
struct FullTS {
    explicit FullTS(std::size_t width) : states(width) {}
    StateStore states;
    std::vector<std::vector<std::pair<ActionId, StateId>>> succ;  // per state, action order
    StateId root = 0;

    std::size_t num_states() const noexcept { return states.size(); }
    std::size_t num_edges() const;
};

Bounded<FullTS> build_full_ts(const System& sys, std::size_t node_limit);

struct FirstSets {
    std::vector<FirstFamily> families;     // per FullTS state id
    std::optional<StateId> overflow_state;  // set when a family outgrew the cap
};

/// First(s) for every state, children before parents. Terminal states map to {∅}.
FirstSets first_sets_bottom_up(const System& sys, const FullTS& ts, std::size_t family_cap);

enum class VerdictStatus : std::uint8_t { pass, fail, inconclusive };
std::string_view to_string(VerdictStatus v);

struct Verdict {
    std::string check;
    VerdictStatus status = VerdictStatus::pass;
    std::string detail;
    std::optional<NodeId> node;           // offending node
    std::optional<std::size_t> edge;      // offending edge index
    std::optional<ActionSet> first_set;   // offending member of First(s)
    std::size_t sleep_blocked_sinks = 0;  // soundness: sinks justified by sleep only
    std::size_t tree_runs = 0;            // trace optimality
    std::size_t classes = 0;              // trace optimality

    bool passed() const noexcept { return status == VerdictStatus::pass; }
};

struct VerifyLimits {
    std::size_t node_limit = 4'000'000;  // full TS states
    std::size_t family_cap = 100'000;
    std::size_t run_limit = 100'000;
};

/// Holds the lazily built full TS and First table so several checks share them.
class Verifier {
public:
    Verifier(const System& sys, VerifyLimits limits = {});

    /// Out-labels of every node must meet every nonempty F in First(s(n)); with
    /// filter_sleep only those F disjoint from sleep(n) count.
    Verdict completeness(const ReducedTS& rts, bool filter_sleep = true);
    /// Edge replay plus the sink rule: terminal, or every F meets sleep(n).
    Verdict soundness(const ReducedTS& rts);
    /// Tree runs are lex normal forms, pairwise inequivalent, one per class.
    Verdict trace_optimality(const ReducedTS& tree);

    /// nullptr when the limits were hit.
    const FullTS* full_ts();
    const FirstSets* first_sets();

private:
    bool prepare(Verdict& v);
    std::optional<StateId> lookup(const ReducedTS& rts, NodeId n) const;

    const System& sys_;
    VerifyLimits limits_;
    bool built_ = false;
    std::unique_ptr<FullTS> full_;
    std::unique_ptr<FirstSets> firsts_;
    std::string failure_;
};

Verdict check_completeness(const System& sys, const ReducedTS& rts, VerifyLimits limits = {},
                           bool filter_sleep = true);
Verdict check_soundness(const System& sys, const ReducedTS& rts, VerifyLimits limits = {});
Verdict check_trace_optimality(const System& sys, const ReducedTS& tree, VerifyLimits limits = {});

/// Exhaustive evaluation; throws std::invalid_argument above 20 variables.
bool sat_truth_table(const Cnf& cnf);

}  // namespace stpor
