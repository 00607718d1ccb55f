#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stpor/bounded.hpp"
#include "stpor/system.hpp"

namespace stpor {

using Word = std::vector<ActionId>;
using StateView = std::span<const LocalState>;

struct Run {
    GlobalState origin;
    Word actions;
};

/// Distinct action sets kept in a canonical sorted order.
struct FirstFamily {
    std::vector<ActionSet> sets;

    void add(ActionSet s);  // keeps canonical order, ignores duplicates
    bool contains(const ActionSet& s) const;
    std::size_t size() const noexcept { return sets.size(); }
    friend bool operator==(const FirstFamily&, const FirstFamily&) = default;
};

/// Letters of u that are independent of every earlier letter.
ActionSet first_set(const System& sys, std::span<const ActionId> u);

/// Lexicographically least word of u's trace under the system's action order.
Word lex_normal_form(const System& sys, std::span<const ActionId> u);

bool trace_equivalent(const System& sys, std::span<const ActionId> u, std::span<const ActionId> v);

/// Depth-first over maximal runs from s, successors taken in action order.
/// Visits at most `limit` runs; returns false if more exist.
bool for_each_maximal_run(const System& sys, const GlobalState& s, std::size_t limit,
                          const std::function<void(std::span<const ActionId>)>& visit);

/// Maximal runs that are their own lex normal form, i.e. one per trace class.
/// Prunes on prefixes, so it visits far fewer words than for_each_maximal_run.
bool for_each_lex_normal_run(const System& sys, const GlobalState& s, std::size_t limit,
                             const std::function<void(std::span<const ActionId>)>& visit);
Bounded<std::size_t> count_trace_classes(const System& sys, const GlobalState& s,
                                         std::size_t limit);
Bounded<std::vector<Run>> enumerate_maximal_runs(const System& sys, const GlobalState& s,
                                                 std::size_t limit);

/// First(s) by run enumeration.
Bounded<FirstFamily> first_family(const System& sys, const GlobalState& s, std::size_t limit);

/// B meets every member of First(s). Terminal states accept any B.
Bounded<bool> is_covering(const System& sys, const GlobalState& s, const ActionSet& B,
                          std::size_t limit);

/// Exact IFS(s, B): some maximal run from s has its first set inside B.
/// Exhaustive search over (state, touched processes) pairs with memoised
/// failures; `limit` caps the number of pairs visited.
Bounded<bool> ifs_exact(const System& sys, StateView s, const ActionSet& B, std::size_t limit);
inline Bounded<bool> ifs_exact(const System& sys, const GlobalState& s, const ActionSet& B,
                               std::size_t limit) {
    return ifs_exact(sys, StateView(s), B, limit);
}

}  // namespace stpor
