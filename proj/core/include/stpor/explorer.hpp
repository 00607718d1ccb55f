#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stpor/heuristics.hpp"
#include "stpor/state_store.hpp"
#include "stpor/system.hpp"

namespace stpor {

using NodeId = std::uint32_t;
using SleepId = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;

enum class OracleKind : std::uint8_t { always_true, exact_ifs, pifs, rpifs };
enum class SourceKind : std::uint8_t { enabled, min_closure, lex_closure, p_set };
enum class ChooserKind : std::uint8_t { lex, apifs };
enum class Subsumption : std::uint8_t { off, state_equality, sleep_subset };

struct ExploreConfig {
    OracleKind oracle = OracleKind::always_true;
    std::size_t oracle_limit = 2'000'000;  // visited pairs per exact-ifs query
    SourceKind source = SourceKind::enabled;
    ChooserKind chooser = ChooserKind::lex;
    bool sleep = false;
    Subsumption subsumption = Subsumption::state_equality;
    std::optional<std::vector<ActionId>> order;  // overrides the system's order
    std::size_t node_limit = 0;                  // 0 = unlimited
    double time_limit_s = 0;                     // 0 = unlimited
    bool record_edges = true;
    IndexBudget index_budget{};
};

/// The six named configurations; throws std::invalid_argument for other names.
ExploreConfig preset(std::string_view name);
const std::vector<std::string>& preset_names();

enum class EdgeKind : std::uint8_t { tree, subsumption };

struct Edge {
    NodeId from;
    NodeId to;
    ActionId action;
    EdgeKind kind;
};

struct Node {
    StateId state;
    SleepId sleep;
};

/// Output graph. Owns its interned states and hash-consed sleep sets, so it
/// stays meaningful after the exploring System copy is gone.
class ReducedTS {
public:
    ReducedTS(std::size_t width, std::size_t num_actions);

    NodeId add_node(const LocalState* s, const ActionSet& sleep);
    NodeId add_node(const GlobalState& s, const ActionSet& sleep) { return add_node(s.data(), sleep); }
    NodeId add_node_interned(StateId state, SleepId sleep);
    void add_edge(NodeId from, ActionId a, NodeId to, EdgeKind kind = EdgeKind::tree);
    SleepId intern_sleep(const ActionSet& sleep);

    std::size_t num_nodes() const noexcept { return nodes_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::vector<Edge>& mutable_edges() noexcept { return edges_; }
    NodeId root() const noexcept { return 0; }

    GlobalState state(NodeId n) const { return states_.state(nodes_[n].state); }
    const LocalState* state_data(NodeId n) const { return states_.data(nodes_[n].state); }
    StateId state_id(NodeId n) const { return nodes_[n].state; }
    const ActionSet& sleep(NodeId n) const { return sleep_pool_[nodes_[n].sleep]; }
    const StateStore& states() const noexcept { return states_; }
    StateStore& states() noexcept { return states_; }
    std::size_t num_actions() const noexcept { return num_actions_; }

    /// CSR adjacency: edges of node n are order()[offset[n] .. offset[n+1]).
    struct Adjacency {
        std::vector<std::size_t> offset;
        std::vector<std::uint32_t> edge;
    };
    Adjacency adjacency() const;

    /// Drops all edges out of n, keeping the node (test hook for truncation).
    void truncate_node(NodeId n);

private:
    std::size_t num_actions_;
    StateStore states_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<ActionSet> sleep_pool_;
    std::unordered_map<ActionSet, SleepId, DenseSetHash> sleep_index_;
};

enum class Termination : std::uint8_t { complete, node_limit, time_limit, oracle_limit };
std::string_view to_string(Termination t);

struct ExploreStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t subsumption_edges = 0;
    std::size_t oracle_calls = 0;
    std::size_t oracle_true = 0;
    double wall_ms = 0;
    std::optional<BigInt> full_paths;
    Termination status = Termination::complete;

    bool partial() const noexcept { return status != Termination::complete; }
};

struct ExploreResult {
    ReducedTS ts;
    ExploreStats stats;
};

/// Graph exploration with subsumption (or without, which yields a tree).
ExploreResult explore(const System& sys, const ExploreConfig& config);
/// Tree exploration; config.subsumption must be off.
ExploreResult explore_tree(const System& sys, const ExploreConfig& config);

/// Root-to-sink path count; throws std::invalid_argument on a cycle.
BigInt count_full_paths(const ReducedTS& ts);

/// Full runs of a tree-shaped or small graph output, as action words (bounded).
Bounded<std::vector<Word>> enumerate_full_runs(const ReducedTS& ts, std::size_t limit);

}  // namespace stpor
