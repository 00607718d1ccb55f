#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stpor/dense_set.hpp"

namespace stpor {

using ActionId = std::uint32_t;
using ProcessId = std::uint32_t;
using LocalState = std::uint16_t;

inline constexpr LocalState kNoState = 0xFFFF;

enum class ProcessKind : std::uint8_t { client, server };

/// Thrown for malformed model input and for structurally unusable systems.
class ModelError : public std::runtime_error {
public:
    ModelError(const std::string& msg, int line = 0, int column = 0);
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Raised by step() when the action is not enabled.
class ActionNotEnabled : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Transition {
    LocalState from;
    ActionId action;
    LocalState to;
};

struct ProcessTS {
    std::string name;
    ProcessKind kind = ProcessKind::client;
    std::vector<std::string> state_names;
    LocalState initial = 0;
    std::vector<Transition> transitions;  // declaration order
    ActionSet alphabet;

    // Derived tables, filled by the builder.
    std::vector<ActionSet> local_enabled;  // per local state
    std::vector<std::vector<std::pair<ActionId, LocalState>>> out;  // per state, by action id

    std::size_t num_states() const noexcept { return state_names.size(); }
    /// Successor of `t` under `a`, or kNoState. First transition wins if nondeterministic.
    LocalState next(LocalState t, ActionId a) const noexcept;
};

struct ActionInfo {
    std::string name;
    std::vector<ProcessId> users;  // processes whose alphabet holds the action
    ProcessSet dom;
};

using GlobalState = std::vector<LocalState>;

struct GlobalStateHash {
    std::size_t operator()(const GlobalState& s) const noexcept;
};

/// A client/server network. Immutable once built.
class System {
public:
    const std::string& name() const noexcept { return name_; }
    std::size_t num_processes() const noexcept { return processes_.size(); }
    std::size_t num_actions() const noexcept { return actions_.size(); }
    const std::vector<ProcessTS>& processes() const noexcept { return processes_; }
    const ProcessTS& process(ProcessId p) const { return processes_[p]; }
    const std::vector<ActionInfo>& actions() const noexcept { return actions_; }
    const ActionInfo& action(ActionId a) const { return actions_[a]; }
    const std::string& action_name(ActionId a) const { return actions_[a].name; }

    /// Action order: order()[r] is the action of rank r.
    const std::vector<ActionId>& order() const noexcept { return order_; }
    std::size_t rank(ActionId a) const { return rank_[a]; }
    bool before(ActionId a, ActionId b) const { return rank_[a] < rank_[b]; }
    bool has_declaration_order() const noexcept;

    ActionSet no_actions() const { return ActionSet(actions_.size()); }
    ProcessSet no_processes() const { return ProcessSet(processes_.size()); }
    ProcessSet all_processes() const { return ProcessSet::full(processes_.size()); }

    /// Da: actions whose domain meets dom(a); contains a.
    const ActionSet& dependents(ActionId a) const { return dependents_[a]; }

    ActionId find_action(const std::string& name) const;  // throws ModelError
    ProcessId find_process(const std::string& name) const;
    bool has_action(const std::string& name) const { return action_index_.count(name) != 0; }

    /// Copy with a different action order (a permutation of all actions).
    System with_order(const std::vector<ActionId>& order) const;

    // Raw-pointer fast paths used by the explorer; `s` has num_processes() entries.
    void enabled_into(const LocalState* s, ActionSet& out) const;
    bool locally_enabled(ProcessId p, LocalState t, ActionId a) const {
        return processes_[p].local_enabled[t].contains(a);
    }
    /// Writes step(s, a) into out (may alias s). Precondition: a enabled.
    void step_into(const LocalState* s, ActionId a, LocalState* out) const;

private:
    friend class SystemBuilder;
    void finalize();

    std::string name_;
    std::vector<ProcessTS> processes_;
    std::vector<ActionInfo> actions_;
    std::vector<ActionId> order_;
    std::vector<std::size_t> rank_;
    std::vector<ActionSet> dependents_;
    std::unordered_map<std::string, ActionId> action_index_;
    std::unordered_map<std::string, ProcessId> process_index_;
    std::vector<ProcessId> clients_;
    std::vector<ProcessId> servers_;
};

/// Incremental construction; the parser and all generators go through here.
/// States get dense indices in order of first mention, actions likewise.
class SystemBuilder {
public:
    explicit SystemBuilder(std::string name);

    ProcessId add_process(const std::string& name, ProcessKind kind);
    void set_initial(ProcessId p, const std::string& state);
    /// Declares a state without a transition (e.g. a terminal state mentioned first).
    LocalState state(ProcessId p, const std::string& state);
    ActionId action(const std::string& name);
    void add_transition(ProcessId p, const std::string& from, const std::string& action,
                        const std::string& to);
    bool has_action(const std::string& name) const { return actions_.count(name) != 0; }
    void set_order(const std::vector<std::string>& names);

    /// Builds without structural validation; see validate_system.
    System build() &&;

private:
    struct PendingProcess {
        std::string name;
        ProcessKind kind;
        std::vector<std::string> states;
        std::unordered_map<std::string, LocalState> state_index;
        bool has_initial = false;
        LocalState initial = 0;
        std::vector<Transition> transitions;
    };
    std::string name_;
    std::vector<PendingProcess> procs_;
    std::unordered_map<std::string, ProcessId> proc_index_;
    std::vector<std::string> action_names_;
    std::unordered_map<std::string, ActionId> actions_;
    std::vector<std::string> order_;
    bool has_order_ = false;
};

/// Every structural violation, human readable. Empty means valid.
std::vector<std::string> validate_system(const System& sys);
bool is_valid(const System& sys);
/// Throws ModelError listing the violations, if any.
void require_valid(const System& sys);

GlobalState initial_state(const System& sys);
ActionSet enabled(const System& sys, const GlobalState& s);
GlobalState step(const System& sys, const GlobalState& s, ActionId a);
bool is_terminal(const System& sys, const GlobalState& s);

bool dependent(const System& sys, ActionId a, ActionId b);
const ActionSet& dependents_of(const System& sys, ActionId a);

ProcessSet dom_of(const System& sys, ActionId a);
ProcessSet dom_of(const System& sys, const ActionSet& actions);
ProcessSet dom_of(const System& sys, std::span<const ActionId> word);

/// c such that dom(c) = {p, q}, p in R, q outside R, and s_q locally enables c.
ActionSet sticks_from(const System& sys, const GlobalState& s, const ProcessSet& R);

// Formatting helpers for messages, DOT and tests.
std::string format_actions(const System& sys, const ActionSet& set);     // "{a,b}" in order
std::string format_word(const System& sys, std::span<const ActionId> w);  // "a b c"
std::string format_processes(const System& sys, const ProcessSet& set);
std::vector<ActionId> parse_word(const System& sys, const std::string& text);
ActionSet make_action_set(const System& sys, std::initializer_list<const char*> names);

// Common action orders.
std::vector<ActionId> declaration_order(const System& sys);
/// By name, comparing embedded digit runs numerically.
std::vector<ActionId> alphabetic_order(const System& sys);
/// Grouped by owning client in process order, then by first use within the client.
std::vector<ActionId> process_major_order(const System& sys);

}  // namespace stpor
