#include "stpor/system.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace stpor {

namespace {

std::string located(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    std::ostringstream os;
    os << "line " << line;
    if (column > 0) os << ", column " << column;
    os << ": " << msg;
    return os.str();
}

}  // namespace

ModelError::ModelError(const std::string& msg, int line, int column)
    : std::runtime_error(located(msg, line, column)), line_(line), column_(column) {}

LocalState ProcessTS::next(LocalState t, ActionId a) const noexcept {
    for (const auto& [act, to] : out[t])
        if (act == a) return to;
    return kNoState;
}

std::size_t GlobalStateHash::operator()(const GlobalState& s) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (LocalState v : s) h = (h ^ v) * 0x100000001b3ull;
    return h;
}

// ---------------------------------------------------------------- System

bool System::has_declaration_order() const noexcept {
    for (std::size_t r = 0; r < order_.size(); ++r)
        if (order_[r] != r) return false;
    return true;
}

ActionId System::find_action(const std::string& name) const {
    auto it = action_index_.find(name);
    if (it == action_index_.end()) throw ModelError("unknown action '" + name + "'");
    return it->second;
}

ProcessId System::find_process(const std::string& name) const {
    auto it = process_index_.find(name);
    if (it == process_index_.end()) throw ModelError("unknown process '" + name + "'");
    return it->second;
}

System System::with_order(const std::vector<ActionId>& order) const {
    if (order.size() != actions_.size())
        throw ModelError("action order must list every action exactly once");
    std::vector<char> seen(actions_.size(), 0);
    for (ActionId a : order) {
        if (a >= actions_.size() || seen[a]) throw ModelError("action order is not a permutation");
        seen[a] = 1;
    }
    System copy = *this;
    copy.order_ = order;
    for (std::size_t r = 0; r < order.size(); ++r) copy.rank_[order[r]] = r;
    return copy;
}

void System::enabled_into(const LocalState* s, ActionSet& out) const {
    ActionSet by_servers = no_actions();
    out.clear();
    for (ProcessId p : clients_) out |= processes_[p].local_enabled[s[p]];
    for (ProcessId p : servers_) by_servers |= processes_[p].local_enabled[s[p]];
    out &= by_servers;
}

void System::step_into(const LocalState* s, ActionId a, LocalState* out) const {
    if (out != s) std::copy(s, s + processes_.size(), out);
    for (ProcessId p : actions_[a].users) out[p] = processes_[p].next(s[p], a);
}

void System::finalize() {
    const std::size_t na = actions_.size();
    const std::size_t np = processes_.size();
    for (std::size_t p = 0; p < np; ++p) {
        auto& proc = processes_[p];
        proc.alphabet = ActionSet(na);
        proc.local_enabled.assign(proc.num_states(), ActionSet(na));
        proc.out.assign(proc.num_states(), {});
        for (const auto& t : proc.transitions) {
            proc.alphabet.insert(t.action);
            proc.local_enabled[t.from].insert(t.action);
            proc.out[t.from].emplace_back(t.action, t.to);
        }
        for (auto& o : proc.out)
            std::stable_sort(o.begin(), o.end(),
                             [](const auto& x, const auto& y) { return x.first < y.first; });
        (proc.kind == ProcessKind::client ? clients_ : servers_).push_back(static_cast<ProcessId>(p));
        process_index_[proc.name] = static_cast<ProcessId>(p);
    }
    for (std::size_t a = 0; a < na; ++a) {
        auto& info = actions_[a];
        info.dom = ProcessSet(np);
        info.users.clear();
        for (std::size_t p = 0; p < np; ++p)
            if (processes_[p].alphabet.contains(a)) {
                info.users.push_back(static_cast<ProcessId>(p));
                info.dom.insert(p);
            }
        action_index_[info.name] = static_cast<ActionId>(a);
    }
    dependents_.assign(na, ActionSet(na));
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b)
            if (actions_[a].dom.intersects(actions_[b].dom) || a == b) dependents_[a].insert(b);
    rank_.assign(na, 0);
    for (std::size_t r = 0; r < order_.size(); ++r) rank_[order_[r]] = r;
}

// --------------------------------------------------------------- Builder

SystemBuilder::SystemBuilder(std::string name) : name_(std::move(name)) {}

ProcessId SystemBuilder::add_process(const std::string& name, ProcessKind kind) {
    if (proc_index_.count(name)) throw ModelError("duplicate process name '" + name + "'");
    const auto id = static_cast<ProcessId>(procs_.size());
    proc_index_[name] = id;
    procs_.push_back(PendingProcess{name, kind, {}, {}, false, 0, {}});
    return id;
}

LocalState SystemBuilder::state(ProcessId p, const std::string& st) {
    auto& proc = procs_.at(p);
    auto it = proc.state_index.find(st);
    if (it != proc.state_index.end()) return it->second;
    if (proc.states.size() >= kNoState)
        throw ModelError("process '" + proc.name + "' has too many local states");
    const auto id = static_cast<LocalState>(proc.states.size());
    proc.states.push_back(st);
    proc.state_index.emplace(st, id);
    return id;
}

void SystemBuilder::set_initial(ProcessId p, const std::string& st) {
    auto& proc = procs_.at(p);
    if (proc.has_initial) throw ModelError("duplicate init in process '" + proc.name + "'");
    proc.initial = state(p, st);
    proc.has_initial = true;
}

ActionId SystemBuilder::action(const std::string& name) {
    auto it = actions_.find(name);
    if (it != actions_.end()) return it->second;
    const auto id = static_cast<ActionId>(action_names_.size());
    action_names_.push_back(name);
    actions_.emplace(name, id);
    return id;
}

void SystemBuilder::add_transition(ProcessId p, const std::string& from, const std::string& act,
                                   const std::string& to) {
    const LocalState f = state(p, from);
    const ActionId a = action(act);
    const LocalState t = state(p, to);
    procs_.at(p).transitions.push_back(Transition{f, a, t});
}

void SystemBuilder::set_order(const std::vector<std::string>& names) {
    order_ = names;
    has_order_ = true;
}

System SystemBuilder::build() && {
    System sys;
    sys.name_ = name_;
    for (auto& pp : procs_) {
        if (!pp.has_initial) throw ModelError("process '" + pp.name + "' has no init state");
        ProcessTS ts;
        ts.name = pp.name;
        ts.kind = pp.kind;
        ts.state_names = std::move(pp.states);
        ts.initial = pp.initial;
        ts.transitions = std::move(pp.transitions);
        sys.processes_.push_back(std::move(ts));
    }
    for (auto& n : action_names_) sys.actions_.push_back(ActionInfo{n, {}, {}});
    if (has_order_) {
        std::vector<char> seen(action_names_.size(), 0);
        for (const auto& n : order_) {
            auto it = actions_.find(n);
            if (it == actions_.end()) throw ModelError("unknown action '" + n + "' in order");
            if (seen[it->second]) throw ModelError("action '" + n + "' listed twice in order");
            seen[it->second] = 1;
            sys.order_.push_back(it->second);
        }
        if (sys.order_.size() != action_names_.size())
            throw ModelError("order must list every action exactly once");
    } else {
        sys.order_.resize(action_names_.size());
        std::iota(sys.order_.begin(), sys.order_.end(), ActionId{0});
    }
    sys.finalize();
    return sys;
}

// ------------------------------------------------------------ Validation

std::vector<std::string> validate_system(const System& sys) {
    std::vector<std::string> v;
    for (const auto& proc : sys.processes()) {
        for (std::size_t t = 0; t < proc.num_states(); ++t) {
            const auto& o = proc.out[t];
            for (std::size_t i = 1; i < o.size(); ++i)
                if (o[i].first == o[i - 1].first)
                    v.push_back("process " + proc.name + " not action-deterministic at state " +
                                proc.state_names[t] + " on " + sys.action_name(o[i].first));
        }
        if (proc.kind != ProcessKind::client) continue;
        // Iterative three-colour DFS for a back edge.
        std::vector<std::uint8_t> colour(proc.num_states(), 0);
        bool cyclic = false;
        for (std::size_t root = 0; root < proc.num_states() && !cyclic; ++root) {
            if (colour[root]) continue;
            std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
            colour[root] = 1;
            while (!stack.empty() && !cyclic) {
                auto& [u, i] = stack.back();
                if (i < proc.out[u].size()) {
                    const std::size_t w = proc.out[u][i++].second;
                    if (colour[w] == 1) cyclic = true;
                    else if (colour[w] == 0) {
                        colour[w] = 1;
                        stack.emplace_back(w, 0);
                    }
                } else {
                    colour[u] = 2;
                    stack.pop_back();
                }
            }
        }
        if (cyclic) v.push_back("client " + proc.name + " not acyclic");
    }
    for (const auto& info : sys.actions()) {
        int clients = 0, servers = 0;
        for (ProcessId p : info.users)
            (sys.process(p).kind == ProcessKind::client ? clients : servers)++;
        if (clients != 1)
            v.push_back("action " + info.name + " appears in " + std::to_string(clients) +
                        " clients");
        if (servers != 1)
            v.push_back("action " + info.name + " appears in " + std::to_string(servers) +
                        " servers");
    }
    return v;
}

bool is_valid(const System& sys) { return validate_system(sys).empty(); }

void require_valid(const System& sys) {
    const auto v = validate_system(sys);
    if (v.empty()) return;
    std::string msg = "invalid system '" + sys.name() + "':";
    for (const auto& s : v) msg += " " + s + ";";
    msg.pop_back();
    throw ModelError(msg);
}

// ------------------------------------------------------------- Semantics

GlobalState initial_state(const System& sys) {
    GlobalState s;
    s.reserve(sys.num_processes());
    for (const auto& p : sys.processes()) s.push_back(p.initial);
    return s;
}

ActionSet enabled(const System& sys, const GlobalState& s) {
    ActionSet out = sys.no_actions();
    sys.enabled_into(s.data(), out);
    return out;
}

GlobalState step(const System& sys, const GlobalState& s, ActionId a) {
    if (a >= sys.num_actions() || !enabled(sys, s).contains(a))
        throw ActionNotEnabled("action " +
                               (a < sys.num_actions() ? sys.action_name(a) : std::to_string(a)) +
                               " is not enabled");
    GlobalState out(s.size());
    sys.step_into(s.data(), a, out.data());
    return out;
}

bool is_terminal(const System& sys, const GlobalState& s) { return enabled(sys, s).empty(); }

bool dependent(const System& sys, ActionId a, ActionId b) {
    return sys.dependents(a).contains(b);
}

const ActionSet& dependents_of(const System& sys, ActionId a) { return sys.dependents(a); }

ProcessSet dom_of(const System& sys, ActionId a) { return sys.action(a).dom; }

ProcessSet dom_of(const System& sys, const ActionSet& actions) {
    ProcessSet r = sys.no_processes();
    actions.for_each([&](std::size_t a) { r |= sys.action(static_cast<ActionId>(a)).dom; });
    return r;
}

ProcessSet dom_of(const System& sys, std::span<const ActionId> word) {
    ProcessSet r = sys.no_processes();
    for (ActionId a : word) r |= sys.action(a).dom;
    return r;
}

ActionSet sticks_from(const System& sys, const GlobalState& s, const ProcessSet& R) {
    ActionSet out = sys.no_actions();
    for (std::size_t c = 0; c < sys.num_actions(); ++c) {
        const auto& users = sys.action(static_cast<ActionId>(c)).users;
        if (users.size() != 2) continue;
        for (int k = 0; k < 2; ++k) {
            const ProcessId p = users[k], q = users[1 - k];
            if (R.contains(p) && !R.contains(q) &&
                sys.locally_enabled(q, s[q], static_cast<ActionId>(c)))
                out.insert(c);
        }
    }
    return out;
}

// ------------------------------------------------------------ Formatting

std::string format_actions(const System& sys, const ActionSet& set) {
    std::string out = "{";
    bool first = true;
    for (ActionId a : sys.order())
        if (set.contains(a)) {
            if (!first) out += ",";
            out += sys.action_name(a);
            first = false;
        }
    return out + "}";
}

std::string format_word(const System& sys, std::span<const ActionId> w) {
    std::string out;
    for (ActionId a : w) {
        if (!out.empty()) out += ' ';
        out += sys.action_name(a);
    }
    return out;
}

std::string format_processes(const System& sys, const ProcessSet& set) {
    std::string out = "{";
    bool first = true;
    set.for_each([&](std::size_t p) {
        if (!first) out += ",";
        out += sys.process(static_cast<ProcessId>(p)).name;
        first = false;
    });
    return out + "}";
}

std::vector<ActionId> parse_word(const System& sys, const std::string& text) {
    std::istringstream is(text);
    std::vector<ActionId> w;
    for (std::string tok; is >> tok;) w.push_back(sys.find_action(tok));
    return w;
}

ActionSet make_action_set(const System& sys, std::initializer_list<const char*> names) {
    ActionSet s = sys.no_actions();
    for (const char* n : names) s.insert(sys.find_action(n));
    return s;
}

std::vector<ActionId> declaration_order(const System& sys) {
    std::vector<ActionId> o(sys.num_actions());
    std::iota(o.begin(), o.end(), ActionId{0});
    return o;
}

namespace {

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit(static_cast<unsigned char>(a[i])) &&
            std::isdigit(static_cast<unsigned char>(b[j]))) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
            while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
            const auto na = std::stoull(a.substr(i, i2 - i));
            const auto nb = std::stoull(b.substr(j, j2 - j));
            if (na != nb) return na < nb;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

}  // namespace

std::vector<ActionId> alphabetic_order(const System& sys) {
    auto o = declaration_order(sys);
    std::stable_sort(o.begin(), o.end(), [&](ActionId x, ActionId y) {
        return natural_less(sys.action_name(x), sys.action_name(y));
    });
    return o;
}

std::vector<ActionId> process_major_order(const System& sys) {
    std::vector<ActionId> o;
    std::vector<char> placed(sys.num_actions(), 0);
    for (const auto& proc : sys.processes()) {
        if (proc.kind != ProcessKind::client) continue;
        for (const auto& t : proc.transitions)
            if (!placed[t.action]) {
                placed[t.action] = 1;
                o.push_back(t.action);
            }
    }
    for (ActionId a = 0; a < sys.num_actions(); ++a)
        if (!placed[a]) o.push_back(a);
    return o;
}

}  // namespace stpor
