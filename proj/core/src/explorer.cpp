#include "stpor/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include <boost/container/small_vector.hpp>

namespace stpor {

// ------------------------------------------------------------- Presets

ExploreConfig preset(std::string_view name) {
    ExploreConfig c;
    if (name == "reach") {
        c.oracle = OracleKind::always_true;
        c.source = SourceKind::enabled;
        c.chooser = ChooserKind::lex;
        c.sleep = false;
        c.subsumption = Subsumption::state_equality;
    } else if (name == "pset+sleep") {
        c.oracle = OracleKind::always_true;
        c.source = SourceKind::p_set;
        c.chooser = ChooserKind::lex;
        c.sleep = true;
        c.subsumption = Subsumption::sleep_subset;
    } else if (name == "minclosure+sleep") {
        c.oracle = OracleKind::always_true;
        c.source = SourceKind::min_closure;
        c.chooser = ChooserKind::lex;
        c.sleep = true;
        c.subsumption = Subsumption::sleep_subset;
    } else if (name == "apifs+sleep") {
        c.oracle = OracleKind::pifs;
        c.source = SourceKind::enabled;
        c.chooser = ChooserKind::apifs;
        c.sleep = true;
        c.subsumption = Subsumption::sleep_subset;
    } else if (name == "full-sleep") {
        c.oracle = OracleKind::pifs;
        c.source = SourceKind::min_closure;
        c.chooser = ChooserKind::apifs;
        c.sleep = false;
        c.subsumption = Subsumption::state_equality;
    } else if (name == "full+sleep") {
        c.oracle = OracleKind::pifs;
        c.source = SourceKind::min_closure;
        c.chooser = ChooserKind::apifs;
        c.sleep = true;
        c.subsumption = Subsumption::sleep_subset;
    } else {
        throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
    }
    return c;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"reach",       "pset+sleep", "minclosure+sleep",
                                                "apifs+sleep", "full-sleep", "full+sleep"};
    return names;
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::complete: return "complete";
        case Termination::node_limit: return "node_limit";
        case Termination::time_limit: return "timeout";
        case Termination::oracle_limit: return "oracle_limit";
    }
    return "unknown";
}

// ----------------------------------------------------------- ReducedTS

ReducedTS::ReducedTS(std::size_t width, std::size_t num_actions)
    : num_actions_(num_actions), states_(width) {}

SleepId ReducedTS::intern_sleep(const ActionSet& sleep) {
    auto it = sleep_index_.find(sleep);
    if (it != sleep_index_.end()) return it->second;
    const auto id = static_cast<SleepId>(sleep_pool_.size());
    sleep_pool_.push_back(sleep);
    sleep_index_.emplace(sleep, id);
    return id;
}

NodeId ReducedTS::add_node(const LocalState* s, const ActionSet& sleep) {
    return add_node_interned(states_.intern(s).first, intern_sleep(sleep));
}

NodeId ReducedTS::add_node_interned(StateId state, SleepId sleep) {
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{state, sleep});
    return id;
}

void ReducedTS::add_edge(NodeId from, ActionId a, NodeId to, EdgeKind kind) {
    edges_.push_back(Edge{from, to, a, kind});
}

ReducedTS::Adjacency ReducedTS::adjacency() const {
    Adjacency adj;
    adj.offset.assign(nodes_.size() + 1, 0);
    for (const auto& e : edges_) ++adj.offset[e.from + 1];
    for (std::size_t i = 0; i < nodes_.size(); ++i) adj.offset[i + 1] += adj.offset[i];
    adj.edge.resize(edges_.size());
    std::vector<std::size_t> fill(adj.offset.begin(), adj.offset.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        adj.edge[fill[edges_[i].from]++] = static_cast<std::uint32_t>(i);
    return adj;
}

void ReducedTS::truncate_node(NodeId n) {
    std::erase_if(edges_, [n](const Edge& e) { return e.from == n; });
}

// -------------------------------------------------------------- Engine

namespace {

constexpr NodeId kNoNode = 0xFFFFFFFFu;

/// Fully explored nodes per state: antichain of minimal sleep sets.
class ExploredStore {
public:
    ExploredStore(Subsumption mode, const ReducedTS& ts) : mode_(mode), ts_(ts) {}

    NodeId lookup(StateId s, const ActionSet& sleep) const {
        if (mode_ == Subsumption::off) return kNoNode;
        if (mode_ == Subsumption::state_equality) return s < by_state_.size() ? by_state_[s] : kNoNode;
        if (s >= anti_.size()) return kNoNode;
        for (NodeId n : anti_[s])
            if (ts_.sleep(n).subset_of(sleep)) return n;
        return kNoNode;
    }

    void insert(StateId s, NodeId n) {
        if (mode_ == Subsumption::off) return;
        if (mode_ == Subsumption::state_equality) {
            if (s >= by_state_.size()) by_state_.resize(std::max<std::size_t>(s + 1, by_state_.size() * 2), kNoNode);
            if (by_state_[s] == kNoNode) by_state_[s] = n;
            return;
        }
        if (s >= anti_.size()) anti_.resize(std::max<std::size_t>(s + 1, anti_.size() * 2));
        auto& a = anti_[s];
        const ActionSet& sl = ts_.sleep(n);
        for (NodeId m : a)
            if (ts_.sleep(m).subset_of(sl)) return;
        a.erase(std::remove_if(a.begin(), a.end(),
                               [&](NodeId m) { return sl.subset_of(ts_.sleep(m)); }),
                a.end());
        a.push_back(n);
    }

private:
    Subsumption mode_;
    const ReducedTS& ts_;
    std::vector<NodeId> by_state_;
    std::vector<boost::container::small_vector<NodeId, 1>> anti_;
};

struct Frame {
    NodeId node;
    ActionSet Sl;
    ActionSet C;
    std::size_t cursor = 0;  // lex chooser position in the action order
};

class Engine {
public:
    Engine(const System& sys, const ExploreConfig& cfg)
        : sys_(sys), cfg_(cfg), ts_(sys.num_processes(), sys.num_actions()),
          store_(cfg.subsumption, ts_) {
        if (cfg.sleep && cfg.subsumption == Subsumption::state_equality)
            throw std::invalid_argument(
                "state-equality subsumption is only sound with sleep sets disabled");
        const bool need_index = cfg.oracle == OracleKind::pifs || cfg.oracle == OracleKind::rpifs ||
                                cfg.source != SourceKind::enabled ||
                                cfg.chooser == ChooserKind::apifs;
        if (need_index) index_.emplace(sys, cfg.index_budget);
    }

    ExploreResult run() {
        const auto t0 = std::chrono::steady_clock::now();
        const auto deadline =
            t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(cfg_.time_limit_s));
        const GlobalState s0 = initial_state(sys_);
        const ActionSet none = sys_.no_actions();
        push(ts_.add_node(s0, none));
        stats_.nodes = 1;

        std::vector<LocalState> next(sys_.num_processes());
        ActionSet query = sys_.no_actions();
        std::size_t ticks = 0;
        while (!stack_.empty()) {
            if (cfg_.time_limit_s > 0 && (++ticks & 1023) == 0 &&
                std::chrono::steady_clock::now() > deadline) {
                stats_.status = Termination::time_limit;
                break;
            }
            Frame& f = stack_.back();
            const ActionId a = pick(f);
            if (a == kNoAction) {
                store_.insert(ts_.state_id(f.node), f.node);
                stack_.pop_back();
                continue;
            }
            const NodeId parent = f.node;
            sys_.step_into(ts_.state_data(parent), a, next.data());
            ActionSet child_sleep = cfg_.sleep ? f.Sl - sys_.dependents(a) : none;
            f.Sl.insert(a);
            const StateId s2 = ts_.states().intern(next.data()).first;

            const NodeId hit = store_.lookup(s2, child_sleep);
            if (hit != kNoNode) {
                edge(parent, a, hit, EdgeKind::subsumption);
                continue;
            }
            if (cfg_.oracle != OracleKind::always_true) {
                sys_.enabled_into(next.data(), query);
                query -= child_sleep;
                const int verdict = oracle(next, query);
                if (verdict < 0) {
                    stats_.status = Termination::oracle_limit;
                    break;
                }
                if (verdict == 0) continue;
            }
            if (cfg_.node_limit && stats_.nodes >= cfg_.node_limit) {
                stats_.status = Termination::node_limit;
                break;
            }
            const NodeId child = ts_.add_node_interned(s2, ts_.intern_sleep(child_sleep));
            ++stats_.nodes;
            edge(parent, a, child, EdgeKind::tree);
            push(child);
        }
        stats_.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
        return ExploreResult{std::move(ts_), stats_};
    }

private:
    static constexpr ActionId kNoAction = 0xFFFFFFFFu;

    void push(NodeId n) {
        Frame f{n, ts_.sleep(n), sys_.no_actions(), 0};
        const StateView s(ts_.state_data(n), sys_.num_processes());
        switch (cfg_.source) {
            case SourceKind::enabled: sys_.enabled_into(s.data(), f.C); break;
            case SourceKind::min_closure: f.C = min_closure(*index_, s, f.Sl); break;
            case SourceKind::lex_closure: f.C = lex_closure(*index_, s, f.Sl); break;
            case SourceKind::p_set: f.C = min_pset(*index_, s, f.Sl); break;
        }
        stack_.push_back(std::move(f));
    }

    ActionId pick(Frame& f) {
        if (cfg_.chooser == ChooserKind::lex) {
            const auto& order = sys_.order();
            while (f.cursor < order.size()) {
                const ActionId a = order[f.cursor++];
                if (f.C.contains(a) && !f.Sl.contains(a)) return a;
            }
            return kNoAction;
        }
        const ActionSet cand = f.C - f.Sl;
        if (cand.empty()) return kNoAction;
        return choose_action(*index_, StateView(ts_.state_data(f.node), sys_.num_processes()), cand);
    }

    int oracle(const std::vector<LocalState>& s, const ActionSet& q) {
        ++stats_.oracle_calls;
        bool v = true;
        switch (cfg_.oracle) {
            case OracleKind::always_true: break;
            case OracleKind::pifs: v = pifs(*index_, s, q); break;
            case OracleKind::rpifs: v = rpifs(*index_, s, q); break;
            case OracleKind::exact_ifs: {
                const auto r = ifs_exact(sys_, StateView(s), q, cfg_.oracle_limit);
                if (r.limit_exceeded()) return -1;
                v = r.value();
                break;
            }
        }
        if (v) ++stats_.oracle_true;
        return v ? 1 : 0;
    }

    void edge(NodeId from, ActionId a, NodeId to, EdgeKind kind) {
        ++stats_.edges;
        if (kind == EdgeKind::subsumption) ++stats_.subsumption_edges;
        if (cfg_.record_edges) ts_.add_edge(from, a, to, kind);
    }

    const System& sys_;
    const ExploreConfig& cfg_;
    ReducedTS ts_;
    ExploredStore store_;
    std::optional<HeuristicIndex> index_;
    std::vector<Frame> stack_;
    ExploreStats stats_;
};

}  // namespace

ExploreResult explore(const System& sys, const ExploreConfig& config) {
    require_valid(sys);
    if (config.order) {
        const System reordered = sys.with_order(*config.order);
        Engine engine(reordered, config);
        return engine.run();
    }
    Engine engine(sys, config);
    return engine.run();
}

ExploreResult explore_tree(const System& sys, const ExploreConfig& config) {
    if (config.subsumption != Subsumption::off)
        throw std::invalid_argument("explore_tree requires subsumption off");
    return explore(sys, config);
}

// ----------------------------------------------------------- Path count

BigInt count_full_paths(const ReducedTS& ts) {
    const std::size_t n = ts.num_nodes();
    if (n == 0) return 0;
    const auto adj = ts.adjacency();
    // Iterative post-order DFS; grey-node revisit means a cycle.
    std::vector<std::uint8_t> colour(n, 0);
    std::vector<BigInt> paths(n);
    std::vector<std::pair<NodeId, std::size_t>> stack{{ts.root(), adj.offset[ts.root()]}};
    colour[ts.root()] = 1;
    while (!stack.empty()) {
        auto& [u, i] = stack.back();
        if (i < adj.offset[u + 1]) {
            const NodeId v = ts.edges()[adj.edge[i++]].to;
            if (colour[v] == 1) throw std::invalid_argument("count_full_paths: graph has a cycle");
            if (colour[v] == 0) {
                colour[v] = 1;
                stack.emplace_back(v, adj.offset[v]);
            }
            continue;
        }
        if (adj.offset[u] == adj.offset[u + 1]) {
            paths[u] = 1;
        } else {
            BigInt sum = 0;
            for (std::size_t k = adj.offset[u]; k < adj.offset[u + 1]; ++k)
                sum += paths[ts.edges()[adj.edge[k]].to];
            paths[u] = std::move(sum);
        }
        colour[u] = 2;
        stack.pop_back();
    }
    return paths[ts.root()];
}

Bounded<std::vector<Word>> enumerate_full_runs(const ReducedTS& ts, std::size_t limit) {
    std::vector<Word> runs;
    if (ts.num_nodes() == 0) return runs;
    const auto adj = ts.adjacency();
    Word word;
    std::vector<std::pair<NodeId, std::size_t>> stack{{ts.root(), adj.offset[ts.root()]}};
    while (!stack.empty()) {
        auto& [u, i] = stack.back();
        if (adj.offset[u] == adj.offset[u + 1] && i == adj.offset[u]) {
            if (runs.size() == limit) return Bounded<std::vector<Word>>::exceeded(limit);
            runs.push_back(word);
            ++i;  // mark visited so the sink is emitted once
        }
        if (i < adj.offset[u + 1]) {
            const Edge& e = ts.edges()[adj.edge[i++]];
            word.push_back(e.action);
            stack.emplace_back(e.to, adj.offset[e.to]);
            continue;
        }
        stack.pop_back();
        if (!stack.empty()) word.pop_back();
    }
    return runs;
}

}  // namespace stpor
