#include "stpor/generators.hpp"

#include <algorithm>
#include <random>
#include <regex>
#include <set>
#include <sstream>

namespace stpor {

namespace {

std::string num(int i) { return std::to_string(i); }

// Two-state lock: "a" (available) and "t" (taken). Every (client, op) pair
// gets its own action so each action has exactly one client.
struct Lock {
    ProcessId server;
    std::string name;
    std::set<std::string> ops;  // server transitions already added
};

Lock add_lock(SystemBuilder& b, const std::string& server_name, const std::string& lock_name,
              bool taken) {
    const ProcessId p = b.add_process(server_name, ProcessKind::server);
    b.set_initial(p, taken ? "t" : "a");
    b.state(p, "a");
    b.state(p, "t");
    return Lock{p, lock_name, {}};
}

std::string take_action(const Lock& l, const std::string& client) { return l.name + "^." + client; }
std::string release_action(const Lock& l, const std::string& client) {
    return l.name + "v." + client;
}

void lock_take(SystemBuilder& b, Lock& l, const std::string& client) {
    const std::string a = take_action(l, client);
    if (l.ops.insert(a).second) b.add_transition(l.server, "a", a, "t");
}
void lock_release(SystemBuilder& b, Lock& l, const std::string& client) {
    const std::string a = release_action(l, client);
    if (l.ops.insert(a).second) b.add_transition(l.server, "t", a, "a");
}

// Appends a linear chain of actions to client p starting at state "s<k>".
struct Chain {
    SystemBuilder& b;
    ProcessId p;
    int k = 0;
    void step(const std::string& action) {
        b.add_transition(p, "s" + num(k), action, "s" + num(k + 1));
        ++k;
    }
};

// Portable uniform integer in [0, n).
std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < lim) return x % n;
    }
}

}  // namespace

// ------------------------------------------------------------ Benchmarks

System gen_philosophers(int n, int meals) {
    if (n < 2 || meals < 1) throw std::invalid_argument("philosophers: need n >= 2 and meals >= 1");
    SystemBuilder b("dp" + num(n) + (meals > 1 ? "-m" + num(meals) : ""));
    std::vector<ProcessId> phil;
    for (int i = 0; i < n; ++i) {
        phil.push_back(b.add_process("P" + num(i), ProcessKind::client));
        b.set_initial(phil.back(), "s0");
    }
    std::vector<Lock> forks;
    for (int i = 0; i < n; ++i) forks.push_back(add_lock(b, "F" + num(i), "f" + num(i), false));
    for (int i = 0; i < n; ++i) {
        const std::string me = "P" + num(i);
        Lock& left = forks[i];
        Lock& right = forks[(i + 1) % n];
        Chain c{b, phil[i]};
        for (int m = 0; m < meals; ++m) {
            c.step(take_action(left, me));
            c.step(take_action(right, me));
            c.step(release_action(left, me));
            c.step(release_action(right, me));
        }
        c.step(take_action(left, me));
        lock_take(b, left, me);
        lock_take(b, right, me);
        lock_release(b, left, me);
        lock_release(b, right, me);
    }
    return std::move(b).build();
}

System gen_multilocks(int n_clients, int n_locks, int k, std::uint64_t seed) {
    if (n_clients < 1 || n_locks < 1 || k < 1 || k > n_locks)
        throw std::invalid_argument("multilocks: need 1 <= k <= locks and clients >= 1");
    std::mt19937_64 rng(seed);
    SystemBuilder b("ml-" + num(n_clients) + "-" + num(n_locks) + "-" + num(k) + "-" +
                    std::to_string(seed));
    std::vector<ProcessId> clients;
    for (int i = 0; i < n_clients; ++i) {
        clients.push_back(b.add_process("C" + num(i), ProcessKind::client));
        b.set_initial(clients.back(), "s0");
    }
    std::vector<Lock> locks;
    for (int j = 0; j < n_locks; ++j) locks.push_back(add_lock(b, "L" + num(j), "l" + num(j), false));
    for (int i = 0; i < n_clients; ++i) {
        // Partial Fisher-Yates for k distinct locks.
        std::vector<int> pool(n_locks);
        for (int j = 0; j < n_locks; ++j) pool[j] = j;
        for (int j = 0; j < k; ++j)
            std::swap(pool[j], pool[j + pick(rng, static_cast<std::uint64_t>(n_locks - j))]);
        std::vector<int> chosen(pool.begin(), pool.begin() + k);
        std::sort(chosen.begin(), chosen.end());
        const std::string me = "C" + num(i);
        Chain c{b, clients[i]};
        for (int j : chosen) {
            c.step(take_action(locks[j], me));
            lock_take(b, locks[j], me);
        }
        for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
            c.step(release_action(locks[*it], me));
            lock_release(b, locks[*it], me);
        }
    }
    return std::move(b).build();
}

System gen_boolean_gates(int height) {
    if (height < 1) throw std::invalid_argument("boolean gates: height must be >= 1");
    const int gates = (1 << (height + 1)) - 1;
    const int first_leaf = (1 << height) - 1;
    SystemBuilder b("bg" + num(height));
    std::vector<ProcessId> g(gates);
    for (int i = 0; i < gates; ++i) {
        g[i] = b.add_process("G" + num(i), ProcessKind::client);
        b.set_initial(g[i], i >= first_leaf ? "init" : "I");
    }
    auto w = [](int i, int v) { return "w" + num(i) + "." + num(v); };
    auto r = [](int i, int v) { return "r" + num(i) + "." + num(v); };
    for (int i = 1; i < gates; ++i) {
        const ProcessId s = b.add_process("W" + num(i), ProcessKind::server);
        b.set_initial(s, "E");
        for (int v = 0; v < 2; ++v) {
            b.add_transition(s, "E", w(i, v), "F" + num(v));
            b.add_transition(s, "F" + num(v), r(i, v), "C");
        }
    }
    for (int i = 0; i < gates; ++i) {
        if (i >= first_leaf) {
            for (int v = 0; v < 2; ++v) b.add_transition(g[i], "init", w(i, v), "done");
            continue;
        }
        const int left = 2 * i + 1, right = 2 * i + 2;
        for (int v = 0; v < 2; ++v) {
            b.add_transition(g[i], "I", r(left, v), "L" + num(v));
            for (int u = 0; u < 2; ++u) b.add_transition(g[i], "L" + num(v), r(right, u), "O" + num(v & u));
        }
        if (i != 0)
            for (int v = 0; v < 2; ++v) b.add_transition(g[i], "O" + num(v), w(i, v), "D");
    }
    return std::move(b).build();
}

// --------------------------------------------------------------- Gadgets

namespace {

void check_cnf(const Cnf& cnf) {
    if (cnf.num_vars < 1) throw std::invalid_argument("cnf: need at least one variable");
    for (const auto& cl : cnf.clauses)
        for (int lit : cl)
            if (lit == 0 || std::abs(lit) > cnf.num_vars)
                throw std::invalid_argument("cnf: literal out of range");
}

}  // namespace

SatIfsGadget gen_sat_ifs(const Cnf& cnf) {
    check_cnf(cnf);
    const int n = cnf.num_vars;
    const int m = static_cast<int>(cnf.clauses.size());
    SystemBuilder b("satifs");

    std::vector<ProcessId> p0(n + 1), p1(n + 1);
    for (int i = 1; i <= n; ++i) {
        p0[i] = b.add_process("P0_" + num(i), ProcessKind::client);
        b.set_initial(p0[i], "s0");
        p1[i] = b.add_process("P1_" + num(i), ProcessKind::client);
        b.set_initial(p1[i], "s0");
    }
    std::vector<std::array<ProcessId, 3>> cc(m);
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < 3; ++k) {
            cc[j][k] = b.add_process("C" + num(j + 1) + "_" + num(k + 1), ProcessKind::client);
            b.set_initial(cc[j][k], "s0");
        }
    const ProcessId d = b.add_process("D", ProcessKind::client);
    b.set_initial(d, "s0");
    const ProcessId f = b.add_process("F", ProcessKind::client);
    b.set_initial(f, "s0");

    std::vector<Lock> x(n + 1), nx(n + 1), e(n + 1), c(m);
    for (int i = 1; i <= n; ++i) {
        x[i] = add_lock(b, "X" + num(i), "x" + num(i), true);
        nx[i] = add_lock(b, "!X" + num(i), "!x" + num(i), true);
        e[i] = add_lock(b, "E" + num(i), "e" + num(i), false);
    }
    for (int j = 0; j < m; ++j) c[j] = add_lock(b, "K" + num(j + 1), "c" + num(j + 1), true);
    Lock flock = add_lock(b, "Fl", "f", false);

    for (int i = 1; i <= n; ++i) {
        const std::string n0 = "P0_" + num(i), n1 = "P1_" + num(i);
        Chain a{b, p0[i]};
        a.step(take_action(e[i], n0));
        a.step(release_action(nx[i], n0));
        lock_take(b, e[i], n0);
        lock_release(b, nx[i], n0);
        Chain z{b, p1[i]};
        z.step(take_action(e[i], n1));
        z.step(release_action(x[i], n1));
        lock_take(b, e[i], n1);
        lock_release(b, x[i], n1);
    }
    for (int j = 0; j < m; ++j)
        for (int k = 0; k < 3; ++k) {
            const int lit = cnf.clauses[j][k];
            Lock& L = lit > 0 ? x[lit] : nx[-lit];
            const std::string me = "C" + num(j + 1) + "_" + num(k + 1);
            Chain ch{b, cc[j][k]};
            ch.step(take_action(L, me));
            ch.step(release_action(L, me));
            ch.step(release_action(c[j], me));
            lock_take(b, L, me);
            lock_release(b, L, me);
            lock_release(b, c[j], me);
        }
    Chain dc{b, d};
    for (int j = 0; j < m; ++j) {
        dc.step(take_action(c[j], "D"));
        lock_take(b, c[j], "D");
    }
    dc.step(take_action(flock, "D"));
    lock_take(b, flock, "D");
    Chain fc{b, f};
    fc.step(take_action(flock, "F"));
    lock_take(b, flock, "F");

    System sys = std::move(b).build();
    const ActionId excluded = sys.find_action(take_action(flock, "F"));
    ActionSet q = ActionSet::full(sys.num_actions());
    q.erase(excluded);
    GlobalState s = initial_state(sys);
    return SatIfsGadget{std::move(sys), std::move(s), std::move(q), excluded};
}

System gen_lowerbound(const Cnf& cnf) {
    check_cnf(cnf);
    const int n = cnf.num_vars;
    // Occurrences per literal, counting a literal once per clause.
    std::vector<int> pos(n + 1, 0), neg(n + 1, 0);
    std::vector<std::vector<int>> distinct;
    for (const auto& cl : cnf.clauses) {
        std::vector<int> lits;
        for (int lit : cl)
            if (std::find(lits.begin(), lits.end(), lit) == lits.end()) lits.push_back(lit);
        for (int lit : lits) (lit > 0 ? pos[lit] : neg[-lit])++;
        distinct.push_back(std::move(lits));
    }
    auto lit_action = [](int lit) { return (lit > 0 ? "x" : "!x") + num(std::abs(lit)); };

    SystemBuilder b("lowerbound");
    for (int i = 1; i <= n; ++i)
        for (int sign = 0; sign < 2; ++sign) {
            const std::string bar = sign ? "!" : "";
            const ProcessId p = b.add_process(bar + "C" + num(i), ProcessKind::client);
            b.set_initial(p, "top");
            b.add_transition(p, "top", bar + "theta" + num(i), "bot0");
            b.add_transition(p, "top", bar + "lambda" + num(i), "bot0");
            const int occ = sign ? neg[i] : pos[i];
            for (int k = 0; k < occ; ++k)
                b.add_transition(p, "bot" + num(k), lit_action(sign ? -i : i), "bot" + num(k + 1));
        }
    const ProcessId cs = b.add_process("Cstar", ProcessKind::client);
    b.set_initial(cs, "s0");
    b.add_transition(cs, "s0", "e", "s1");
    const ProcessId ncs = b.add_process("!Cstar", ProcessKind::client);
    b.set_initial(ncs, "s0");
    b.add_transition(ncs, "s0", "b", "s1");
    b.add_transition(ncs, "s1", "!e", "s2");

    const ProcessId sl = b.add_process("Sl", ProcessKind::server);
    b.set_initial(sl, "l0");
    b.add_transition(sl, "l0", "e", "l1");
    b.add_transition(sl, "l0", "!e", "l1");
    for (int i = 1; i <= n; ++i) {
        b.add_transition(sl, "l" + num(i), "lambda" + num(i), "l" + num(i + 1));
        b.add_transition(sl, "l" + num(i), "!lambda" + num(i), "l" + num(i + 1));
    }
    // Sr: one theta choice per variable, then one literal per clause, then b.
    const ProcessId sr = b.add_process("Sr", ProcessKind::server);
    auto sr_state = [&](int i) { return i < n ? "r" + num(i) : std::string("q0"); };
    b.set_initial(sr, sr_state(0));
    for (int i = 1; i <= n; ++i) {
        b.add_transition(sr, sr_state(i - 1), "theta" + num(i), sr_state(i));
        b.add_transition(sr, sr_state(i - 1), "!theta" + num(i), sr_state(i));
    }
    const int k = static_cast<int>(distinct.size());
    for (int j = 0; j < k; ++j)
        for (int lit : distinct[j]) b.add_transition(sr, "q" + num(j), lit_action(lit), "q" + num(j + 1));
    b.add_transition(sr, "q" + num(k), "b", "end");
    return std::move(b).build();
}

// --------------------------------------------------------------- Figures

System fig1() {
    SystemBuilder b("fig1");
    for (const char* a : {"a", "b", "c", "e"}) b.action(a);
    const ProcessId pb = b.add_process("P_b", ProcessKind::client);
    const ProcessId pce = b.add_process("P_ce", ProcessKind::client);
    const ProcessId sab = b.add_process("S_ab", ProcessKind::server);
    const ProcessId se = b.add_process("S_e", ProcessKind::server);
    const ProcessId sc = b.add_process("S_c", ProcessKind::server);
    for (ProcessId p : {pb, pce, sab, se, sc}) b.set_initial(p, "0");
    b.add_transition(pb, "0", "b", "1");
    b.add_transition(pce, "0", "e", "1");
    b.add_transition(pce, "0", "c", "2");
    b.add_transition(pce, "1", "a", "3");
    b.add_transition(sab, "0", "b", "1");
    b.add_transition(sab, "0", "a", "2");
    b.add_transition(sab, "2", "b", "3");
    b.add_transition(se, "0", "e", "1");
    b.add_transition(sc, "0", "c", "1");
    return std::move(b).build();
}

System fig3() {
    SystemBuilder b("fig3");
    const ProcessId ca = b.add_process("C_a", ProcessKind::client);
    const ProcessId sa = b.add_process("S_a", ProcessKind::server);
    const ProcessId cb = b.add_process("C_b", ProcessKind::client);
    const ProcessId sb = b.add_process("S_b", ProcessKind::server);
    for (ProcessId p : {ca, sa, cb, sb}) b.set_initial(p, "0");
    b.add_transition(ca, "0", "a", "1");
    b.add_transition(sa, "0", "a", "0");
    b.add_transition(cb, "0", "b", "0");
    b.add_transition(sb, "0", "b", "0");
    return std::move(b).build();
}

System fig4() {
    SystemBuilder b("fig4");
    const ProcessId ca = b.add_process("C_a", ProcessKind::client);
    const ProcessId sab = b.add_process("S_ab", ProcessKind::server);
    const ProcessId cbc = b.add_process("C_bc", ProcessKind::client);
    const ProcessId sc = b.add_process("S_c", ProcessKind::server);
    for (ProcessId p : {ca, sab, cbc, sc}) b.set_initial(p, "0");
    b.add_transition(ca, "0", "a", "1");
    b.add_transition(sab, "0", "a", "1");
    b.add_transition(sab, "0", "b", "2");
    b.add_transition(cbc, "0", "b", "1");
    b.add_transition(cbc, "0", "c", "2");
    b.add_transition(sc, "0", "c", "1");
    return std::move(b).build();
}

System fig5() {
    // c is served by S_b after b, so the full runs are exactly ab, ba and bc.
    SystemBuilder b("fig5");
    const ProcessId pac = b.add_process("P_ac", ProcessKind::client);
    const ProcessId sac = b.add_process("S_ac", ProcessKind::server);
    const ProcessId pb = b.add_process("P_b", ProcessKind::client);
    const ProcessId sb = b.add_process("S_b", ProcessKind::server);
    for (ProcessId p : {pac, sac, pb, sb}) b.set_initial(p, "0");
    b.add_transition(pac, "0", "a", "1");
    b.add_transition(pac, "0", "c", "2");
    b.add_transition(sac, "0", "a", "0");
    b.add_transition(pb, "0", "b", "1");
    b.add_transition(sb, "0", "b", "1");
    b.add_transition(sb, "1", "c", "1");
    b.set_order({"a", "b", "c"});
    return std::move(b).build();
}

System fig6(int n) {
    if (n < 1) throw std::invalid_argument("fig6: n must be >= 1");
    SystemBuilder b("fig6-" + num(n));
    std::vector<ProcessId> P, S;
    for (int i = 1; i <= n; ++i) {
        P.push_back(b.add_process("P" + num(i), ProcessKind::client));
        b.set_initial(P.back(), "0");
    }
    for (int i = 1; i <= n; ++i) {
        S.push_back(b.add_process("S" + num(i), ProcessKind::server));
        b.set_initial(S.back(), "0");
    }
    for (int i = 1; i <= n; ++i) {
        const ProcessId p = P[i - 1], s = S[i - 1];
        const std::string a = "a" + num(i), bb = "b" + num(i), c = "c" + num(i), d = "d" + num(i);
        b.add_transition(p, "0", a, "1");
        b.add_transition(p, "0", bb, "2");
        b.add_transition(p, "1", c, "3");
        b.add_transition(p, "2", d, "3");
        for (const auto& act : {a, bb, c, d}) b.add_transition(s, "0", act, "0");
    }
    return std::move(b).build();
}

std::map<std::string, System> builtin_figures() {
    std::map<std::string, System> m;
    m.emplace("fig1", fig1());
    m.emplace("fig3", fig3());
    m.emplace("fig4", fig4());
    m.emplace("fig5", fig5());
    m.emplace("fig6", fig6(4));
    return m;
}

// ---------------------------------------------------------------- Random

System random_system(std::uint64_t seed, const RandomSystemParams& params) {
    if (params.max_processes < 2 || params.max_states < 2 || params.max_actions < 1)
        throw std::invalid_argument("random_system: need >= 2 processes, >= 2 states, >= 1 action");
    std::mt19937_64 rng(seed);
    // Lean towards the upper bounds; tiny systems say little.
    auto upper_biased = [&](int lo, int hi) {
        return hi - static_cast<int>(pick(rng, static_cast<std::uint64_t>(hi - lo + 1)) *
                                     pick(rng, 2));
    };
    const int np = upper_biased(2, params.max_processes);
    const int nclients = 1 + static_cast<int>(pick(rng, static_cast<std::uint64_t>(np - 1)));
    const int na = upper_biased(std::max(1, params.max_actions / 2), params.max_actions);

    SystemBuilder b("rand-" + std::to_string(seed));
    std::vector<ProcessId> procs;
    for (int i = 0; i < np; ++i) {
        const bool client = i < nclients;
        procs.push_back(b.add_process((client ? "C" : "S") + num(i), client ? ProcessKind::client : ProcessKind::server));
        b.set_initial(procs.back(), "0");
    }
    std::vector<std::vector<int>> alpha(np);
    for (int a = 0; a < na; ++a) {
        const int c = static_cast<int>(pick(rng, static_cast<std::uint64_t>(nclients)));
        const int s = nclients + static_cast<int>(pick(rng, static_cast<std::uint64_t>(np - nclients)));
        alpha[c].push_back(a);
        alpha[s].push_back(a);
        b.action("a" + num(a));
    }
    for (int p = 0; p < np; ++p) {
        if (alpha[p].empty()) continue;
        const bool client = p < nclients;
        const int ns = upper_biased(2, params.max_states);
        // Sources are drawn from states already reachable, so few actions are dead.
        std::vector<int> reach{0};
        std::set<std::pair<int, int>> used;  // (from, action)
        auto add = [&](int a) {
            for (int attempt = 0; attempt < 8; ++attempt) {
                const int from = reach[pick(rng, reach.size())];
                if (client && from == ns - 1) continue;  // client sink
                if (used.count({from, a})) continue;
                const int to = client ? from + 1 + static_cast<int>(pick(rng, static_cast<std::uint64_t>(ns - 1 - from)))
                                      : static_cast<int>(pick(rng, static_cast<std::uint64_t>(ns)));
                used.insert({from, a});
                if (std::find(reach.begin(), reach.end(), to) == reach.end()) reach.push_back(to);
                b.add_transition(procs[p], num(from), "a" + num(a), num(to));
                return true;
            }
            return false;
        };
        for (int a : alpha[p])
            if (!add(a)) {
                // Every action must label some transition; 0 -> 1 is always free for a new action.
                used.insert({0, a});
                b.add_transition(procs[p], "0", "a" + num(a), client ? "1" : "0");
            }
        const int extra = static_cast<int>(pick(rng, static_cast<std::uint64_t>(ns + 1)));
        for (int k = 0; k < extra; ++k) add(alpha[p][pick(rng, alpha[p].size())]);
    }
    return std::move(b).build();
}

// ------------------------------------------------------------------- CNF

Cnf parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Cnf cnf;
    bool header = false;
    long declared = -1;
    std::vector<int> current;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c" || tok[0] == 'c') continue;
        if (tok == "p") {
            std::string fmt;
            long v = -1, c = -1;
            if (header || !(ls >> fmt >> v >> c) || fmt != "cnf" || v < 1 || c < 0)
                throw std::invalid_argument("dimacs: malformed header");
            cnf.num_vars = static_cast<int>(v);
            declared = c;
            header = true;
            continue;
        }
        if (!header) throw std::invalid_argument("dimacs: clause before header");
        for (bool first = true; first || (ls >> tok); first = false) {
            long lit = 0;
            try {
                std::size_t used = 0;
                lit = std::stol(tok, &used);
                if (used != tok.size()) throw std::invalid_argument("x");
            } catch (const std::exception&) {
                throw std::invalid_argument("dimacs: bad literal '" + tok + "'");
            }
            if (lit == 0) {
                if (current.empty()) throw std::invalid_argument("dimacs: empty clause");
                if (current.size() > 3) throw std::invalid_argument("dimacs: clause longer than 3 literals");
                while (current.size() < 3) current.push_back(current.back());
                cnf.clauses.push_back({current[0], current[1], current[2]});
                current.clear();
            } else {
                if (std::labs(lit) > cnf.num_vars) throw std::invalid_argument("dimacs: literal out of range");
                current.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!header) throw std::invalid_argument("dimacs: missing header");
    if (!current.empty()) throw std::invalid_argument("dimacs: unterminated clause");
    if (static_cast<long>(cnf.clauses.size()) != declared)
        throw std::invalid_argument("dimacs: clause count does not match header");
    return cnf;
}

std::string format_dimacs(const Cnf& cnf) {
    std::ostringstream os;
    os << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const auto& cl : cnf.clauses) os << cl[0] << ' ' << cl[1] << ' ' << cl[2] << " 0\n";
    return os.str();
}

Cnf random_cnf(int num_vars, int num_clauses, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Cnf cnf;
    cnf.num_vars = num_vars;
    for (int j = 0; j < num_clauses; ++j) {
        std::array<int, 3> cl{};
        for (int& lit : cl) {
            lit = 1 + static_cast<int>(pick(rng, static_cast<std::uint64_t>(num_vars)));
            if (pick(rng, 2)) lit = -lit;
        }
        cnf.clauses.push_back(cl);
    }
    return cnf;
}

std::optional<System> named_model(const std::string& name) {
    std::smatch m;
    if (name == "fig1") return fig1();
    if (name == "fig3") return fig3();
    if (name == "fig4") return fig4();
    if (name == "fig5") return fig5();
    if (name == "fig6") return fig6(4);
    if (std::regex_match(name, m, std::regex(R"(fig6-(\d+))"))) return fig6(std::stoi(m[1]));
    if (std::regex_match(name, m, std::regex(R"(dp(\d+)(?:-m(\d+))?)")))
        return gen_philosophers(std::stoi(m[1]), m[2].matched ? std::stoi(m[2]) : 1);
    if (std::regex_match(name, m, std::regex(R"(bg(\d+))"))) return gen_boolean_gates(std::stoi(m[1]));
    if (std::regex_match(name, m, std::regex(R"(ml-(\d+)-(\d+)-(\d+)-(\d+))")))
        return gen_multilocks(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoull(m[4]));
    if (std::regex_match(name, m, std::regex(R"(rand-(\d+))"))) return random_system(std::stoull(m[1]));
    return std::nullopt;
}

}  // namespace stpor
