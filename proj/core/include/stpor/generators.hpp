#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stpor/system.hpp"

namespace stpor {

/// 3-CNF over variables 1..num_vars; literal v > 0 is x_v, v < 0 its negation.
struct Cnf {
    int num_vars = 0;
    std::vector<std::array<int, 3>> clauses;
};

/// Philosopher i takes fork i then fork i+1 (mod n), releases both, repeated
/// `meals` times, then takes fork i once more (the loop head, unfolded).
/// Forks are two-state lock servers.
System gen_philosophers(int n, int meals = 1);

/// Each client takes k distinct locks in increasing index order, then releases
/// them in reverse. Lock choice depends only on the seed.
System gen_multilocks(int n_clients, int n_locks, int k, std::uint64_t seed);

/// Complete binary tree of 2^(height+1) - 1 gate clients in heap order and one
/// wire server per non-root gate output. Leaves write a nondeterministic bit;
/// inner gates read left then right input, then write their AND; the root only
/// reads. height 3 gives 15 clients and 14 servers.
System gen_boolean_gates(int height);

struct SatIfsGadget {
    System system;
    GlobalState state;  // the designated query state, equal to the initial state
    ActionSet query;    // every action except F's take of lock f
    ActionId f_take;    // the excluded action
};

/// Lock encoding of SAT as an includes-first-set question. The x, !x and c
/// locks start taken, e and f free, so the query state is the initial state.
SatIfsGadget gen_sat_ifs(const Cnf& cnf);

/// Two-server construction where every full run starts with e iff the formula
/// is unsatisfiable. Client C_i repeats x_i once per occurrence of the literal
/// so the clause server can use it in every clause.
System gen_lowerbound(const Cnf& cnf);

System fig1();
System fig3();  // cyclic client; fails validation by design
System fig4();
System fig5();
System fig6(int n);
/// fig1, fig3, fig4, fig5 and fig6(4) keyed by name ("fig6" is n = 4).
std::map<std::string, System> builtin_figures();

struct RandomSystemParams {
    int max_processes = 4;  // at least one client and one server
    int max_states = 4;
    int max_actions = 6;
};
/// Small valid system; a pure function of seed and params.
System random_system(std::uint64_t seed, const RandomSystemParams& params = {});

/// DIMACS CNF; clauses shorter than 3 are padded by repeating their last literal.
Cnf parse_dimacs(const std::string& text);
std::string format_dimacs(const Cnf& cnf);
/// Uniform random 3-CNF (portable generator, deterministic per seed).
Cnf random_cnf(int num_vars, int num_clauses, std::uint64_t seed);

/// Resolves model shorthands: fig1 fig3 fig4 fig5 fig6-N dpN dpN-mK bgH
/// ml-C-L-K-S rand-SEED. Returns nullopt for unknown names.
std::optional<System> named_model(const std::string& name);

}  // namespace stpor
