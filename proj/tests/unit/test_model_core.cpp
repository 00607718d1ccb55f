#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "stpor/generators.hpp"
#include "stpor/model_io.hpp"
#include "stpor/state_store.hpp"
#include "stpor/system.hpp"

using namespace stpor;

namespace {

const char* kFig1 = R"(system fig1
# two clients, three servers
client P_b
  init 0
  0 b 1
client P_ce
  init 0
  0 e 1
  1 a 3
  0 c 2
server S_ab
  init 0
  0 b 1
  0 a 2
  2 b 3
server S_e
  init 0
  0 e 1
server S_c
  init 0
  0 c 1
)";

ActionId act(const System& s, const char* n) { return s.find_action(n); }

bool has_violation(const std::vector<std::string>& v, const std::string& text) {
    for (const auto& x : v)
        if (x.find(text) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("parse the two-client example") {
    const System sys = load_system(kFig1);
    CHECK(sys.name() == "fig1");
    CHECK(sys.num_processes() == 5);
    CHECK(sys.num_actions() == 4);
    CHECK(sys.process(0).kind == ProcessKind::client);
    CHECK(sys.process(2).kind == ProcessKind::server);
    // Actions are numbered by first mention; without an order line that is the order.
    CHECK(sys.action_name(0) == "b");
    CHECK(sys.has_declaration_order());
    CHECK(validate_system(sys).empty());
}

TEST_CASE("every action has one client and one server") {
    const System sys = fig1();
    for (ActionId a = 0; a < sys.num_actions(); ++a) {
        const auto& users = sys.action(a).users;
        REQUIRE(users.size() == 2);
        int clients = 0;
        for (auto p : users) clients += sys.process(p).kind == ProcessKind::client;
        CHECK(clients == 1);
    }
}

TEST_CASE("parse errors carry position") {
    SUBCASE("empty document") {
        CHECK_THROWS_WITH_AS(parse_system(""), doctest::Contains("no processes"), ModelError);
    }
    SUBCASE("missing header") {
        try {
            parse_system("client P\n  init 0\n");
            FAIL("expected a ModelError");
        } catch (const ModelError& e) {
            CHECK(e.line() == 1);
        }
    }
    SUBCASE("transition outside a process") {
        CHECK_THROWS_WITH_AS(parse_system("system x\n0 a 1\n"), doctest::Contains("outside a process"),
                             ModelError);
    }
    SUBCASE("unknown action in order") {
        const std::string text = std::string(kFig1) + "order a b c e zz\n";
        CHECK_THROWS_WITH_AS(parse_system(text), doctest::Contains("unknown action 'zz'"), ModelError);
    }
    SUBCASE("bad identifier") {
        CHECK_THROWS_AS(parse_system("system x\nclient P$\n"), ModelError);
    }
}

TEST_CASE("validation reports domain and acyclicity violations") {
    SUBCASE("action in two clients") {
        const System sys = parse_system(R"(system bad
client P
  init 0
  0 b 1
client Q
  init 0
  0 b 1
server S
  init 0
  0 b 1
)");
        CHECK(has_violation(validate_system(sys), "action b appears in 2 clients"));
        CHECK_THROWS_AS(load_system(format_system(sys)), ModelError);
    }
    SUBCASE("self-loop in a client") {
        const System sys = parse_system(R"(system loop
client P
  init 0
  0 b 0
server S
  init 0
  0 b 0
)");
        CHECK(has_violation(validate_system(sys), "client P not acyclic"));
    }
    SUBCASE("cyclic client of the figure") {
        CHECK(has_violation(validate_system(fig3()), "client C_b not acyclic"));
    }
    SUBCASE("nondeterministic process") {
        const System sys = parse_system(R"(system nd
client P
  init 0
  0 b 1
  0 b 2
server S
  init 0
  0 b 0
)");
        CHECK(has_violation(validate_system(sys), "not action-deterministic"));
    }
}

TEST_CASE("format then parse is the identity on canonical text") {
    for (const auto& [name, sys] : builtin_figures()) {
        CAPTURE(name);
        const std::string text = format_system(sys);
        CHECK(format_system(parse_system(text)) == text);
    }
    const std::string ml = format_system(gen_multilocks(3, 5, 2, 9));
    CHECK(format_system(parse_system(ml)) == ml);
}

TEST_CASE("initial state, enabled and step") {
    const System sys = fig1();
    const GlobalState s0 = initial_state(sys);
    CHECK(s0 == GlobalState(5, 0));
    CHECK(initial_state(sys) == s0);
    CHECK(enabled(sys, s0) == make_action_set(sys, {"e", "b", "c"}));

    const GlobalState s1 = step(sys, s0, act(sys, "e"));
    const ProcessId pce = sys.find_process("P_ce"), se = sys.find_process("S_e");
    for (ProcessId p = 0; p < sys.num_processes(); ++p)
        CHECK((s1[p] != s0[p]) == (p == pce || p == se));

    CHECK_THROWS_AS(step(sys, s0, act(sys, "a")), ActionNotEnabled);
    const GlobalState copy = s0;
    CHECK_THROWS_AS(step(sys, s0, act(sys, "a")), ActionNotEnabled);
    CHECK(s0 == copy);

    const System f4 = fig4();
    CHECK(initial_state(f4).size() == 4);
    CHECK(enabled(f4, initial_state(f4)) == make_action_set(f4, {"a", "b", "c"}));

    GlobalState t = s0;
    for (ActionId a : parse_word(sys, "b c")) t = step(sys, t, a);
    CHECK(is_terminal(sys, t));
    CHECK(enabled(sys, t).empty());
}

TEST_CASE("enabled agrees with the brute-force oracle on random systems") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const System sys = random_system(seed);
        REQUIRE(is_valid(sys));
        for (const auto& s : oracle::reachable(sys)) {
            std::set<ActionId> got;
            enabled(sys, s).for_each([&](ActionId a) { got.insert(a); });
            const auto want = oracle::enabled_list(sys, s);
            CHECK(got == std::set<ActionId>(want.begin(), want.end()));
            for (ActionId a : want) CHECK(step(sys, s, a) == oracle::apply(sys, s, a));
        }
    }
}

TEST_CASE("dependence and domains") {
    const System sys = fig1();
    const auto a = act(sys, "a"), b = act(sys, "b"), c = act(sys, "c"), e = act(sys, "e");
    CHECK_FALSE(dependent(sys, b, c));
    CHECK(dependent(sys, a, b));
    for (ActionId x : {a, b, c, e}) {
        CHECK(dependent(sys, x, x));
        CHECK(dependents_of(sys, x).contains(x));
    }
    const std::vector<ActionId> bc{b, c};
    ProcessSet want = sys.no_processes();
    for (const char* p : {"P_b", "S_ab", "P_ce", "S_c"}) want.insert(sys.find_process(p));
    CHECK(dom_of(sys, std::span<const ActionId>(bc)) == want);
    CHECK(dom_of(sys, std::span<const ActionId>()).empty());
    CHECK(dom_of(sys, make_action_set(sys, {"e"})) == dom_of(sys, e));
}

TEST_CASE("sticks_from") {
    const System sys = fig1();
    const GlobalState s0 = initial_state(sys);
    ProcessSet R = sys.no_processes();
    R.insert(sys.find_process("P_ce"));
    const ActionSet st = sticks_from(sys, s0, R);
    CHECK(st.contains(act(sys, "a")));
    CHECK(st.contains(act(sys, "c")));
    CHECK(st.contains(act(sys, "e")));
    CHECK_FALSE(st.contains(act(sys, "b")));
    CHECK(sticks_from(sys, s0, sys.all_processes()).empty());
    CHECK(sticks_from(sys, s0, sys.no_processes()).empty());
}

TEST_CASE("dense sets follow std::set semantics") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 1 + rng() % 150;
        ActionSet x(n), y(n);
        std::set<ActionId> sx, sy;
        for (int i = 0; i < 40; ++i) {
            const ActionId a = rng() % n, b = rng() % n;
            x.insert(a), sx.insert(a);
            y.insert(b), sy.insert(b);
        }
        auto members = [](const ActionSet& s) {
            std::set<ActionId> out;
            s.for_each([&](ActionId a) { out.insert(a); });
            return out;
        };
        std::set<ActionId> u, i, d;
        std::set_union(sx.begin(), sx.end(), sy.begin(), sy.end(), std::inserter(u, u.end()));
        std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(), std::inserter(i, i.end()));
        std::set_difference(sx.begin(), sx.end(), sy.begin(), sy.end(), std::inserter(d, d.end()));
        CHECK(members(x | y) == u);
        CHECK(members(x & y) == i);
        CHECK(members(x - y) == d);
        CHECK(x.size() == sx.size());
        CHECK(x.intersects(y) == !i.empty());
        CHECK((x & y).subset_of(x));
        CHECK(x.subset_of(x | y));
        CHECK((x == y) == (sx == sy));
        const auto listed = x.members();
        CHECK(std::is_sorted(listed.begin(), listed.end()));
    }
}

TEST_CASE("state store interns each tuple once") {
    StateStore store(3);
    std::set<GlobalState> ref;
    std::mt19937_64 rng(11);
    std::vector<GlobalState> by_id;
    for (int i = 0; i < 200'000; ++i) {
        GlobalState s{static_cast<LocalState>(rng() % 90), static_cast<LocalState>(rng() % 90),
                      static_cast<LocalState>(rng() % 90)};
        const auto [id, fresh] = store.intern(s);
        CHECK(fresh == ref.insert(s).second);
        if (fresh) {
            CHECK(id == by_id.size());
            by_id.push_back(s);
        }
        CHECK(store.state(id) == s);
    }
    CHECK(store.size() == ref.size());
    CHECK(store.find(GlobalState{999, 0, 0}) == StateStore::kNoStateId);
    for (StateId id = 0; id < by_id.size(); id += 97) CHECK(store.find(by_id[id]) == id);
}

TEST_CASE("action orders") {
    const System f6 = fig6(2);
    const auto alpha = alphabetic_order(f6);
    for (std::size_t i = 1; i < alpha.size(); ++i)
        CHECK(f6.action_name(alpha[i - 1]) < f6.action_name(alpha[i]));
    const auto pm = process_major_order(f6);
    CHECK(pm.size() == f6.num_actions());
    const System re = f6.with_order(alpha);
    CHECK_FALSE(re.has_declaration_order());
    CHECK(re.order() == alpha);
    CHECK(re.before(alpha[0], alpha[1]));
    // Digit runs compare by value.
    const System nums = load_system(R"(system nums
client P
  init 0
  0 a10 1
  1 a2 2
  2 a1 3
server S
  init 0
  0 a10 0
  0 a2 0
  0 a1 0
)");
    CHECK(format_word(nums, alphabetic_order(nums)) == "a1 a2 a10");
}
