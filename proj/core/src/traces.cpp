#include "stpor/traces.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

namespace stpor {

void FirstFamily::add(ActionSet s) {
    auto it = std::lower_bound(sets.begin(), sets.end(), s);
    if (it != sets.end() && *it == s) return;
    sets.insert(it, std::move(s));
}

bool FirstFamily::contains(const ActionSet& s) const {
    return std::binary_search(sets.begin(), sets.end(), s);
}

ActionSet first_set(const System& sys, std::span<const ActionId> u) {
    ActionSet out = sys.no_actions();
    ProcessSet touched = sys.no_processes();
    for (ActionId a : u) {
        const auto& d = sys.action(a).dom;
        if (!d.intersects(touched)) out.insert(a);
        touched |= d;
    }
    return out;
}

Word lex_normal_form(const System& sys, std::span<const ActionId> u) {
    const std::size_t n = u.size();
    std::vector<char> taken(n, 0);
    Word out;
    out.reserve(n);
    for (std::size_t round = 0; round < n; ++round) {
        // A remaining position is minimal iff no earlier remaining letter depends on it.
        std::size_t best = n;
        ProcessSet blocked = sys.no_processes();
        for (std::size_t i = 0; i < n; ++i) {
            if (taken[i]) continue;
            const auto& d = sys.action(u[i]).dom;
            if (!d.intersects(blocked) && (best == n || sys.before(u[i], u[best]))) best = i;
            blocked |= d;
        }
        taken[best] = 1;
        out.push_back(u[best]);
    }
    return out;
}

bool trace_equivalent(const System& sys, std::span<const ActionId> u, std::span<const ActionId> v) {
    if (u.size() != v.size()) return false;
    return lex_normal_form(sys, u) == lex_normal_form(sys, v);
}

namespace {

// Appending a keeps w lex-normal iff every letter after the last one
// dependent on a is smaller than a.
bool extends_normal(const System& sys, const Word& w, ActionId a) {
    for (std::size_t i = w.size(); i-- > 0;) {
        if (dependent(sys, w[i], a)) return true;
        if (sys.before(a, w[i])) return false;
    }
    return true;
}

bool walk_runs(const System& sys, const GlobalState& s, std::size_t limit, bool normal_only,
               const std::function<void(std::span<const ActionId>)>& visit) {
    struct Frame {
        GlobalState state;
        std::vector<ActionId> choices;
        std::size_t next = 0;
    };
    Word word;
    bool prefix_stuck = false;  // enabled actions exist but none keeps the word normal
    auto ordered = [&](const GlobalState& st) {
        const ActionSet en = enabled(sys, st);
        std::vector<ActionId> out;
        for (ActionId a : sys.order())
            if (en.contains(a) && (!normal_only || extends_normal(sys, word, a))) out.push_back(a);
        prefix_stuck = !en.empty() && out.empty();
        return out;
    };
    std::size_t count = 0;
    std::vector<Frame> stack;
    auto root = ordered(s);
    std::vector<char> stuck{prefix_stuck};
    stack.push_back(Frame{s, std::move(root), 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.choices.empty() && !stuck.back()) {
            if (count == limit) return false;
            ++count;
            visit(word);
        }
        if (f.next < f.choices.size()) {
            const ActionId a = f.choices[f.next++];
            GlobalState t(f.state.size());
            sys.step_into(f.state.data(), a, t.data());
            word.push_back(a);
            auto ch = ordered(t);
            stuck.push_back(prefix_stuck);
            stack.push_back(Frame{std::move(t), std::move(ch), 0});
        } else {
            stack.pop_back();
            stuck.pop_back();
            if (!word.empty() && !stack.empty()) word.pop_back();
        }
    }
    return true;
}

}  // namespace

bool for_each_maximal_run(const System& sys, const GlobalState& s, std::size_t limit,
                          const std::function<void(std::span<const ActionId>)>& visit) {
    return walk_runs(sys, s, limit, false, visit);
}

bool for_each_lex_normal_run(const System& sys, const GlobalState& s, std::size_t limit,
                             const std::function<void(std::span<const ActionId>)>& visit) {
    return walk_runs(sys, s, limit, true, visit);
}

Bounded<std::size_t> count_trace_classes(const System& sys, const GlobalState& s,
                                         std::size_t limit) {
    std::size_t n = 0;
    if (!walk_runs(sys, s, limit, true, [&](std::span<const ActionId>) { ++n; }))
        return Bounded<std::size_t>::exceeded(limit);
    return n;
}

Bounded<std::vector<Run>> enumerate_maximal_runs(const System& sys, const GlobalState& s,
                                                 std::size_t limit) {
    std::vector<Run> runs;
    const bool ok = for_each_maximal_run(sys, s, limit, [&](std::span<const ActionId> w) {
        runs.push_back(Run{s, Word(w.begin(), w.end())});
    });
    if (!ok) return Bounded<std::vector<Run>>::exceeded(limit);
    return runs;
}

Bounded<FirstFamily> first_family(const System& sys, const GlobalState& s, std::size_t limit) {
    FirstFamily fam;
    const bool ok = for_each_maximal_run(
        sys, s, limit, [&](std::span<const ActionId> w) { fam.add(first_set(sys, w)); });
    if (!ok) return Bounded<FirstFamily>::exceeded(limit);
    return fam;
}

Bounded<bool> is_covering(const System& sys, const GlobalState& s, const ActionSet& B,
                          std::size_t limit) {
    if (is_terminal(sys, s)) return true;
    auto fam = first_family(sys, s, limit);
    if (fam.limit_exceeded()) return Bounded<bool>::exceeded(limit);
    for (const auto& F : fam.value().sets)
        if (!F.intersects(B)) return false;
    return true;
}

namespace {

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint16_t>& k) const noexcept {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto v : k) h = (h ^ v) * 0x100000001b3ull;
        return h;
    }
};

class IfsSearch {
public:
    IfsSearch(const System& sys, const ActionSet& B, std::size_t limit, const ActionSet& en0)
        : sys_(sys), B_(B), limit_(limit) {
        en0.for_each([&](std::size_t e) { root_domains_.push_back(sys.action(e).dom); });
        // The future of (t, R) depends on R only through which of these
        // domains it meets, so the memo key stores just those bits.
        key_domains_ = root_domains_;
        for (ActionId a = 0; a < sys.num_actions(); ++a)
            if (!B.contains(a)) key_domains_.push_back(sys.action(a).dom);
        std::sort(key_domains_.begin(), key_domains_.end());
        key_domains_.erase(std::unique(key_domains_.begin(), key_domains_.end()), key_domains_.end());
    }

    // Returns 1 (found), 0 (none), -1 (limit).
    int run(const GlobalState& t, const ProcessSet& R) {
        if (wraps_root(R)) return 1;
        auto key = make_key(t, R);
        if (failed_.count(key)) return 0;
        if (++visited_ > limit_) return -1;
        const ActionSet en = enabled(sys_, t);
        // Once R wraps the root's enabled actions no fresh first letter can
        // appear, so reaching here with an empty `en` is impossible.
        int result = 0;
        GlobalState next(t.size());
        for (ActionId a : sys_.order()) {
            if (!en.contains(a)) continue;
            const auto& d = sys_.action(a).dom;
            if (!d.intersects(R) && !B_.contains(a)) continue;
            sys_.step_into(t.data(), a, next.data());
            const int r = run(next, R | d);
            if (r != 0) {
                result = r;
                break;
            }
        }
        if (result == 0) failed_.insert(std::move(key));
        return result;
    }

private:
    bool wraps_root(const ProcessSet& R) const {
        for (const auto& d : root_domains_)
            if (!d.intersects(R)) return false;
        return true;
    }
    std::vector<std::uint16_t> make_key(const GlobalState& t, const ProcessSet& R) const {
        std::vector<std::uint16_t> k(t.begin(), t.end());
        std::uint16_t bits = 0;
        for (std::size_t i = 0; i < key_domains_.size(); ++i) {
            if (key_domains_[i].intersects(R)) bits |= static_cast<std::uint16_t>(1u << (i % 16));
            if (i % 16 == 15 || i + 1 == key_domains_.size()) k.push_back(std::exchange(bits, 0));
        }
        return k;
    }

    const System& sys_;
    const ActionSet& B_;
    std::size_t limit_;
    std::size_t visited_ = 0;
    std::vector<ProcessSet> root_domains_;
    std::vector<ProcessSet> key_domains_;
    std::unordered_set<std::vector<std::uint16_t>, KeyHash> failed_;
};

}  // namespace

Bounded<bool> ifs_exact(const System& sys, StateView s, const ActionSet& B, std::size_t limit) {
    GlobalState root(s.begin(), s.end());
    const ActionSet en0 = enabled(sys, root);
    if (en0.empty()) return true;
    IfsSearch search(sys, B, limit, en0);
    const int r = search.run(root, sys.no_processes());
    if (r < 0) return Bounded<bool>::exceeded(limit);
    return r == 1;
}

}  // namespace stpor
