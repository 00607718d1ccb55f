#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace stpor {

/// Fixed-universe bit set. The universe size is fixed at construction; binary
/// operations require both operands to share it. Iteration is by dense index.
template <class Tag>
class DenseSet {
public:
    using Word = std::uint64_t;
    using Words = boost::container::small_vector<Word, 2>;

    DenseSet() = default;
    explicit DenseSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, Word{0}) {}

    static DenseSet full(std::size_t universe) {
        DenseSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.insert(i);
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }
    const Words& words() const noexcept { return words_; }

    bool contains(std::size_t i) const noexcept {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void insert(std::size_t i) noexcept { words_[i >> 6] |= Word{1} << (i & 63); }
    void erase(std::size_t i) noexcept { words_[i >> 6] &= ~(Word{1} << (i & 63)); }
    void clear() noexcept {
        for (auto& w : words_) w = 0;
    }

    bool empty() const noexcept {
        for (Word w : words_)
            if (w) return false;
        return true;
    }
    std::size_t size() const noexcept {
        std::size_t n = 0;
        for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    DenseSet& operator|=(const DenseSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    DenseSet& operator&=(const DenseSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    DenseSet& operator-=(const DenseSet& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend DenseSet operator|(DenseSet a, const DenseSet& b) { return a |= b; }
    friend DenseSet operator&(DenseSet a, const DenseSet& b) { return a &= b; }
    friend DenseSet operator-(DenseSet a, const DenseSet& b) { return a -= b; }

    bool intersects(const DenseSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    bool subset_of(const DenseSet& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    friend bool operator==(const DenseSet& a, const DenseSet& b) noexcept {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }
    /// Total order for sorting families; compares word vectors.
    friend bool operator<(const DenseSet& a, const DenseSet& b) noexcept {
        return std::lexicographical_compare(a.words_.begin(), a.words_.end(), b.words_.begin(),
                                            b.words_.end());
    }

    /// Calls f(index) for each member in increasing index order.
    template <class F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            Word w = words_[wi];
            while (w) {
                const int bit = std::countr_zero(w);
                f(wi * 64 + static_cast<std::size_t>(bit));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (Word w : words_) {
            h ^= static_cast<std::size_t>(w);
            h *= 0x100000001b3ull;
            h ^= h >> 29;
        }
        return h;
    }

private:
    std::size_t universe_ = 0;
    Words words_;
};

struct ActionTag {};
struct ProcessTag {};
using ActionSet = DenseSet<ActionTag>;
using ProcessSet = DenseSet<ProcessTag>;

struct DenseSetHash {
    template <class Tag>
    std::size_t operator()(const DenseSet<Tag>& s) const noexcept {
        return s.hash();
    }
};

}  // namespace stpor
