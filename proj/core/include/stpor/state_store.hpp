#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "stpor/system.hpp"

namespace stpor {

using StateId = std::uint32_t;

/// Interns fixed-width global states. Each distinct tuple is stored once in a
/// chunked arena and gets a dense id; lookup is open addressing on a 32-bit hash.
class StateStore {
public:
    explicit StateStore(std::size_t width);

    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return count_; }

    /// Returns (id, inserted).
    std::pair<StateId, bool> intern(const LocalState* s);
    std::pair<StateId, bool> intern(const GlobalState& s) { return intern(s.data()); }
    /// kNoStateId if absent.
    StateId find(const LocalState* s) const;
    StateId find(const GlobalState& s) const { return find(s.data()); }

    const LocalState* data(StateId id) const noexcept {
        return chunks_[id >> kChunkBits].get() + static_cast<std::size_t>(id & kChunkMask) * width_;
    }
    GlobalState state(StateId id) const {
        const LocalState* p = data(id);
        return GlobalState(p, p + width_);
    }

    static constexpr StateId kNoStateId = 0xFFFFFFFFu;

private:
    static constexpr unsigned kChunkBits = 16;
    static constexpr StateId kChunkMask = (StateId{1} << kChunkBits) - 1;

    std::uint32_t hash_of(const LocalState* s) const noexcept;
    bool equal(StateId id, const LocalState* s) const noexcept;
    void grow();

    std::size_t width_;
    std::size_t count_ = 0;
    std::vector<std::unique_ptr<LocalState[]>> chunks_;
    std::vector<std::uint32_t> hashes_;
    std::vector<StateId> slots_;  // kNoStateId marks empty
};

}  // namespace stpor
