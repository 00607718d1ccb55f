#include "stpor/state_store.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace stpor {

StateStore::StateStore(std::size_t width) : width_(width), slots_(1024, kNoStateId) {}

std::uint32_t StateStore::hash_of(const LocalState* s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::size_t i = 0; i < width_; ++i) {
        h ^= s[i];
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 32;
    }
    return static_cast<std::uint32_t>(h ^ (h >> 29));
}

bool StateStore::equal(StateId id, const LocalState* s) const noexcept {
    return std::memcmp(data(id), s, width_ * sizeof(LocalState)) == 0;
}

StateId StateStore::find(const LocalState* s) const {
    const std::uint32_t h = hash_of(s);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
        const StateId id = slots_[i];
        if (id == kNoStateId) return kNoStateId;
        if (hashes_[id] == h && equal(id, s)) return id;
    }
}

void StateStore::grow() {
    std::vector<StateId> fresh(slots_.size() * 2, kNoStateId);
    const std::size_t mask = fresh.size() - 1;
    for (StateId id = 0; id < count_; ++id) {
        std::size_t i = hashes_[id] & mask;
        while (fresh[i] != kNoStateId) i = (i + 1) & mask;
        fresh[i] = id;
    }
    slots_.swap(fresh);
}

std::pair<StateId, bool> StateStore::intern(const LocalState* s) {
    const std::uint32_t h = hash_of(s);
    std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    for (;; i = (i + 1) & mask) {
        const StateId id = slots_[i];
        if (id == kNoStateId) break;
        if (hashes_[id] == h && equal(id, s)) return {id, false};
    }
    if (count_ >= kNoStateId - 1) throw std::length_error("state store full");
    const auto id = static_cast<StateId>(count_);
    if ((id >> kChunkBits) >= chunks_.size())
        chunks_.emplace_back(new LocalState[(std::size_t{1} << kChunkBits) * std::max<std::size_t>(width_, 1)]);
    std::memcpy(chunks_[id >> kChunkBits].get() + static_cast<std::size_t>(id & kChunkMask) * width_, s,
                width_ * sizeof(LocalState));
    hashes_.push_back(h);
    ++count_;
    if ((count_ + 1) * 10 > slots_.size() * 7) {
        grow();
    } else {
        slots_[i] = id;
    }
    return {id, true};
}

}  // namespace stpor
