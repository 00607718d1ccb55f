#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace stpor {

class LimitExceededError : public std::runtime_error {
public:
    explicit LimitExceededError(std::size_t limit)
        : std::runtime_error("enumeration limit exceeded (" + std::to_string(limit) + ")"),
          limit_(limit) {}
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

/// Result of a budgeted oracle: either a value or "limit exceeded". The second
/// outcome is deliberately not convertible to the value type.
template <class T>
class Bounded {
public:
    Bounded(T value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
    static Bounded exceeded(std::size_t limit) { return Bounded(limit, 0); }

    bool ok() const noexcept { return value_.has_value(); }
    bool limit_exceeded() const noexcept { return !value_.has_value(); }
    std::size_t limit() const noexcept { return limit_; }

    /// Throws LimitExceededError when the limit was hit.
    const T& value() const {
        if (!value_) throw LimitExceededError(limit_);
        return *value_;
    }
    T& value() {
        if (!value_) throw LimitExceededError(limit_);
        return *value_;
    }

private:
    Bounded(std::size_t limit, int) : limit_(limit) {}
    std::optional<T> value_;
    std::size_t limit_ = 0;
};

}  // namespace stpor
