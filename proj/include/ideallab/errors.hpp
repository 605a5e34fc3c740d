#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ideallab {

enum class ErrorKind {
    InvalidParams,
    UnknownSubcommand,
    WindowOverflow,
    NotHereditary,
    NotACovering,
    Unbounded,
    NegativeFunction,
    PrefixTooShort,
    OrdinalOverflow,
    NotInFront,
    InsufficientDensity,
    Overflow,
    NotComparability,
    NotIndependentInput,
    DegenerateInterval,
    EmptySpace,
    NotHomogeneous,
    BudgetExceeded,
};

const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Node/time limit shared by the exhaustive searches. Copying a Budget copies
// its counters, so each worker gets its own.
class Budget {
public:
    Budget() = default;
    Budget(std::uint64_t max_nodes, std::int64_t max_ms);

    static Budget unlimited() { return Budget(); }

    // Counts one node; throws BudgetExceeded once a limit is hit.
    void tick();
    bool exhausted() const;
    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t max_nodes() const { return max_nodes_; }

private:
    std::uint64_t nodes_ = 0;
    std::uint64_t max_nodes_ = 0;  // 0 = no node limit
    std::int64_t max_ms_ = 0;      // 0 = no time limit
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace ideallab
