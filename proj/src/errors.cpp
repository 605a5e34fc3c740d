#include "ideallab/errors.hpp"

namespace ideallab {

const char* error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidParams: return "InvalidParams";
        case ErrorKind::UnknownSubcommand: return "UnknownSubcommand";
        case ErrorKind::WindowOverflow: return "WindowOverflow";
        case ErrorKind::NotHereditary: return "NotHereditary";
        case ErrorKind::NotACovering: return "NotACovering";
        case ErrorKind::Unbounded: return "Unbounded";
        case ErrorKind::NegativeFunction: return "NegativeFunction";
        case ErrorKind::PrefixTooShort: return "PrefixTooShort";
        case ErrorKind::OrdinalOverflow: return "OrdinalOverflow";
        case ErrorKind::NotInFront: return "NotInFront";
        case ErrorKind::InsufficientDensity: return "InsufficientDensity";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::NotComparability: return "NotComparability";
        case ErrorKind::NotIndependentInput: return "NotIndependentInput";
        case ErrorKind::DegenerateInterval: return "DegenerateInterval";
        case ErrorKind::EmptySpace: return "EmptySpace";
        case ErrorKind::NotHomogeneous: return "NotHomogeneous";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    }
    return "Error";
}

Budget::Budget(std::uint64_t max_nodes, std::int64_t max_ms)
    : max_nodes_(max_nodes), max_ms_(max_ms) {}

bool Budget::exhausted() const {
    if (max_nodes_ != 0 && nodes_ >= max_nodes_) return true;
    if (max_ms_ != 0) {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start_);
        if (elapsed.count() >= max_ms_) return true;
    }
    return false;
}

void Budget::tick() {
    ++nodes_;
    if (max_nodes_ != 0 && nodes_ > max_nodes_)
        throw Error(ErrorKind::BudgetExceeded, "node limit " + std::to_string(max_nodes_));
    if (max_ms_ != 0 && (nodes_ & 0xfff) == 0) {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start_);
        if (elapsed.count() >= max_ms_)
            throw Error(ErrorKind::BudgetExceeded, "time limit " + std::to_string(max_ms_) + " ms");
    }
}

}  // namespace ideallab
