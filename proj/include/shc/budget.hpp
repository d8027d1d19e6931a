#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shc {

/// Resource limits for the untrusted search phases (equivalence backtracking,
/// flip breadth-first search). Checking a certificate never consults these.
struct Budget {
    std::size_t max_nodes = 200'000'000;
    std::size_t max_states = 100'000;
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error("budget exceeded: " + what) {}
};

/// Counts search nodes against a budget.
class NodeCounter {
public:
    explicit NodeCounter(std::size_t limit, const char* what) : limit_(limit), what_(what) {}
    void tick()
    {
        if (++count_ > limit_) throw BudgetExceeded(what_);
    }
    std::size_t count() const { return count_; }

private:
    std::size_t limit_;
    std::size_t count_ = 0;
    const char* what_;
};

}  // namespace shc
