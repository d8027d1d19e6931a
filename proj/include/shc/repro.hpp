#pragma once

// The acceptance suite as a library: each numbered item recomputes its claims
// from the built-in data and reports pass, fail or skip with a timing.

#include "shc/budget.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace shc::repro {

struct Options {
    std::uint64_t seed = 20240611;
    std::size_t max_n = 5;  // items that need a larger rank are skipped
    Budget budget;
};

enum class Status { pass, fail, skip };

struct ItemResult {
    int id = 0;
    std::string title;
    Status status = Status::fail;
    std::vector<std::string> notes;  // failed checks, or the skip reason
    double seconds = 0;
};

inline constexpr int item_count = 8;

ItemResult run_item(int id, const Options& options);
/// Runs every item in order; on_item sees each result as soon as it is ready.
std::vector<ItemResult> run_all(const Options& options, const std::function<void(const ItemResult&)>& on_item = {});

std::string format(const ItemResult& r);
const char* to_string(Status s);

}  // namespace shc::repro
