#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "treepoly/canon.hpp"
#include "treepoly/indpoly.hpp"
#include "treepoly/store.hpp"
#include "treepoly/tree.hpp"

namespace treepoly {

// t with one new leaf per existing vertex: result[i] hangs the leaf on i.
std::vector<Tree> expand(const Tree& t);

// Record for a tree whose canonical form is already known.
TreeRecord build_record(const Tree& t, const CanonicalForm& form, MemoCache& cache);

struct LevelPlan {
    int n = 0;
    std::optional<std::uint64_t> expected_count;
    std::vector<std::string> parent_codes;  // level n-1, pairwise distinct
};

// Builds and seals level plan.n from its parents. Parents are split into
// `workers` contiguous chunks; children are deduplicated across workers and
// first-seen children are handed to a single writer. Returns the number of
// distinct trees. Throws Error(level_unsealed) if level n-1 is not sealed and
// Error(count_mismatch) if the count disagrees with plan.expected_count.
std::uint64_t enumerate_level(const LevelPlan& plan, Store& store, unsigned workers, MemoCache& cache);

struct LevelProgress {
    int n = 0;
    std::uint64_t distinct = 0;
    double seconds = 0.0;
    bool resumed = false;  // already sealed, skipped
};

struct RunOptions {
    int max_n = 20;
    int hard_cap = 22;
    unsigned workers = 1;
    bool resume = true;
    std::function<void(const LevelProgress&)> progress;
};

struct RunSummary {
    std::uint64_t new_records = 0;
    std::uint64_t total_trees = 0;       // levels 1..max_n
    std::uint64_t total_with_empty = 0;  // plus the empty tree
    std::vector<LevelProgress> levels;
    bool all_sealed_before = false;
};

// Seeds the empty and single-vertex trees, then enumerates levels 2..max_n,
// skipping sealed ones. Rerunning a completed run adds nothing.
RunSummary run(const RunOptions& options, Store& store);

}  // namespace treepoly
