#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treepoly/poly.hpp"
#include "treepoly/store.hpp"

namespace treepoly {

// Inclusive vertex-count range.
struct LevelRange {
    int min_n = 0;
    int max_n = 0;

    friend bool operator==(const LevelRange&, const LevelRange&) = default;
};

std::string to_string(const LevelRange& r);

// Every query below throws Error(level_unsealed) unless all levels in range
// are sealed.

struct FlagCounts {
    std::uint64_t records = 0;
    std::uint64_t non_unimodal = 0;
    std::uint64_t non_log_concave = 0;
};

FlagCounts verify_flags(const Store& store, LevelRange range);

// argmax cardinality -> number of records.
std::map<std::uint32_t, std::uint64_t> argmax_histogram(const Store& store, LevelRange range);

struct DuplicateGroup {
    Polynomial coeffs;
    std::uint32_t n = 0;
    std::vector<std::string> uids;
    std::vector<std::vector<std::uint32_t>> degree_sequences;
    bool shared_degrees = false;
};

// Groups of two or more records with identical polynomials, largest first.
std::vector<DuplicateGroup> duplicate_groups(const Store& store, LevelRange range);

struct SequenceMember {
    std::string uid;
    std::uint32_t n = 0;
    Polynomial coeffs;
};

struct SpecialSequences {
    std::vector<SequenceMember> ascending;
    std::vector<SequenceMember> descending;
    std::vector<SequenceMember> fibonacci;
    std::vector<SequenceMember> symmetric;
};

SpecialSequences special_sequences(const Store& store, LevelRange range);

struct AuditFinding {
    std::string uid;
    int n = 0;
    std::string problem;
};

struct AuditResult {
    FlagCounts flags;
    std::uint64_t oracle_checked = 0;
    std::vector<AuditFinding> findings;
};

// Recomputes every derived field of every sealed record from its code and
// coefficients, and compares coefficients against subset enumeration for
// n <= oracle_max_n.
AuditResult audit_store(const Store& store, int oracle_max_n);

// Argmax counts reported for trees with up to 20 vertices, empty tree included.
inline constexpr std::uint64_t kReferenceArgmaxCounts[] = {2,      0,      3,     23, 239, 3234,
                                                          58442,  851104, 420209, 12700, 68, 0};

struct Report {
    std::string name;
    LevelRange scope;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
    std::string generated_at;
};

inline constexpr std::string_view kReportNames[] = {"histogram", "duplicates", "special", "flags"};

// Histogram covers the empty tree by default; the others start at n = 1.
LevelRange default_scope(std::string_view report, const Store& store);

Report histogram_report(const Store& store, LevelRange range);
Report duplicates_report(const Store& store, LevelRange range);
Report special_report(const Store& store, LevelRange range);
Report flags_report(const Store& store, LevelRange range);

// name is one of kReportNames or "all"; a missing range uses default_scope.
// Throws Error(unknown_report) otherwise.
std::vector<Report> build_reports(const Store& store, std::string_view name,
                                  std::optional<LevelRange> range);

std::string render_table(const Report& report);
// Header lines start with '#'; generated_at is the only non-deterministic one.
std::string render_machine(const Report& report);
std::filesystem::path write_report(const Store& store, const Report& report);

}  // namespace treepoly
