#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "treepoly/poly.hpp"

namespace treepoly {

inline constexpr int kStoreFormatVersion = 1;

struct TreeRecord {
    std::string uid;
    std::uint32_t n = 0;
    std::vector<std::uint32_t> degrees;
    Polynomial coeffs;
    bool unimodal = true;
    bool log_concave = true;
    bool symmetric = true;
    bool fibonacci = true;
    std::uint32_t argmax = 0;

    friend bool operator==(const TreeRecord&, const TreeRecord&) = default;
};

// Fills every derived field of a record from its code, degrees and polynomial.
TreeRecord make_record(std::string uid, std::vector<std::uint32_t> degrees, Polynomial coeffs);

// Throws Error(invariant_violation) naming the first broken invariant.
void validate_record(const TreeRecord& rec);

// uid|n|degrees|coeffs|unimodal|log_concave|symmetric|fibonacci|argmax
std::string format_record(const TreeRecord& rec);
TreeRecord parse_record(std::string_view line);

struct LevelManifest {
    int n = 0;
    std::uint64_t record_count = 0;
    bool sealed = false;
    std::string checksum;  // "crc32:xxxxxxxx" of the level file

    friend bool operator==(const LevelManifest&, const LevelManifest&) = default;
};

// Level-partitioned, append-only record directory:
//   level_<n>.psv       sealed records sorted by uid
//   level_<n>.psv.tmp   write-ahead file of the open level
//   level_<n>.manifest  record count, sealed flag, checksum
//   meta                format version and max sealed n
// At most one level is open for insertion at a time. Inserts are serialized
// internally; sealed levels are read without locking.
class Store {
public:
    // Creates the directory if needed and validates every sealed level.
    // Throws Error(store_corrupt) on checksum/count/format mismatches.
    explicit Store(std::filesystem::path root);
    ~Store();

    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    const std::filesystem::path& root() const noexcept { return root_; }

    bool is_sealed(int n) const;
    std::optional<LevelManifest> manifest(int n) const;
    std::vector<int> sealed_levels() const;
    // Highest sealed n, or -1.
    int max_sealed() const;

    // Opens level n for insertion, discarding any stale write-ahead file.
    void begin_level(int n);
    bool insert_if_absent(const TreeRecord& rec);
    // Sorts, writes and checksums the open level. A count mismatch against
    // expected throws Error(count_mismatch) and leaves the level open.
    LevelManifest seal_level(int n, std::optional<std::uint64_t> expected = std::nullopt);
    // Drops the open level and its write-ahead file.
    void abandon_level();

    bool contains(std::string_view uid) const;
    std::optional<Polynomial> fetch_polynomial(std::string_view uid) const;
    std::vector<TreeRecord> fetch_level(int n) const;
    // Streams level n in file order without materializing it.
    void scan_level(int n, const std::function<void(const TreeRecord&)>& visit) const;

    // Removes every level file, manifest and the meta file.
    void clear();

    std::filesystem::path level_path(int n) const;
    std::filesystem::path manifest_path(int n) const;
    std::filesystem::path reports_dir() const { return root_ / "reports"; }

private:
    void load();
    void write_meta() const;
    const std::unordered_map<std::string, Polynomial>& sealed_index(int n) const;

    std::filesystem::path root_;
    std::map<int, LevelManifest> sealed_;

    mutable std::mutex open_mutex_;
    int open_n_ = -1;
    std::ofstream wal_;
    std::unordered_map<std::string, std::size_t> open_index_;
    std::vector<TreeRecord> open_records_;

    mutable std::mutex index_mutex_;
    mutable std::map<int, std::unordered_map<std::string, Polynomial>> indexes_;
};

}  // namespace treepoly
