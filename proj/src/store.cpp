#include "treepoly/store.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <regex>
#include <sstream>

#include <unistd.h>

#include "treepoly/canon.hpp"
#include "treepoly/counts.hpp"
#include "treepoly/error.hpp"

namespace fs = std::filesystem;

namespace treepoly {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = text.find(sep);
        parts.push_back(text.substr(0, pos));
        if (pos == std::string_view::npos) break;
        text.remove_prefix(pos + 1);
    }
    return parts;
}

template <typename T>
T parse_number(std::string_view text, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorCode::malformed_input,
                    std::string("bad ") + what + " '" + std::string(text) + "'");
    }
    return value;
}

bool parse_flag(std::string_view text, const char* what) {
    if (text == "1") return true;
    if (text == "0") return false;
    throw Error(ErrorCode::malformed_input, std::string("bad flag ") + what + " '" + std::string(text) + "'");
}

std::string checksum_text(uLong crc) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08lx", crc);
    return std::string("crc32:") + buf;
}

struct FileDigest {
    std::string checksum;
    std::uint64_t lines = 0;
};

FileDigest digest_file(const fs::path& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw Error(ErrorCode::store_corrupt, "missing level file " + path.string());
    uLong crc = crc32(0L, Z_NULL, 0);
    std::vector<unsigned char> buf(1 << 20);
    FileDigest digest;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0) {
        crc = crc32(crc, buf.data(), static_cast<uInt>(got));
        digest.lines += static_cast<std::uint64_t>(std::count(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(got), '\n'));
    }
    const bool failed = std::ferror(f) != 0;
    std::fclose(f);
    if (failed) throw Error(ErrorCode::io, "read failed: " + path.string());
    digest.checksum = checksum_text(crc);
    return digest;
}

// Writes via a sibling temp file, fsyncs, then renames over the target.
void write_file_atomic(const fs::path& target, std::string_view content) {
    const fs::path tmp = target.string() + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw Error(ErrorCode::io, "cannot write " + tmp.string());
    const bool ok = std::fwrite(content.data(), 1, content.size(), f) == content.size() &&
                    std::fflush(f) == 0 && ::fsync(fileno(f)) == 0;
    std::fclose(f);
    if (!ok) throw Error(ErrorCode::io, "write failed: " + tmp.string());
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Error(ErrorCode::io, "rename failed: " + target.string() + ": " + ec.message());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> parse_key_values(const std::string& text, const fs::path& origin) {
    std::map<std::string, std::string> kv;
    for (auto line : split(text, '\n')) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::store_corrupt, "malformed line in " + origin.string());
        }
        kv.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
    }
    return kv;
}

std::string format_manifest(const LevelManifest& m) {
    return "n=" + std::to_string(m.n) + "\nrecord_count=" + std::to_string(m.record_count) +
           "\nsealed=" + (m.sealed ? "1" : "0") + "\nchecksum=" + m.checksum + "\n";
}

std::string join_numbers(const auto& values) {
    std::string out;
    for (auto v : values) {
        if (!out.empty()) out.push_back(',');
        out += std::to_string(v);
    }
    return out;
}

}  // namespace

TreeRecord make_record(std::string uid, std::vector<std::uint32_t> degrees, Polynomial coeffs) {
    TreeRecord rec;
    rec.n = static_cast<std::uint32_t>(uid.size() / 2);
    rec.uid = std::move(uid);
    rec.degrees = std::move(degrees);
    rec.unimodal = is_unimodal(coeffs);
    rec.log_concave = is_log_concave(coeffs);
    rec.symmetric = is_symmetric(coeffs);
    rec.fibonacci = is_fibonacci(coeffs);
    rec.argmax = static_cast<std::uint32_t>(argmax_lowest(coeffs));
    rec.coeffs = std::move(coeffs);
    return rec;
}

void validate_record(const TreeRecord& rec) {
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::invariant_violation, "record '" + rec.uid + "': " + why);
    };
    if (!is_well_formed_code(rec.uid)) fail("uid is not a balanced code");
    if (rec.uid.size() != 2 * std::size_t{rec.n}) fail("uid length is not 2n");
    const auto c = rec.coeffs.coeffs();
    if (rec.n == 0) {
        if (c.size() != 1) fail("empty tree must have polynomial 1");
        if (!rec.degrees.empty()) fail("empty tree has no degrees");
    } else {
        if (c.size() < 2 || c[1] != rec.n) fail("coefficient of x must equal n");
        if (rec.degrees.size() != rec.n) fail("degree list length differs from n");
        if (!std::is_sorted(rec.degrees.begin(), rec.degrees.end(), std::greater<>())) {
            fail("degrees not sorted descending");
        }
        const auto sum = std::accumulate(rec.degrees.begin(), rec.degrees.end(), std::uint64_t{0});
        if (sum != 2 * (std::uint64_t{rec.n} - 1)) fail("degrees do not sum to 2(n-1)");
    }
    if (rec.unimodal != is_unimodal(rec.coeffs)) fail("unimodal flag inconsistent");
    if (rec.log_concave != is_log_concave(rec.coeffs)) fail("log-concave flag inconsistent");
    if (rec.symmetric != is_symmetric(rec.coeffs)) fail("symmetric flag inconsistent");
    if (rec.fibonacci != is_fibonacci(rec.coeffs)) fail("fibonacci flag inconsistent");
    if (rec.argmax != argmax_lowest(rec.coeffs)) fail("argmax inconsistent");
}

std::string format_record(const TreeRecord& rec) {
    std::string out;
    out.reserve(rec.uid.size() + 96);
    out += rec.uid;
    out += '|';
    out += std::to_string(rec.n);
    out += '|';
    out += join_numbers(rec.degrees);
    out += '|';
    out += format_coeffs(rec.coeffs);
    for (bool flag : {rec.unimodal, rec.log_concave, rec.symmetric, rec.fibonacci}) {
        out += flag ? "|1" : "|0";
    }
    out += '|';
    out += std::to_string(rec.argmax);
    return out;
}

TreeRecord parse_record(std::string_view line) {
    const auto fields = split(line, '|');
    if (fields.size() != 9) {
        throw Error(ErrorCode::malformed_input,
                    "record has " + std::to_string(fields.size()) + " fields, expected 9");
    }
    TreeRecord rec;
    rec.uid = std::string(fields[0]);
    rec.n = parse_number<std::uint32_t>(fields[1], "vertex count");
    if (!fields[2].empty()) {
        for (auto d : split(fields[2], ',')) rec.degrees.push_back(parse_number<std::uint32_t>(d, "degree"));
    }
    rec.coeffs = parse_coeffs(fields[3]);
    rec.unimodal = parse_flag(fields[4], "unimodal");
    rec.log_concave = parse_flag(fields[5], "log_concave");
    rec.symmetric = parse_flag(fields[6], "symmetric");
    rec.fibonacci = parse_flag(fields[7], "fibonacci");
    rec.argmax = parse_number<std::uint32_t>(fields[8], "argmax");
    return rec;
}

Store::Store(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec) throw Error(ErrorCode::io, "cannot create store " + root_.string() + ": " + ec.message());
    load();
}

Store::~Store() {
    std::lock_guard lock(open_mutex_);
    if (wal_.is_open()) wal_.close();
}

fs::path Store::level_path(int n) const { return root_ / ("level_" + std::to_string(n) + ".psv"); }

fs::path Store::manifest_path(int n) const {
    return root_ / ("level_" + std::to_string(n) + ".manifest");
}

void Store::load() {
    const fs::path meta = root_ / "meta";
    if (fs::exists(meta)) {
        const auto kv = parse_key_values(read_file(meta), meta);
        const auto it = kv.find("format_version");
        if (it == kv.end() || it->second != std::to_string(kStoreFormatVersion)) {
            throw Error(ErrorCode::store_corrupt, "unsupported store format in " + meta.string());
        }
    }

    static const std::regex manifest_name(R"(level_(\d+)\.manifest)");
    for (const auto& entry : fs::directory_iterator(root_)) {
        const auto name = entry.path().filename().string();
        std::smatch m;
        if (!std::regex_match(name, m, manifest_name)) continue;
        const int n = std::stoi(m[1].str());
        const auto kv = parse_key_values(read_file(entry.path()), entry.path());
        auto get = [&](const char* key) {
            const auto it = kv.find(key);
            if (it == kv.end()) throw Error(ErrorCode::store_corrupt, name + " lacks " + key);
            return it->second;
        };
        LevelManifest manifest;
        try {
            manifest.n = std::stoi(get("n"));
            manifest.record_count = std::stoull(get("record_count"));
            manifest.sealed = get("sealed") == "1";
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::store_corrupt, "malformed manifest " + name);
        }
        manifest.checksum = get("checksum");
        if (manifest.n != n) throw Error(ErrorCode::store_corrupt, name + " names the wrong level");
        if (!manifest.sealed) continue;

        const auto digest = digest_file(level_path(n));
        if (digest.checksum != manifest.checksum) {
            throw Error(ErrorCode::store_corrupt, "checksum mismatch in level " + std::to_string(n) +
                                                      ": manifest " + manifest.checksum + ", file " +
                                                      digest.checksum);
        }
        if (digest.lines != manifest.record_count) {
            throw Error(ErrorCode::store_corrupt, "record count mismatch in level " + std::to_string(n));
        }
        if (auto expected = known_tree_count(n); expected && *expected != manifest.record_count) {
            throw Error(ErrorCode::store_corrupt, "level " + std::to_string(n) + " sealed with " +
                                                      std::to_string(manifest.record_count) +
                                                      " records, expected " + std::to_string(*expected));
        }
        sealed_.emplace(n, manifest);
    }
    write_meta();
}

void Store::write_meta() const {
    write_file_atomic(root_ / "meta", "format_version=" + std::to_string(kStoreFormatVersion) +
                                          "\nmax_sealed_n=" + std::to_string(max_sealed()) + "\n");
}

bool Store::is_sealed(int n) const { return sealed_.count(n) != 0; }

std::optional<LevelManifest> Store::manifest(int n) const {
    if (auto it = sealed_.find(n); it != sealed_.end()) return it->second;
    return std::nullopt;
}

std::vector<int> Store::sealed_levels() const {
    std::vector<int> out;
    for (const auto& [n, _] : sealed_) out.push_back(n);
    return out;
}

int Store::max_sealed() const { return sealed_.empty() ? -1 : sealed_.rbegin()->first; }

void Store::begin_level(int n) {
    std::lock_guard lock(open_mutex_);
    if (n < 0) throw Error(ErrorCode::invalid_argument, "negative level");
    if (is_sealed(n)) throw Error(ErrorCode::level_sealed, "level " + std::to_string(n) + " is sealed");
    if (open_n_ == n) return;
    if (open_n_ >= 0) {
        throw Error(ErrorCode::invalid_argument,
                    "level " + std::to_string(open_n_) + " is still open");
    }
    const fs::path wal = level_path(n).string() + ".tmp";
    std::error_code ec;
    fs::remove(level_path(n), ec);
    fs::remove(manifest_path(n), ec);
    wal_.open(wal, std::ios::binary | std::ios::trunc);
    if (!wal_) throw Error(ErrorCode::io, "cannot open " + wal.string());
    open_n_ = n;
    open_index_.clear();
    open_records_.clear();
}

bool Store::insert_if_absent(const TreeRecord& rec) {
    validate_record(rec);
    const int n = static_cast<int>(rec.n);
    if (is_sealed(n)) throw Error(ErrorCode::level_sealed, "level " + std::to_string(n) + " is sealed");
    {
        std::lock_guard lock(open_mutex_);
        if (open_n_ == n && open_index_.count(rec.uid)) return false;
    }
    begin_level(n);
    std::lock_guard lock(open_mutex_);
    const auto [it, inserted] = open_index_.try_emplace(rec.uid, open_records_.size());
    if (!inserted) return false;
    open_records_.push_back(rec);
    wal_ << format_record(rec) << '\n';
    if (!wal_) throw Error(ErrorCode::io, "write-ahead append failed for level " + std::to_string(n));
    return true;
}

LevelManifest Store::seal_level(int n, std::optional<std::uint64_t> expected) {
    std::lock_guard lock(open_mutex_);
    if (is_sealed(n)) throw Error(ErrorCode::level_sealed, "level " + std::to_string(n) + " is sealed");
    if (open_n_ != n) {
        // Sealing a level nobody inserted into produces an empty level.
        if (open_n_ >= 0) {
            throw Error(ErrorCode::invalid_argument, "level " + std::to_string(open_n_) + " is open");
        }
        open_index_.clear();
        open_records_.clear();
    }
    if (expected && *expected != open_records_.size()) {
        throw Error(ErrorCode::count_mismatch,
                    "level " + std::to_string(n) + " has " + std::to_string(open_records_.size()) +
                        " distinct trees, expected " + std::to_string(*expected));
    }

    std::sort(open_records_.begin(), open_records_.end(),
              [](const TreeRecord& a, const TreeRecord& b) { return code_compare(a.uid, b.uid) < 0; });
    std::string content;
    for (const auto& rec : open_records_) {
        content += format_record(rec);
        content += '\n';
    }
    if (wal_.is_open()) wal_.close();
    // The sorted image replaces the write-ahead file, then is promoted.
    write_file_atomic(level_path(n), content);

    LevelManifest manifest{n, open_records_.size(), true, digest_file(level_path(n)).checksum};
    write_file_atomic(manifest_path(n), format_manifest(manifest));
    sealed_.emplace(n, manifest);
    open_n_ = -1;
    open_index_.clear();
    open_records_.clear();
    write_meta();
    return manifest;
}

void Store::abandon_level() {
    std::lock_guard lock(open_mutex_);
    if (open_n_ < 0) return;
    if (wal_.is_open()) wal_.close();
    std::error_code ec;
    fs::remove(level_path(open_n_).string() + ".tmp", ec);
    open_n_ = -1;
    open_index_.clear();
    open_records_.clear();
}

bool Store::contains(std::string_view uid) const { return fetch_polynomial(uid).has_value(); }

const std::unordered_map<std::string, Polynomial>& Store::sealed_index(int n) const {
    std::lock_guard lock(index_mutex_);
    if (auto it = indexes_.find(n); it != indexes_.end()) return it->second;
    std::unordered_map<std::string, Polynomial> index;
    scan_level(n, [&](const TreeRecord& rec) { index.emplace(rec.uid, rec.coeffs); });
    return indexes_.emplace(n, std::move(index)).first->second;
}

std::optional<Polynomial> Store::fetch_polynomial(std::string_view uid) const {
    if (uid.size() % 2 != 0) return std::nullopt;
    const int n = static_cast<int>(uid.size() / 2);
    if (is_sealed(n)) {
        const auto& index = sealed_index(n);
        if (auto it = index.find(std::string(uid)); it != index.end()) return it->second;
        return std::nullopt;
    }
    std::lock_guard lock(open_mutex_);
    if (open_n_ == n) {
        if (auto it = open_index_.find(std::string(uid)); it != open_index_.end()) {
            return open_records_[it->second].coeffs;
        }
    }
    return std::nullopt;
}

void Store::scan_level(int n, const std::function<void(const TreeRecord&)>& visit) const {
    if (!is_sealed(n)) {
        std::vector<TreeRecord> copy;
        {
            std::lock_guard lock(open_mutex_);
            if (open_n_ == n) copy = open_records_;
        }
        for (const auto& rec : copy) visit(rec);
        return;
    }
    std::ifstream in(level_path(n), std::ios::binary);
    if (!in) throw Error(ErrorCode::store_corrupt, "cannot open " + level_path(n).string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        TreeRecord rec;
        try {
            rec = parse_record(line);
        } catch (const Error& e) {
            throw Error(ErrorCode::store_corrupt, level_path(n).string() + ":" +
                                                      std::to_string(line_no) + ": " + e.what());
        }
        visit(rec);
    }
}

std::vector<TreeRecord> Store::fetch_level(int n) const {
    std::vector<TreeRecord> out;
    if (auto m = manifest(n)) out.reserve(m->record_count);
    scan_level(n, [&](const TreeRecord& rec) { out.push_back(rec); });
    return out;
}

void Store::clear() {
    abandon_level();
    static const std::regex level_file(R"(level_\d+\.(psv|manifest)(\.tmp)?|meta(\.tmp)?)");
    std::vector<fs::path> doomed;
    for (const auto& entry : fs::directory_iterator(root_)) {
        if (std::regex_match(entry.path().filename().string(), level_file)) doomed.push_back(entry.path());
    }
    for (const auto& p : doomed) fs::remove(p);
    sealed_.clear();
    {
        std::lock_guard lock(index_mutex_);
        indexes_.clear();
    }
    write_meta();
}

}  // namespace treepoly
