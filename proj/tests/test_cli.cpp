#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <zlib.h>

#include "temp_dir.hpp"

namespace {

struct Outcome {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded; prefix may set environment variables.
Outcome cli(const std::string& args, const std::string& prefix = "") {
    const std::string command = prefix + " '" TREEPOLY_CLI_PATH "' " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    Outcome result;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) result.out.append(buf, got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string write_edges(const TempDir& dir, const std::string& name, const std::string& text) {
    const auto path = dir / name;
    std::ofstream(path) << text;
    return path.string();
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("poly on small trees") {
    TempDir dir;
    const auto p2 = cli("poly " + write_edges(dir, "p2.txt", "1 2\n"));
    CHECK(p2.exit_code == 0);
    CHECK(contains(p2.out, "uid: 1100\n"));
    CHECK(contains(p2.out, "coeffs: 1,2\n"));
    CHECK(contains(p2.out, "monotonic: ascending\n"));

    const auto p7 = cli("poly " + write_edges(dir, "p7.txt", "1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n"));
    CHECK(contains(p7.out, "coeffs: 1,7,15,10,1\n"));
    CHECK(contains(p7.out, "argmax: 2\n"));

    const auto star = cli("poly " + write_edges(dir, "k13.txt", "1 2\n1 3\n1 4\n"));
    CHECK(contains(star.out, "uid: 11010100\n"));
    CHECK(contains(star.out, "coeffs: 1,4,3,1\n"));
    CHECK(contains(star.out, "degrees: 3,1,1,1\n"));

    const auto relabeled = cli("canon " + write_edges(dir, "k13b.txt", "4 3\n2 4\n4 1\n"));
    CHECK(relabeled.exit_code == 0);
    CHECK(relabeled.out == "11010100\n");
}

TEST_CASE("bad input exits with a usage error") {
    TempDir dir;
    CHECK(cli("poly " + write_edges(dir, "cycle.txt", "1 2\n2 3\n3 1\n")).exit_code == 2);
    CHECK(cli("poly " + write_edges(dir, "split.txt", "1 2\n3 4\n")).exit_code == 2);
    CHECK(cli("poly " + (dir / "missing.txt").string()).exit_code == 3);
    CHECK(cli("frobnicate").exit_code == 2);
    CHECK(cli("").exit_code == 2);
    CHECK(cli("enumerate --max-n 4", "env -u TREEPOLY_STORE").exit_code == 2);
    CHECK(cli("enumerate --max-n 23 --store " + dir.path().string()).exit_code == 2);
}

TEST_CASE("enumerate, rerun, verify and analyze") {
    TempDir dir;
    const std::string store = " --store " + dir.path().string();

    const auto first = cli("enumerate --max-n 8 --workers 2" + store);
    CHECK(first.exit_code == 0);
    CHECK(contains(first.out, "trees n=1..8: 48 (+P0 = 49)\n"));
    CHECK_FALSE(contains(first.out, "all levels sealed"));

    const auto again = cli("enumerate --max-n 8", "TREEPOLY_STORE='" + dir.path().string() + "'");
    CHECK(again.exit_code == 0);
    CHECK(contains(again.out, "all levels sealed\n"));
    CHECK(contains(again.out, "new records: 0\n"));

    const auto verify = cli("verify" + store);
    CHECK(verify.exit_code == 0);
    CHECK(contains(verify.out, "non-unimodal: 0, non-log-concave: 0\n"));
    CHECK(contains(verify.out, "discrepancies: 0\n"));

    const auto analyze = cli("analyze --report special" + store);
    CHECK(analyze.exit_code == 0);
    CHECK(contains(analyze.out, "fibonacci=4"));
    CHECK(std::filesystem::exists(dir / "reports/special.psv"));

    const auto hist = cli("analyze --report histogram --only-n 5" + store);
    CHECK(contains(hist.out, "histogram (n = 5..5)"));

    CHECK(cli("analyze --report nope" + store).exit_code == 2);
    CHECK(cli("analyze --report flags --max-n 9" + store).exit_code == 3);
}

TEST_CASE("verify reports a tampered store") {
    TempDir dir;
    const std::string store = " --store " + dir.path().string();
    REQUIRE(cli("enumerate --max-n 6" + store).exit_code == 0);

    // Change one coefficient without fixing the manifest checksum.
    const auto level = dir / "level_6.psv";
    std::string text;
    {
        std::ifstream in(level);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    const auto at = text.find("|1,6,");
    REQUIRE(at != std::string::npos);
    text[at + 4] = '7';
    std::ofstream(level, std::ios::trunc) << text;

    const auto verify = cli("verify" + store);
    CHECK(verify.exit_code != 0);
    CHECK(verify.exit_code == 3);
}

TEST_CASE("verify names a record whose checksum was forged") {
    TempDir dir;
    const std::string store = " --store " + dir.path().string();
    REQUIRE(cli("enumerate --max-n 6" + store).exit_code == 0);

    const auto level = dir / "level_6.psv";
    std::string text;
    {
        std::ifstream in(level);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    const auto at = text.find("|1,6,");
    REQUIRE(at != std::string::npos);
    const auto line_start = text.rfind('\n', at) == std::string::npos ? 0 : text.rfind('\n', at) + 1;
    const std::string uid = text.substr(line_start, text.find('|', line_start) - line_start);
    text[at + 5] = text[at + 5] == '9' ? '8' : static_cast<char>(text[at + 5] + 1);
    std::ofstream(level, std::ios::trunc | std::ios::binary) << text;

    const auto crc = crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(text.data()),
                           static_cast<uInt>(text.size()));
    char checksum[32];
    std::snprintf(checksum, sizeof checksum, "crc32:%08lx", static_cast<unsigned long>(crc));
    const auto manifest_path = dir / "level_6.manifest";
    std::string manifest;
    {
        std::ifstream in(manifest_path);
        manifest.assign(std::istreambuf_iterator<char>(in), {});
    }
    const auto key = manifest.find("checksum=");
    REQUIRE(key != std::string::npos);
    manifest.replace(key, manifest.find('\n', key) - key, std::string("checksum=") + checksum);
    std::ofstream(manifest_path, std::ios::trunc | std::ios::binary) << manifest;

    const auto verify = cli("verify" + store);
    CHECK(verify.exit_code == 1);
    CHECK(contains(verify.out, "discrepancies: 1\n"));
    CHECK(contains(verify.out, uid + "|6|"));
}
