#include <doctest.h>

#include <algorithm>

#include "temp_dir.hpp"
#include "treepoly/analysis.hpp"
#include "treepoly/enumerate.hpp"
#include "treepoly/error.hpp"

using namespace treepoly;

namespace {

// One store through n = 12 shared by the read-only cases.
Store& small_corpus() {
    static TempDir dir("treepoly-analysis");
    static Store store(dir.path());
    static const bool built = [] {
        RunOptions o;
        o.max_n = 12;
        run(o, store);
        return true;
    }();
    (void)built;
    return store;
}

std::string without_timestamp(std::string text) {
    const auto at = text.find("# generated_at=");
    return text.erase(at, text.find('\n', at) - at);
}

}  // namespace

TEST_CASE("verify_flags over small trees") {
    const auto counts = verify_flags(small_corpus(), {0, 5});
    CHECK(counts.records == 1 + 1 + 1 + 1 + 2 + 3);
    CHECK(counts.non_unimodal == 0);
    CHECK(counts.non_log_concave == 0);
    CHECK(verify_flags(small_corpus(), {1, 12}).non_log_concave == 0);
}

TEST_CASE("verify_flags counts an injected counterexample") {
    TempDir dir;
    Store store(dir.path());
    // Star on 33 vertices carrying a polynomial that is neither unimodal nor
    // log-concave. Structurally valid, numerically false.
    std::string uid = "1";
    for (int i = 0; i < 32; ++i) uid += "10";
    uid += "0";
    std::vector<std::uint32_t> degrees(33, 1);
    degrees[0] = 32;
    store.insert_if_absent(make_record(uid, degrees, Polynomial{1, 33, 24, 32, 16}));
    store.seal_level(33);
    const auto counts = verify_flags(store, {33, 33});
    CHECK(counts.non_unimodal == 1);
    CHECK(counts.non_log_concave == 1);
}

TEST_CASE("queries refuse unsealed levels") {
    try {
        verify_flags(small_corpus(), {10, 13});
        FAIL("expected level_unsealed");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::level_unsealed);
    }
    CHECK_THROWS_AS(argmax_histogram(small_corpus(), {0, 21}), Error);
    CHECK_THROWS_AS(duplicate_groups(small_corpus(), {5, 4}), Error);
}

TEST_CASE("argmax histogram") {
    const auto tiny = argmax_histogram(small_corpus(), {0, 3});
    CHECK(tiny.at(0) == 2);
    CHECK(tiny.at(1) == 2);

    // Trees on five vertices all peak at cardinality 2.
    CHECK(argmax_histogram(small_corpus(), {5, 5}) == std::map<std::uint32_t, std::uint64_t>{{2, 3}});

    const auto full = argmax_histogram(small_corpus(), {0, 12});
    std::uint64_t total = 0;
    for (const auto& [_, c] : full) total += c;
    CHECK(total == 988);
}

TEST_CASE("duplicate groups") {
    const auto nine = duplicate_groups(small_corpus(), {9, 9});
    const auto g9 = std::find_if(nine.begin(), nine.end(), [](const DuplicateGroup& g) {
        return g.coeffs == Polynomial{1, 9, 28, 37, 21, 4};
    });
    REQUIRE(g9 != nine.end());
    CHECK(g9->uids.size() >= 2);
    CHECK(g9->shared_degrees);
    CHECK(g9->degree_sequences.front() == std::vector<std::uint32_t>{3, 3, 2, 2, 2, 1, 1, 1, 1});

    const auto eight = duplicate_groups(small_corpus(), {8, 8});
    const auto g8 = std::find_if(eight.begin(), eight.end(), [](const DuplicateGroup& g) {
        return g.coeffs == Polynomial{1, 8, 21, 23, 11, 2};
    });
    REQUIRE(g8 != eight.end());
    CHECK_FALSE(g8->shared_degrees);
    const auto& ds = g8->degree_sequences;
    CHECK(std::count(ds.begin(), ds.end(), std::vector<std::uint32_t>{4, 2, 2, 2, 1, 1, 1, 1}) >= 1);
    CHECK(std::count(ds.begin(), ds.end(), std::vector<std::uint32_t>{3, 3, 3, 1, 1, 1, 1, 1}) >= 1);

    // Equal polynomials force equal vertex counts, so grouping across a range
    // never merges levels.
    const auto all = duplicate_groups(small_corpus(), {1, 12});
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].uids.size() >= all[i].uids.size());
    for (const auto& g : all) CHECK(g.coeffs[1] == g.n);
}

TEST_CASE("special sequences") {
    const auto s = special_sequences(small_corpus(), {1, 12});
    std::vector<std::string> ascending;
    for (const auto& m : s.ascending) ascending.push_back(m.uid);
    CHECK(ascending == std::vector<std::string>{"10", "1100"});
    CHECK(s.descending.empty());
    std::vector<std::uint32_t> fib_sizes;
    for (const auto& m : s.fibonacci) fib_sizes.push_back(m.n);
    CHECK(fib_sizes == std::vector<std::uint32_t>{1, 2, 3, 8});
    CHECK(std::any_of(s.symmetric.begin(), s.symmetric.end(),
                      [](const SequenceMember& m) { return m.coeffs == Polynomial{1, 6, 10, 6, 1}; }));

    const auto with_empty = special_sequences(small_corpus(), {0, 12});
    CHECK(with_empty.ascending.size() == 3);
    CHECK(with_empty.ascending.front().uid.empty());
}

TEST_CASE("audit of a clean store") {
    const auto result = audit_store(small_corpus(), 12);
    CHECK(result.findings.empty());
    CHECK(result.oracle_checked == 987);
    CHECK(result.flags.records == 988);
}

TEST_CASE("audit names a record with wrong coefficients") {
    TempDir dir;
    Store store(dir.path());
    RunOptions o;
    o.max_n = 2;
    run(o, store);
    // P3 stored with a consistent-looking but wrong polynomial.
    store.insert_if_absent(make_record("110100", {2, 1, 1}, Polynomial{1, 3, 2}));
    store.seal_level(3, 1);
    const auto result = audit_store(store, 12);
    REQUIRE(result.findings.size() == 1);
    CHECK(result.findings[0].uid == "110100");
    CHECK(result.findings[0].problem.find("subset count 1,3,1") != std::string::npos);
}

TEST_CASE("reports") {
    auto& store = small_corpus();
    const auto reports = build_reports(store, "all", std::nullopt);
    REQUIRE(reports.size() == 4);
    CHECK(reports[0].name == "histogram");
    CHECK(reports[0].scope == LevelRange{0, 12});
    CHECK(reports[1].scope == LevelRange{1, 12});

    const auto hist = histogram_report(store, {0, 12});
    CHECK(hist.rows.front() == std::vector<std::string>{"0", "2", "-", "-"});

    const auto path = write_report(store, hist);
    CHECK(path == store.reports_dir() / "histogram.psv");
    CHECK(std::filesystem::exists(path));

    const auto again = histogram_report(store, {0, 12});
    CHECK(without_timestamp(render_machine(hist)) == without_timestamp(render_machine(again)));
    CHECK(render_machine(hist).find("k|count|reference|status\n0|2|-|-\n") != std::string::npos);
    CHECK(render_table(hist).find("histogram (n = 0..12)") == 0);

    const auto special = special_report(store, {1, 12});
    CHECK(std::find(special.notes.begin(), special.notes.end(), "fibonacci=4") != special.notes.end());

    try {
        build_reports(store, "bogus", std::nullopt);
        FAIL("expected unknown_report");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unknown_report);
    }
}
