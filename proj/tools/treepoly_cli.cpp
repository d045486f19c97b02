// Command-line driver. Talks to the library only through the C interface.
//
// Exit status: 0 success, 1 verification failure, 2 usage error,
// 3 store or I/O error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "treepoly/treepoly.h"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kStoreError = 3 };

constexpr const char* kStoreEnv = "TREEPOLY_STORE";

struct TreeDeleter {
    void operator()(tp_tree* t) const { tp_tree_destroy(t); }
};
struct StoreDeleter {
    void operator()(tp_store* s) const { tp_store_close(s); }
};
struct StringDeleter {
    void operator()(char* s) const { tp_string_free(s); }
};
using TreePtr = std::unique_ptr<tp_tree, TreeDeleter>;
using StorePtr = std::unique_ptr<tp_store, StoreDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_for(tp_status status) {
    switch (status) {
        case TP_OK: return kOk;
        case TP_ERR_COUNT_MISMATCH:
        case TP_ERR_OVERFLOW:
        case TP_ERR_INVARIANT: return kVerifyFailed;
        case TP_ERR_STORE_CORRUPT:
        case TP_ERR_IO:
        case TP_ERR_LEVEL_SEALED:
        case TP_ERR_LEVEL_UNSEALED: return kStoreError;
        default: return kUsage;
    }
}

int report_error(const char* what, tp_status status) {
    std::cerr << "error: " << what << ": " << tp_status_name(status) << ": " << tp_last_error() << "\n";
    return exit_for(status);
}

std::string resolve_store(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv(kStoreEnv); env && *env) return env;
    return {};
}

int open_store(const std::string& flag, StorePtr& out) {
    const auto path = resolve_store(flag);
    if (path.empty()) {
        std::cerr << "error: no store given (use --store or " << kStoreEnv << ")\n";
        return kUsage;
    }
    tp_store* raw = nullptr;
    if (auto st = tp_store_open(path.c_str(), &raw); st != TP_OK) return report_error("opening store", st);
    out.reset(raw);
    return kOk;
}

int load_tree(const std::string& path, TreePtr& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        return kStoreError;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    tp_tree* raw = nullptr;
    if (auto st = tp_tree_parse(ss.str().c_str(), &raw); st != TP_OK) return report_error(path.c_str(), st);
    out.reset(raw);
    return kOk;
}

std::string join(const auto& values) {
    std::string out;
    for (auto v : values) {
        if (!out.empty()) out += ',';
        out += std::to_string(v);
    }
    return out;
}

int cmd_enumerate(int max_n, int hard_cap, unsigned workers, bool no_resume, const std::string& store_flag) {
    StorePtr store;
    if (int rc = open_store(store_flag, store); rc != kOk) return rc;
    tp_run_options options;
    tp_run_options_init(&options);
    options.max_n = max_n;
    options.hard_cap = hard_cap;
    if (workers > 0) options.workers = workers;
    options.resume = no_resume ? 0 : 1;
    options.progress = [](void*, int n, uint64_t distinct, double seconds, int resumed) {
        std::fprintf(stderr, "level %d: %llu trees, %.3f s%s\n", n, static_cast<unsigned long long>(distinct),
                     seconds, resumed ? " (sealed)" : "");
    };
    tp_run_summary summary{};
    if (auto st = tp_run(store.get(), &options, &summary); st != TP_OK) return report_error("enumerate", st);
    if (summary.all_sealed_before) std::cout << "all levels sealed\n";
    std::cout << "new records: " << summary.new_records << "\n";
    std::cout << "trees n=1.." << max_n << ": " << summary.total_trees << " (+P0 = " << summary.total_with_empty
              << ")\n";
    return kOk;
}

int cmd_poly(const std::string& file) {
    TreePtr tree;
    if (int rc = load_tree(file, tree); rc != kOk) return rc;
    char* raw_code = nullptr;
    if (auto st = tp_tree_free_code(tree.get(), &raw_code); st != TP_OK) return report_error("canonical code", st);
    StringPtr code(raw_code);

    std::vector<uint64_t> coeffs(tp_tree_vertex_count(tree.get()) + 1);
    size_t count = 0;
    if (auto st = tp_tree_polynomial(tree.get(), coeffs.data(), coeffs.size(), &count); st != TP_OK) {
        return report_error("polynomial", st);
    }
    coeffs.resize(count);
    std::vector<uint32_t> degrees(tp_tree_vertex_count(tree.get()));
    if (auto st = tp_tree_degree_sequence(tree.get(), degrees.data(), degrees.size(), &count); st != TP_OK) {
        return report_error("degrees", st);
    }
    tp_poly_traits traits{};
    if (auto st = tp_poly_traits_of(coeffs.data(), coeffs.size(), &traits); st != TP_OK) {
        return report_error("predicates", st);
    }
    static const char* const kMonotonic[] = {"ascending", "descending", "neither"};
    std::cout << "uid: " << code.get() << "\n"
              << "n: " << tp_tree_vertex_count(tree.get()) << "\n"
              << "degrees: " << join(degrees) << "\n"
              << "coeffs: " << join(coeffs) << "\n"
              << "unimodal: " << traits.unimodal << "\n"
              << "log_concave: " << traits.log_concave << "\n"
              << "symmetric: " << traits.symmetric << "\n"
              << "fibonacci: " << traits.fibonacci << "\n"
              << "monotonic: " << kMonotonic[traits.monotonic] << "\n"
              << "argmax: " << traits.argmax << "\n";
    return kOk;
}

int cmd_canon(const std::string& file) {
    TreePtr tree;
    if (int rc = load_tree(file, tree); rc != kOk) return rc;
    char* raw_code = nullptr;
    if (auto st = tp_tree_free_code(tree.get(), &raw_code); st != TP_OK) return report_error("canonical code", st);
    StringPtr code(raw_code);
    std::cout << code.get() << "\n";
    return kOk;
}

int cmd_verify(const std::string& store_flag, int oracle_max_n) {
    StorePtr store;
    if (int rc = open_store(store_flag, store); rc != kOk) return rc;
    tp_audit_summary summary{};
    char* raw_details = nullptr;
    if (auto st = tp_audit(store.get(), oracle_max_n, &summary, &raw_details); st != TP_OK) {
        return report_error("verify", st);
    }
    StringPtr details(raw_details);
    std::cout << "records: " << summary.records << "\n"
              << "oracle-checked (n <= " << oracle_max_n << "): " << summary.oracle_checked << "\n"
              << "non-unimodal: " << summary.non_unimodal << ", non-log-concave: " << summary.non_log_concave
              << "\n"
              << "discrepancies: " << summary.findings << "\n";
    if (summary.findings > 0) {
        std::cout << details.get();
        return kVerifyFailed;
    }
    return kOk;
}

int cmd_analyze(const std::string& store_flag, const std::string& report, int min_n, int max_n, int only_n) {
    StorePtr store;
    if (int rc = open_store(store_flag, store); rc != kOk) return rc;
    if (only_n >= 0) min_n = max_n = only_n;
    char* raw_table = nullptr;
    if (auto st = tp_analyze(store.get(), report.c_str(), min_n, max_n, &raw_table); st != TP_OK) {
        return report_error("analyze", st);
    }
    StringPtr table(raw_table);
    std::cout << table.get();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enumerate unlabeled trees and their independence polynomials"};
    app.require_subcommand(1);

    std::string store_flag;
    int max_n = 20;
    int hard_cap = 22;
    unsigned workers = 0;
    bool no_resume = false;
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate all trees up to --max-n into the store");
    enumerate->add_option("--max-n", max_n, "Largest vertex count")->capture_default_str();
    enumerate->add_option("--hard-cap", hard_cap, "Upper bound accepted for --max-n")->capture_default_str();
    enumerate->add_option("--workers", workers, "Worker threads (default: hardware concurrency)");
    enumerate->add_flag("--no-resume", no_resume, "Discard existing levels and start over");
    enumerate->add_option("--store", store_flag, std::string("Store directory (fallback: $") + kStoreEnv + ")");

    std::string tree_file;
    auto* poly = app.add_subcommand("poly", "Print the code, polynomial and predicates of one tree");
    poly->add_option("edge_list", tree_file, "Edge-list file")->required();
    auto* canon = app.add_subcommand("canon", "Print the canonical code of one tree");
    canon->add_option("edge_list", tree_file, "Edge-list file")->required();

    int oracle_max_n = 12;
    auto* verify = app.add_subcommand("verify", "Audit every sealed record");
    verify->add_option("--store", store_flag, "Store directory");
    verify->add_option("--oracle-max-n", oracle_max_n, "Subset-enumeration check up to this n")
        ->capture_default_str();

    std::string report = "all";
    int min_n = -1, range_max = -1, only_n = -1;
    auto* analyze = app.add_subcommand("analyze", "Write reports under <store>/reports");
    analyze->add_option("--store", store_flag, "Store directory");
    analyze->add_option("--report", report, "histogram | duplicates | special | flags | all")
        ->capture_default_str();
    analyze->add_option("--min-n", min_n, "Smallest vertex count in scope");
    analyze->add_option("--max-n", range_max, "Largest vertex count in scope");
    analyze->add_option("--only-n", only_n, "Restrict scope to one vertex count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (*enumerate) return cmd_enumerate(max_n, hard_cap, workers, no_resume, store_flag);
    if (*poly) return cmd_poly(tree_file);
    if (*canon) return cmd_canon(tree_file);
    if (*verify) return cmd_verify(store_flag, oracle_max_n);
    if (*analyze) return cmd_analyze(store_flag, report, min_n, range_max, only_n);
    return kUsage;
}
