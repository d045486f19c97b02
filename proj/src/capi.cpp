#include "treepoly/treepoly.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <thread>

#include "treepoly/analysis.hpp"
#include "treepoly/canon.hpp"
#include "treepoly/enumerate.hpp"
#include "treepoly/error.hpp"
#include "treepoly/indpoly.hpp"
#include "treepoly/store.hpp"

using namespace treepoly;

struct tp_tree {
    Tree tree;
};

struct tp_store {
    explicit tp_store(const char* path) : store(path) {}
    Store store;
};

namespace {

thread_local std::string last_error;

tp_status fail(tp_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

template <typename Fn>
tp_status guarded(Fn&& fn) noexcept {
    try {
        last_error.clear();
        return fn();
    } catch (const Error& e) {
        return fail(static_cast<tp_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(TP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(TP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(TP_ERR_INTERNAL, "unknown exception");
    }
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename T, typename Seq>
tp_status copy_out(const Seq& values, T* out, std::size_t capacity, std::size_t* count) {
    if (!count) return fail(TP_ERR_INVALID_ARGUMENT, "count must not be null");
    *count = values.size();
    if (capacity < values.size() || (!out && !values.empty())) {
        return fail(TP_ERR_BUFFER_TOO_SMALL, "need room for " + std::to_string(values.size()) + " values");
    }
    std::copy(values.begin(), values.end(), out);
    return TP_OK;
}

}  // namespace

extern "C" {

const char* tp_version(void) { return "1.0.0"; }

const char* tp_status_name(tp_status status) {
    switch (status) {
        case TP_OK: return "ok";
        case TP_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case TP_ERR_INTERNAL: return "internal error";
        default: return error_code_name(static_cast<ErrorCode>(status));
    }
}

const char* tp_last_error(void) { return last_error.c_str(); }

void tp_string_free(char* s) { std::free(s); }

tp_status tp_tree_parse(const char* text, tp_tree** out) {
    return guarded([&] {
        if (!text || !out) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
        *out = new tp_tree{parse_edge_list(text)};
        return TP_OK;
    });
}

tp_status tp_tree_decode(const char* code, tp_tree** out) {
    return guarded([&] {
        if (!code || !out) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
        *out = new tp_tree{decode(CanonicalCode::parse(code))};
        return TP_OK;
    });
}

void tp_tree_destroy(tp_tree* tree) { delete tree; }

size_t tp_tree_vertex_count(const tp_tree* tree) { return tree ? tree->tree.size() : 0; }

tp_status tp_tree_free_code(const tp_tree* tree, char** out) {
    return guarded([&] {
        if (!tree || !out) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
        *out = duplicate(free_code(tree->tree).bits());
        return TP_OK;
    });
}

tp_status tp_tree_polynomial(const tp_tree* tree, uint64_t* coeffs, size_t capacity, size_t* count) {
    return guarded([&] {
        if (!tree) return fail(TP_ERR_INVALID_ARGUMENT, "null tree");
        MemoCache cache;
        const auto p = independence_polynomial(tree->tree, cache);
        return copy_out(p.coeffs(), coeffs, capacity, count);
    });
}

tp_status tp_tree_brute_force_polynomial(const tp_tree* tree, uint64_t* coeffs, size_t capacity,
                                         size_t* count) {
    return guarded([&] {
        if (!tree) return fail(TP_ERR_INVALID_ARGUMENT, "null tree");
        const auto p = brute_force_polynomial(tree->tree);
        return copy_out(p.coeffs(), coeffs, capacity, count);
    });
}

tp_status tp_tree_degree_sequence(const tp_tree* tree, uint32_t* degrees, size_t capacity, size_t* count) {
    return guarded([&] {
        if (!tree) return fail(TP_ERR_INVALID_ARGUMENT, "null tree");
        return copy_out(degree_sequence(tree->tree), degrees, capacity, count);
    });
}

tp_status tp_poly_traits_of(const uint64_t* coeffs, size_t count, tp_poly_traits* out) {
    return guarded([&] {
        if (!coeffs || !out || count == 0) return fail(TP_ERR_INVALID_ARGUMENT, "empty coefficient list");
        if (coeffs[0] != 1 || coeffs[count - 1] == 0) {
            return fail(TP_ERR_INVALID_ARGUMENT, "constant term must be 1 and leading coefficient non-zero");
        }
        const Polynomial p(std::vector<Coefficient>(coeffs, coeffs + count));
        out->unimodal = is_unimodal(p);
        out->log_concave = is_log_concave(p);
        out->symmetric = is_symmetric(p);
        out->fibonacci = is_fibonacci(p);
        out->monotonic = static_cast<tp_monotonic>(monotonicity(p));
        out->argmax = argmax_lowest(p);
        return TP_OK;
    });
}

tp_status tp_store_open(const char* path, tp_store** out) {
    return guarded([&] {
        if (!path || !out) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
        *out = new tp_store(path);
        return TP_OK;
    });
}

void tp_store_close(tp_store* store) { delete store; }

tp_status tp_store_level_info(const tp_store* store, int n, int* sealed, uint64_t* count) {
    return guarded([&] {
        if (!store || !sealed || !count) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
        const auto m = store->store.manifest(n);
        *sealed = m.has_value();
        *count = m ? m->record_count : 0;
        return TP_OK;
    });
}

tp_status tp_store_fetch_polynomial(const tp_store* store, const char* code, uint64_t* coeffs,
                                    size_t capacity, size_t* count, int* found) {
    return guarded([&] {
        if (!store || !code || !found || !count) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
        const auto p = store->store.fetch_polynomial(code);
        *found = p.has_value();
        if (!p) {
            *count = 0;
            return TP_OK;
        }
        return copy_out(p->coeffs(), coeffs, capacity, count);
    });
}

void tp_run_options_init(tp_run_options* options) {
    if (!options) return;
    options->max_n = 20;
    options->hard_cap = 22;
    options->workers = std::max(1u, std::thread::hardware_concurrency());
    options->resume = 1;
    options->progress = nullptr;
    options->progress_user = nullptr;
}

tp_status tp_run(tp_store* store, const tp_run_options* options, tp_run_summary* summary) {
    return guarded([&] {
        if (!store || !options) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
        if (options->workers == 0) return fail(TP_ERR_INVALID_ARGUMENT, "workers must be at least 1");
        RunOptions run_options;
        run_options.max_n = options->max_n;
        run_options.hard_cap = options->hard_cap;
        run_options.workers = options->workers;
        run_options.resume = options->resume != 0;
        if (options->progress) {
            run_options.progress = [options](const LevelProgress& p) {
                options->progress(options->progress_user, p.n, p.distinct, p.seconds, p.resumed ? 1 : 0);
            };
        }
        const auto result = run(run_options, store->store);
        if (summary) {
            summary->new_records = result.new_records;
            summary->total_trees = result.total_trees;
            summary->total_with_empty = result.total_with_empty;
            summary->all_sealed_before = result.all_sealed_before ? 1 : 0;
        }
        return TP_OK;
    });
}

tp_status tp_audit(const tp_store* store, int oracle_max_n, tp_audit_summary* summary, char** details) {
    return guarded([&] {
        if (!store || !summary) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
        const auto result = audit_store(store->store, oracle_max_n);
        summary->records = result.flags.records;
        summary->non_unimodal = result.flags.non_unimodal;
        summary->non_log_concave = result.flags.non_log_concave;
        summary->oracle_checked = result.oracle_checked;
        summary->findings = result.findings.size();
        if (details) {
            std::string text;
            for (const auto& f : result.findings) {
                text += f.uid + "|" + std::to_string(f.n) + "|" + f.problem + "\n";
            }
            *details = duplicate(text);
        }
        return TP_OK;
    });
}

tp_status tp_analyze(const tp_store* store, const char* report, int min_n, int max_n, char** table) {
    return guarded([&] {
        if (!store || !report) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
        std::optional<LevelRange> range;
        if (min_n >= 0 || max_n >= 0) {
            const auto defaults = default_scope(report, store->store);
            range = LevelRange{min_n >= 0 ? min_n : defaults.min_n, max_n >= 0 ? max_n : defaults.max_n};
        }
        std::string text;
        for (const auto& r : build_reports(store->store, report, range)) {
            write_report(store->store, r);
            if (!text.empty()) text += '\n';
            text += render_table(r);
        }
        if (table) *table = duplicate(text);
        return TP_OK;
    });
}

}  // extern "C"
