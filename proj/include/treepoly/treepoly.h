/* C interface to the tree enumeration and independence polynomial library.
 *
 * Every fallible call returns tp_status. On failure a description of the
 * most recent error on the calling thread is available from tp_last_error().
 * Strings returned through char** out-parameters are owned by the caller and
 * released with tp_string_free().
 */
#ifndef TREEPOLY_H
#define TREEPOLY_H

#include <stddef.h>
#include <stdint.h>

#if defined(TREEPOLY_BUILD)
#define TP_API __attribute__((visibility("default")))
#else
#define TP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tp_status {
    TP_OK = 0,
    TP_ERR_INVALID_ARGUMENT = 1,
    TP_ERR_MALFORMED_INPUT = 2,
    TP_ERR_DUPLICATE_EDGE = 3,
    TP_ERR_DISCONNECTED = 4,
    TP_ERR_CYCLE = 5,
    TP_ERR_LABEL_OUT_OF_RANGE = 6,
    TP_ERR_MALFORMED_CODE = 7,
    TP_ERR_OVERFLOW = 8,
    TP_ERR_COUNT_MISMATCH = 9,
    TP_ERR_STORE_CORRUPT = 10,
    TP_ERR_IO = 11,
    TP_ERR_LEVEL_SEALED = 12,
    TP_ERR_LEVEL_UNSEALED = 13,
    TP_ERR_INVARIANT = 14,
    TP_ERR_UNKNOWN_REPORT = 15,
    TP_ERR_EMPTY_TREE = 16,
    TP_ERR_TOO_LARGE = 17,
    TP_ERR_BUFFER_TOO_SMALL = 18,
    TP_ERR_INTERNAL = 99
} tp_status;

typedef enum tp_monotonic {
    TP_ASCENDING = 0,
    TP_DESCENDING = 1,
    TP_NEITHER = 2
} tp_monotonic;

typedef struct tp_tree tp_tree;
typedef struct tp_store tp_store;

TP_API const char* tp_version(void);
TP_API const char* tp_status_name(tp_status status);
TP_API const char* tp_last_error(void);
TP_API void tp_string_free(char* s);

/* ---- trees ------------------------------------------------------------ */

/* Edge list text: one "a b" pair of 1-based labels per line. */
TP_API tp_status tp_tree_parse(const char* text, tp_tree** out);
/* Rooted tree rebuilt from a canonical code. */
TP_API tp_status tp_tree_decode(const char* code, tp_tree** out);
TP_API void tp_tree_destroy(tp_tree* tree);
TP_API size_t tp_tree_vertex_count(const tp_tree* tree);

TP_API tp_status tp_tree_free_code(const tp_tree* tree, char** out);
/* Writes up to capacity coefficients; *count always receives the number
 * needed. Returns TP_ERR_BUFFER_TOO_SMALL if capacity < *count. */
TP_API tp_status tp_tree_polynomial(const tp_tree* tree, uint64_t* coeffs, size_t capacity,
                                    size_t* count);
TP_API tp_status tp_tree_brute_force_polynomial(const tp_tree* tree, uint64_t* coeffs,
                                                size_t capacity, size_t* count);
TP_API tp_status tp_tree_degree_sequence(const tp_tree* tree, uint32_t* degrees, size_t capacity,
                                         size_t* count);

/* ---- coefficient sequences -------------------------------------------- */

typedef struct tp_poly_traits {
    int unimodal;
    int log_concave;
    int symmetric;
    int fibonacci;
    tp_monotonic monotonic;
    size_t argmax;
} tp_poly_traits;

/* coeffs[0] must be 1 and the last coefficient non-zero. */
TP_API tp_status tp_poly_traits_of(const uint64_t* coeffs, size_t count, tp_poly_traits* out);

/* ---- store and pipeline ----------------------------------------------- */

TP_API tp_status tp_store_open(const char* path, tp_store** out);
TP_API void tp_store_close(tp_store* store);
/* *sealed is 0 and *count 0 for levels never sealed. */
TP_API tp_status tp_store_level_info(const tp_store* store, int n, int* sealed, uint64_t* count);
/* *found is 0 when the code is unknown. */
TP_API tp_status tp_store_fetch_polynomial(const tp_store* store, const char* code,
                                           uint64_t* coeffs, size_t capacity, size_t* count,
                                           int* found);

typedef void (*tp_progress_fn)(void* user, int n, uint64_t distinct, double seconds, int resumed);

typedef struct tp_run_options {
    int max_n;
    int hard_cap;
    unsigned workers;
    int resume;
    tp_progress_fn progress;
    void* progress_user;
} tp_run_options;

typedef struct tp_run_summary {
    uint64_t new_records;
    uint64_t total_trees;      /* levels 1..max_n */
    uint64_t total_with_empty; /* plus the empty tree */
    int all_sealed_before;
} tp_run_summary;

/* max_n 20, hard_cap 22, workers = hardware concurrency, resume on. */
TP_API void tp_run_options_init(tp_run_options* options);
TP_API tp_status tp_run(tp_store* store, const tp_run_options* options, tp_run_summary* summary);

typedef struct tp_audit_summary {
    uint64_t records;
    uint64_t non_unimodal;
    uint64_t non_log_concave;
    uint64_t oracle_checked;
    uint64_t findings;
} tp_audit_summary;

/* *details (optional) receives one "uid|n|problem" line per finding. */
TP_API tp_status tp_audit(const tp_store* store, int oracle_max_n, tp_audit_summary* summary,
                          char** details);

/* report: "histogram", "duplicates", "special", "flags" or "all". A negative
 * min_n/max_n selects the report's default scope. Writes
 * <store>/reports/<name>.psv and returns the human-readable tables. */
TP_API tp_status tp_analyze(const tp_store* store, const char* report, int min_n, int max_n,
                            char** table);

#ifdef __cplusplus
}
#endif

#endif /* TREEPOLY_H */
