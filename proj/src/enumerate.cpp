#include "treepoly/enumerate.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "treepoly/counts.hpp"
#include "treepoly/error.hpp"

namespace treepoly {

namespace {

// Insert-if-absent set of codes shared by all workers of one level.
class ShardedCodeSet {
public:
    bool insert(const std::string& code) {
        auto& shard = shards_[std::hash<std::string>{}(code) % shards_.size()];
        std::lock_guard lock(shard.mutex);
        return shard.codes.insert(code).second;
    }

private:
    struct Shard {
        std::mutex mutex;
        std::unordered_set<std::string> codes;
    };
    std::array<Shard, 64> shards_;
};

// Single consumer that owns all store appends for a level.
class RecordWriter {
public:
    explicit RecordWriter(Store& store) : store_(store), thread_([this] { drain(); }) {}

    ~RecordWriter() { stop(); }

    void submit(std::vector<TreeRecord> batch) {
        if (batch.empty()) return;
        std::lock_guard lock(mutex_);
        queue_.push_back(std::move(batch));
        ready_.notify_one();
    }

    // Waits for the queue to drain; rethrows the first append failure.
    void finish() {
        stop();
        if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
    }

    std::uint64_t written() const { return written_; }

private:
    void stop() {
        {
            std::lock_guard lock(mutex_);
            done_ = true;
            ready_.notify_one();
        }
        if (thread_.joinable()) thread_.join();
    }

    void drain() {
        while (true) {
            std::vector<TreeRecord> batch;
            {
                std::unique_lock lock(mutex_);
                ready_.wait(lock, [&] { return done_ || !queue_.empty(); });
                if (queue_.empty()) return;
                batch = std::move(queue_.front());
                queue_.pop_front();
            }
            if (error_) continue;
            try {
                for (const auto& rec : batch) {
                    if (store_.insert_if_absent(rec)) ++written_;
                }
            } catch (...) {
                error_ = std::current_exception();
            }
        }
    }

    Store& store_;
    std::mutex mutex_;
    std::condition_variable ready_;
    std::deque<std::vector<TreeRecord>> queue_;
    bool done_ = false;
    std::exception_ptr error_;
    std::uint64_t written_ = 0;
    std::thread thread_;
};

std::vector<std::string> level_codes(const Store& store, int n) {
    std::vector<std::string> codes;
    store.scan_level(n, [&](const TreeRecord& rec) { codes.push_back(rec.uid); });
    return codes;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<Tree> expand(const Tree& t) {
    if (t.empty()) throw Error(ErrorCode::empty_tree, "cannot expand the empty tree");
    std::vector<Tree> out;
    out.reserve(t.size());
    for (Vertex v = 0; v < t.size(); ++v) out.push_back(add_leaf(t, v));
    return out;
}

TreeRecord build_record(const Tree& t, const CanonicalForm& form, MemoCache& cache) {
    return make_record(form.code.bits(), degree_sequence(t), independence_polynomial(t, form, cache));
}

std::uint64_t enumerate_level(const LevelPlan& plan, Store& store, unsigned workers, MemoCache& cache) {
    if (plan.n < 2) throw Error(ErrorCode::invalid_argument, "levels below 2 are seeded, not enumerated");
    if (!store.is_sealed(plan.n - 1)) {
        throw Error(ErrorCode::level_unsealed,
                    "level " + std::to_string(plan.n - 1) + " is incomplete");
    }
    workers = std::max(1u, workers);
    store.begin_level(plan.n);

    ShardedCodeSet seen;
    std::atomic<bool> failed{false};
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t parents = plan.parent_codes.size();
    constexpr std::size_t kBatch = 512;

    try {
        RecordWriter writer(store);
        auto work = [&](unsigned w) {
            const std::size_t begin = parents * w / workers;
            const std::size_t end = parents * (w + 1) / workers;
            std::vector<TreeRecord> batch;
            try {
                for (std::size_t i = begin; i < end && !failed; ++i) {
                    const Tree parent = decode(CanonicalCode::parse(plan.parent_codes[i]));
                    for (Vertex v = 0; v < parent.size(); ++v) {
                        const Tree child = add_leaf(parent, v);
                        auto form = canonical_form(child);
                        if (!seen.insert(form.code.bits())) continue;
                        batch.push_back(build_record(child, form, cache));
                        if (batch.size() >= kBatch) writer.submit(std::exchange(batch, {}));
                    }
                }
                writer.submit(std::move(batch));
            } catch (...) {
                errors[w] = std::current_exception();
                failed = true;
            }
        };

        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& th : pool) th.join();
        }
        writer.finish();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
        return store.seal_level(plan.n, plan.expected_count).record_count;
    } catch (...) {
        store.abandon_level();
        throw;
    }
}

RunSummary run(const RunOptions& options, Store& store) {
    if (options.max_n < 0 || options.max_n > options.hard_cap) {
        throw Error(ErrorCode::invalid_argument,
                    "max_n " + std::to_string(options.max_n) + " outside 0.." +
                        std::to_string(options.hard_cap));
    }
    if (!options.resume) store.clear();

    RunSummary summary;
    summary.all_sealed_before = true;
    auto report = [&](LevelProgress p) {
        summary.levels.push_back(p);
        if (options.progress) options.progress(p);
    };

    // Seed levels hold the empty tree and the single vertex.
    const std::array<TreeRecord, 2> seeds = {
        make_record("", {}, Polynomial{1}),
        make_record("10", {0}, Polynomial{1, 1}),
    };
    for (int n = 0; n <= std::min(1, options.max_n); ++n) {
        if (store.is_sealed(n)) {
            report({n, store.manifest(n)->record_count, 0.0, true});
            continue;
        }
        summary.all_sealed_before = false;
        const auto start = std::chrono::steady_clock::now();
        store.begin_level(n);
        store.insert_if_absent(seeds[static_cast<std::size_t>(n)]);
        store.seal_level(n, known_tree_count(n));
        ++summary.new_records;
        report({n, 1, seconds_since(start), false});
    }

    MemoCache cache([&store](const std::string& code) { return store.fetch_polynomial(code); });
    for (int n = 2; n <= options.max_n; ++n) {
        if (store.is_sealed(n)) {
            report({n, store.manifest(n)->record_count, 0.0, true});
            continue;
        }
        summary.all_sealed_before = false;
        const auto start = std::chrono::steady_clock::now();
        LevelPlan plan{n, known_tree_count(n), level_codes(store, n - 1)};
        cache.set_retention_limit(static_cast<std::size_t>(n - 1));
        const auto count = enumerate_level(plan, store, options.workers, cache);
        summary.new_records += count;
        report({n, count, seconds_since(start), false});
    }

    for (int n = 1; n <= options.max_n; ++n) summary.total_trees += store.manifest(n)->record_count;
    summary.total_with_empty = summary.total_trees + (store.is_sealed(0) ? store.manifest(0)->record_count : 0);
    return summary;
}

}  // namespace treepoly
