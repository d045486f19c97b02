#include "treepoly/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>

#include "treepoly/canon.hpp"
#include "treepoly/counts.hpp"
#include "treepoly/error.hpp"
#include "treepoly/indpoly.hpp"

namespace treepoly {

namespace {

void require_sealed(const Store& store, LevelRange range) {
    if (range.min_n < 0 || range.max_n < range.min_n) {
        throw Error(ErrorCode::invalid_argument, "invalid level range " + to_string(range));
    }
    for (int n = range.min_n; n <= range.max_n; ++n) {
        if (!store.is_sealed(n)) {
            throw Error(ErrorCode::level_unsealed, "level " + std::to_string(n) + " is not sealed");
        }
    }
}

template <typename Visit>
void for_each_record(const Store& store, LevelRange range, Visit&& visit) {
    require_sealed(store, range);
    for (int n = range.min_n; n <= range.max_n; ++n) store.scan_level(n, visit);
}

std::string join(const auto& values, char sep) {
    std::string out;
    bool first = true;
    for (const auto& v : values) {
        if (!first) out.push_back(sep);
        first = false;
        if constexpr (std::is_convertible_v<decltype(v), std::string_view>) {
            out += v;
        } else {
            out += std::to_string(v);
        }
    }
    return out;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Report make_report(std::string name, LevelRange scope, std::vector<std::string> columns) {
    Report r;
    r.name = std::move(name);
    r.scope = scope;
    r.columns = std::move(columns);
    r.generated_at = utc_timestamp();
    return r;
}

}  // namespace

std::string to_string(const LevelRange& r) {
    return std::to_string(r.min_n) + ".." + std::to_string(r.max_n);
}

FlagCounts verify_flags(const Store& store, LevelRange range) {
    FlagCounts counts;
    for_each_record(store, range, [&](const TreeRecord& rec) {
        ++counts.records;
        if (!rec.unimodal) ++counts.non_unimodal;
        if (!rec.log_concave) ++counts.non_log_concave;
    });
    return counts;
}

std::map<std::uint32_t, std::uint64_t> argmax_histogram(const Store& store, LevelRange range) {
    std::map<std::uint32_t, std::uint64_t> histogram;
    for_each_record(store, range, [&](const TreeRecord& rec) { ++histogram[rec.argmax]; });
    return histogram;
}

std::vector<DuplicateGroup> duplicate_groups(const Store& store, LevelRange range) {
    std::map<Polynomial, DuplicateGroup> by_poly;
    for_each_record(store, range, [&](const TreeRecord& rec) {
        auto [it, fresh] = by_poly.try_emplace(rec.coeffs);
        auto& group = it->second;
        if (fresh) {
            group.coeffs = rec.coeffs;
            group.n = rec.n;
        } else if (group.n != rec.n) {
            throw Error(ErrorCode::invariant_violation,
                        "equal polynomials on different vertex counts: " + rec.uid);
        }
        group.uids.push_back(rec.uid);
        group.degree_sequences.push_back(rec.degrees);
    });

    std::vector<DuplicateGroup> groups;
    for (auto& [_, group] : by_poly) {
        if (group.uids.size() < 2) continue;
        group.shared_degrees = std::all_of(group.degree_sequences.begin(), group.degree_sequences.end(),
                                           [&](const auto& d) { return d == group.degree_sequences.front(); });
        groups.push_back(std::move(group));
    }
    std::stable_sort(groups.begin(), groups.end(), [](const DuplicateGroup& a, const DuplicateGroup& b) {
        if (a.uids.size() != b.uids.size()) return a.uids.size() > b.uids.size();
        return a.n < b.n;
    });
    return groups;
}

SpecialSequences special_sequences(const Store& store, LevelRange range) {
    SpecialSequences out;
    for_each_record(store, range, [&](const TreeRecord& rec) {
        const SequenceMember member{rec.uid, rec.n, rec.coeffs};
        switch (monotonicity(rec.coeffs)) {
            case Monotonicity::ascending: out.ascending.push_back(member); break;
            case Monotonicity::descending: out.descending.push_back(member); break;
            case Monotonicity::neither: break;
        }
        if (rec.fibonacci) out.fibonacci.push_back(member);
        if (rec.symmetric) out.symmetric.push_back(member);
    });
    return out;
}

AuditResult audit_store(const Store& store, int oracle_max_n) {
    AuditResult result;
    const int top = store.max_sealed();
    if (top < 0) throw Error(ErrorCode::level_unsealed, "store has no sealed levels");
    require_sealed(store, {0, top});

    for (int n = 0; n <= top; ++n) {
        store.scan_level(n, [&](const TreeRecord& rec) {
            ++result.flags.records;
            if (!rec.unimodal) ++result.flags.non_unimodal;
            if (!rec.log_concave) ++result.flags.non_log_concave;
            auto flag = [&](std::string problem) {
                result.findings.push_back({rec.uid, n, std::move(problem)});
            };
            if (rec.n != static_cast<std::uint32_t>(n)) {
                flag("stored in level " + std::to_string(n) + " but n = " + std::to_string(rec.n));
                return;
            }
            try {
                validate_record(rec);
            } catch (const Error& e) {
                flag(e.what());
                return;
            }
            if (n == 0) return;
            const Tree tree = decode(CanonicalCode::parse(rec.uid));
            if (free_code(tree).bits() != rec.uid) flag("uid is not the canonical code of its tree");
            if (degree_sequence(tree) != rec.degrees) flag("degree sequence differs from decoded tree");
            if (n <= oracle_max_n) {
                ++result.oracle_checked;
                const auto expected = brute_force_polynomial(tree);
                if (expected != rec.coeffs) {
                    flag("coefficients " + format_coeffs(rec.coeffs) + " differ from subset count " +
                         format_coeffs(expected));
                }
            }
        });
    }
    return result;
}

LevelRange default_scope(std::string_view report, const Store& store) {
    const int top = std::max(store.max_sealed(), 0);
    if (report == "histogram") return {0, top};
    return {std::min(1, top), top};
}

Report histogram_report(const Store& store, LevelRange range) {
    auto report = make_report("histogram", range, {"k", "count", "reference", "status"});
    const auto histogram = argmax_histogram(store, range);
    const bool comparable = range == LevelRange{0, 20};
    const std::uint32_t last = histogram.empty() ? 0 : histogram.rbegin()->first;
    const std::size_t rows = std::max<std::size_t>(last + 1, comparable ? std::size(kReferenceArgmaxCounts) : 0);
    std::uint64_t total = 0;
    int diverging = 0;
    for (std::uint32_t k = 0; k < rows; ++k) {
        const auto it = histogram.find(k);
        const std::uint64_t count = it == histogram.end() ? 0 : it->second;
        total += count;
        std::string reference = "-", status = "-";
        if (comparable && k < std::size(kReferenceArgmaxCounts)) {
            reference = std::to_string(kReferenceArgmaxCounts[k]);
            status = count == kReferenceArgmaxCounts[k] ? "match" : "diverges";
            if (status == "diverges") ++diverging;
        }
        report.rows.push_back({std::to_string(k), std::to_string(count), reference, status});
    }
    report.notes.push_back("total=" + std::to_string(total));
    if (comparable) {
        std::uint64_t reference_total = 0;
        for (auto c : kReferenceArgmaxCounts) reference_total += c;
        report.notes.push_back("reference_total=" + std::to_string(reference_total));
        report.notes.push_back("diverging_rows=" + std::to_string(diverging));
    }
    return report;
}

Report duplicates_report(const Store& store, LevelRange range) {
    auto report = make_report("duplicates", range,
                              {"rank", "n", "members", "same_degrees", "coeffs", "uids", "degree_sequences"});
    const auto groups = duplicate_groups(store, range);
    std::size_t rank = 0;
    for (const auto& g : groups) {
        std::vector<std::string> degrees;
        for (const auto& d : g.degree_sequences) degrees.push_back(join(d, ','));
        report.rows.push_back({std::to_string(++rank), std::to_string(g.n), std::to_string(g.uids.size()),
                               g.shared_degrees ? "1" : "0", format_coeffs(g.coeffs), join(g.uids, ';'),
                               join(degrees, ';')});
    }
    report.notes.push_back("groups=" + std::to_string(groups.size()));
    if (!groups.empty()) {
        const auto top = groups.front().uids.size();
        const auto at_top = std::count_if(groups.begin(), groups.end(),
                                          [&](const DuplicateGroup& g) { return g.uids.size() == top; });
        report.notes.push_back("top_multiplicity=" + std::to_string(top));
        report.notes.push_back("groups_at_top=" + std::to_string(at_top));
    }
    return report;
}

Report special_report(const Store& store, LevelRange range) {
    auto report = make_report("special", range, {"kind", "uid", "n", "coeffs"});
    const auto special = special_sequences(store, range);
    auto emit = [&](const char* kind, const std::vector<SequenceMember>& members) {
        for (const auto& m : members) {
            report.rows.push_back({kind, m.uid, std::to_string(m.n), format_coeffs(m.coeffs)});
        }
        report.notes.push_back(std::string(kind) + "=" + std::to_string(members.size()));
    };
    emit("ascending", special.ascending);
    emit("descending", special.descending);
    emit("fibonacci", special.fibonacci);
    emit("symmetric", special.symmetric);
    return report;
}

Report flags_report(const Store& store, LevelRange range) {
    auto report = make_report("flags", range, {"n", "records", "non_unimodal", "non_log_concave"});
    FlagCounts total;
    for (int n = range.min_n; n <= range.max_n; ++n) {
        const auto c = verify_flags(store, {n, n});
        total.records += c.records;
        total.non_unimodal += c.non_unimodal;
        total.non_log_concave += c.non_log_concave;
        report.rows.push_back({std::to_string(n), std::to_string(c.records), std::to_string(c.non_unimodal),
                               std::to_string(c.non_log_concave)});
    }
    report.notes.push_back("records=" + std::to_string(total.records));
    report.notes.push_back("non_unimodal=" + std::to_string(total.non_unimodal));
    report.notes.push_back("non_log_concave=" + std::to_string(total.non_log_concave));
    return report;
}

std::vector<Report> build_reports(const Store& store, std::string_view name, std::optional<LevelRange> range) {
    auto one = [&](std::string_view which) {
        const auto scope = range.value_or(default_scope(which, store));
        if (which == "histogram") return histogram_report(store, scope);
        if (which == "duplicates") return duplicates_report(store, scope);
        if (which == "special") return special_report(store, scope);
        return flags_report(store, scope);
    };
    std::vector<Report> out;
    if (name == "all") {
        for (auto which : kReportNames) out.push_back(one(which));
        return out;
    }
    if (std::find(std::begin(kReportNames), std::end(kReportNames), name) == std::end(kReportNames)) {
        throw Error(ErrorCode::unknown_report, "unknown report '" + std::string(name) + "'");
    }
    out.push_back(one(name));
    return out;
}

std::string render_table(const Report& report) {
    std::vector<std::size_t> width(report.columns.size(), 0);
    for (std::size_t c = 0; c < report.columns.size(); ++c) width[c] = report.columns[c].size();
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out = report.name + " (n = " + to_string(report.scope) + ")\n";
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out += cells[c];
            if (c + 1 < cells.size()) out.append(width[c] - cells[c].size() + 2, ' ');
        }
        out += '\n';
    };
    line(report.columns);
    for (const auto& row : report.rows) line(row);
    for (const auto& note : report.notes) out += note + '\n';
    return out;
}

std::string render_machine(const Report& report) {
    std::string out = "# report=" + report.name + "\n# scope=" + to_string(report.scope) +
                      "\n# generated_at=" + report.generated_at + "\n";
    for (const auto& note : report.notes) out += "# " + note + '\n';
    out += join(report.columns, '|') + '\n';
    for (const auto& row : report.rows) out += join(row, '|') + '\n';
    return out;
}

std::filesystem::path write_report(const Store& store, const Report& report) {
    std::filesystem::create_directories(store.reports_dir());
    const auto path = store.reports_dir() / (report.name + ".psv");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << render_machine(report);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    return path;
}

}  // namespace treepoly
