#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dyadconv/app/table.hpp"
#include "dyadconv/corpus/io.hpp"
#include "dyadconv/paraling/features.hpp"

namespace dyadconv::app {

/// Analysis tables a report can join, by file stem.
inline const std::vector<std::string>& report_sources() {
    static const std::vector<std::string> names{"features", "converge", "strength", "granger", "dtw", "conceptmap_stats"};
    return names;
}

/// Summary columns, in order.
inline const std::vector<std::string>& summary_columns() {
    static const std::vector<std::string> cols{
        "dyad",
        "session",
        "features_tested",
        "features_converged",
        "words_converged",
        "message_density_converged",
        "content_density_converged",
        "overlaps_converged",
        "laughter_converged",
        "strength_composite",
        "granger_f",
        "granger_p",
        "granger_significant",
        "dtw_self_disclosure",
        "dtw_shared_experience",
        "dtw_praise",
        "shared_concepts",
        "shared_links",
        "mean_betweenness",
    };
    return cols;
}

struct ReportInput {
    std::string name;
    std::filesystem::path path;
    Table table;
};

/// The analysis tables present in `dir` (csv preferred over json). Throws when there are none.
inline std::vector<ReportInput> find_report_inputs(const std::filesystem::path& dir) {
    std::vector<ReportInput> found;
    for (const auto& name : report_sources()) {
        for (const char* ext : {".csv", ".json"}) {
            const auto p = dir / (name + ext);
            if (std::filesystem::is_regular_file(p)) {
                try {
                    found.push_back({name, p, parse_table(corpus::read_file(p))});
                } catch (const SchemaError& e) {
                    throw SchemaError(p.string() + ": " + e.what());
                }
                break;
            }
        }
    }
    if (found.empty()) throw Error("no analysis outputs in " + dir.string());
    return found;
}

struct ReportTables {
    Table summary{summary_columns()};
    Table long_metrics{{"dyad", "session", "source", "item", "metric", "value"}};
    Table series{{"dyad", "session", "slice", "speaker", "feature", "value"}};
};

inline ReportTables build_report(const std::vector<ReportInput>& inputs) {
    struct Key {
        std::string dyad;
        long long session = 0;
        bool operator<(const Key& o) const { return std::tie(dyad, session) < std::tie(o.dyad, o.session); }
    };
    std::map<Key, std::map<std::string, Cell>> cells;
    ReportTables out;

    auto key_of = [](const Table& t, std::size_t r) {
        const auto s = to_number(t.at(r, "session"));
        if (!s) throw SchemaError("row " + std::to_string(r + 1) + ", field 'session': not a number");
        return Key{to_text(t.at(r, "dyad")), static_cast<long long>(*s)};
    };
    auto add_long = [&](const Key& k, const std::string& source, const std::string& item, const std::string& metric,
                        const Cell& v) {
        if (std::holds_alternative<std::monostate>(v)) return;
        out.long_metrics.add_row({k.dyad, k.session, source, item, metric, to_number(v) ? Cell{*to_number(v)} : v});
    };

    for (const auto& in : inputs) {
        const Table& t = in.table;
        for (std::size_t r = 0; r < t.size(); ++r) {
            const Key k = key_of(t, r);
            auto& row = cells[k];
            if (in.name == "features") {
                for (auto f : paraling::kFeatureKinds) {
                    const std::string fn(paraling::to_string(f));
                    const auto v = to_number(t.at(r, fn));
                    out.series.add_row({k.dyad, k.session, t.at(r, "slice"), t.at(r, "speaker"), fn,
                                        v ? Cell{*v} : Cell{}});
                }
            } else if (in.name == "converge") {
                const std::string feature = to_text(t.at(r, "feature"));
                const bool ok = to_text(t.at(r, "status")) == "ok";
                const bool conv = ok && to_text(t.at(r, "converged")) == "true";
                auto& tested = row["features_tested"];
                auto& converged = row["features_converged"];
                if (std::holds_alternative<std::monostate>(tested)) tested = 0LL;
                if (std::holds_alternative<std::monostate>(converged)) converged = 0LL;
                if (ok) {
                    tested = std::get<long long>(tested) + 1;
                    converged = std::get<long long>(converged) + (conv ? 1 : 0);
                    row[feature + "_converged"] = conv;
                }
                add_long(k, "converge", feature, "statistic", t.at(r, "statistic"));
                add_long(k, "converge", feature, "critical_value", t.at(r, "critical_value"));
            } else if (in.name == "strength") {
                if (auto v = to_number(t.at(r, "composite"))) row["strength_composite"] = *v;
                for (auto f : paraling::kFeatureKinds) {
                    add_long(k, "strength", std::string(paraling::to_string(f)), "scaled", t.at(r, std::string(paraling::to_string(f))));
                }
                add_long(k, "strength", "composite", "scaled", t.at(r, "composite"));
            } else if (in.name == "granger") {
                const std::string item = to_text(t.at(r, "effect")) + "<-" + to_text(t.at(r, "cause"));
                if (!row.contains("granger_f")) {
                    if (auto v = to_number(t.at(r, "f_statistic"))) row["granger_f"] = *v;
                    if (auto v = to_number(t.at(r, "p_value"))) row["granger_p"] = *v;
                    const std::string sig = to_text(t.at(r, "significant"));
                    if (!sig.empty()) row["granger_significant"] = sig == "true";
                }
                add_long(k, "granger", item, "f_statistic", t.at(r, "f_statistic"));
                add_long(k, "granger", item, "p_value", t.at(r, "p_value"));
            } else if (in.name == "dtw") {
                const std::string strategy = to_text(t.at(r, "strategy"));
                if (auto v = to_number(t.at(r, "normalized_distance"))) row["dtw_" + strategy] = *v;
                add_long(k, "dtw", strategy, "normalized_distance", t.at(r, "normalized_distance"));
                add_long(k, "dtw", strategy, "raw_distance", t.at(r, "raw_distance"));
            } else if (in.name == "conceptmap_stats") {
                const std::string scope = to_text(t.at(r, "scope"));
                if (scope == "dyad") {
                    for (const char* m : {"shared_concepts", "shared_links", "mean_betweenness"}) {
                        if (auto v = to_number(t.at(r, m))) row[m] = *v;
                    }
                }
                for (const char* m : {"shared_concepts", "isolated_shared_concepts", "shared_links", "mean_betweenness"}) {
                    add_long(k, "conceptmap", scope, m, t.at(r, m));
                }
            }
        }
    }

    for (const auto& [k, row] : cells) {
        std::vector<Cell> line{k.dyad, k.session};
        for (std::size_t j = 2; j < summary_columns().size(); ++j) {
            const auto it = row.find(summary_columns()[j]);
            line.push_back(it == row.end() ? Cell{} : it->second);
        }
        out.summary.add_row(std::move(line));
    }
    return out;
}

}  // namespace dyadconv::app
