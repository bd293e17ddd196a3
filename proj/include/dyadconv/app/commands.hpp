#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dyadconv/align/strategy.hpp"
#include "dyadconv/app/config.hpp"
#include "dyadconv/app/table.hpp"
#include "dyadconv/conceptnet/betweenness.hpp"
#include "dyadconv/conceptnet/preprocess.hpp"
#include "dyadconv/corpus/session.hpp"
#include "dyadconv/paraling/features.hpp"
#include "dyadconv/stats/correlation.hpp"
#include "dyadconv/tsa/adf_test.hpp"
#include "dyadconv/tsa/granger.hpp"
#include "dyadconv/tsa/strength.hpp"
#include "dyadconv/tsa/transform.hpp"

namespace dyadconv::app {

using corpus::Session;
using paraling::FeatureKind;

namespace detail {

inline std::vector<Cell> key(const Session& s) {
    return {s.dyad_id, static_cast<long long>(s.session_index)};
}

template <typename... Rest>
std::vector<Cell> row(const Session& s, Rest&&... rest) {
    auto r = key(s);
    (r.emplace_back(std::forward<Rest>(rest)), ...);
    return r;
}

inline std::vector<std::string> with_key(std::vector<std::string> cols) {
    cols.insert(cols.begin(), {"dyad", "session"});
    return cols;
}

inline const std::string& speaker_a(const Session& s) { return s.speakers[0].id; }
inline const std::string& speaker_b(const Session& s) { return s.speakers[1].id; }

inline tsa::AdfSpec adf_spec(const RunConfig& c) {
    tsa::AdfSpec spec;
    spec.lag_order = c.lag_order;
    spec.significance = c.significance;
    return spec;
}

}  // namespace detail

// ---------------------------------------------------------------- features

inline Table features_table(const Session& s, const RunConfig& c) {
    Table t(detail::with_key({"slice", "speaker", "words", "message_density", "content_density", "overlaps", "laughter"}));
    for (const auto& slice : corpus::segment(s, c.slice_width)) {
        for (const auto& sp : s.speakers) {
            const auto v = paraling::features(s, slice, sp.id);
            t.add_row(detail::row(s, static_cast<long long>(slice.index), sp.id, static_cast<long long>(v.words),
                                  v.message_density, v.content_density, static_cast<long long>(v.overlaps),
                                  static_cast<long long>(v.laughter)));
        }
    }
    return t;
}

// ---------------------------------------------------------------- converge

/// Partner difference y_t = A_t - B_{t-lag} for one feature.
inline std::vector<double> feature_difference(const paraling::SessionFeatures& f, const Session& s, FeatureKind k,
                                              std::size_t lag) {
    return tsa::difference(f.get(detail::speaker_a(s), k).values, f.get(detail::speaker_b(s), k).values, lag).values;
}

inline Table converge_table(const Session& s, const RunConfig& c) {
    Table t(detail::with_key({"feature", "lag", "n", "statistic", "critical_value", "significance", "converged", "status"}));
    const auto f = paraling::extract_series(s, c.slice_width);
    const auto spec = detail::adf_spec(c);
    for (auto k : paraling::kFeatureKinds) {
        const auto y = feature_difference(f, s, k, c.lag);
        const auto n = static_cast<long long>(y.size());
        const std::string feature(paraling::to_string(k));
        try {
            const auto r = tsa::adf_test(y, spec);
            t.add_row(detail::row(s, feature, static_cast<long long>(c.lag), n, r.statistic, r.critical_value,
                                  c.significance, r.converged, std::string("ok")));
        } catch (const RankDeficientError&) {
            t.add_row(detail::row(s, feature, static_cast<long long>(c.lag), n, Cell{}, Cell{}, c.significance, Cell{},
                                  std::string("rank_deficient")));
        } catch (const DegenerateSeriesError&) {
            t.add_row(detail::row(s, feature, static_cast<long long>(c.lag), n, Cell{}, Cell{}, c.significance, Cell{},
                                  std::string("degenerate")));
        } catch (const std::invalid_argument&) {
            t.add_row(detail::row(s, feature, static_cast<long long>(c.lag), n, Cell{}, Cell{}, c.significance, Cell{},
                                  std::string("too_short")));
        }
    }
    return t;
}

// ---------------------------------------------------------------- strength

/// Composite scores from converge rows with status ok, one row per session.
inline Table strength_table(const Table& converge) {
    using Key = std::pair<std::string, long long>;
    std::map<std::pair<FeatureKind, Key>, double> stats;
    for (std::size_t r = 0; r < converge.size(); ++r) {
        if (to_text(converge.at(r, "status")) != "ok") continue;
        const auto feature = paraling::parse_feature_kind(to_text(converge.at(r, "feature")));
        const auto session = to_number(converge.at(r, "session"));
        const auto stat = to_number(converge.at(r, "statistic"));
        if (!feature || !session || !stat) throw SchemaError("strength: converge row " + std::to_string(r + 1) + " is malformed");
        stats[{*feature, Key{to_text(converge.at(r, "dyad")), static_cast<long long>(*session)}}] = *stat;
    }
    if (stats.empty()) throw DegenerateSeriesError("strength: no session has a usable ADF statistic");
    const auto scores = tsa::convergence_strength(stats);
    std::vector<std::string> cols{"dyad", "session"};
    for (auto k : paraling::kFeatureKinds) cols.emplace_back(paraling::to_string(k));
    cols.emplace_back("composite");
    Table t(cols);
    for (const auto& [key, score] : scores) {
        std::vector<Cell> row{key.first, key.second};
        for (auto k : paraling::kFeatureKinds) {
            const auto it = score.scaled.find(k);
            row.emplace_back(it == score.scaled.end() ? Cell{} : Cell{it->second});
        }
        row.emplace_back(score.composite);
        t.add_row(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------- granger

/// One rating per slice; gaps repeat the previous rating, leading gaps take the first one.
inline std::vector<double> rapport_series(const Session& s, std::size_t slices) {
    if (s.rapport.empty()) throw Error("no rapport ratings");
    std::map<std::size_t, double> by_slice;
    for (const auto& r : s.rapport) by_slice[r.slice_index] = r.rating;
    std::vector<double> out(slices);
    double current = by_slice.begin()->second;
    for (std::size_t i = 0; i < slices; ++i) {
        if (auto it = by_slice.find(i); it != by_slice.end()) current = it->second;
        out[i] = current;
    }
    return out;
}

/// Effect: detrended, smoothed partner difference of a feature. Cause: rapport or another feature's difference.
inline Table granger_table(const Session& s, const RunConfig& c) {
    Table t(detail::with_key({"effect", "cause", "lag", "n", "f_statistic", "p_value", "df1", "df2", "significant", "status"}));
    const auto effect_kind = paraling::parse_feature_kind(c.effect);
    if (!effect_kind) throw UsageError("unknown effect feature '" + c.effect + "'");
    const auto f = paraling::extract_series(s, c.slice_width);
    auto emit_status = [&](long long n, const std::string& status) {
        t.add_row(detail::row(s, c.effect, c.cause, static_cast<long long>(c.lag), n, Cell{}, Cell{}, Cell{}, Cell{},
                              Cell{}, status));
    };

    const auto raw = feature_difference(f, s, *effect_kind, c.lag);
    const auto n = static_cast<long long>(raw.size());
    std::vector<double> cause;
    if (c.cause == "rapport") {
        if (s.rapport.empty()) {
            emit_status(n, "no_rapport");
            return t;
        }
        const auto r = rapport_series(s, f.slices.size());
        cause.assign(r.begin() + static_cast<std::ptrdiff_t>(std::min(c.lag, r.size())), r.end());
    } else {
        const auto cause_kind = paraling::parse_feature_kind(c.cause);
        if (!cause_kind) throw UsageError("unknown cause '" + c.cause + "'");
        cause = feature_difference(f, s, *cause_kind, c.lag);
    }
    try {
        auto effect = tsa::smooth(tsa::detrend(raw));
        if (c.cause != "rapport") cause = tsa::smooth(tsa::detrend(cause));
        const auto r = tsa::granger_causes(effect, cause, tsa::kGrangerLags, c.granger_significance, c.effect, c.cause);
        t.add_row(detail::row(s, c.effect, c.cause, static_cast<long long>(c.lag), n, r.f_statistic, r.p_value,
                              static_cast<long long>(r.df1), static_cast<long long>(r.df2), r.significant,
                              std::string(r.cause_dropped ? "cause_dropped" : "ok")));
    } catch (const RankDeficientError&) {
        emit_status(n, "rank_deficient");
    } catch (const DegenerateSeriesError&) {
        emit_status(n, "degenerate");
    } catch (const std::invalid_argument&) {
        emit_status(n, "too_short");
    }
    return t;
}

// ---------------------------------------------------------------- dtw

struct DtwTables {
    Table alignments;
    Table paths;
};

inline DtwTables dtw_tables(const Session& s, const RunConfig& c) {
    DtwTables out{Table(detail::with_key({"strategy", "speaker_a", "speaker_b", "n", "m", "raw_distance",
                                          "normalized_distance", "matched_end", "status"})),
                  Table(detail::with_key({"strategy", "step", "i", "j"}))};
    for (auto kind : corpus::kStrategyKinds) {
        const std::string name(corpus::to_string(kind));
        const auto track = s.strategies.find(kind);
        auto count = [&](const std::string& id) -> std::size_t {
            if (track == s.strategies.end()) return 0;
            const auto it = track->second.find(id);
            return it == track->second.end() ? 0 : it->second.size();
        };
        if (track == s.strategies.end() || count(detail::speaker_a(s)) == 0 || count(detail::speaker_b(s)) == 0) {
            out.alignments.add_row(detail::row(s, name, Cell{}, Cell{}, static_cast<long long>(count(detail::speaker_a(s))),
                                               static_cast<long long>(count(detail::speaker_b(s))), Cell{}, Cell{}, Cell{},
                                               std::string(track == s.strategies.end() ? "missing_track" : "empty_series")));
            continue;
        }
        const auto r = align::strategy_alignment(s, kind, align::DtwOptions{!c.closed_end});
        if (r.insufficient_events()) {
            out.alignments.add_row(detail::row(s, name, r.speaker_a, r.speaker_b, static_cast<long long>(r.n),
                                               static_cast<long long>(r.m), Cell{}, Cell{}, Cell{},
                                               std::string("insufficient_events")));
            continue;
        }
        const auto& a = *r.alignment;
        out.alignments.add_row(detail::row(s, name, r.speaker_a, r.speaker_b, static_cast<long long>(r.n),
                                           static_cast<long long>(r.m), a.raw_distance, a.normalized_distance,
                                           static_cast<long long>(a.matched_end_of_b), std::string("ok")));
        for (std::size_t k = 0; k < a.path.size(); ++k) {
            out.paths.add_row(detail::row(s, name, static_cast<long long>(k), static_cast<long long>(a.path[k].first),
                                          static_cast<long long>(a.path[k].second)));
        }
    }
    return out;
}

// ---------------------------------------------------------------- concept maps

/// Each utterance closes a sentence; utterances are taken in start order.
inline std::vector<conceptnet::Sentence> speaker_sentences(const Session& s, const std::string& speaker,
                                                           const conceptnet::Lexicon& lex) {
    std::vector<conceptnet::Sentence> out;
    for (const auto& u : s.utterances) {
        if (u.speaker != speaker) continue;
        auto part = conceptnet::preprocess(u.text, lex);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

inline conceptnet::WindowSpec window_spec(const RunConfig& c) { return {c.window, c.stop_unit}; }

inline std::pair<conceptnet::ConceptMap, conceptnet::ConceptMap> speaker_maps(const Session& s, const RunConfig& c,
                                                                              const conceptnet::Lexicon& lex) {
    return {conceptnet::build_map(speaker_sentences(s, detail::speaker_a(s), lex), window_spec(c)),
            conceptnet::build_map(speaker_sentences(s, detail::speaker_b(s), lex), window_spec(c))};
}

/// Graphviz digraph with weighted edges.
inline std::string to_dot(const conceptnet::ConceptMap& m, const std::string& name) {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char ch : s) {
            if (ch == '"' || ch == '\\') q += '\\';
            q += ch;
        }
        return q + '"';
    };
    std::string out = "digraph " + quote(name) + " {\n";
    for (const auto& n : m.nodes) out += "  " + quote(n) + ";\n";
    for (const auto& [e, w] : m.edges) {
        out += "  " + quote(e.first) + " -> " + quote(e.second) + " [weight=" + std::to_string(w) +
               ", label=" + std::to_string(w) + "];\n";
    }
    return out + "}\n";
}

struct MapTables {
    Table nodes{detail::with_key({"map", "concept"})};
    Table edges{detail::with_key({"map", "source", "target", "weight"})};
    std::vector<std::pair<std::string, std::string>> dot;  ///< (file stem, graph text)
};

inline void add_map(MapTables& t, const Session& s, const std::string& label, const conceptnet::ConceptMap& m) {
    for (const auto& n : m.nodes) t.nodes.add_row(detail::row(s, label, n));
    for (const auto& [e, w] : m.edges) t.edges.add_row(detail::row(s, label, e.first, e.second, w));
    const std::string stem = s.dyad_id + "_s" + std::to_string(s.session_index) + "_" + label;
    t.dot.emplace_back(stem, to_dot(m, stem));
}

inline MapTables conceptmap_build(const Session& s, const RunConfig& c, const conceptnet::Lexicon& lex) {
    MapTables t;
    const auto [a, b] = speaker_maps(s, c, lex);
    add_map(t, s, detail::speaker_a(s), a);
    add_map(t, s, detail::speaker_b(s), b);
    return t;
}

inline MapTables conceptmap_intersect(const Session& s, const RunConfig& c, const conceptnet::Lexicon& lex) {
    MapTables t;
    const auto [a, b] = speaker_maps(s, c, lex);
    add_map(t, s, "shared", conceptnet::intersect(a, b));
    return t;
}

inline std::vector<std::string> map_stats_columns() {
    return detail::with_key({"scope", "shared_concepts", "isolated_shared_concepts", "non_isolated_shared_concepts",
                             "shared_links", "shared_link_edges", "mean_betweenness"});
}

/// Scope "dyad" compares the partners; "worksheet:<speaker>" compares one partner with the worksheet map.
inline Table conceptmap_stats(const Session& s, const RunConfig& c, const conceptnet::Lexicon& lex,
                              const std::optional<conceptnet::ConceptMap>& worksheet) {
    Table t(map_stats_columns());
    auto add = [&](const std::string& scope, const conceptnet::MapStats& m) {
        t.add_row(detail::row(s, scope, m.shared_concepts, m.isolated_shared_concepts, m.non_isolated_shared_concepts,
                              m.shared_links, m.shared_link_edges, m.mean_betweenness));
    };
    const auto [a, b] = speaker_maps(s, c, lex);
    add("dyad", conceptnet::map_stats(conceptnet::intersect(a, b)));
    if (worksheet) {
        add("worksheet:" + detail::speaker_a(s), conceptnet::worksheet_overlap(a, *worksheet));
        add("worksheet:" + detail::speaker_b(s), conceptnet::worksheet_overlap(b, *worksheet));
    }
    return t;
}

// ---------------------------------------------------------------- correlate

struct Filter {
    std::string column;
    std::string value;
};

inline Filter parse_filter(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("filter '" + s + "' must look like column=value");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

/// (dyad, session) -> value of `column` over rows passing every filter.
inline std::map<std::pair<std::string, std::string>, double> keyed_values(const Table& t, const std::string& column,
                                                                          const std::vector<Filter>& filters,
                                                                          const std::string& label) {
    std::map<std::pair<std::string, std::string>, double> out;
    const auto dyad = t.column("dyad"), session = t.column("session"), col = t.column(column);
    std::vector<std::size_t> fcols;
    for (const auto& f : filters) fcols.push_back(t.column(f.column));
    for (std::size_t r = 0; r < t.size(); ++r) {
        const auto& row = t.rows()[r];
        bool keep = true;
        for (std::size_t k = 0; k < filters.size(); ++k) keep = keep && to_text(row[fcols[k]]) == filters[k].value;
        if (!keep) continue;
        const auto v = to_number(row[col]);
        if (!v || !std::isfinite(*v)) continue;
        const auto key = std::make_pair(to_text(row[dyad]), to_text(row[session]));
        if (!out.emplace(key, *v).second) {
            throw SchemaError(label + ": several rows for dyad '" + key.first + "' session " + key.second +
                              "; add a filter to select one");
        }
    }
    return out;
}

inline Table correlate_tables(const Table& x, const std::string& x_label, const Table& y, const std::string& y_label,
                              const RunConfig& c) {
    std::vector<Filter> fx, fy;
    for (const auto& f : c.where_x) fx.push_back(parse_filter(f));
    for (const auto& f : c.where_y) fy.push_back(parse_filter(f));
    const auto xv = keyed_values(x, c.x_column, fx, x_label);
    const auto yv = keyed_values(y, c.y_column, fy, y_label);
    std::vector<double> xs, ys;
    for (const auto& [k, v] : xv) {
        if (auto it = yv.find(k); it != yv.end()) {
            xs.push_back(v);
            ys.push_back(it->second);
        }
    }
    stats::CorrelationResult r;
    if (c.method == "pearson") {
        r = stats::pearson(xs, ys);
    } else if (c.method == "spearman") {
        r = stats::spearman(xs, ys);
    } else if (c.method == "point_biserial") {
        r = stats::point_biserial(xs, ys);
    } else {
        throw UsageError("unknown correlation method '" + c.method + "'");
    }
    Table t({"x_table", "x_column", "y_table", "y_column", "method", "n", "coefficient", "p_value"});
    t.add_row({x_label, c.x_column, y_label, c.y_column, c.method, static_cast<long long>(r.n), r.coefficient, r.p_value});
    return t;
}

}  // namespace dyadconv::app
