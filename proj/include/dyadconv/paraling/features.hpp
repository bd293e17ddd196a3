#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dyadconv/corpus/session.hpp"
#include "dyadconv/corpus/text.hpp"

namespace dyadconv::paraling {

using corpus::Session;
using corpus::Slice;
using corpus::Utterance;

enum class FeatureKind { words, message_density, content_density, overlaps, laughter };

inline constexpr std::array<FeatureKind, 5> kFeatureKinds{FeatureKind::words, FeatureKind::message_density,
                                                          FeatureKind::content_density, FeatureKind::overlaps,
                                                          FeatureKind::laughter};

constexpr std::string_view to_string(FeatureKind k) {
    switch (k) {
        case FeatureKind::words: return "words";
        case FeatureKind::message_density: return "message_density";
        case FeatureKind::content_density: return "content_density";
        case FeatureKind::overlaps: return "overlaps";
        case FeatureKind::laughter: return "laughter";
    }
    return "unknown";
}

inline std::optional<FeatureKind> parse_feature_kind(std::string_view s) {
    for (auto k : kFeatureKinds) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

/// Integer rounding with ties going up; the epsilon absorbs products like 3 * (1/3).
inline long long round_half_up(double x) { return static_cast<long long>(std::floor(x + 0.5 + 1e-9)); }

/**
 * Share of one utterance that falls into one slice.
 *
 * Counts are prorated by the cumulative fraction of the utterance's duration
 * that lies before each slice boundary, so the pieces of a straddling
 * utterance sum exactly to its total. Zero-length utterances belong entirely
 * to the slice containing their start.
 */
struct Attribution {
    const Utterance* utterance = nullptr;
    double fraction_begin = 0.0;  ///< cumulative share of the utterance before the slice
    double fraction_end = 1.0;    ///< cumulative share up to the slice end
    bool starts_in_slice = false;

    [[nodiscard]] long long prorate(long long total) const {
        return round_half_up(static_cast<double>(total) * fraction_end) -
               round_half_up(static_cast<double>(total) * fraction_begin);
    }
};

namespace detail {

inline bool contains_start(const Slice& slice, double t, bool last_slice) {
    return t >= slice.begin && (t < slice.end || (last_slice && t <= slice.end));
}

inline int clauses_of(const Utterance& u) {
    return u.clause_count ? *u.clause_count : corpus::clause_count_heuristic(u.text);
}

}  // namespace detail

/// Utterances of `speaker` whose interval intersects `slice`, with their shares.
inline std::vector<Attribution> attribute(const Session& session, const Slice& slice, std::string_view speaker) {
    const bool last_slice = slice.end >= session.duration;
    std::vector<Attribution> out;
    for (const auto& u : session.utterances) {
        if (u.start >= slice.end && !(last_slice && u.start == slice.end && u.duration() == 0.0)) break;
        if (u.speaker != speaker) continue;
        const bool starts_here = detail::contains_start(slice, u.start, last_slice);
        const double dur = u.duration();
        if (dur <= 0.0) {
            if (starts_here) out.push_back({&u, 0.0, 1.0, true});
            continue;
        }
        const double lo = std::max(u.start, slice.begin);
        const double hi = std::min(u.end, slice.end);
        if (hi <= lo) continue;
        const double f_begin = std::clamp((slice.begin - u.start) / dur, 0.0, 1.0);
        const double f_end = last_slice ? 1.0 : std::clamp((slice.end - u.start) / dur, 0.0, 1.0);
        out.push_back({&u, f_begin, f_end, starts_here});
    }
    return out;
}

inline long long word_count(const Session& session, const Slice& slice, std::string_view speaker) {
    long long n = 0;
    for (const auto& a : attribute(session, slice, speaker)) n += a.prorate(corpus::word_count(a.utterance->text));
    return n;
}

inline long long clause_total(const Session& session, const Slice& slice, std::string_view speaker) {
    long long n = 0;
    for (const auto& a : attribute(session, slice, speaker)) n += a.prorate(detail::clauses_of(*a.utterance));
    return n;
}

inline long long character_total(const Session& session, const Slice& slice, std::string_view speaker) {
    long long n = 0;
    for (const auto& a : attribute(session, slice, speaker)) n += a.prorate(corpus::character_count(a.utterance->text));
    return n;
}

/**
 * Clauses per second between the first and last utterance onsets inside the
 * slice (onsets before the slice are clamped to its start). Zero when fewer
 * than two utterances are attributed or the onsets coincide.
 */
inline double message_density(const Session& session, const Slice& slice, std::string_view speaker) {
    const auto parts = attribute(session, slice, speaker);
    if (parts.size() < 2) return 0.0;
    long long clauses = 0;
    double first = slice.end;
    double last = slice.begin;
    for (const auto& a : parts) {
        clauses += a.prorate(detail::clauses_of(*a.utterance));
        const double onset = std::max(a.utterance->start, slice.begin);
        first = std::min(first, onset);
        last = std::max(last, onset);
    }
    const double span = last - first;
    if (span <= 0.0) return 0.0;
    return static_cast<double>(clauses) / span;
}

/// Characters (non-whitespace, markers excluded) per clause; 0 without clauses.
inline double content_density(const Session& session, const Slice& slice, std::string_view speaker) {
    const long long clauses = clause_total(session, slice, speaker);
    if (clauses <= 0) return 0.0;
    return static_cast<double>(character_total(session, slice, speaker)) / static_cast<double>(clauses);
}

/// Laughter events of utterances starting inside the slice.
inline long long laughter_count(const Session& session, const Slice& slice, std::string_view speaker) {
    long long n = 0;
    for (const auto& a : attribute(session, slice, speaker)) {
        if (a.starts_in_slice) n += a.utterance->laughter_count;
    }
    return n;
}

using Interval = std::pair<double, double>;

/// Sorted, disjoint union of intervals; touching intervals are merged.
inline std::vector<Interval> interval_union(std::vector<Interval> v) {
    std::sort(v.begin(), v.end());
    std::vector<Interval> out;
    for (const auto& iv : v) {
        if (iv.second <= iv.first) continue;
        if (!out.empty() && iv.first <= out.back().second) {
            out.back().second = std::max(out.back().second, iv.second);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

/// Intervals where both sets are active; only positive-length pieces are kept.
inline std::vector<Interval> interval_intersection(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].first, b[j].first);
        const double hi = std::min(a[i].second, b[j].second);
        if (hi > lo) {
            if (!out.empty() && out.back().second >= lo) out.back().second = hi;
            else out.emplace_back(lo, hi);
        }
        if (a[i].second < b[j].second) ++i;
        else ++j;
    }
    return out;
}

/// Maximal joint-speech intervals inside the slice. Same value for both speakers.
inline long long overlap_count(const Session& session, const Slice& slice) {
    std::array<std::vector<Interval>, 2> per;
    for (const auto& u : session.utterances) {
        if (u.start >= slice.end) break;
        const double lo = std::max(u.start, slice.begin);
        const double hi = std::min(u.end, slice.end);
        if (hi <= lo) continue;
        const std::size_t who = u.speaker == session.speakers[0].id ? 0 : 1;
        per[who].emplace_back(lo, hi);
    }
    return static_cast<long long>(
        interval_intersection(interval_union(std::move(per[0])), interval_union(std::move(per[1]))).size());
}

struct FeatureVector {
    double words = 0.0;
    double message_density = 0.0;
    double content_density = 0.0;
    double overlaps = 0.0;
    double laughter = 0.0;

    [[nodiscard]] double get(FeatureKind k) const {
        switch (k) {
            case FeatureKind::words: return words;
            case FeatureKind::message_density: return message_density;
            case FeatureKind::content_density: return content_density;
            case FeatureKind::overlaps: return overlaps;
            case FeatureKind::laughter: return laughter;
        }
        return 0.0;
    }
};

inline FeatureVector features(const Session& session, const Slice& slice, std::string_view speaker) {
    FeatureVector v;
    v.words = static_cast<double>(word_count(session, slice, speaker));
    v.message_density = message_density(session, slice, speaker);
    v.content_density = content_density(session, slice, speaker);
    v.overlaps = static_cast<double>(overlap_count(session, slice));
    v.laughter = static_cast<double>(laughter_count(session, slice, speaker));
    return v;
}

struct FeatureSeries {
    std::string speaker;
    FeatureKind kind = FeatureKind::words;
    std::vector<double> values;  ///< one value per slice
};

struct SessionFeatures {
    std::vector<Slice> slices;
    std::map<std::pair<std::string, FeatureKind>, FeatureSeries> series;

    [[nodiscard]] const FeatureSeries& get(const std::string& speaker, FeatureKind kind) const {
        return series.at({speaker, kind});
    }
};

/// All five feature series for both speakers.
inline SessionFeatures extract_series(const Session& session, double width = corpus::kSliceWidth) {
    SessionFeatures out;
    out.slices = corpus::segment(session, width);
    for (const auto& sp : session.speakers) {
        for (auto k : kFeatureKinds) {
            out.series[{sp.id, k}] = FeatureSeries{sp.id, k, std::vector<double>(out.slices.size(), 0.0)};
        }
    }
    for (const auto& slice : out.slices) {
        for (const auto& sp : session.speakers) {
            const FeatureVector v = features(session, slice, sp.id);
            for (auto k : kFeatureKinds) out.series[{sp.id, k}].values[slice.index] = v.get(k);
        }
    }
    return out;
}

}  // namespace dyadconv::paraling
