#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dyadconv/error.hpp"

namespace dyadconv::corpus {

/// Default thin-slice width in seconds.
inline constexpr double kSliceWidth = 30.0;

enum class Relationship { friends, strangers };

enum class StrategyKind { self_disclosure, shared_experience, praise };

inline constexpr std::array<StrategyKind, 3> kStrategyKinds{
    StrategyKind::self_disclosure, StrategyKind::shared_experience, StrategyKind::praise};

constexpr std::string_view to_string(Relationship r) {
    return r == Relationship::friends ? "friends" : "strangers";
}

constexpr std::string_view to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::self_disclosure: return "self_disclosure";
        case StrategyKind::shared_experience: return "shared_experience";
        case StrategyKind::praise: return "praise";
    }
    return "unknown";
}

inline std::optional<Relationship> parse_relationship(std::string_view s) {
    if (s == "friends") return Relationship::friends;
    if (s == "strangers") return Relationship::strangers;
    return std::nullopt;
}

inline std::optional<StrategyKind> parse_strategy_kind(std::string_view s) {
    for (auto k : kStrategyKinds) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

struct Speaker {
    std::string id;
    std::string gender;

    bool operator==(const Speaker&) const = default;
};

struct Utterance {
    std::string speaker;
    double start = 0.0;
    double end = 0.0;
    std::string text;
    std::optional<int> clause_count;  ///< absent: derived by the clause heuristic
    int laughter_count = 0;

    [[nodiscard]] double duration() const { return end - start; }
    bool operator==(const Utterance&) const = default;
};

struct RapportRating {
    std::size_t slice_index = 0;
    double rating = 0.0;  ///< thin-slice rating on a 1..7 scale

    bool operator==(const RapportRating&) const = default;
};

/// strategy kind -> speaker id -> sorted event times (seconds)
using StrategyTracks = std::map<StrategyKind, std::map<std::string, std::vector<double>>>;

/// One recorded interaction of a dyad.
struct Session {
    std::string dyad_id;
    int session_index = 1;
    Relationship relationship = Relationship::strangers;
    std::array<Speaker, 2> speakers;
    double duration = 0.0;
    std::vector<Utterance> utterances;  ///< sorted by start
    std::vector<RapportRating> rapport;
    StrategyTracks strategies;

    [[nodiscard]] bool has_speaker(std::string_view id) const {
        return speakers[0].id == id || speakers[1].id == id;
    }

    bool operator==(const Session&) const = default;
};

struct Slice {
    std::size_t index = 0;
    double begin = 0.0;
    double end = 0.0;  ///< exclusive; equals the session end for a partial final slice

    [[nodiscard]] double width() const { return end - begin; }
    bool operator==(const Slice&) const = default;
};

/// Number of slices of the given width tiling [0, duration).
inline std::size_t slice_count(double duration, double width = kSliceWidth) {
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw std::invalid_argument("segment: width must be > 0");
    }
    if (!(duration > 0.0)) return 0;
    const double ratio = duration / width;
    auto n = static_cast<std::size_t>(std::ceil(ratio));
    // guard against 3600/30 landing a hair above 120
    if (n > 0 && static_cast<double>(n - 1) * width >= duration) --n;
    return n;
}

inline std::vector<Slice> segment(double duration, double width = kSliceWidth) {
    const std::size_t n = slice_count(duration, width);
    std::vector<Slice> slices;
    slices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double b = static_cast<double>(i) * width;
        const double e = std::min(static_cast<double>(i + 1) * width, duration);
        slices.push_back({i, b, e});
    }
    return slices;
}

inline std::vector<Slice> segment(const Session& session, double width = kSliceWidth) {
    return segment(session.duration, width);
}

/**
 * Check every Session invariant; throws SchemaError naming the first
 * offending element. Utterances must already be sorted.
 */
inline void validate(const Session& s) {
    auto fail = [](const std::string& what) { throw SchemaError(what); };
    if (s.dyad_id.empty()) fail("session header: field 'dyad_id' is empty");
    if (s.session_index < 1) fail("session header: field 'session_index' must be >= 1");
    if (s.speakers[0].id.empty() || s.speakers[1].id.empty()) fail("session header: empty speaker id");
    if (s.speakers[0].id == s.speakers[1].id) fail("session must have exactly two speakers");
    if (!(s.duration >= 0.0) || !std::isfinite(s.duration)) fail("session header: field 'duration' must be >= 0");

    for (std::size_t i = 0; i < s.utterances.size(); ++i) {
        const auto& u = s.utterances[i];
        const std::string where = "utterance " + std::to_string(i + 1);
        if (!s.has_speaker(u.speaker)) {
            fail(where + ": session must have exactly two speakers (unknown speaker '" + u.speaker + "')");
        }
        if (!(u.start >= 0.0) || !std::isfinite(u.start)) fail(where + ", field 'start': negative timestamp");
        if (!(u.end >= u.start) || !std::isfinite(u.end)) fail(where + ", field 'end': end < start");
        if (u.end > s.duration) fail(where + ", field 'end': exceeds session duration");
        if (u.clause_count && *u.clause_count < 0) fail(where + ", field 'clause_count': negative");
        if (u.laughter_count < 0) fail(where + ", field 'laughter_count': negative");
        if (i > 0 && u.start < s.utterances[i - 1].start) fail(where + ": utterances not sorted by start");
    }
    const std::size_t n_slices = slice_count(s.duration);
    for (std::size_t i = 0; i < s.rapport.size(); ++i) {
        const auto& r = s.rapport[i];
        const std::string where = "rapport " + std::to_string(i + 1);
        if (!(r.rating >= 1.0 && r.rating <= 7.0)) fail(where + ", field 'rating': outside [1,7]");
        if (r.slice_index >= n_slices) fail(where + ", field 'slice_index': beyond session end");
    }
    for (const auto& [kind, per_speaker] : s.strategies) {
        for (const auto& [speaker, times] : per_speaker) {
            const std::string where = "strategy " + std::string(to_string(kind)) + " of '" + speaker + "'";
            if (!s.has_speaker(speaker)) {
                fail(where + ": session must have exactly two speakers (unknown speaker '" + speaker + "')");
            }
            for (std::size_t i = 0; i < times.size(); ++i) {
                if (!(times[i] >= 0.0) || times[i] > s.duration) fail(where + ": timestamp outside [0, duration]");
                if (i > 0 && times[i] < times[i - 1]) fail(where + ": timestamps not sorted");
            }
        }
    }
}

}  // namespace dyadconv::corpus
