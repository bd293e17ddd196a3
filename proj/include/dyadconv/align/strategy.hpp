#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dyadconv/align/dtw.hpp"
#include "dyadconv/corpus/session.hpp"
#include "dyadconv/error.hpp"

namespace dyadconv::align {

/// One speaker's use of one strategy over a session.
struct EventSeries {
    corpus::StrategyKind kind = corpus::StrategyKind::self_disclosure;
    std::string speaker;
    std::vector<double> timestamps;  ///< seconds from session start, non-decreasing
};

/// Speakers need at least this many events each for a meaningful warp.
inline constexpr std::size_t kMinEventsPerSpeaker = 2;

struct StrategyAlignment {
    corpus::StrategyKind kind = corpus::StrategyKind::self_disclosure;
    std::string speaker_a;  ///< anchored series
    std::string speaker_b;  ///< open-ended series: the one with more events
    std::size_t n = 0;
    std::size_t m = 0;
    std::optional<AlignmentResult> alignment;  ///< empty when a speaker has too few events

    [[nodiscard]] bool insufficient_events() const { return !alignment.has_value(); }
};

/**
 * Align the two speakers' event times for one strategy. The speaker with more
 * events becomes the open-ended series B; on equal counts B is the speaker
 * whose id sorts last.
 */
inline StrategyAlignment strategy_alignment(const corpus::Session& session, corpus::StrategyKind kind,
                                            DtwOptions options = {}) {
    const auto track = session.strategies.find(kind);
    if (track == session.strategies.end()) {
        throw Error("strategy_alignment: missing " + std::string(corpus::to_string(kind)) + " track");
    }
    auto events_of = [&](const std::string& id) -> std::vector<double> {
        const auto it = track->second.find(id);
        return it == track->second.end() ? std::vector<double>{} : it->second;
    };

    std::string first = session.speakers[0].id;
    std::string second = session.speakers[1].id;
    if (second < first) std::swap(first, second);
    std::vector<double> ev_first = events_of(first);
    std::vector<double> ev_second = events_of(second);
    if (ev_first.empty() || ev_second.empty()) {
        throw Error("strategy_alignment: empty event series for " + std::string(corpus::to_string(kind)));
    }

    StrategyAlignment out;
    out.kind = kind;
    const bool first_is_b = ev_first.size() > ev_second.size();
    out.speaker_a = first_is_b ? second : first;
    out.speaker_b = first_is_b ? first : second;
    const auto& a = first_is_b ? ev_second : ev_first;
    const auto& b = first_is_b ? ev_first : ev_second;
    out.n = a.size();
    out.m = b.size();
    if (a.size() < kMinEventsPerSpeaker || b.size() < kMinEventsPerSpeaker) return out;
    out.alignment = dtw(a, b, options);
    return out;
}

}  // namespace dyadconv::align
