#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dyadconv/align/strategy.hpp"
#include "dyadconv/corpus/session.hpp"
#include "dyadconv/corpus/text.hpp"
#include "dyadconv/random.hpp"

namespace dyadconv::synth {

struct PlantedCausality {
    double strength = 0.8;
    std::size_t lag = 1;
};

struct SynthSpec {
    std::uint64_t seed = 1;
    std::size_t n_slices = 120;
    bool convergent = true;
    double ar_coefficient = 0.5;  ///< persistence of the partner difference when convergent
    double noise_sd = 1.0;
    std::optional<PlantedCausality> planted_causality;
    double strategy_event_rate = 0.5;  ///< events per minute
    double reciprocity = 0.0;          ///< seconds partner B lags partner A
    double jitter_sd = 0.0;            ///< spread of partner B's event times around the shifted times
};

inline void validate(const SynthSpec& spec) {
    if (spec.n_slices < 20) throw std::invalid_argument("SynthSpec: n_slices must be >= 20");
    if (spec.convergent && !(std::abs(spec.ar_coefficient) < 1.0)) {
        throw std::invalid_argument("SynthSpec: |ar_coefficient| must be < 1 for a convergent pair");
    }
    if (!(spec.noise_sd >= 0.0)) throw std::invalid_argument("SynthSpec: noise_sd must be >= 0");
}

/// Stream ids keep the generators independent under one seed.
enum class Stream : std::uint64_t { features = 1, rapport = 2, strategy = 3, session = 4 };

inline Rng stream_rng(const SynthSpec& spec, Stream s, std::uint64_t sub = 0) {
    return Rng(derive_seed(derive_seed(spec.seed, static_cast<std::uint64_t>(s)), sub));
}

/**
 * Two partner series whose difference d_t = A_t - B_t is a stationary AR(1)
 * with coefficient phi (convergent) or a random walk (not convergent).
 * A_t itself is white noise around zero.
 */
inline std::pair<std::vector<double>, std::vector<double>> gen_feature_pair(const SynthSpec& spec) {
    validate(spec);
    Rng rng = stream_rng(spec, Stream::features);
    const double phi = spec.convergent ? spec.ar_coefficient : 1.0;
    std::vector<double> a(spec.n_slices), b(spec.n_slices);
    double d = 0.0;
    for (std::size_t t = 0; t < spec.n_slices; ++t) {
        d = phi * d + spec.noise_sd * rng.normal();
        a[t] = spec.noise_sd * rng.normal();
        b[t] = a[t] - d;
    }
    return {std::move(a), std::move(b)};
}

/**
 * Rapport series r_t (standard normal) and a partner-difference series that
 * drops as lagged rapport rises: d_t = -strength * r_{t-lag} + noise.
 * Strength 0 gives independent series.
 */
inline std::pair<std::vector<double>, std::vector<double>> gen_rapport_driven(const SynthSpec& spec) {
    validate(spec);
    if (!spec.planted_causality) throw std::invalid_argument("gen_rapport_driven: planted_causality not set");
    const auto [strength, lag] = *spec.planted_causality;
    Rng rng = stream_rng(spec, Stream::rapport);
    std::vector<double> rapport(spec.n_slices), diff(spec.n_slices);
    for (std::size_t t = 0; t < spec.n_slices; ++t) rapport[t] = rng.normal();
    for (std::size_t t = 0; t < spec.n_slices; ++t) {
        const double driven = t >= lag ? -strength * rapport[t - lag] : 0.0;
        diff[t] = driven + spec.noise_sd * rng.normal();
    }
    return {std::move(rapport), std::move(diff)};
}

/**
 * Partner A's events follow a Poisson process over the session; partner B
 * repeats each of them `reciprocity` seconds later with Gaussian jitter.
 * Events that would fall outside [0, duration] are dropped.
 */
inline std::pair<align::EventSeries, align::EventSeries> gen_strategy_events(
    const SynthSpec& spec, double duration, corpus::StrategyKind kind = corpus::StrategyKind::self_disclosure,
    std::string speaker_a = "A", std::string speaker_b = "B") {
    if (!(spec.strategy_event_rate > 0.0)) throw std::invalid_argument("gen_strategy_events: rate must be > 0");
    Rng rng = stream_rng(spec, Stream::strategy, static_cast<std::uint64_t>(kind));
    align::EventSeries a{kind, std::move(speaker_a), {}};
    align::EventSeries b{kind, std::move(speaker_b), {}};
    const double rate_per_second = spec.strategy_event_rate / 60.0;
    for (double t = rng.exponential(rate_per_second); t <= duration; t += rng.exponential(rate_per_second)) {
        a.timestamps.push_back(t);
        const double jitter = spec.jitter_sd > 0.0 ? spec.jitter_sd * rng.normal() : 0.0;
        const double tb = t + spec.reciprocity + jitter;
        if (tb >= 0.0 && tb <= duration) b.timestamps.push_back(tb);
    }
    std::sort(b.timestamps.begin(), b.timestamps.end());
    return {std::move(a), std::move(b)};
}

struct SessionSpec {
    SynthSpec series;
    std::string dyad_id = "d01";
    int session_index = 1;
    corpus::Relationship relationship = corpus::Relationship::friends;
    std::array<corpus::Speaker, 2> speakers{corpus::Speaker{"A", "female"}, corpus::Speaker{"B", "male"}};
    double base_words = 30.0;   ///< mean words per slice for partner A
    double words_scale = 4.0;   ///< words per unit of the planted feature series
    double seconds_per_word = 0.35;
    double laughter_probability = 0.1;  ///< per utterance
    bool with_text_filler = true;
};

namespace detail {

inline constexpr std::array<const char*, 24> kFiller{
    "we",     "add",       "the",      "number", "to",        "both",   "sides",    "then",
    "divide", "by",        "variable", "x",      "subtract",  "five",   "terms",    "simplify",
    "so",     "multiply",  "equation", "yeah",   "distribute", "isolate", "okay",   "answer"};

inline std::string filler_text(Rng& rng, long long words, double laughter_probability) {
    std::string text;
    long long in_sentence = 0;
    const long long sentence_len = 4 + static_cast<long long>(rng.below(5));
    for (long long w = 0; w < words; ++w) {
        if (!text.empty()) text.push_back(' ');
        text += kFiller[rng.below(kFiller.size())];
        if (++in_sentence == sentence_len || w + 1 == words) {
            text.push_back(rng.uniform() < 0.2 ? '?' : '.');
            in_sentence = 0;
        }
    }
    if (rng.uniform() < laughter_probability) text += text.empty() ? "[laughter]" : " [laughter]";
    return text;
}

}  // namespace detail

/**
 * A full transcript whose word counts follow gen_feature_pair: partner A
 * speaks about base_words + words_scale * A_t words in slice t and partner B
 * base_words + words_scale * B_t. Each partner's words are split into one to
 * three utterances, each placed at random inside its own share of the
 * slice, so every word stays in its slice. Rapport ratings and strategy
 * tracks are added too.
 */
inline corpus::Session gen_session(const SessionSpec& spec) {
    const SynthSpec& s = spec.series;
    validate(s);
    corpus::Session session;
    session.dyad_id = spec.dyad_id;
    session.session_index = spec.session_index;
    session.relationship = spec.relationship;
    session.speakers = spec.speakers;
    session.duration = static_cast<double>(s.n_slices) * corpus::kSliceWidth;

    const auto [fa, fb] = gen_feature_pair(s);
    Rng rng = stream_rng(s, Stream::session);
    for (std::size_t t = 0; t < s.n_slices; ++t) {
        const double slice_begin = static_cast<double>(t) * corpus::kSliceWidth;
        const std::array<double, 2> target{fa[t], fb[t]};
        for (std::size_t who = 0; who < 2; ++who) {
            const auto words = std::max<long long>(
                0, std::llround(spec.base_words + spec.words_scale * target[who]));
            if (words == 0) continue;
            const auto parts = std::min<long long>(words, 1 + static_cast<long long>(rng.below(3)));
            long long left = words;
            for (long long p = 0; p < parts; ++p) {
                const long long w = p + 1 == parts ? left : std::max<long long>(1, left / (parts - p));
                left -= w;
                corpus::Utterance u;
                u.speaker = spec.speakers[who].id;
                const double window = corpus::kSliceWidth / static_cast<double>(parts);
                const double length = std::min(static_cast<double>(w) * spec.seconds_per_word, 0.9 * window);
                u.start = slice_begin + static_cast<double>(p) * window + rng.uniform(0.0, window - length);
                u.end = u.start + length;
                if (spec.with_text_filler) {
                    u.text = detail::filler_text(rng, w, spec.laughter_probability);
                } else {
                    u.text = std::string(static_cast<std::size_t>(w) * 2 - 1, ' ');
                    for (long long k = 0; k < w; ++k) u.text[static_cast<std::size_t>(2 * k)] = 'w';
                }
                u.laughter_count = corpus::count_laughter_markers(u.text);
                session.utterances.push_back(std::move(u));
            }
        }
    }
    std::stable_sort(session.utterances.begin(), session.utterances.end(),
                     [](const corpus::Utterance& a, const corpus::Utterance& b) { return a.start < b.start; });

    SynthSpec rapport_spec = s;
    if (!rapport_spec.planted_causality) rapport_spec.planted_causality = PlantedCausality{0.0, 1};
    const auto rapport = gen_rapport_driven(rapport_spec).first;
    for (std::size_t t = 0; t < s.n_slices; ++t) {
        const double rating = std::clamp(std::round(4.0 + 1.2 * rapport[t]), 1.0, 7.0);
        session.rapport.push_back({t, rating});
    }

    for (auto kind : corpus::kStrategyKinds) {
        auto [ea, eb] = gen_strategy_events(s, session.duration, kind, spec.speakers[0].id, spec.speakers[1].id);
        session.strategies[kind][ea.speaker] = std::move(ea.timestamps);
        session.strategies[kind][eb.speaker] = std::move(eb.timestamps);
    }
    corpus::validate(session);
    return session;
}

struct CorpusSpec {
    std::uint64_t seed = 1;
    std::size_t dyads = 2;
    std::size_t sessions_per_dyad = 5;
    std::size_t n_slices = 120;
};

/// Dyads alternate friends/strangers; sessions alternate convergent/divergent word counts.
inline std::vector<corpus::Session> gen_corpus(const CorpusSpec& spec) {
    std::vector<corpus::Session> out;
    for (std::size_t d = 0; d < spec.dyads; ++d) {
        for (std::size_t k = 0; k < spec.sessions_per_dyad; ++k) {
            SessionSpec ss;
            ss.series.seed = derive_seed(spec.seed, d * 64 + k);
            ss.series.n_slices = spec.n_slices;
            ss.series.convergent = (d + k) % 2 == 0;
            ss.series.strategy_event_rate = 0.4 + 0.1 * static_cast<double>(d % 3);
            ss.series.reciprocity = 5.0 * static_cast<double>(k);
            ss.series.jitter_sd = 2.0;
            ss.series.planted_causality = PlantedCausality{0.5, 1};
            char id[16];
            std::snprintf(id, sizeof id, "d%02zu", d + 1);
            ss.dyad_id = id;
            ss.session_index = static_cast<int>(k + 1);
            ss.relationship = d % 2 == 0 ? corpus::Relationship::friends : corpus::Relationship::strangers;
            ss.speakers = {corpus::Speaker{"A", d % 2 == 0 ? "female" : "male"},
                           corpus::Speaker{"B", d % 3 == 0 ? "male" : "female"}};
            out.push_back(gen_session(ss));
        }
    }
    return out;
}

}  // namespace dyadconv::synth
