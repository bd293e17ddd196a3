#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dyadconv/align/dtw.hpp"
#include "dyadconv/app/run.hpp"
#include "dyadconv/conceptnet/betweenness.hpp"
#include "dyadconv/corpus/text.hpp"
#include "dyadconv/paraling/features.hpp"
#include "dyadconv/random.hpp"
#include "dyadconv/stats/correlation.hpp"
#include "dyadconv/stats/distributions.hpp"
#include "dyadconv/stats/tests.hpp"
#include "dyadconv/synth/generators.hpp"
#include "dyadconv/tsa/adf_test.hpp"
#include "dyadconv/tsa/critical_values.hpp"
#include "dyadconv/tsa/granger.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
namespace cn = dyadconv::conceptnet;
namespace st = dyadconv::stats;
namespace sy = dyadconv::synth;
namespace tsa = dyadconv::tsa;
using dyadconv::Rng;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

std::vector<double> difference_of(const std::pair<std::vector<double>, std::vector<double>>& ab) {
    std::vector<double> d(ab.first.size());
    for (std::size_t t = 0; t < d.size(); ++t) d[t] = ab.first[t] - ab.second[t];
    return d;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1
Outcome adf_calibration() {
    const auto t0 = std::chrono::steady_clock::now();
    int false_conv = 0, detected = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        sy::SynthSpec walk;
        walk.seed = seed;
        walk.convergent = false;
        if (tsa::adf_test(difference_of(sy::gen_feature_pair(walk))).converged) ++false_conv;

        sy::SynthSpec noise;
        noise.seed = seed;
        noise.convergent = true;
        noise.ar_coefficient = 0.0;
        if (tsa::adf_test(difference_of(sy::gen_feature_pair(noise))).converged) ++detected;
    }
    const double secs = seconds_since(t0);
    return {false_conv <= 5 && detected >= 95 && secs < 10.0,
            fmt("random walks converged %g/100 (<= 5), white noise detected %g/100 (>= 95), %.2f s (< 10)",
                false_conv, detected, secs)};
}

// 2
Outcome adf_critical_values() {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path cache = fs::path(DYADCONV_ACCEPTANCE_CACHE) / "drift_trend_n1000.json";
    const bool cached = fs::exists(cache);
    tsa::SimulationPlan plan;
    plan.forms = {tsa::AdfForm::drift_trend};
    plan.sizes = {1000};
    plan.replications = 100000;
    const auto table = tsa::load_or_simulate(cache, plan);
    const double c1 = table.lookup(tsa::AdfForm::drift_trend, 0.01, 1000);
    const double c5 = table.lookup(tsa::AdfForm::drift_trend, 0.05, 1000);
    const double secs = seconds_since(t0);
    const bool ok = std::abs(c1 + 3.96) <= 0.05 && std::abs(c5 + 3.41) <= 0.05 && secs < 120.0;
    return {ok, fmt("1%% %.4f (-3.96 +/- 0.05), 5%% %.4f (-3.41 +/- 0.05), %.2f s (< 120)", c1, c5, secs) +
                    (cached ? ", from cache" : ", simulated")};
}

// 3
Outcome granger_calibration() {
    int planted = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        sy::SynthSpec s;
        s.seed = seed;
        s.planted_causality = sy::PlantedCausality{0.8, 1};
        const auto [rapport, diff] = sy::gen_rapport_driven(s);
        if (tsa::granger_causes(diff, rapport).significant) ++planted;
    }
    constexpr int kNullSeeds = 1000;
    int independent = 0, reverse = 0;
    for (std::uint64_t seed = 1; seed <= kNullSeeds; ++seed) {
        sy::SynthSpec s;
        s.seed = 5000 + seed;
        s.planted_causality = sy::PlantedCausality{0.0, 1};
        const auto [r0, d0] = sy::gen_rapport_driven(s);
        if (tsa::granger_causes(d0, r0).significant) ++independent;

        s.planted_causality = sy::PlantedCausality{0.8, 1};
        const auto [r1, d1] = sy::gen_rapport_driven(s);
        if (tsa::granger_causes(r1, d1).significant) ++reverse;
    }
    const double ind_pct = 100.0 * independent / kNullSeeds;
    const double rev_pct = 100.0 * reverse / kNullSeeds;
    const bool ok = planted >= 90 && std::abs(ind_pct - 5.0) <= 3.0 && std::abs(rev_pct - 5.0) <= 3.0;
    return {ok, fmt("planted detected %g/100 (>= 90), independent flagged %.1f%%, reverse flagged %.1f%% "
                    "(5 +/- 3, %g seeds)",
                    planted, ind_pct, rev_pct, kNullSeeds)};
}

// 4
Outcome dtw_oracle() {
    Rng rng(404);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> a(1 + rng.below(6)), b(1 + rng.below(6));
        for (auto& v : a) v = static_cast<double>(rng.below(21));
        for (auto& v : b) v = static_cast<double>(rng.below(21));
        const bool open_end = trial % 2 == 0;
        const double dp = dyadconv::align::dtw(a, b, {open_end}).raw_distance;
        if (dp != oracle::dtw_brute_force(a, b, open_end)) ++mismatches;
    }
    return {mismatches == 0, fmt("%g/500 instances differ from path enumeration (open and closed end alternate)", mismatches)};
}

// 5
Outcome dtw_parameters() {
    namespace al = dyadconv::align;
    const std::vector<double> s{3, 10, 11, 40};
    const double identical = al::dtw(s, s).normalized_distance;
    const auto single = al::dtw(std::vector<double>{0}, std::vector<double>{1});
    Rng rng(505);
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(1 + rng.below(12)), b(1 + rng.below(12));
        for (auto& v : a) v = rng.uniform(0, 600);
        for (auto& v : b) v = rng.uniform(0, 600);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (al::dtw(a, b, {true}).raw_distance > al::dtw(a, b, {false}).raw_distance) ++violations;
    }
    const bool ok = identical == 0.0 && single.raw_distance == 2.0 && single.normalized_distance == 1.0 && violations == 0;
    return {ok, fmt("identical %g, [0] vs [1] raw %g normalized %g, open end above full match on %g/100 pairs",
                    identical, single.raw_distance, single.normalized_distance, violations)};
}

cn::ConceptMap random_map(Rng& rng) {
    cn::ConceptMap m;
    const std::size_t n = 1 + rng.below(6);
    for (std::size_t v = 0; v < n; ++v) m.nodes.insert(std::string(1, static_cast<char>('a' + rng.below(8))));
    for (const auto& u : m.nodes) {
        for (const auto& v : m.nodes) {
            if (u != v && rng.uniform() < 0.4) m.edges[{u, v}] = 1 + static_cast<long long>(rng.below(4));
        }
    }
    return m;
}

// 6
Outcome conceptmap_oracles() {
    Rng rng(606);
    int build_bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t stop_unit = 1 + rng.below(4);
        const std::size_t window = 1 + rng.below(12);
        const std::size_t n_sentences = 1 + rng.below(3 * stop_unit);
        std::vector<cn::Sentence> s(n_sentences);
        std::size_t budget = 50;
        for (auto& sent : s) {
            const std::size_t len = std::min<std::size_t>(budget, rng.below(8));
            budget -= len;
            for (std::size_t k = 0; k < len; ++k) sent.push_back(std::string(1, static_cast<char>('a' + rng.below(6))));
        }
        if (cn::build_map(s, {window, stop_unit}).edges != oracle::window_pairs(s, window, stop_unit)) ++build_bad;
    }

    int algebra_bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_map(rng);
        const auto b = random_map(rng);
        if (cn::intersect(a, a) != a || cn::intersect(a, b) != cn::intersect(b, a)) ++algebra_bad;
    }

    int between_bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(6);
        std::set<std::pair<std::size_t, std::size_t>> arcs;
        cn::ConceptMap m;
        auto name = [](std::size_t v) { return std::string(1, static_cast<char>('a' + v)); };
        for (std::size_t v = 0; v < n; ++v) m.nodes.insert(name(v));
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                if (u != v && rng.uniform() < 0.35) {
                    arcs.insert({u, v});
                    m.edges[{name(u), name(v)}] = 1;
                }
            }
        }
        const auto ref = oracle::betweenness_brute_force(n, arcs);
        const auto got = cn::betweenness(m);
        for (std::size_t v = 0; v < n; ++v) {
            if (std::abs(got.at(name(v)) - ref[v]) > 1e-9) {
                ++between_bad;
                break;
            }
        }
    }
    return {build_bad == 0 && algebra_bad == 0 && between_bad == 0,
            fmt("build_map mismatches %g/200, intersect law failures %g/200, betweenness mismatches %g/200",
                build_bad, algebra_bad, between_bad)};
}

// 7
Outcome micro_examples() {
    const auto lex = cn::Lexicon::defaults();
    int bad = 0;
    for (const char* w : {"adds", "adding", "added"}) {
        if (lex.generalize(w) != "add") ++bad;
    }
    cn::ConceptMap ij, ji;
    ij.nodes = ji.nodes = {"i", "j"};
    ij.edges[{"i", "j"}] = 2;
    ji.edges[{"j", "i"}] = 2;
    const auto shared = cn::intersect(ij, ji);
    const bool rejected = shared.edges.empty() && cn::map_stats(shared).shared_links == 0;
    const auto a = cn::build_map(cn::preprocess("We add the numbers.", lex));
    const auto b = cn::build_map(cn::preprocess("The numbers we added.", lex));
    const bool rejected_text = a.weight("add", "number") == 1 && b.weight("number", "add") == 1 &&
                               cn::intersect(a, b).edges.empty();
    return {bad == 0 && rejected && rejected_text,
            fmt("generalization failures %g/3, reversed edge rejected %g, reversed text edge rejected %g", bad,
                rejected, rejected_text)};
}

// 8
Outcome statistics() {
    Rng rng(808);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 3 + rng.below(40);
        std::vector<double> x(n), y(n), g(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = std::round(rng.normal(0, 3));  // rounding creates ties for the rank oracle
            y[i] = 0.5 * x[i] + rng.normal();
            g[i] = i < 2 ? static_cast<double>(i) : static_cast<double>(rng.below(2));
        }
        if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) x[0] += 1.0;
        worst = std::max(worst, std::abs(st::pearson(x, y).coefficient - oracle::pearson_sums(x, y)));
        worst = std::max(worst, std::abs(st::spearman(x, y).coefficient -
                                         oracle::pearson_sums(oracle::ranks_by_counting(x), oracle::ranks_by_counting(y))));
        worst = std::max(worst, std::abs(st::point_biserial(g, y).coefficient - oracle::point_biserial_closed_form(g, y)));
    }
    double f_err = 0.0;
    for (double d : {1.0, 2.0, 3.0, 7.0, 30.0, 110.0, 1000.0}) f_err = std::max(f_err, std::abs(st::f_cdf(1.0, d, d) - 0.5));
    int df_bad = 0;
    for (std::size_t n = 2; n <= 30; ++n) {
        std::vector<double> pre(n), post(n);
        for (std::size_t i = 0; i < n; ++i) {
            pre[i] = rng.normal();
            post[i] = pre[i] + rng.normal(1, 1);
        }
        if (st::paired_t(pre, post).df != n - 1) ++df_bad;
    }
    return {worst <= 1e-12 && f_err <= 1e-9 && df_bad == 0,
            fmt("max correlation deviation %.2e (<= 1e-12), max |f_cdf(1,d,d) - 0.5| %.2e (<= 1e-9), paired_t df "
                "wrong for %g sizes",
                worst, f_err, df_bad)};
}

std::map<std::string, std::string> run_pipeline(const fs::path& work, const std::string& jobs) {
    namespace app = dyadconv::app;
    auto run = [](std::vector<std::string> args) {
        args.insert(args.begin(), "dyadconv");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int status = app::run(static_cast<int>(argv.size()), argv.data(), out, err);
        if (status != 0) throw std::runtime_error(args[1] + " exited " + std::to_string(status) + ": " + err.str());
    };
    fs::remove_all(work);
    const std::string corpus = (work / "corpus").string();
    const std::string sessions = (work / "corpus" / "sessions").string();
    const std::string results = (work / "results").string();
    run({"synth", "--out", corpus, "--dyads", "2", "--sessions", "5", "--seed", "11"});
    for (const char* cmd : {"features", "converge", "strength", "granger", "dtw"}) {
        run({cmd, sessions, "--out", results, "--jobs", jobs});
    }
    for (const char* action : {"build", "intersect", "stats"}) {
        run({"conceptmap", action, sessions, "--out", results, "--math-domain", "--jobs", jobs});
    }
    run({"report", results, "--out", (work / "report").string()});

    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(work)) {
        if (e.is_regular_file()) files[fs::relative(e.path(), work).generic_string()] = dyadconv::corpus::read_file(e.path());
    }
    return files;
}

// 9
Outcome end_to_end_determinism() {
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path work = fs::path(DYADCONV_ACCEPTANCE_CACHE) / "pipeline";
    const auto first = run_pipeline(work, "1");
    const auto second = run_pipeline(work, "3");
    const double secs = seconds_since(t0);
    int differing = 0;
    for (const auto& [path, bytes] : first) {
        const auto it = second.find(path);
        if (it == second.end() || it->second != bytes) ++differing;
    }
    differing += static_cast<int>(second.size() > first.size() ? second.size() - first.size() : 0);
    const bool sessions_ok = std::count_if(first.begin(), first.end(), [](const auto& f) {
                                 return f.first.rfind("corpus/sessions/", 0) == 0;
                             }) == 10;
    const bool report_ok = first.contains("report/summary.csv");
    return {differing == 0 && sessions_ok && report_ok && secs < 60.0,
            fmt("%g files compared, %g differ, 10 sessions %g, summary present %g", static_cast<double>(first.size()),
                differing, sessions_ok, report_ok) +
                fmt(", %.2f s for two runs (< 60)", secs)};
}

dyadconv::corpus::Session random_session(Rng& rng) {
    using namespace dyadconv::corpus;
    Session s;
    s.dyad_id = "r";
    s.speakers = {Speaker{"A", "female"}, Speaker{"B", "male"}};
    s.duration = rng.uniform(45.0, 400.0);
    const std::size_t count = rng.below(40);
    for (std::size_t i = 0; i < count; ++i) {
        Utterance u;
        u.speaker = rng.below(2) == 0 ? "A" : "B";
        u.start = rng.uniform(0.0, s.duration);
        const double r = rng.uniform();
        // some zero-length, some short, some straddling one or more slice boundaries
        const double length = r < 0.1 ? 0.0 : r < 0.5 ? rng.uniform(0.0, 5.0) : rng.uniform(5.0, 95.0);
        u.end = std::min(s.duration, u.start + length);
        const std::size_t words = rng.below(60);
        for (std::size_t w = 0; w < words; ++w) u.text += (w ? " " : "") + std::string(1 + rng.below(7), 'w');
        if (rng.uniform() < 0.2) u.text += " [laughter]";
        u.laughter_count = count_laughter_markers(u.text);
        s.utterances.push_back(std::move(u));
    }
    std::stable_sort(s.utterances.begin(), s.utterances.end(),
                     [](const Utterance& a, const Utterance& b) { return a.start < b.start; });
    validate(s);
    return s;
}

// 10
Outcome word_conservation() {
    using namespace dyadconv::corpus;
    Rng rng(1010);
    int outside = 0;
    long long worst = 0, straddling = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Session s = random_session(rng);
        const auto slices = segment(s);
        for (const auto& sp : s.speakers) {
            long long total = 0, pieces = 0;
            for (const auto& u : s.utterances) {
                if (u.speaker != sp.id) continue;
                total += word_count(u.text);
                long long touched = 0;
                for (const auto& sl : slices) touched += u.start < sl.end && u.end > sl.begin ? 1 : 0;
                pieces += std::max<long long>(1, touched);
                straddling += touched > 1 ? 1 : 0;
            }
            long long sliced = 0;
            for (const auto& sl : slices) sliced += dyadconv::paraling::word_count(s, sl, sp.id);
            const long long gap = std::abs(total - sliced);
            worst = std::max(worst, gap);
            // each utterance piece can round by at most half a word
            if (2 * gap > pieces) ++outside;
        }
    }
    return {outside == 0 && straddling > 0,
            fmt("speaker totals outside the rounding bound %g/200, largest gap %g words, %g straddling utterances",
                outside, static_cast<double>(worst), static_cast<double>(straddling))};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"ADF calibration", adf_calibration},
        {"ADF critical values", adf_critical_values},
        {"Granger calibration", granger_calibration},
        {"DTW oracle equivalence", dtw_oracle},
        {"DTW parameter checks", dtw_parameters},
        {"Concept-map oracle equivalence", conceptmap_oracles},
        {"Micro-examples", micro_examples},
        {"Statistics", statistics},
        {"End-to-end determinism", end_to_end_determinism},
        {"Word conservation", word_conservation},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
