#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyadconv/app/commands.hpp"
#include "dyadconv/app/config.hpp"
#include "dyadconv/app/output.hpp"
#include "dyadconv/app/report.hpp"
#include "dyadconv/app/table.hpp"
#include "dyadconv/corpus/io.hpp"
#include "dyadconv/synth/generators.hpp"

#ifndef DYADCONV_VERSION
#define DYADCONV_VERSION "0.0.0"
#endif

namespace dyadconv::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysis = 1;
inline constexpr int kExitUsage = 2;

/// Failure tagged with the pipeline stage that raised it.
class StageError : public Error {
public:
    StageError(const std::string& stage, const std::string& what) : Error(stage + ": " + what) {}
};

/// Records every file written under the output directory, for the manifest.
class OutputSet {
public:
    OutputSet(std::filesystem::path root, Format format) : root_(std::move(root)), format_(format) {}

    [[nodiscard]] Format format() const { return format_; }
    [[nodiscard]] const std::filesystem::path& root() const { return root_; }

    void write(const std::string& relative, const std::string& content) {
        write_atomic(root_ / relative, content);
        std::lock_guard lock(m_);
        hashes_[relative] = sha256_hex(content);
    }

    void write_table(const std::string& stem, const Table& t) { write(stem + extension(format_), serialize(t, format_)); }

    [[nodiscard]] std::map<std::string, std::string> hashes() const {
        std::lock_guard lock(m_);
        return hashes_;
    }

private:
    std::filesystem::path root_;
    Format format_;
    mutable std::mutex m_;
    std::map<std::string, std::string> hashes_;
};

inline std::string session_stem(const corpus::Session& s) {
    return s.dyad_id + "_s" + std::to_string(s.session_index);
}

/// Session files named on the command line; directories contribute their .tsv and .json files.
inline std::vector<std::filesystem::path> expand_inputs(const std::vector<std::filesystem::path>& inputs) {
    std::vector<std::filesystem::path> out;
    for (const auto& p : inputs) {
        if (std::filesystem::is_directory(p)) {
            std::vector<std::filesystem::path> found;
            for (const auto& e : std::filesystem::directory_iterator(p)) {
                const auto name = e.path().filename().string();
                const auto ext = e.path().extension().string();
                if (!e.is_regular_file() || (ext != ".tsv" && ext != ".json")) continue;
                if (name.ends_with(".manifest.json")) continue;
                found.push_back(e.path());
            }
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

struct LoadedCorpus {
    std::vector<std::filesystem::path> paths;
    std::vector<corpus::Session> sessions;
};

inline LoadedCorpus load_corpus(const RunConfig& c) {
    LoadedCorpus lc;
    lc.paths = expand_inputs(c.inputs);
    if (lc.paths.empty()) throw UsageError("no session files given");
    lc.sessions = parallel_map<corpus::Session>(lc.paths.size(), c.jobs, [&](std::size_t i) {
        try {
            return corpus::load_session(lc.paths[i]);
        } catch (const SchemaError& e) {
            throw StageError("parse", e.what());
        } catch (const Error& e) {
            throw StageError("parse", lc.paths[i].string() + ": " + e.what());
        }
    });
    std::set<std::pair<std::string, int>> seen;
    for (std::size_t i = 0; i < lc.sessions.size(); ++i) {
        const auto& s = lc.sessions[i];
        if (!seen.insert({s.dyad_id, s.session_index}).second) {
            throw StageError("parse", lc.paths[i].string() + ": duplicate session " + s.dyad_id + " " +
                                          std::to_string(s.session_index));
        }
    }
    return lc;
}

/// Run fn on every session in parallel, naming the stage and file on failure.
template <typename Result>
std::vector<Result> per_session(const LoadedCorpus& lc, const RunConfig& c, const std::string& stage,
                                const std::function<Result(const corpus::Session&)>& fn) {
    return parallel_map<Result>(lc.sessions.size(), c.jobs, [&](std::size_t i) {
        try {
            return fn(lc.sessions[i]);
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(stage, lc.paths[i].string() + ": " + e.what());
        }
    });
}

inline Table concat(const std::vector<Table>& parts, std::vector<std::string> columns_if_empty) {
    Table out(parts.empty() ? std::move(columns_if_empty) : parts.front().columns());
    for (const auto& p : parts) out.append(p);
    return out;
}

inline void write_manifest(OutputSet& out, const std::string& command, const RunConfig& c,
                           const std::vector<std::filesystem::path>& inputs) {
    nlohmann::ordered_json m;
    m["tool"] = "dyadconv";
    m["version"] = DYADCONV_VERSION;
    m["command"] = command;
    const std::string config = canonical(c);
    m["config_sha256"] = sha256_hex(config);
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    std::size_t start = 0;
    while (start < config.size()) {
        const auto nl = config.find('\n', start);
        const std::string line = config.substr(start, nl - start);
        const auto eq = line.find('=');
        cfg[line.substr(0, eq)] = line.substr(eq + 1);
        start = nl + 1;
    }
    m["config"] = cfg;
    m["inputs"] = nlohmann::ordered_json::array();
    for (const auto& p : inputs) {
        m["inputs"].push_back({{"path", p.generic_string()}, {"sha256", sha256_hex(corpus::read_file(p))}});
    }
    m["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [path, hash] : out.hashes()) m["outputs"].push_back({{"path", path}, {"sha256", hash}});
    write_atomic(out.root() / (command + ".manifest.json"), m.dump(2) + "\n");
}

inline conceptnet::Lexicon load_lexicon(const RunConfig& c) {
    try {
        auto lex = c.lexicon ? conceptnet::Lexicon::load(*c.lexicon, c.math_domain) : conceptnet::Lexicon::defaults();
        lex.math_domain = c.math_domain;
        return lex;
    } catch (const std::exception& e) {
        throw StageError("lexicon", e.what());
    }
}

// ---------------------------------------------------------------- subcommands

inline std::vector<std::filesystem::path> cmd_per_session_table(
    const RunConfig& c, OutputSet& out, const std::string& name,
    const std::function<Table(const corpus::Session&)>& fn, std::vector<std::string> columns) {
    const auto lc = load_corpus(c);
    const auto parts = per_session<Table>(lc, c, name, [&](const corpus::Session& s) {
        Table t = fn(s);
        out.write_table(name + "/" + session_stem(s), t);
        return t;
    });
    out.write_table(name, concat(parts, std::move(columns)));
    return lc.paths;
}

inline std::vector<std::filesystem::path> cmd_strength(const RunConfig& c, OutputSet& out) {
    const auto lc = load_corpus(c);
    const auto parts = per_session<Table>(lc, c, "converge", [&](const corpus::Session& s) { return converge_table(s, c); });
    try {
        out.write_table("strength", strength_table(concat(parts, {})));
    } catch (const DegenerateSeriesError& e) {
        throw StageError("strength", e.what());
    }
    return lc.paths;
}

inline std::vector<std::filesystem::path> cmd_dtw(const RunConfig& c, OutputSet& out) {
    const auto lc = load_corpus(c);
    const auto parts = per_session<DtwTables>(lc, c, "dtw", [&](const corpus::Session& s) {
        auto t = dtw_tables(s, c);
        out.write_table("dtw/" + session_stem(s), t.alignments);
        return t;
    });
    Table all, paths;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i == 0) {
            all = Table(parts[i].alignments.columns());
            paths = Table(parts[i].paths.columns());
        }
        all.append(parts[i].alignments);
        paths.append(parts[i].paths);
    }
    out.write_table("dtw", all);
    if (c.dump_path) out.write_table("dtw_paths", paths);
    return lc.paths;
}

inline std::vector<std::filesystem::path> cmd_conceptmap(const RunConfig& c, OutputSet& out, const std::string& action) {
    const auto lex = load_lexicon(c);
    const auto lc = load_corpus(c);
    std::vector<std::filesystem::path> inputs = lc.paths;
    if (action == "stats") {
        std::optional<conceptnet::ConceptMap> worksheet;
        if (c.worksheet) {
            try {
                worksheet = conceptnet::build_map(conceptnet::preprocess(corpus::read_file(*c.worksheet), lex),
                                                  window_spec(c));
            } catch (const std::exception& e) {
                throw StageError("worksheet", c.worksheet->string() + ": " + e.what());
            }
            inputs.push_back(*c.worksheet);
        }
        const auto parts = per_session<Table>(lc, c, "conceptmap", [&](const corpus::Session& s) {
            Table t = conceptmap_stats(s, c, lex, worksheet);
            out.write_table("conceptmap_stats/" + session_stem(s), t);
            return t;
        });
        out.write_table("conceptmap_stats", concat(parts, map_stats_columns()));
        return inputs;
    }
    const bool shared = action == "intersect";
    const std::string stem = shared ? "conceptmap_shared" : "conceptmap";
    const auto parts = per_session<MapTables>(lc, c, "conceptmap", [&](const corpus::Session& s) {
        MapTables t = shared ? conceptmap_intersect(s, c, lex) : conceptmap_build(s, c, lex);
        for (const auto& [name, dot] : t.dot) out.write(stem + "/" + name + ".dot", dot);
        return t;
    });
    MapTables all;
    for (const auto& p : parts) {
        all.nodes.append(p.nodes);
        all.edges.append(p.edges);
    }
    out.write_table(stem + "_nodes", all.nodes);
    out.write_table(stem + "_edges", all.edges);
    return inputs;
}

inline std::vector<std::filesystem::path> cmd_correlate(const RunConfig& c, OutputSet& out) {
    if (c.inputs.size() != 2) throw UsageError("correlate needs exactly two table files");
    if (c.x_column.empty() || c.y_column.empty()) throw UsageError("correlate needs --x and --y");
    std::vector<Table> tables;
    for (const auto& p : c.inputs) {
        try {
            tables.push_back(parse_table(corpus::read_file(p)));
        } catch (const std::exception& e) {
            throw StageError("correlate", p.string() + ": " + e.what());
        }
    }
    try {
        out.write_table("correlate", correlate_tables(tables[0], c.inputs[0].filename().string(), tables[1],
                                                      c.inputs[1].filename().string(), c));
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError("correlate", e.what());
    }
    return c.inputs;
}

inline std::vector<std::filesystem::path> cmd_synth(const RunConfig& c, OutputSet& out) {
    synth::CorpusSpec spec;
    spec.seed = c.seed;
    spec.dyads = c.dyads;
    spec.sessions_per_dyad = c.sessions;
    spec.n_slices = c.slices;
    std::vector<corpus::Session> sessions;
    try {
        sessions = synth::gen_corpus(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    parallel_map<int>(sessions.size(), c.jobs, [&](std::size_t i) {
        const auto& s = sessions[i];
        if (out.format() == Format::csv) {
            out.write("sessions/" + session_stem(s) + ".tsv", corpus::serialize_session_tsv(s));
        } else {
            out.write("sessions/" + session_stem(s) + ".json", corpus::serialize_session_json(s));
        }
        return 0;
    });
    return {};
}

inline std::vector<std::filesystem::path> cmd_report(const RunConfig& c, OutputSet& out) {
    if (c.inputs.size() != 1) throw UsageError("report needs exactly one directory");
    const auto& dir = c.inputs.front();
    if (!std::filesystem::is_directory(dir)) throw UsageError("not a directory: " + dir.string());
    std::vector<ReportInput> inputs;
    ReportTables r;
    try {
        inputs = find_report_inputs(dir);
        r = build_report(inputs);
    } catch (const std::exception& e) {
        throw StageError("report", e.what());
    }
    out.write_table("summary", r.summary);
    out.write_table("report_long", r.long_metrics);
    if (!r.series.empty()) out.write_table("report_series", r.series);
    std::vector<std::filesystem::path> paths;
    for (const auto& in : inputs) paths.push_back(in.path);
    return paths;
}

// ---------------------------------------------------------------- entry point

inline void validate(const RunConfig& c, const std::string& command) {
    if (!tsa::is_supported_significance(c.significance)) throw UsageError("--significance must be 0.01, 0.05 or 0.10");
    if (!(c.granger_significance > 0.0 && c.granger_significance < 1.0)) {
        throw UsageError("--granger-significance must be in (0, 1)");
    }
    if (c.lag > 2) throw UsageError("--lag must be 0, 1 or 2");
    if (c.jobs < 1) throw UsageError("--jobs must be >= 1");
    if (c.lag_order < 1) throw UsageError("--lag-order must be >= 1");
    if (!(c.slice_width > 0.0)) throw UsageError("--slice-width must be > 0");
    if (c.window < 1 || c.stop_unit < 1) throw UsageError("--window and --stop-unit must be >= 1");
    for (const auto& p : c.inputs) {
        if (!std::filesystem::exists(p)) throw UsageError("input not found: " + p.string());
    }
    if (c.lexicon && !std::filesystem::is_directory(*c.lexicon)) {
        throw UsageError("lexicon directory not found: " + c.lexicon->string());
    }
    if (c.worksheet && !std::filesystem::is_regular_file(*c.worksheet)) {
        throw UsageError("worksheet not found: " + c.worksheet->string());
    }
    if (command != "synth" && c.inputs.empty()) throw UsageError(command + ": no inputs given");
}

/// Parse arguments, run one subcommand and return the exit status.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig c;
    CLI::App app{"Dyadic conversation analysis: convergence, alignment and concept maps.", "dyadconv"};
    app.set_version_flag("--version", std::string(DYADCONV_VERSION));
    app.set_config("--config", "", "flat key = value file mirroring the long flags");
    app.require_subcommand(1);

    const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
    app.add_option("--format", c.format, "output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--out", c.out, "output directory");
    app.add_option("--jobs", c.jobs, "sessions processed concurrently");
    app.add_option("--seed", c.seed, "seed for all randomness");
    app.add_option("--slice-width", c.slice_width, "slice width in seconds");
    app.add_option("--lag-order", c.lag_order, "ADF lag order");
    app.add_option("--significance", c.significance, "ADF level: 0.01, 0.05 or 0.10");
    app.add_option("--lag", c.lag, "partner difference lag: 0, 1 or 2");
    app.add_option("--effect", c.effect, "granger effect feature");
    app.add_option("--cause", c.cause, "granger cause: rapport or a feature");
    app.add_option("--granger-significance", c.granger_significance, "granger F-test level");
    app.add_flag("--closed-end", c.closed_end, "anchor both DTW endpoints");
    app.add_flag("--path", c.dump_path, "also write DTW warping paths");
    app.add_option("--lexicon", c.lexicon, "lexicon directory");
    app.add_flag("--math-domain", c.math_domain, "numerals -> number, single letters -> variable");
    app.add_option("--window", c.window, "concept link window in positions");
    app.add_option("--stop-unit", c.stop_unit, "sentences per block");
    app.add_option("--worksheet", c.worksheet, "worksheet text for conceptmap stats");
    app.add_option("--x", c.x_column, "correlate: column of the first table");
    app.add_option("--y", c.y_column, "correlate: column of the second table");
    app.add_option("--method", c.method, "pearson, spearman or point_biserial");
    app.add_option("--where-x", c.where_x, "correlate: column=value filter on the first table");
    app.add_option("--where-y", c.where_y, "correlate: column=value filter on the second table");
    app.add_option("--dyads", c.dyads, "synth: number of dyads");
    app.add_option("--sessions", c.sessions, "synth: sessions per dyad");
    app.add_option("--slices", c.slices, "synth: slices per session");

    auto sub = [&](const std::string& name, const std::string& help, CLI::App* parent) {
        auto* s = parent->add_subcommand(name, help);
        s->fallthrough();
        s->add_option("inputs", c.inputs, "session files or directories");
        return s;
    };
    sub("features", "per-slice paralinguistic features", &app);
    sub("converge", "ADF convergence per feature", &app);
    sub("strength", "composite convergence strength", &app);
    sub("granger", "rapport -> convergence Granger test", &app);
    sub("dtw", "strategy alignment by dynamic time warping", &app);
    auto* cm = app.add_subcommand("conceptmap", "concept maps");
    cm->fallthrough();
    cm->require_subcommand(1);
    sub("build", "each partner's concept map", cm);
    sub("intersect", "shared concept map", cm);
    sub("stats", "shared map statistics", cm);
    sub("correlate", "correlate two metric tables on dyad and session", &app);
    app.add_subcommand("synth", "write a synthetic corpus")->fallthrough();
    sub("report", "join analysis outputs into a summary", &app);

    if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
        err << "dyadconv: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
        return kExitUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "dyadconv: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    std::string command = app.get_subcommands().front()->get_name();
    if (command == "conceptmap") command += "_" + cm->get_subcommands().front()->get_name();

    try {
        validate(c, command);
        std::filesystem::create_directories(c.out);
        OutputSet outputs(c.out, c.format);
        std::vector<std::filesystem::path> inputs;
        if (command == "features") {
            inputs = cmd_per_session_table(c, outputs, "features", [&](const corpus::Session& s) {
                return features_table(s, c);
            }, {});
        } else if (command == "converge") {
            inputs = cmd_per_session_table(c, outputs, "converge", [&](const corpus::Session& s) {
                return converge_table(s, c);
            }, {});
        } else if (command == "strength") {
            inputs = cmd_strength(c, outputs);
        } else if (command == "granger") {
            inputs = cmd_per_session_table(c, outputs, "granger", [&](const corpus::Session& s) {
                return granger_table(s, c);
            }, {});
        } else if (command == "dtw") {
            inputs = cmd_dtw(c, outputs);
        } else if (command.starts_with("conceptmap_")) {
            inputs = cmd_conceptmap(c, outputs, command.substr(11));
        } else if (command == "correlate") {
            inputs = cmd_correlate(c, outputs);
        } else if (command == "synth") {
            inputs = cmd_synth(c, outputs);
        } else if (command == "report") {
            inputs = cmd_report(c, outputs);
        }
        write_manifest(outputs, command, c, inputs);
        out << "dyadconv " << command << ": wrote " << outputs.hashes().size() << " file(s) to " << c.out.string()
            << "\n";
        return kExitOk;
    } catch (const UsageError& e) {
        err << "dyadconv: " << e.what() << "\n";
        return kExitUsage;
    } catch (const StageError& e) {
        err << "dyadconv: " << e.what() << "\n";
        return kExitAnalysis;
    } catch (const std::exception& e) {
        err << "dyadconv: " << command << ": " << e.what() << "\n";
        return kExitAnalysis;
    }
}

}  // namespace dyadconv::app
