#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dyadconv/app/table.hpp"
#include "dyadconv/corpus/session.hpp"
#include "dyadconv/format.hpp"

namespace dyadconv::app {

/// Thrown for bad flags, unsupported values or missing input paths (exit status 2).
class UsageError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path out = "out";
    Format format = Format::csv;
    std::size_t jobs = 1;
    std::uint64_t seed = 1;

    double slice_width = corpus::kSliceWidth;
    std::size_t lag_order = 3;
    double significance = 0.01;  ///< ADF level
    std::size_t lag = 0;         ///< difference lag for converge and granger
    std::string effect = "message_density";
    std::string cause = "rapport";
    double granger_significance = 0.05;

    bool closed_end = false;
    bool dump_path = false;

    std::optional<std::filesystem::path> lexicon;
    bool math_domain = false;
    std::size_t window = 10;
    std::size_t stop_unit = 10;
    std::optional<std::filesystem::path> worksheet;

    std::string x_column;
    std::string y_column;
    std::string method = "pearson";
    std::vector<std::string> where_x;
    std::vector<std::string> where_y;

    std::size_t dyads = 2;
    std::size_t sessions = 5;
    std::size_t slices = 120;
};

/// Output-affecting settings as sorted key=value lines. Paths of inputs, the
/// output directory and the job count are excluded.
inline std::string canonical(const RunConfig& c) {
    std::ostringstream os;
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ";") + x;
        return s;
    };
    os << "cause=" << c.cause << '\n'
       << "closed-end=" << (c.closed_end ? "true" : "false") << '\n'
       << "dump-path=" << (c.dump_path ? "true" : "false") << '\n'
       << "dyads=" << c.dyads << '\n'
       << "effect=" << c.effect << '\n'
       << "format=" << (c.format == Format::csv ? "csv" : "json") << '\n'
       << "granger-significance=" << format_double(c.granger_significance) << '\n'
       << "lag=" << c.lag << '\n'
       << "lag-order=" << c.lag_order << '\n'
       << "lexicon=" << (c.lexicon ? c.lexicon->generic_string() : "") << '\n'
       << "math-domain=" << (c.math_domain ? "true" : "false") << '\n'
       << "method=" << c.method << '\n'
       << "seed=" << c.seed << '\n'
       << "sessions=" << c.sessions << '\n'
       << "significance=" << format_double(c.significance) << '\n'
       << "slice-width=" << format_double(c.slice_width) << '\n'
       << "slices=" << c.slices << '\n'
       << "stop-unit=" << c.stop_unit << '\n'
       << "where-x=" << join(c.where_x) << '\n'
       << "where-y=" << join(c.where_y) << '\n'
       << "window=" << c.window << '\n'
       << "worksheet=" << (c.worksheet ? c.worksheet->generic_string() : "") << '\n'
       << "x=" << c.x_column << '\n'
       << "y=" << c.y_column << '\n';
    return os.str();
}

}  // namespace dyadconv::app
