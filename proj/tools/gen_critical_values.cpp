// Regenerates include/dyadconv/tsa/critical_value_table.hpp by Monte Carlo
// simulation of the Dickey-Fuller null distribution.
//
//   gen_critical_values [replications] > include/dyadconv/tsa/critical_value_table.hpp

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "dyadconv/format.hpp"
#include "dyadconv/tsa/critical_values.hpp"

int main(int argc, char** argv) {
    using namespace dyadconv::tsa;
    SimulationPlan plan;
    if (argc > 1) plan.replications = std::strtoull(argv[1], nullptr, 10);

    const CriticalValueTable table = simulate_critical_values(plan);
    const auto rows = table.to_json();

    std::cout << "#pragma once\n\n"
              << "// Generated by tools/gen_critical_values: " << plan.replications
              << " Gaussian random walks per (form, n), lag order " << plan.lag_order << ", seed " << plan.seed
              << ".\n// Do not edit by hand.\n\n"
              << "#include <array>\n#include <cstddef>\n\n#include \"dyadconv/tsa/adf.hpp\"\n\n"
              << "namespace dyadconv::tsa {\n\n"
              << "struct EmbeddedCriticalValue {\n    AdfForm form;\n    std::size_t n;\n    double level;\n"
              << "    double value;\n};\n\n"
              << "inline constexpr std::array<EmbeddedCriticalValue, " << rows.size()
              << "> kEmbeddedCriticalValues{{\n";
    for (const auto& r : rows) {
        char level[16];
        std::snprintf(level, sizeof level, "%.2f", r.at("level").get<double>());
        std::cout << "    {AdfForm::" << r.at("form").get<std::string>() << ", " << r.at("n").get<std::size_t>()
                  << ", " << level << ", " << dyadconv::format_double(r.at("value").get<double>()) << "},\n";
    }
    std::cout << "}};\n\n}  // namespace dyadconv::tsa\n";
    return 0;
}
