#pragma once

// Batch front end: configuration, report envelopes and their JSON / CSV /
// table renderings. run_cli is the whole program minus process setup so that
// tests can drive it in-process.

#include "tcaudit/bogoliubov_audit.hpp"
#include "tcaudit/jaynes_cummings.hpp"
#include "tcaudit/tavis_cummings.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tcaudit::cli {

inline constexpr const char* tool_version = "1.0.0";

enum class Command { spectrum, audit, jc, sweep };
enum class OutputFormat { json, csv, table };

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int invalid_input = 2;
inline constexpr int inconclusive = 3;
} // namespace exit_code

struct GridSpec {
    std::string parameter; // "g" or "omega"
    std::vector<double> values;
};

struct RunConfig {
    Command command = Command::spectrum;
    tc::ModelParams model{};
    jc::JcParams jc{};
    std::optional<tc::SectorKey> sector;
    std::optional<std::array<int, 3>> spectrum_cutoffs; // full-space spectrum mode
    int cutoff_a = 8;
    int cutoff_f = 4;
    int cutoff_d = 4;
    audit::PhaseRealization phase = audit::PhaseRealization::susskind_glogower;
    std::vector<audit::CouplingPower> powers{audit::CouplingPower::paper_g_squared,
                                             audit::CouplingPower::corrected_g};
    audit::ScalarBogoliubov scalar{};
    double threshold = 1e-8;
    int jc_n_max = 3;
    std::vector<GridSpec> grids;
    OutputFormat output_format = OutputFormat::json;
    std::optional<std::string> output_path;
    double tol = default_tolerance;
    int drop_edge = 1;
    std::uint64_t seed = 0;

    // Throws ParameterError on violated invariants.
    void validate() const;
};

using Cell = std::variant<long long, double, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct ReportEnvelope {
    std::string tool_version;
    nlohmann::ordered_json config;
    std::vector<std::string> assumptions;
    nlohmann::ordered_json summary; // command-specific
    Table table;                    // the rows shared by every output format
};

struct RunOutcome {
    int exit_code = exit_code::success;
    std::optional<ReportEnvelope> report;
    std::string diagnostic;
};

RunOutcome run_spectrum(const RunConfig& config);
RunOutcome run_audit(const RunConfig& config);
RunOutcome run_jc(const RunConfig& config);
RunOutcome run_sweep(const RunConfig& config);
RunOutcome run(const RunConfig& config);

nlohmann::ordered_json config_to_json(const RunConfig& config);
nlohmann::ordered_json to_json(const ReportEnvelope& report);

// 17 significant digits.
std::string format_number(double value);
std::string render_csv(const Table& table);
std::string render_table(const Table& table);
std::string render(const ReportEnvelope& report, OutputFormat format);

// Parses argv, runs, writes data to `out` (or --out) and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tcaudit::cli
