#include "tcaudit/cli.hpp"

#include "tcaudit/kernels.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tcaudit::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string_view to_string(Command command)
{
    switch (command) {
    case Command::spectrum: return "spectrum";
    case Command::audit: return "audit";
    case Command::jc: return "jc";
    case Command::sweep: return "sweep";
    }
    return "unknown";
}

std::string_view to_string(OutputFormat format)
{
    switch (format) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::table: return "table";
    }
    return "unknown";
}

ordered_json norm_json(const NormReport& norms)
{
    ordered_json j;
    j["frobenius"] = norms.frobenius;
    j["spectral"] = norms.spectral;
    return j;
}

ordered_json cell_json(const Cell& cell)
{
    return std::visit([](const auto& value) { return ordered_json(value); }, cell);
}

std::string cell_text(const Cell& cell)
{
    return std::visit(
        [](const auto& value) -> std::string {
            using T = std::decay_t<decltype(value)>;
            if constexpr (std::is_same_v<T, double>)
                return format_number(value);
            else if constexpr (std::is_same_v<T, bool>)
                return value ? "true" : "false";
            else if constexpr (std::is_same_v<T, long long>)
                return std::to_string(value);
            else
                return value;
        },
        cell);
}

ReportEnvelope make_envelope(const RunConfig& config)
{
    ReportEnvelope report;
    report.tool_version = tool_version;
    report.config = config_to_json(config);
    report.summary = ordered_json::object();
    return report;
}

std::string omega1_assumption(const tc::ModelParams& model)
{
    return "omega1 = " + format_number(model.effective_omega1()) +
           (model.omega1 ? " (user supplied)" : " (defaulted to omega)");
}

std::vector<audit::BogoliubovConvention> conventions_of(const RunConfig& config)
{
    std::vector<audit::BogoliubovConvention> out;
    for (const auto power : config.powers)
        out.push_back({config.phase, power});
    return out;
}

tc::SectorKey claimed_sector(const RunConfig& config)
{
    return config.sector.value_or(tc::SectorKey{1, 1});
}

audit::CompositeCutoffs composite_cutoffs(const RunConfig& config)
{
    return {FockCutoff(config.cutoff_a), FockCutoff(config.cutoff_f), FockCutoff(config.cutoff_d)};
}

std::string convention_label(const audit::BogoliubovConvention& convention)
{
    return std::string(audit::to_string(convention.phase)) + "/" +
           std::string(audit::to_string(convention.power));
}

} // namespace

void RunConfig::validate() const
{
    if (!(tol > 0.0))
        throw ParameterError("tol must be positive");
    if (drop_edge < 0)
        throw ParameterError("drop-edge must be non-negative");
    if (cutoff_a < 0 || cutoff_f < 0 || cutoff_d < 0)
        throw ParameterError("cutoffs must be non-negative");
    if (!(threshold > 0.0))
        throw ParameterError("threshold must be positive");
    if (jc_n_max < 0)
        throw ParameterError("n-max must be non-negative");
    if (powers.empty())
        throw ParameterError("at least one coupling-power convention is required");
    if (sector)
        sector->validate();
    if (spectrum_cutoffs)
        for (const int c : *spectrum_cutoffs)
            if (c < 0)
                throw ParameterError("cutoffs must be non-negative");
}

std::string format_number(double value)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

ordered_json config_to_json(const RunConfig& config)
{
    ordered_json j;
    j["command"] = to_string(config.command);
    switch (config.command) {
    case Command::spectrum:
    case Command::audit:
    case Command::sweep:
        j["omega"] = config.model.omega;
        j["g"] = config.model.g;
        j["omega1"] = config.model.effective_omega1();
        break;
    case Command::jc:
        j["omega0"] = config.jc.omega0;
        j["omega"] = config.jc.omega;
        j["delta"] = config.jc.delta();
        j["g"] = config.jc.g;
        j["k"] = config.jc.k;
        j["n_max"] = config.jc_n_max;
        break;
    }
    if (config.sector)
        j["sector"] = {{"two_j", config.sector->two_j}, {"two_lambda", config.sector->two_lambda}};
    else
        j["sector"] = nullptr;
    if (config.command == Command::spectrum) {
        if (config.spectrum_cutoffs)
            j["cutoffs"] = {{"a", (*config.spectrum_cutoffs)[0]},
                            {"b", (*config.spectrum_cutoffs)[1]},
                            {"c", (*config.spectrum_cutoffs)[2]}};
        else
            j["cutoffs"] = nullptr;
    } else if (config.command != Command::jc) {
        j["cutoffs"] = {{"a", config.cutoff_a}, {"f", config.cutoff_f}, {"d", config.cutoff_d}};
    }
    if (config.command == Command::audit || config.command == Command::sweep) {
        ordered_json conventions = ordered_json::array();
        for (const auto& convention : conventions_of(config))
            conventions.push_back({{"phase_realization", audit::to_string(convention.phase)},
                                   {"coupling_power", audit::to_string(convention.power)}});
        j["conventions"] = conventions;
        j["scalar_control"] = {{"r", config.scalar.r}, {"theta", config.scalar.theta}};
        j["threshold"] = config.threshold;
    }
    if (config.command == Command::sweep) {
        ordered_json grids = ordered_json::array();
        for (const auto& grid : config.grids)
            grids.push_back({{"parameter", grid.parameter}, {"values", grid.values}});
        j["grids"] = grids;
    }
    j["output_format"] = to_string(config.output_format);
    j["output_path"] = config.output_path ? ordered_json(*config.output_path) : ordered_json(nullptr);
    j["tol"] = config.tol;
    j["drop_edge"] = config.drop_edge;
    j["seed"] = config.seed;
    return j;
}

ordered_json to_json(const ReportEnvelope& report)
{
    ordered_json j;
    j["tool_version"] = report.tool_version;
    j["config"] = report.config;
    j["assumptions"] = report.assumptions;
    ordered_json results;
    results["summary"] = report.summary;
    results["columns"] = report.table.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.table.rows) {
        ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i)
            obj[report.table.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    results["rows"] = std::move(rows);
    j["results"] = std::move(results);
    return j;
}

std::string render_csv(const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0)
            out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0)
                out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_table(const Table& table)
{
    std::vector<std::size_t> widths(table.columns.size());
    for (std::size_t i = 0; i < widths.size(); ++i)
        widths[i] = table.columns[i].size();
    std::vector<std::vector<std::string>> text;
    for (const auto& row : table.rows) {
        auto& line = text.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(cell_text(row[i]));
            widths[i] = std::max(widths[i], line.back().size());
        }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                line += "  ";
            line += std::string(widths[i] - cells[i].size(), ' ') + cells[i];
        }
        return line + '\n';
    };
    std::string out = emit(table.columns);
    std::size_t total = 0;
    for (const auto w : widths)
        total += w;
    out += std::string(total + 2 * (widths.empty() ? 0 : widths.size() - 1), '-') + '\n';
    for (const auto& line : text)
        out += emit(line);
    return out;
}

std::string render(const ReportEnvelope& report, OutputFormat format)
{
    switch (format) {
    case OutputFormat::json: return to_json(report).dump(2) + '\n';
    case OutputFormat::csv: return render_csv(report.table);
    case OutputFormat::table: {
        std::string out;
        for (const auto& note : report.assumptions)
            out += "# " + note + '\n';
        return out + render_table(report.table);
    }
    }
    return {};
}

RunOutcome run_spectrum(const RunConfig& config)
{
    config.validate();
    config.model.validate();
    if (config.sector && config.spectrum_cutoffs)
        throw ParameterError("give either a sector (--two-j/--two-lambda) or cutoffs, not both");
    if (!config.sector && !config.spectrum_cutoffs)
        throw ParameterError("spectrum needs a sector (--two-j and --two-lambda) or "
                             "--cutoff-a/--cutoff-b/--cutoff-c for full-space mode");

    auto report = make_envelope(config);
    report.assumptions = {"three-boson Hamiltonian w(n_a + n_b + n_c) + g(a^dag b c + a b^dag c^dag), "
                          "hbar = 1"};
    report.table.columns = {"two_j", "two_lambda", "index", "energy"};

    std::vector<tc::SectorSpectrum> spectra;
    if (config.sector) {
        const auto key = *config.sector;
        spectra.push_back({key, tc::sector_spectrum(config.model, key, config.tol)});
        report.summary["mode"] = "sector";
        report.summary["dimension"] = spectra.front().energies.size();
    } else {
        const auto& c = *config.spectrum_cutoffs;
        const tc::ModeCutoffs cutoffs{FockCutoff(c[0]), FockCutoff(c[1]), FockCutoff(c[2])};
        spectra = tc::truncated_block_spectra(config.model, cutoffs, config.tol);
        report.summary["mode"] = "full";
        report.summary["dimension"] = cutoffs[0].dim() * cutoffs[1].dim() * cutoffs[2].dim();
        report.summary["blocks"] = spectra.size();
        report.summary["complete_sectors"] = tc::sectors_within(cutoffs).size();
        report.assumptions.push_back("full-space mode: blocks of sectors cut by the box are "
                                     "truncation-dependent");
    }
    for (const auto& spectrum : spectra)
        for (std::size_t i = 0; i < spectrum.energies.size(); ++i)
            report.table.rows.push_back({static_cast<long long>(spectrum.key.two_j),
                                         static_cast<long long>(spectrum.key.two_lambda),
                                         static_cast<long long>(i), spectrum.energies[i]});
    return {exit_code::success, std::move(report), {}};
}

RunOutcome run_audit(const RunConfig& config)
{
    config.validate();
    config.model.validate();
    const auto cutoffs = composite_cutoffs(config);
    const auto key = claimed_sector(config);
    const auto drop = static_cast<std::size_t>(config.drop_edge);

    auto report = make_envelope(config);
    report.assumptions = {
        omega1_assumption(config.model),
        "sqrt(a/a^dag) realized as " + std::string(audit::to_string(config.phase)),
        "identity and commutator checks exclude the " + std::to_string(config.drop_edge) +
            " highest occupation state(s) of every mode",
        "claimed levels use (n_f, n_d) := (n_b, n_c) for each sector state",
        "scalar control uses r = " + format_number(config.scalar.r) +
            ", theta = " + format_number(config.scalar.theta)};
    report.table.columns = {"convention", "metric", "two_j", "two_lambda", "value"};

    bool conclusive = true;
    ordered_json audits = ordered_json::array();
    for (const auto& convention : conventions_of(config)) {
        const auto result =
            audit::run_audit(config.model, convention, cutoffs, drop, {key}, config.scalar, config.tol);
        const std::string label = convention_label(convention);
        const bool control_ok = result.scalar_control_defect.frobenius <= audit::scalar_control_tolerance;
        const bool detected = result.unitarity_residual.frobenius > config.threshold;
        conclusive = conclusive && control_ok && detected;

        ordered_json entry;
        entry["convention"] = {{"phase_realization", audit::to_string(convention.phase)},
                               {"coupling_power", audit::to_string(convention.power)}};
        entry["unitarity_residual"] = norm_json(result.unitarity_residual);
        entry["commutator_form_agreement"] = result.commutator_form_agreement;
        entry["commutator_defect_b"] = norm_json(result.commutator_defect_b);
        entry["commutator_defect_c"] = norm_json(result.commutator_defect_c);
        entry["scalar_control_defect"] = norm_json(result.scalar_control_defect);
        entry["scalar_control_passed"] = control_ok;
        entry["non_unitarity_detected"] = detected;
        ordered_json comparisons = ordered_json::array();
        for (const auto& cmp : result.claimed_vs_exact) {
            ordered_json rows = ordered_json::array();
            for (const auto& row : cmp.rows)
                rows.push_back({{"n_a", row.claimed.n_a},
                                {"n_f", row.claimed.n_f},
                                {"n_d", row.claimed.n_d},
                                {"claimed", row.claimed.energy},
                                {"exact", row.exact},
                                {"deviation", row.deviation}});
            comparisons.push_back({{"two_j", cmp.key.two_j},
                                   {"two_lambda", cmp.key.two_lambda},
                                   {"mapping", audit::to_string(cmp.mapping)},
                                   {"max_abs_deviation", cmp.max_abs_deviation},
                                   {"total_cost", cmp.total_cost},
                                   {"offset_free_deviation", cmp.offset_free_deviation},
                                   {"pairs", std::move(rows)}});
        }
        entry["claimed_vs_exact"] = std::move(comparisons);
        audits.push_back(std::move(entry));

        auto metric = [&](const char* name, double value) {
            report.table.rows.push_back({label, std::string(name), static_cast<long long>(-1),
                                         static_cast<long long>(-1), value});
        };
        metric("unitarity_frobenius", result.unitarity_residual.frobenius);
        metric("unitarity_spectral", result.unitarity_residual.spectral);
        metric("commutator_form_agreement", result.commutator_form_agreement);
        metric("commutator_b_frobenius", result.commutator_defect_b.frobenius);
        metric("commutator_b_spectral", result.commutator_defect_b.spectral);
        metric("commutator_c_frobenius", result.commutator_defect_c.frobenius);
        metric("commutator_c_spectral", result.commutator_defect_c.spectral);
        metric("scalar_control_frobenius", result.scalar_control_defect.frobenius);
        for (const auto& cmp : result.claimed_vs_exact) {
            const std::string name = "claimed_max_deviation_" + std::string(audit::to_string(cmp.mapping));
            report.table.rows.push_back({label, name, static_cast<long long>(cmp.key.two_j),
                                         static_cast<long long>(cmp.key.two_lambda),
                                         cmp.max_abs_deviation});
        }
    }
    report.summary["audits"] = std::move(audits);
    report.summary["conclusive"] = conclusive;

    RunOutcome outcome{conclusive ? exit_code::success : exit_code::inconclusive, std::move(report), {}};
    if (!conclusive)
        outcome.diagnostic = "audit inconclusive: scalar control failed or the non-unitarity residual "
                             "does not exceed the threshold " + format_number(config.threshold);
    return outcome;
}

RunOutcome run_jc(const RunConfig& config)
{
    config.validate();
    config.jc.validate();
    const auto& params = config.jc;
    const bool general_k = params.k != 2;

    auto report = make_envelope(config);
    report.assumptions = {
        "Omega = Delta = omega0/2 - omega",
        "block basis (|n,e>, |n+k,g>) with +Delta in the top-left entry",
        "the omega(n+1) term of the ladder energies is frame dependent; only gaps are compared"};
    if (general_k)
        report.assumptions.push_back("ladder energies use the k-photon product (n+1)...(n+k)");

    report.table.columns = {"n", "rabi", "e_plus", "e_minus", "ladder_plus", "ladder_minus",
                            "orthogonality_residual", "diagonalization_residual"};
    const bool cross_check = params.k == 1;
    if (cross_check) {
        report.table.columns.insert(report.table.columns.end(),
                                    {"tc_gap", "jc_resonant_gap", "cross_check_ok"});
        report.assumptions.push_back("cross-check: collective-spin TC sector (2j = 1, lambda + j = n + 1) "
                                     "vs k = 1 block at Delta = 0");
    }

    const double limit = 100.0 * config.tol;
    bool all_ok = true;
    bool cross_ok = true;
    for (int n = 0; n <= config.jc_n_max; ++n) {
        const auto block = jc::jc_block(params, n);
        const auto check = jc::verify_block_diagonalization(params, n);
        const auto ladder = jc::e20_eigenvalues(params, n, general_k);
        const double diag_residual = check.off_diagonal.frobenius / std::max(1.0, block.rabi);
        all_ok = all_ok && check.orthogonality.frobenius <= limit && diag_residual <= limit;

        std::vector<Cell> row{static_cast<long long>(n), block.rabi, block.e_plus, block.e_minus,
                              ladder.plus, ladder.minus, check.orthogonality.frobenius,
                              diag_residual};
        if (cross_check) {
            const tc::ModelParams tc_params{params.omega > 0.0 ? params.omega : 1.0, params.g, {}};
            const auto tc_levels = tc::spin_sector_spectrum(tc_params, {1, 2 * n + 1}, config.tol);
            const double tc_gap = tc_levels.back() - tc_levels.front();
            const auto resonant = jc::jc_block(jc::JcParams::from_detuning(0.0, params.omega, params.g, 1), n);
            const double jc_gap = resonant.e_plus - resonant.e_minus;
            const bool ok = std::abs(tc_gap - jc_gap) <= 1e-12 * std::max(1.0, jc_gap);
            cross_ok = cross_ok && ok;
            row.insert(row.end(), {tc_gap, jc_gap, ok});
        }
        report.table.rows.push_back(std::move(row));
    }
    report.summary["residual_limit"] = limit;
    report.summary["all_residuals_within_limit"] = all_ok;
    if (cross_check)
        report.summary["cross_check_ok"] = cross_ok;

    RunOutcome outcome{all_ok ? exit_code::success : exit_code::inconclusive, std::move(report), {}};
    if (!all_ok)
        outcome.diagnostic = "jc: some block residuals exceed 100 * tol";
    return outcome;
}

RunOutcome run_sweep(const RunConfig& config)
{
    config.validate();
    if (config.grids.size() != 1)
        throw ParameterError("sweep needs exactly one --grid (got " + std::to_string(config.grids.size()) +
                             ")");
    const auto& grid = config.grids.front();
    if (grid.parameter != "g" && grid.parameter != "omega")
        throw ParameterError("sweep grid parameter must be g or omega, got '" + grid.parameter + "'");
    if (grid.values.empty())
        throw ParameterError("sweep grid is empty");
    if (config.powers.size() != 1)
        throw ParameterError("sweep runs a single coupling-power convention");

    const FockCutoff cutoff(config.cutoff_a);
    const auto key = claimed_sector(config);
    std::vector<tc::ModelParams> points;
    for (const double value : grid.values) {
        auto params = config.model;
        (grid.parameter == "g" ? params.g : params.omega) = value;
        audit::check_domain(params, cutoff);
        points.push_back(params);
    }

    const audit::BogoliubovConvention convention{config.phase, config.powers.front()};
    const auto drop = static_cast<std::size_t>(config.drop_edge);
    std::vector<std::pair<double, double>> values(points.size());
    kernels::parallel_for(points.size(), [&](std::size_t i) {
        values[i] = {audit::unitarity_residual(points[i], cutoff, convention, drop).frobenius,
                     audit::compare_claimed_vs_exact(points[i], key,
                                                     audit::Mapping::naive_identification, config.tol)
                         .max_abs_deviation};
    });

    auto report = make_envelope(config);
    report.assumptions = {omega1_assumption(config.model),
                          "convention " + convention_label(convention),
                          "claimed-vs-exact uses naive identification in sector " + key.to_string()};
    report.table.columns = {grid.parameter, "unitarity_residual", "claimed_vs_exact_max_deviation"};
    for (std::size_t i = 0; i < points.size(); ++i)
        report.table.rows.push_back({grid.values[i], values[i].first, values[i].second});
    report.summary["points"] = points.size();
    return {exit_code::success, std::move(report), {}};
}

RunOutcome run(const RunConfig& config)
{
    try {
        switch (config.command) {
        case Command::spectrum: return run_spectrum(config);
        case Command::audit: return run_audit(config);
        case Command::jc: return run_jc(config);
        case Command::sweep: return run_sweep(config);
        }
        return {exit_code::invalid_input, std::nullopt, "unknown command"};
    } catch (const NumericalError& e) {
        return {1, std::nullopt, std::string("numerical failure: ") + e.what()};
    } catch (const DomainSingularError& e) {
        return {exit_code::invalid_input, std::nullopt,
                std::string("DomainSingularError (n = ") + std::to_string(e.occupation()) + "): " + e.what()};
    } catch (const EmptySectorError& e) {
        return {exit_code::invalid_input, std::nullopt, std::string("EmptySectorError: ") + e.what()};
    } catch (const SectorParityError& e) {
        return {exit_code::invalid_input, std::nullopt, std::string("SectorParityError: ") + e.what()};
    } catch (const Error& e) {
        return {exit_code::invalid_input, std::nullopt, std::string("invalid input: ") + e.what()};
    }
}

namespace {

GridSpec parse_grid(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ParameterError("grid must look like name=v1,v2,... or name=start:stop:count");
    GridSpec grid{text.substr(0, eq), {}};
    const std::string body = text.substr(eq + 1);
    auto to_double = [](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty())
            throw ParameterError("bad grid value '" + s + "'");
        return v;
    };
    if (body.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(body);
        for (std::string part; std::getline(ss, part, ':');)
            parts.push_back(part);
        if (parts.size() != 3)
            throw ParameterError("range grid must be start:stop:count");
        const double start = to_double(parts[0]), stop = to_double(parts[1]);
        const double count = to_double(parts[2]);
        if (count < 1 || count != std::floor(count))
            throw ParameterError("grid count must be a positive integer");
        const auto n = static_cast<int>(count);
        for (int i = 0; i < n; ++i)
            grid.values.push_back(n == 1 ? start : start + (stop - start) * i / (n - 1));
    } else {
        std::stringstream ss(body);
        for (std::string part; std::getline(ss, part, ',');)
            grid.values.push_back(to_double(part));
    }
    return grid;
}

void add_common(CLI::App* sub, RunConfig& config, std::string& format)
{
    sub->add_option("--output", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", config.output_path, "Write the report to this file instead of stdout");
    sub->add_option("--tol", config.tol, "Numerical tolerance");
    sub->add_option("--drop-edge", config.drop_edge, "Edge states excluded per mode");
    sub->add_option("--seed", config.seed, "Seed echoed into the report");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    if (!kernels::apply_thread_cap_from_env()) {
        err << "invalid input: TC_AUDIT_THREADS must be a positive integer\n";
        return exit_code::invalid_input;
    }

    CLI::App app{"Tavis-Cummings spectra, Bogoliubov audits and k-photon Jaynes-Cummings checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    RunConfig config;
    std::string format = "json";
    std::optional<int> two_j, two_lambda;
    std::optional<int> cut_a, cut_b, cut_c;
    std::optional<double> omega1;
    std::string power = "both";
    std::string phase = "susskind_glogower";
    std::vector<std::string> grids;
    double delta = 0.0;

    auto* spectrum = app.add_subcommand("spectrum", "Exact sector (or truncated full-space) spectra");
    spectrum->add_option("--omega", config.model.omega);
    spectrum->add_option("--g", config.model.g);
    spectrum->add_option("--two-j", two_j);
    spectrum->add_option("--two-lambda", two_lambda);
    spectrum->add_option("--cutoff-a", cut_a);
    spectrum->add_option("--cutoff-b", cut_b);
    spectrum->add_option("--cutoff-c", cut_c);
    add_common(spectrum, config, format);

    auto* audit_cmd = app.add_subcommand("audit", "Unitarity and bosonic-algebra audit");
    auto* sweep = app.add_subcommand("sweep", "Audit quantities over a one-parameter grid");
    for (auto* sub : {audit_cmd, sweep}) {
        sub->add_option("--omega", config.model.omega);
        sub->add_option("--g", config.model.g);
        sub->add_option("--omega1", omega1);
        sub->add_option("--cutoff-a", config.cutoff_a);
        sub->add_option("--two-j", two_j);
        sub->add_option("--two-lambda", two_lambda);
        sub->add_option("--phase", phase)->check(CLI::IsMember({"susskind_glogower", "adjoint_variant"}));
        sub->add_option("--power", power)
            ->check(CLI::IsMember({"both", "paper_g_squared", "corrected_g"}));
        add_common(sub, config, format);
    }
    audit_cmd->add_option("--cutoff-f", config.cutoff_f);
    audit_cmd->add_option("--cutoff-d", config.cutoff_d);
    audit_cmd->add_option("--threshold", config.threshold);
    audit_cmd->add_option("--scalar-r", config.scalar.r);
    audit_cmd->add_option("--scalar-theta", config.scalar.theta);
    sweep->add_option("--grid", grids, "name=v1,v2,... or name=start:stop:count");

    auto* jc_cmd = app.add_subcommand("jc", "k-photon Jaynes-Cummings block verification");
    jc_cmd->add_option("--k", config.jc.k);
    jc_cmd->add_option("--delta", delta);
    jc_cmd->add_option("--omega", config.jc.omega);
    jc_cmd->add_option("--g", config.jc.g);
    jc_cmd->add_option("--n-max", config.jc_n_max);
    add_common(jc_cmd, config, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::success;
    } catch (const CLI::CallForVersion&) {
        out << tool_version << '\n';
        return exit_code::success;
    } catch (const CLI::ParseError& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_code::invalid_input;
    }

    try {
        if (spectrum->parsed()) {
            config.command = Command::spectrum;
            if (cut_a || cut_b || cut_c) {
                if (!(cut_a && cut_b && cut_c))
                    throw ParameterError("full-space mode needs --cutoff-a, --cutoff-b and --cutoff-c");
                config.spectrum_cutoffs = std::array<int, 3>{*cut_a, *cut_b, *cut_c};
            }
        } else if (audit_cmd->parsed()) {
            config.command = Command::audit;
        } else if (sweep->parsed()) {
            config.command = Command::sweep;
            if (power == "both")
                power = "paper_g_squared";
            for (const auto& g : grids)
                config.grids.push_back(parse_grid(g));
        } else {
            config.command = Command::jc;
            config.jc = jc::JcParams::from_detuning(delta, config.jc.omega, config.jc.g, config.jc.k);
        }
        if (two_j.has_value() != two_lambda.has_value())
            throw ParameterError("--two-j and --two-lambda must be given together");
        if (two_j)
            config.sector = tc::SectorKey{*two_j, *two_lambda};
        config.model.omega1 = omega1;
        config.phase = audit::parse_phase(phase);
        if (power == "both")
            config.powers = {audit::CouplingPower::paper_g_squared, audit::CouplingPower::corrected_g};
        else
            config.powers = {audit::parse_power(power)};
        config.output_format = format == "csv"     ? OutputFormat::csv
                               : format == "table" ? OutputFormat::table
                                                   : OutputFormat::json;
    } catch (const Error& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_code::invalid_input;
    }

    const auto outcome = run(config);
    if (!outcome.diagnostic.empty())
        err << outcome.diagnostic << '\n';
    if (!outcome.report)
        return outcome.exit_code;

    const std::string text = render(*outcome.report, config.output_format);
    if (config.output_path) {
        std::ofstream file(*config.output_path, std::ios::binary);
        if (!file) {
            err << "invalid input: cannot open output file " << *config.output_path << '\n';
            return exit_code::invalid_input;
        }
        file << text;
    } else {
        out << text;
    }
    return outcome.exit_code;
}

} // namespace tcaudit::cli
