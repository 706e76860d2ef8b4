// Command-line front end: panel testing, Monte Carlo experiments,
// knot selection and rolling-window analysis.

#include "alphatest/alpha_tests.hpp"
#include "alphatest/data_io.hpp"
#include "alphatest/errors.hpp"
#include "alphatest/experiment.hpp"
#include "alphatest/knot_selection.hpp"
#include "alphatest/rolling.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr std::uint64_t kDefaultSeed = 42;  // documented reproducibility default

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw alphatest::input_error("cannot write " + path);
    out << content;
}

struct CommonOpts {
    std::uint64_t seed = kDefaultSeed;
    double level = 0.05;
    int order = 3;
    int knots = 0;  // 0 = select by BIC
    int threads = 0;
};

struct IoOpts {
    std::string returns_path;
    std::string factors_path;
    std::optional<double> rf_constant;
    std::string rf_column;
    bool percent = false;
    std::string missing = "assets";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "RNG seed")
        ->envname("ALPHATEST_SEED")
        ->capture_default_str();
    cmd->add_option("--level", opts.level, "significance level")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12))
        ->capture_default_str();
    cmd->add_option("--order", opts.order, "spline order q")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--knots", opts.knots, "interior knot count (0 = BIC)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads,
                    "worker thread cap (0 = available cores)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
}

void add_io(CLI::App* cmd, IoOpts& opts) {
    cmd->add_option("--returns", opts.returns_path, "returns CSV (date,asset...)")
        ->required();
    cmd->add_option("--factors", opts.factors_path,
                    "factor CSV (date plus mkt/smb/hml columns)")
        ->required();
    cmd->add_option("--rf", opts.rf_constant, "constant per-period risk-free rate");
    cmd->add_option("--rf-col", opts.rf_column, "risk-free column in the factor file");
    cmd->add_flag("--percent", opts.percent, "inputs are in percent; divide by 100");
    cmd->add_option("--missing", opts.missing, "missing-data policy: assets | rows")
        ->check(CLI::IsMember({"assets", "rows"}))
        ->capture_default_str();
}

alphatest::LoadedPanel load(const IoOpts& io) {
    alphatest::PanelSource src;
    src.returns_path = io.returns_path;
    src.factors_path = io.factors_path;
    src.rf_constant = io.rf_constant;
    src.rf_column = io.rf_column;
    src.percent = io.percent;
    src.missing = io.missing == "rows" ? alphatest::MissingPolicy::drop_rows
                                       : alphatest::MissingPolicy::drop_assets;
    alphatest::LoadedPanel panel = alphatest::load_panel(src);
    if (panel.dropped_rows > 0)
        std::cerr << "dropped " << panel.dropped_rows << " rows (missing data)\n";
    if (panel.dropped_assets > 0)
        std::cerr << "dropped " << panel.dropped_assets << " assets (missing data)\n";
    return panel;
}

int cmd_test(const CommonOpts& common, const IoOpts& io, const std::string& out_json,
             const std::string& out_csv, const std::string& knot_trace) {
    const alphatest::LoadedPanel data = load(io);

    int p = common.knots;
    if (p <= 0) {
        const alphatest::BicTrace trace =
            alphatest::select_knots(data.panel, data.factors, common.order);
        p = trace.chosen_p;
        if (!knot_trace.empty()) {
            std::ostringstream csv;
            csv << std::setprecision(17) << "p,L,bic\n";
            for (const auto& c : trace.candidates)
                csv << c.p << ',' << c.L << ',' << c.bic << '\n';
            write_file(knot_trace, csv.str());
        }
    }

    alphatest::TestReport report = alphatest::run_all(
        data.panel, data.factors,
        alphatest::make_knots(int(data.panel.R.rows()), p, common.order));
    report.seed = common.seed;

    if (!out_json.empty()) write_file(out_json, alphatest::report_to_json(report));
    if (!out_csv.empty()) write_file(out_csv, alphatest::report_to_csv(report));

    const auto verdict = [&](double pv) { return pv < common.level ? "reject" : "accept"; };
    std::cout << "p_max = " << report.p_max << "  (" << verdict(report.p_max)
              << " at level " << common.level << ")\n"
              << "p_sum = " << report.p_sum << "  (" << verdict(report.p_sum)
              << " at level " << common.level << ")\n"
              << "p_adp = " << report.p_adp << "  (" << verdict(report.p_adp)
              << " at level " << common.level << ")\n";
    return kExitOk;
}

int cmd_simulate(const CommonOpts& common, alphatest::SimConfig cfg,
                 const std::string& preset, double scale, const std::string& dist,
                 const std::string& out_csv, const std::string& keep_path) {
    cfg.seed = common.seed;
    cfg.level = common.level;
    cfg.order = common.order;
    cfg.knots_override = common.knots;
    cfg.threads = common.threads;
    cfg.error_dist = dist == "exponential" ? alphatest::ErrorDist::exponential
                                           : alphatest::ErrorDist::normal;

    std::vector<alphatest::SimConfig> cells;
    if (!preset.empty())
        cells = alphatest::preset_cells(preset, scale, cfg);
    else
        cells.push_back(cfg);

    const bool keep = !keep_path.empty();
    const alphatest::PowerTable table = alphatest::run_experiment(cells, keep);
    write_file(out_csv, alphatest::power_table_to_csv(table));
    if (keep) write_file(keep_path, alphatest::replications_to_csv(table));
    return kExitOk;
}

int cmd_rolling(const CommonOpts& common, const IoOpts& io, int h,
                const std::string& out_csv, const std::string& out_json,
                const std::string& knot_trace) {
    const alphatest::LoadedPanel data = load(io);
    const alphatest::RollingResult result =
        alphatest::rolling_test(data.panel, data.factors, data.dates, h, common.knots,
                                common.order, !knot_trace.empty());
    write_file(out_csv, alphatest::rolling_to_csv(result));
    if (!out_json.empty()) write_file(out_json, alphatest::rolling_summary_json(result));
    if (!knot_trace.empty()) write_file(knot_trace, alphatest::rolling_knot_trace_csv(result));
    std::cout << result.windows.size() << " windows of length " << h << "\n";
    return kExitOk;
}

int cmd_select_knots(const CommonOpts& common, const IoOpts& io, int p_min, int p_max,
                     const std::string& out_csv) {
    const alphatest::LoadedPanel data = load(io);
    alphatest::BicTrace trace;
    if (p_max > 0)
        trace = alphatest::select_knots(data.panel, data.factors, p_min, p_max, common.order);
    else
        trace = alphatest::select_knots(data.panel, data.factors, common.order);

    std::ostringstream csv;
    csv << std::setprecision(17) << "p,L,bic\n";
    for (const auto& c : trace.candidates)
        csv << c.p << ',' << c.L << ',' << c.bic << '\n';
    if (!out_csv.empty())
        write_file(out_csv, csv.str());
    else
        std::cout << csv.str();
    std::cout << "chosen_p = " << trace.chosen_p << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive alpha tests for conditional factor pricing models"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML-like key=value config file; flags win");
    app.get_config_formatter_base()->valueSeparator('=');

    CommonOpts common;
    IoOpts io_test, io_roll, io_knots;

    auto* test = app.add_subcommand("test", "test a panel for nonzero average alphas");
    add_common(test, common);
    add_io(test, io_test);
    std::string test_json = "report.json", test_csv, test_trace;
    test->add_option("--out", test_json, "report JSON path")->capture_default_str();
    test->add_option("--csv", test_csv, "report CSV path");
    test->add_option("--knot-trace", test_trace, "BIC trace CSV path");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo size/power experiments");
    add_common(sim, common);
    alphatest::SimConfig cfg;
    std::string preset, sim_dist = "normal", sim_out = "power.csv", keep_path;
    double scale = 1.0;
    sim->add_option("--example", cfg.example, "DGP: 1 (market) or 2 (three factors)")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    sim->add_option("--n", cfg.N, "asset count")->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--t", cfg.T, "time length")->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--dist", sim_dist, "error law: normal | exponential")
        ->check(CLI::IsMember({"normal", "exponential"}))
        ->capture_default_str();
    sim->add_option("--s", cfg.s, "alpha support size (0 = null)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sim->add_option("--c", cfg.c, "signal strength")->capture_default_str();
    sim->add_option("--reps", cfg.replications, "replications")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--burn-in", cfg.burn_in, "discarded start-up steps")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sim->add_flag("--own-lag-garch", cfg.own_lag_garch,
                  "three-factor volatilities feed back on their own lag");
    sim->add_option("--preset", preset, "grid preset: table1 | figure1 | figure2")
        ->check(CLI::IsMember({"table1", "figure1", "figure2"}));
    sim->add_option("--scale", scale, "replication multiplier for presets")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim->add_option("--out", sim_out, "power table CSV path")->capture_default_str();
    sim->add_option("--keep-replications", keep_path,
                    "also write per-replication p-values (long CSV)");

    auto* roll = app.add_subcommand("rolling", "rolling-window alpha tests");
    roll->set_help_flag("--help", "print help");  // frees -h for the window length
    add_common(roll, common);
    add_io(roll, io_roll);
    int h = 100;
    std::string roll_out = "rolling.csv", roll_json, roll_trace;
    roll->add_option("--h", h, "window length")->check(CLI::PositiveNumber)
        ->capture_default_str();
    roll->add_option("--out", roll_out, "per-window CSV path")->capture_default_str();
    roll->add_option("--summary", roll_json, "JSON summary path");
    roll->add_option("--knot-trace", roll_trace, "per-window BIC trace CSV path");

    auto* knots = app.add_subcommand("select-knots", "BIC scan over knot counts");
    add_common(knots, common);
    add_io(knots, io_knots);
    int p_min = 1, p_max = 0;
    std::string knots_out;
    knots->add_option("--p-min", p_min, "smallest candidate")->check(CLI::PositiveNumber)
        ->capture_default_str();
    knots->add_option("--p-max", p_max, "largest candidate (0 = default cap)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    knots->add_option("--out", knots_out, "trace CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (test->parsed()) return cmd_test(common, io_test, test_json, test_csv, test_trace);
        if (sim->parsed())
            return cmd_simulate(common, cfg, preset, scale, sim_dist, sim_out, keep_path);
        if (roll->parsed())
            return cmd_rolling(common, io_roll, h, roll_out, roll_json, roll_trace);
        if (knots->parsed()) return cmd_select_knots(common, io_knots, p_min, p_max, knots_out);
    } catch (const alphatest::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const alphatest::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
