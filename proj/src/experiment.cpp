#include "alphatest/experiment.hpp"

#include "alphatest/errors.hpp"
#include "alphatest/knot_selection.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace alphatest {

namespace {

const char* dist_name(ErrorDist dist) {
    return dist == ErrorDist::normal ? "normal" : "exponential";
}

TestReport run_replication(const SimConfig& config, const Eigen::MatrixXd& chol,
                           std::uint64_t rep) {
    std::mt19937_64 rng = replication_rng(config.seed, rep);
    const SimulatedPanel sim = simulate_panel(config, chol, rng);
    const ReturnPanel panel{sim.R, {}};

    int p = config.knots_override;
    if (p <= 0) p = select_knots(panel, sim.factors, config.order).chosen_p;

    TestReport report = run_all(panel, sim.factors, make_knots(config.T, p, config.order));
    report.seed = config.seed;
    return report;
}

}  // namespace

CellResult run_cell(const SimConfig& config, bool keep_replications) {
    const long reps = config.replications;
    if (reps < 1) throw input_error("run_cell: need at least one replication");

    const Eigen::MatrixXd chol = toeplitz_cholesky(config.N);

    std::vector<TestReport> reports(reps);
    std::vector<char> failed(reps, 0);

    unsigned threads = config.threads > 0 ? unsigned(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, unsigned(reps));

    std::exception_ptr fatal;
    std::mutex fatal_mutex;
    auto worker = [&](unsigned first) {
        for (long rep = first; rep < reps; rep += threads) {
            try {
                reports[rep] = run_replication(config, chol, std::uint64_t(rep));
            } catch (const numeric_error& e) {
                failed[rep] = 1;
                std::fprintf(stderr, "replication %ld failed: %s\n", rep, e.what());
            } catch (...) {
                std::lock_guard<std::mutex> lock(fatal_mutex);
                if (!fatal) fatal = std::current_exception();
                return;
            }
        }
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    if (fatal) std::rethrow_exception(fatal);

    CellResult cell;
    cell.config = config;
    for (long rep = 0; rep < reps; ++rep) cell.failures += failed[rep];
    if (cell.failures * 100 > reps)
        throw numeric_error("run_cell: " + std::to_string(cell.failures) + " of " +
                            std::to_string(reps) + " replications failed (budget 1%)");

    const long good = reps - cell.failures;
    long rej[3] = {0, 0, 0};
    for (long rep = 0; rep < reps; ++rep) {
        if (failed[rep]) continue;
        rej[0] += reports[rep].p_max < config.level;
        rej[1] += reports[rep].p_sum < config.level;
        rej[2] += reports[rep].p_adp < config.level;
    }
    const char* names[3] = {"max", "sum", "adp"};
    for (int k = 0; k < 3; ++k) {
        PowerRow row;
        row.test = names[k];
        row.rejections = rej[k];
        row.reps = good;
        row.rate = good > 0 ? double(rej[k]) / good : 0.0;
        row.se = good > 1 ? std::sqrt(row.rate * (1.0 - row.rate) / good) : 0.0;
        cell.rows.push_back(row);
    }
    if (keep_replications) {
        cell.replications.reserve(good);
        for (long rep = 0; rep < reps; ++rep)
            if (!failed[rep]) cell.replications.push_back(reports[rep]);
    }
    return cell;
}

PowerTable run_experiment(const std::vector<SimConfig>& cells, bool keep_replications) {
    PowerTable table;
    for (const SimConfig& config : cells) {
        std::fprintf(stderr, "cell example=%d dist=%s N=%d T=%d s=%d c=%g reps=%d\n",
                     config.example, dist_name(config.error_dist), config.N, config.T, config.s,
                     config.c, config.replications);
        table.cells.push_back(run_cell(config, keep_replications));
    }
    return table;
}

std::vector<SimConfig> preset_cells(const std::string& name, double scale,
                                    const SimConfig& base) {
    if (scale <= 0.0) throw input_error("preset_cells: scale must be positive");
    const auto scaled = [scale](int reps) { return std::max(1, int(std::lround(reps * scale))); };

    std::vector<SimConfig> cells;
    const auto push = [&](int example, ErrorDist dist, int N, int T, int s, double c, int reps) {
        SimConfig cfg = base;
        cfg.example = example;
        cfg.error_dist = dist;
        cfg.N = N;
        cfg.T = T;
        cfg.s = s;
        cfg.c = c;
        cfg.replications = scaled(reps);
        cfg.seed = base.seed + cells.size();  // distinct stream per cell
        cells.push_back(cfg);
    };

    const ErrorDist dists[2] = {ErrorDist::normal, ErrorDist::exponential};
    if (name == "table1") {
        for (int example : {1, 2})
            for (ErrorDist dist : dists)
                for (int N : {200, 500, 1000}) push(example, dist, N, 500, 0, 0.0, 1000);
    } else if (name == "figure1") {
        for (ErrorDist dist : dists) {
            for (int s : {4, 8, 12, 16}) push(1, dist, 500, 500, s, 4.0, 1000);
            for (int s : {18, 21, 24, 27}) push(1, dist, 500, 500, s, 7.0, 1000);
            for (int s : {30, 60, 90, 120}) push(1, dist, 500, 500, s, 10.0, 1000);
        }
    } else if (name == "figure2") {
        for (ErrorDist dist : dists)
            for (int s : {2, 16, 100})
                for (int ci = 0; ci <= 20; ++ci)
                    push(2, dist, 500, 500, s, 0.5 * ci, 1000);
    } else {
        throw input_error("preset_cells: unknown preset '" + name + "'");
    }
    return cells;
}

std::string power_table_to_csv(const PowerTable& table) {
    std::ostringstream out;
    out << std::setprecision(12);
    out << "example,error_dist,n,t,s,c,test,rejections,reps,rate,se\n";
    for (const CellResult& cell : table.cells) {
        for (const PowerRow& row : cell.rows) {
            out << cell.config.example << ',' << dist_name(cell.config.error_dist) << ','
                << cell.config.N << ',' << cell.config.T << ',' << cell.config.s << ','
                << cell.config.c << ',' << row.test << ',' << row.rejections << ',' << row.reps
                << ',' << row.rate << ',';
            if (row.reps > 1) out << row.se;
            out << '\n';
        }
    }
    return out.str();
}

std::string replications_to_csv(const PowerTable& table) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "example,error_dist,n,t,s,c,rep,test,p_value\n";
    for (const CellResult& cell : table.cells) {
        for (std::size_t rep = 0; rep < cell.replications.size(); ++rep) {
            const TestReport& r = cell.replications[rep];
            const std::pair<const char*, double> tests[3] = {
                {"max", r.p_max}, {"sum", r.p_sum}, {"adp", r.p_adp}};
            for (const auto& [test, p] : tests)
                out << cell.config.example << ',' << dist_name(cell.config.error_dist) << ','
                    << cell.config.N << ',' << cell.config.T << ',' << cell.config.s << ','
                    << cell.config.c << ',' << rep << ',' << test << ',' << p << '\n';
        }
    }
    return out.str();
}

}  // namespace alphatest
