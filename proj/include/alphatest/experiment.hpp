#pragma once

#include "alphatest/alpha_tests.hpp"
#include "alphatest/dgp.hpp"

#include <string>
#include <vector>

namespace alphatest {

/// Rejection counts for one (config, test) pair.
struct PowerRow {
    std::string test;  // "max", "sum", "adp"
    long rejections = 0;
    long reps = 0;
    double rate = 0.0;
    double se = 0.0;
};

struct CellResult {
    SimConfig config;
    std::vector<PowerRow> rows;           // max, sum, adp in that order
    std::vector<TestReport> replications; // populated when keep_replications
    long failures = 0;
};

struct PowerTable {
    std::vector<CellResult> cells;
};

/// Run every replication of one grid cell. Replications are independent
/// and keyed by (seed, rep), so the result does not depend on the thread
/// count. Fit failures are recorded; more than 1% of them aborts the cell
/// with numeric_error.
CellResult run_cell(const SimConfig& config, bool keep_replications = false);

/// Sequence of cells (a preset grid or a single configured cell).
PowerTable run_experiment(const std::vector<SimConfig>& cells, bool keep_replications = false);

/// Built-in experiment grids. `scale` multiplies the replication counts
/// (minimum 1).
/// table1: both examples, both error laws, N in {200,500,1000}, T=500, null.
/// figure1: example 1 at (500,500), sparsity sweep with bucketed strength.
/// figure2: example 2 at (500,500), strength sweep at s in {2,16,100}.
std::vector<SimConfig> preset_cells(const std::string& name, double scale,
                                    const SimConfig& base);

/// Aggregate CSV (one row per cell and test).
std::string power_table_to_csv(const PowerTable& table);

/// Long-format per-replication p-values for kept cells.
std::string replications_to_csv(const PowerTable& table);

}  // namespace alphatest
