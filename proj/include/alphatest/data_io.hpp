#pragma once

#include "alphatest/regression.hpp"

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace alphatest {

enum class MissingPolicy {
    drop_assets,  // remove any asset column with a missing value (default)
    drop_rows,    // remove any date row with a missing value
};

struct PanelSource {
    std::string returns_path;
    std::string factors_path;
    std::optional<double> rf_constant;  // subtracted from returns and market
    std::string rf_column;              // alternative: column in the factor file
    bool percent = false;               // divide all values by 100 on load
    MissingPolicy missing = MissingPolicy::drop_assets;
};

struct LoadedPanel {
    ReturnPanel panel;                      // excess returns, aligned
    Eigen::MatrixXd factors;                // T x d, market column in excess form
    std::vector<std::string> dates;         // shared ISO-8601 index, ascending
    std::vector<std::string> factor_names;  // subset of mkt/smb/hml, file order
    int dropped_assets = 0;
    int dropped_rows = 0;
};

/// Load, align on the date intersection, convert to excess returns, and
/// apply the missing-data policy. The returns file is `date,asset...`; the
/// factor file is `date` plus columns named among mkt/smb/hml (any case,
/// any subset) and optionally the risk-free column.
LoadedPanel load_panel(const PanelSource& source);

/// Bare CSV table: header plus string cells, validated rectangular.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

}  // namespace alphatest
