#include "alphatest/data_io.hpp"

#include "alphatest/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace alphatest {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool is_missing(const std::string& cell) {
    if (cell.empty()) return true;
    const std::string v = lower(cell);
    return v == "na" || v == "nan" || v == "null";
}

double parse_cell(const std::string& cell, const std::string& context) {
    if (is_missing(cell)) return std::numeric_limits<double>::quiet_NaN();
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw input_error("non-numeric cell '" + cell + "' in " + context);
    }
}

bool looks_like_iso_date(const std::string& s) {
    // YYYY-MM-DD; the index stays opaque beyond this shape check.
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

struct NumericTable {
    std::vector<std::string> dates;
    std::vector<std::string> columns;
    Eigen::MatrixXd values;  // rows follow `dates`
};

NumericTable to_numeric(const CsvTable& csv, const std::string& path) {
    if (csv.header.size() < 2)
        throw input_error("file " + path + " needs a date column plus data columns");
    NumericTable t;
    t.columns.assign(csv.header.begin() + 1, csv.header.end());
    t.dates.reserve(csv.rows.size());
    t.values.resize(long(csv.rows.size()), long(t.columns.size()));
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        if (!looks_like_iso_date(row[0]))
            throw input_error("file " + path + " row " + std::to_string(r + 2) +
                              ": date '" + row[0] + "' is not ISO-8601 (YYYY-MM-DD)");
        t.dates.push_back(row[0]);
        for (std::size_t c = 1; c < row.size(); ++c)
            t.values(long(r), long(c - 1)) =
                parse_cell(row[c], path + " row " + std::to_string(r + 2));
    }
    return t;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw input_error("empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split_line(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != table.header.size())
            throw input_error("file " + path + " row " +
                              std::to_string(table.rows.size() + 2) + " has " +
                              std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(table.header.size()));
        table.rows.push_back(std::move(cells));
    }
    return table;
}

LoadedPanel load_panel(const PanelSource& source) {
    NumericTable returns = to_numeric(read_csv(source.returns_path), source.returns_path);
    NumericTable factors = to_numeric(read_csv(source.factors_path), source.factors_path);
    if (source.percent) {
        returns.values /= 100.0;
        factors.values /= 100.0;
    }

    // Identify factor columns; only mkt/smb/hml enter the design.
    int rf_index = -1;
    std::vector<int> factor_cols;
    std::vector<std::string> factor_names;
    for (std::size_t c = 0; c < factors.columns.size(); ++c) {
        const std::string name = lower(factors.columns[c]);
        if (!source.rf_column.empty() && name == lower(source.rf_column)) {
            rf_index = int(c);
        } else if (name == "mkt" || name == "smb" || name == "hml") {
            factor_cols.push_back(int(c));
            factor_names.push_back(name);
        }
    }
    if (factor_cols.empty())
        throw input_error("factor file " + source.factors_path +
                          " has no column named mkt, smb or hml");
    if (!source.rf_column.empty() && rf_index < 0)
        throw input_error("risk-free column '" + source.rf_column + "' not found in " +
                          source.factors_path);

    // Align on the date intersection, ascending (ISO strings sort correctly).
    std::map<std::string, long> factor_row;
    for (std::size_t r = 0; r < factors.dates.size(); ++r)
        factor_row.emplace(factors.dates[r], long(r));
    std::vector<std::pair<std::string, std::pair<long, long>>> matched;
    for (std::size_t r = 0; r < returns.dates.size(); ++r) {
        auto it = factor_row.find(returns.dates[r]);
        if (it != factor_row.end())
            matched.push_back({returns.dates[r], {long(r), it->second}});
    }
    if (matched.empty())
        throw input_error("no common dates between " + source.returns_path + " and " +
                          source.factors_path);
    std::sort(matched.begin(), matched.end());

    const long T0 = long(matched.size());
    const long N0 = returns.values.cols();
    const long d = long(factor_cols.size());

    Eigen::MatrixXd R(T0, N0), F(T0, d);
    Eigen::VectorXd rf = Eigen::VectorXd::Zero(T0);
    if (source.rf_constant) rf.setConstant(*source.rf_constant);
    std::vector<std::string> dates(T0);
    for (long r = 0; r < T0; ++r) {
        dates[r] = matched[r].first;
        R.row(r) = returns.values.row(matched[r].second.first);
        for (long j = 0; j < d; ++j)
            F(r, j) = factors.values(matched[r].second.second, factor_cols[j]);
        if (rf_index >= 0) rf[r] = factors.values(matched[r].second.second, rf_index);
    }

    // Rows where any factor (or the risk-free series) is missing cannot be
    // used under either policy.
    std::vector<long> usable;
    for (long r = 0; r < T0; ++r)
        if (F.row(r).allFinite() && std::isfinite(rf[r])) usable.push_back(r);
    LoadedPanel out;
    out.dropped_rows = int(T0 - long(usable.size()));

    Eigen::MatrixXd Ru(long(usable.size()), N0), Fu(long(usable.size()), d);
    Eigen::VectorXd rfu(long(usable.size()));
    out.dates.reserve(usable.size());
    for (std::size_t k = 0; k < usable.size(); ++k) {
        Ru.row(long(k)) = R.row(usable[k]);
        Fu.row(long(k)) = F.row(usable[k]);
        rfu[long(k)] = rf[usable[k]];
        out.dates.push_back(dates[usable[k]]);
    }

    std::vector<int> keep_assets;
    if (source.missing == MissingPolicy::drop_assets) {
        for (long i = 0; i < N0; ++i)
            if (Ru.col(i).allFinite()) keep_assets.push_back(int(i));
        out.dropped_assets = int(N0 - long(keep_assets.size()));
    } else {
        std::vector<long> keep_rows;
        for (long r = 0; r < Ru.rows(); ++r)
            if (Ru.row(r).allFinite()) keep_rows.push_back(r);
        out.dropped_rows += int(Ru.rows() - long(keep_rows.size()));
        Eigen::MatrixXd R2(long(keep_rows.size()), N0), F2(long(keep_rows.size()), d);
        Eigen::VectorXd rf2(long(keep_rows.size()));
        std::vector<std::string> d2;
        d2.reserve(keep_rows.size());
        for (std::size_t k = 0; k < keep_rows.size(); ++k) {
            R2.row(long(k)) = Ru.row(keep_rows[k]);
            F2.row(long(k)) = Fu.row(keep_rows[k]);
            rf2[long(k)] = rfu[keep_rows[k]];
            d2.push_back(out.dates[std::size_t(keep_rows[k])]);
        }
        Ru = std::move(R2);
        Fu = std::move(F2);
        rfu = std::move(rf2);
        out.dates = std::move(d2);
        for (long i = 0; i < N0; ++i) keep_assets.push_back(int(i));
    }
    if (out.dates.empty()) throw input_error("no usable rows after missing-data policy");
    if (keep_assets.empty()) throw input_error("no usable assets after missing-data policy");

    out.panel.R.resize(Ru.rows(), long(keep_assets.size()));
    out.panel.assets.reserve(keep_assets.size());
    for (std::size_t k = 0; k < keep_assets.size(); ++k) {
        out.panel.R.col(long(k)) = Ru.col(keep_assets[k]);
        out.panel.assets.push_back(returns.columns[std::size_t(keep_assets[k])]);
    }

    // Excess returns; the market factor is itself a return and converts too.
    out.panel.R.colwise() -= rfu;
    for (long j = 0; j < d; ++j)
        if (factor_names[std::size_t(j)] == "mkt") Fu.col(j) -= rfu;

    out.factors = std::move(Fu);
    out.factor_names = std::move(factor_names);
    return out;
}

}  // namespace alphatest
