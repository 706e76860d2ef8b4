#pragma once

#include "alphatest/alpha_tests.hpp"
#include "alphatest/knot_selection.hpp"

#include <string>
#include <vector>

namespace alphatest {

/// Per-window test results over consecutive length-h sub-panels.
struct RollingResult {
    struct Window {
        int tau = 0;  // 1-based window start
        std::string start_date;
        std::string end_date;
        double p_max = 0.0;
        double p_sum = 0.0;
        double p_adp = 0.0;
        int knots_p = 0;
        bool failed = false;
        std::string error;
        std::vector<BicTrace::Candidate> knot_trace;  // only when requested
    };
    std::vector<Window> windows;
    int h = 0;
};

/// Slide a length-h window over rows tau..tau+h-1 for tau in 1..T-h,
/// reselecting the knot count per window (unless overridden) and computing
/// all three p-values. Per-window failures are recorded and the scan
/// continues.
RollingResult rolling_test(const ReturnPanel& panel, const Eigen::MatrixXd& factors,
                           const std::vector<std::string>& dates, int h,
                           int knots_override = 0, int order = 3,
                           bool record_knot_trace = false);

/// CSV of every window's BIC scan: tau,p,L,bic.
std::string rolling_knot_trace_csv(const RollingResult& result);

/// CSV with columns tau,start_date,end_date,p_max,p_sum,p_adp,knots_p.
std::string rolling_to_csv(const RollingResult& result);

/// JSON summary: min and median p per test over successful windows.
std::string rolling_summary_json(const RollingResult& result);

}  // namespace alphatest
