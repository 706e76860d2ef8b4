#include "alphatest/rolling.hpp"

#include "alphatest/errors.hpp"
#include "alphatest/knot_selection.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace alphatest {

RollingResult rolling_test(const ReturnPanel& panel, const Eigen::MatrixXd& factors,
                           const std::vector<std::string>& dates, int h,
                           int knots_override, int order, bool record_knot_trace) {
    const int T = int(panel.R.rows());
    if (int(factors.rows()) != T)
        throw input_error("rolling_test: factor rows do not match panel rows");
    if (!dates.empty() && int(dates.size()) != T)
        throw input_error("rolling_test: date index does not match panel rows");
    if (h >= T) throw input_error("rolling_test: window length h must be below T");
    const int d = int(factors.cols());
    if (h <= (1 + d) * (1 + order) + 1)
        throw input_error("rolling_test: window too short for the smallest design");

    RollingResult result;
    result.h = h;
    result.windows.reserve(std::size_t(T - h));
    for (int tau = 1; tau <= T - h; ++tau) {
        RollingResult::Window w;
        w.tau = tau;
        if (!dates.empty()) {
            w.start_date = dates[std::size_t(tau - 1)];
            w.end_date = dates[std::size_t(tau + h - 2)];
        }
        const ReturnPanel sub{panel.R.middleRows(tau - 1, h), {}};
        const Eigen::MatrixXd fsub = factors.middleRows(tau - 1, h);
        try {
            int p = knots_override;
            if (p <= 0) {
                BicTrace trace = select_knots(sub, fsub, order);
                p = trace.chosen_p;
                if (record_knot_trace) w.knot_trace = std::move(trace.candidates);
            }
            const TestReport r = run_all(sub, fsub, make_knots(h, p, order));
            w.p_max = r.p_max;
            w.p_sum = r.p_sum;
            w.p_adp = r.p_adp;
            w.knots_p = p;
        } catch (const error& e) {
            w.failed = true;
            w.error = e.what();
        }
        result.windows.push_back(std::move(w));
    }
    return result;
}

std::string rolling_to_csv(const RollingResult& result) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "tau,start_date,end_date,p_max,p_sum,p_adp,knots_p\n";
    for (const auto& w : result.windows) {
        out << w.tau << ',' << w.start_date << ',' << w.end_date << ',';
        if (w.failed)
            out << ",,,";  // empty p-values and knot count for failed windows
        else
            out << w.p_max << ',' << w.p_sum << ',' << w.p_adp << ',' << w.knots_p;
        out << '\n';
    }
    return out.str();
}

std::string rolling_knot_trace_csv(const RollingResult& result) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "tau,p,L,bic\n";
    for (const auto& w : result.windows)
        for (const auto& c : w.knot_trace)
            out << w.tau << ',' << c.p << ',' << c.L << ',' << c.bic << '\n';
    return out.str();
}

namespace {

nlohmann::ordered_json summary_stats(std::vector<double> values) {
    nlohmann::ordered_json j;
    if (values.empty()) {
        j["min"] = nullptr;
        j["median"] = nullptr;
        return j;
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    j["min"] = values.front();
    j["median"] = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    return j;
}

}  // namespace

std::string rolling_summary_json(const RollingResult& result) {
    std::vector<double> pm, ps, pa;
    int failed = 0;
    for (const auto& w : result.windows) {
        if (w.failed) {
            ++failed;
            continue;
        }
        pm.push_back(w.p_max);
        ps.push_back(w.p_sum);
        pa.push_back(w.p_adp);
    }
    nlohmann::ordered_json j;
    j["windows"] = result.windows.size();
    j["failed_windows"] = failed;
    j["h"] = result.h;
    j["p_max"] = summary_stats(pm);
    j["p_sum"] = summary_stats(ps);
    j["p_adp"] = summary_stats(pa);
    return j.dump(2) + "\n";
}

}  // namespace alphatest
