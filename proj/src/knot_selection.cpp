#include "alphatest/knot_selection.hpp"

#include "alphatest/errors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace alphatest {

int default_max_knots(int T, int d, int order) {
    int p = int(std::ceil(std::cbrt(double(T))));
    while (p > 1 && T <= (1 + d) * (p + order) + 10) --p;
    return p;
}

BicTrace select_knots(const ReturnPanel& panel, const Eigen::MatrixXd& factors, int p_min,
                      int p_max, int order) {
    const int T = int(panel.R.rows());
    const int N = int(panel.R.cols());
    const int d = int(factors.cols());
    if (int(factors.rows()) != T)
        throw input_error("select_knots: factor rows do not match panel rows");
    if (p_min < 1 || p_max < p_min) throw input_error("select_knots: empty candidate range");

    const double total_ss = panel.R.squaredNorm();

    BicTrace trace;
    double best = std::numeric_limits<double>::infinity();
    for (int p = p_min; p <= p_max; ++p) {
        const int L = p + order;
        if (T <= (1 + d) * L + 1) break;  // remaining candidates only get wider
        const DesignMatrix design = build_design(factors, make_knots(T, p, order));

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.Z);
        qr.setThreshold(1e-10);
        const int rank = int(qr.rank());
        const Eigen::MatrixXd Q =
            qr.householderQ() * Eigen::MatrixXd::Identity(design.T, rank);
        const double fitted_ss = (Q.transpose() * panel.R).squaredNorm();
        const double rss = std::max(total_ss - fitted_ss, 0.0);

        const double bic =
            std::log(rss / (double(N) * T)) + (1 + d) * L * std::log(double(T)) / T;
        trace.candidates.push_back({p, L, bic});
        if (bic < best - 1e-12) {
            best = bic;
            trace.chosen_p = p;
        }
    }
    if (trace.candidates.empty())
        throw input_error("select_knots: no feasible knot count for T=" + std::to_string(T) +
                          ", d=" + std::to_string(d));

    const int chosen_L = trace.chosen_p + order;
    if (double(chosen_L) * chosen_L * chosen_L > T) {
        // Theory wants L^3/T small; surface the violation without failing.
        std::fputs("select_knots: warning, chosen basis dimension violates L^3 <= T\n", stderr);
    }
    return trace;
}

BicTrace select_knots(const ReturnPanel& panel, const Eigen::MatrixXd& factors, int order) {
    const int T = int(panel.R.rows());
    const int d = int(factors.cols());
    return select_knots(panel, factors, 1, default_max_knots(T, d, order), order);
}

}  // namespace alphatest
