#pragma once

#include "alphatest/regression.hpp"

#include <Eigen/Dense>
#include <vector>

namespace alphatest {

/// BIC scan over interior-knot counts.
struct BicTrace {
    struct Candidate {
        int p = 0;
        int L = 0;
        double bic = 0.0;
    };
    std::vector<Candidate> candidates;
    int chosen_p = 0;
};

/// Default upper end of the candidate range: ceil(T^{1/3}), shrunk until
/// T > (1+d)(p+q) + 10 so every candidate design stays well conditioned.
int default_max_knots(int T, int d, int order = 3);

/// Evaluate BIC(p) = log(RSS / (NT)) + (1+d)(p+q) log(T)/T over
/// p in [p_min, p_max] and pick the minimizer; ties (within 1e-12) go to
/// the smaller p. Throws input_error when no candidate is feasible.
BicTrace select_knots(const ReturnPanel& panel, const Eigen::MatrixXd& factors, int p_min,
                      int p_max, int order = 3);

/// Scan with the default range.
BicTrace select_knots(const ReturnPanel& panel, const Eigen::MatrixXd& factors, int order = 3);

}  // namespace alphatest
