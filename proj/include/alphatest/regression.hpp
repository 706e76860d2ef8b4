#pragma once

#include "alphatest/spline_basis.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace alphatest {

struct ReturnPanel {
    Eigen::MatrixXd R;                // T x N excess returns
    std::vector<std::string> assets;  // optional labels, empty or size N
};

/// Least-squares fit of the null model for every asset against a shared
/// design, plus the quantities the test statistics consume.
struct NullFit {
    Eigen::MatrixXd residuals;   // T x N, columns e_i = M_Z r_i
    Eigen::VectorXd h;           // M_Z 1_T
    Eigen::VectorXd sigma_diag;  // per-asset residual variances
    double trace_sigma_sq_hat = 0.0;
    int T = 0;
    int N = 0;
    int d = 0;
    int L = 0;
    int rank = 0;                        // numerical rank of Z actually used
    std::vector<int> degenerate_assets;  // sigma_ii below tolerance
};

struct FitOptions {
    // Variance divisor T-d-1 follows the source formula for sigma_ii.
    // Switching to the regression degrees of freedom T-(1+d)L is possible
    // but changes published size numbers; leave off.
    bool dof_variance_divisor = false;
};

/// Residuals, h = M_Z 1_T, per-asset variances and the trace estimate.
///
/// The design's structural null direction (the centered block's columns sum
/// to the zero vector) is handled by projecting onto a rank-revealing
/// orthonormal basis of col(Z); rank below (1+d)L - 1 raises
/// singular_design_error.
NullFit fit_null_model(const ReturnPanel& panel, const DesignMatrix& design,
                       const FitOptions& opts = {});

/// Bias-corrected estimate of Tr(Sigma^2) from the residual matrix:
///   T^2 {T+k-1}^{-1} {T-k}^{-1} [ Tr(S^2) - Tr(S)^2 / (T-k) ],  k = (1+d)L,
/// with S the time-centered residual second-moment matrix. Both traces are
/// evaluated through the T x T Gram matrix of the centered residuals, so
/// no N x N matrix is ever formed.
double compute_trace_estimator(const Eigen::MatrixXd& residuals, int d, int L);

}  // namespace alphatest
