#include "alphatest/regression.hpp"

#include "alphatest/errors.hpp"

#include <cmath>
#include <string>

namespace alphatest {

namespace {

// Orthonormal basis of col(Z) with the structural null direction removed.
// Z is at most rank (1+d)L - 1 by construction, so one dropped pivot is
// expected; anything below that is a genuinely singular design.
Eigen::MatrixXd range_basis(const DesignMatrix& design) {
    const Eigen::MatrixXd& Z = design.Z;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
    qr.setThreshold(1e-10);
    const int rank = int(qr.rank());
    const int expected = (1 + design.d) * design.L - 1;
    if (rank < expected) {
        throw singular_design_error(
            "fit_null_model: design rank " + std::to_string(rank) + " below expected " +
            std::to_string(expected) + " (max pivot " + std::to_string(qr.maxPivot()) + ")");
    }
    return qr.householderQ() * Eigen::MatrixXd::Identity(design.T, rank);
}

}  // namespace

NullFit fit_null_model(const ReturnPanel& panel, const DesignMatrix& design,
                       const FitOptions& opts) {
    const int T = design.T;
    const int N = int(panel.R.cols());
    if (int(panel.R.rows()) != T)
        throw input_error("fit_null_model: panel has " + std::to_string(panel.R.rows()) +
                          " rows, design expects " + std::to_string(T));
    if (N < 1) throw input_error("fit_null_model: empty panel");

    const Eigen::MatrixXd Q = range_basis(design);

    NullFit fit;
    fit.T = T;
    fit.N = N;
    fit.d = design.d;
    fit.L = design.L;
    fit.rank = int(Q.cols());
    fit.residuals = panel.R - Q * (Q.transpose() * panel.R);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(T);
    fit.h = ones - Q * (Q.transpose() * ones);

    const double divisor = opts.dof_variance_divisor ? double(T - (1 + design.d) * design.L)
                                                     : double(T - design.d - 1);
    if (divisor <= 0) throw degrees_of_freedom_error("fit_null_model: nonpositive variance divisor");
    fit.sigma_diag = fit.residuals.colwise().squaredNorm() / divisor;

    const double mean_sigma = fit.sigma_diag.mean();
    for (int i = 0; i < N; ++i)
        if (fit.sigma_diag[i] < 1e-12 * mean_sigma) fit.degenerate_assets.push_back(i);

    fit.trace_sigma_sq_hat = compute_trace_estimator(fit.residuals, design.d, design.L);
    return fit;
}

double compute_trace_estimator(const Eigen::MatrixXd& residuals, int d, int L) {
    const int T = int(residuals.rows());
    const int k = (1 + d) * L;
    if (T <= k)
        throw degrees_of_freedom_error("compute_trace_estimator: need T > (1+d)L, got T=" +
                                       std::to_string(T) + ", (1+d)L=" + std::to_string(k));

    const Eigen::MatrixXd C = residuals.rowwise() - residuals.colwise().mean();
    // G = C C' / T shares its nonzero spectrum with the time-centered
    // second-moment matrix C'C / T, so Tr and the squared Frobenius norm
    // transfer directly.
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(T, T);
    G.selfadjointView<Eigen::Lower>().rankUpdate(C, 1.0 / T);
    double tr = 0.0, fro2 = 0.0;
    for (int j = 0; j < T; ++j) {
        tr += G(j, j);
        fro2 += G(j, j) * G(j, j);
        for (int i = j + 1; i < T; ++i) fro2 += 2.0 * G(i, j) * G(i, j);
    }

    const double Td = double(T);
    return Td * Td / ((Td + k - 1.0) * (Td - k)) * (fro2 - tr * tr / (Td - k));
}

}  // namespace alphatest
