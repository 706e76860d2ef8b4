// Brute-force reference implementations used to cross-check the library.
//
// Everything here is deliberately naive: explicit T x T projectors via SVD,
// explicit N x N covariance matrices, scalar loops for the test statistics,
// and adaptive Simpson quadrature for distribution functions.  None of it
// shares code with the production paths in src/.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace oracle {

// Explicit T x T annihilator M = I - Z (Z'Z)^+ Z' built from a full SVD.
inline Eigen::MatrixXd dense_annihilator(const Eigen::MatrixXd& Z) {
    const Eigen::Index T = Z.rows();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double tol = 1e-10 * svd.singularValues()(0);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(T, T);
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        if (svd.singularValues()(k) > tol) {
            P += svd.matrixU().col(k) * svd.matrixU().col(k).transpose();
        }
    }
    return Eigen::MatrixXd::Identity(T, T) - P;
}

struct DenseFit {
    Eigen::MatrixXd residuals;  // T x N, M R
    Eigen::VectorXd h;          // M 1
    Eigen::VectorXd sigma_diag; // per-asset variance, divisor T - d - 1
    double trace_sigma_sq;      // bias-corrected Tr(Sigma^2) estimate
    double m_stat;
    int argmax_asset;
    double s_stat;
    double mu_hat;
    double sigma_hat;
};

// Reference fit: explicit projector, scalar loops everywhere.
inline DenseFit dense_fit(const Eigen::MatrixXd& R, const Eigen::MatrixXd& Z,
                          Eigen::Index d, Eigen::Index L) {
    const Eigen::Index T = R.rows();
    const Eigen::Index N = R.cols();
    DenseFit out;
    const Eigen::MatrixXd M = dense_annihilator(Z);
    out.residuals = M * R;
    out.h = M * Eigen::VectorXd::Ones(T);

    out.sigma_diag.resize(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        double ss = 0.0;
        for (Eigen::Index t = 0; t < T; ++t) ss += out.residuals(t, i) * out.residuals(t, i);
        out.sigma_diag(i) = ss / static_cast<double>(T - d - 1);
    }

    out.m_stat = -1.0;
    out.argmax_asset = -1;
    for (Eigen::Index i = 0; i < N; ++i) {
        double num = 0.0;
        for (Eigen::Index t = 0; t < T; ++t) num += out.residuals(t, i);
        const double ti2 = num * num / (static_cast<double>(T) * out.sigma_diag(i));
        if (ti2 > out.m_stat) {
            out.m_stat = ti2;
            out.argmax_asset = static_cast<int>(i);
        }
    }

    double s = 0.0;
    for (Eigen::Index i = 0; i < N; ++i) {
        double num = 0.0;
        for (Eigen::Index t = 0; t < T; ++t) num += out.residuals(t, i);
        s += num * num;
    }
    out.s_stat = s / static_cast<double>(N * T);

    double mu = 0.0;
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index t = 0; t < T; ++t)
            mu += out.residuals(t, i) * out.residuals(t, i) * out.h(t) * out.h(t);
    out.mu_hat = mu / static_cast<double>(N * T);

    // Explicit N x N covariance of column-centered residuals.
    Eigen::MatrixXd C = out.residuals;
    for (Eigen::Index i = 0; i < N; ++i) C.col(i).array() -= C.col(i).mean();
    const Eigen::MatrixXd Sigma = C.transpose() * C / static_cast<double>(T);
    const double tr = Sigma.trace();
    const double tr_sq = (Sigma * Sigma).trace();
    const double k = static_cast<double>((1 + d) * L);
    const double Td = static_cast<double>(T);
    out.trace_sigma_sq = Td * Td / ((Td + k - 1.0) * (Td - k)) * (tr_sq - tr * tr / (Td - k));

    double h2 = 0.0, h4 = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
        h2 += out.h(t) * out.h(t);
        h4 += out.h(t) * out.h(t) * out.h(t) * out.h(t);
    }
    const double var = 2.0 * out.trace_sigma_sq * (h2 * h2 - h4) /
                       (static_cast<double>(N) * static_cast<double>(N) * Td * Td);
    out.sigma_hat = std::sqrt(var);
    return out;
}

// Textbook Cox-de Boor recursion, exponential-time, evaluated per basis index.
inline double naive_bspline(const std::vector<double>& knots, std::size_t l,
                            int degree, double u) {
    if (degree == 0) {
        const bool last = (l + 2 == knots.size()) || (knots[l + 1] >= 1.0 && u >= 1.0);
        if (u >= knots[l] && (u < knots[l + 1] || (last && u <= knots[l + 1]))) return 1.0;
        return 0.0;
    }
    double left = 0.0, right = 0.0;
    const double dl = knots[l + degree] - knots[l];
    if (dl > 0.0) left = (u - knots[l]) / dl * naive_bspline(knots, l, degree - 1, u);
    const double dr = knots[l + degree + 1] - knots[l + 1];
    if (dr > 0.0) right = (knots[l + degree + 1] - u) / dr * naive_bspline(knots, l + 1, degree - 1, u);
    return left + right;
}

// Adaptive Simpson quadrature.
namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(const std::function<double(double)>& f, double a, double b,
                       double fa, double fm, double fb, double whole, double tol,
                       int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adaptive(f, a, b, fa, fm, fb, whole, tol, 60);
}

// One-sample Kolmogorov-Smirnov statistic against a callable CDF.
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        d = std::max(d, F - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - F);
    }
    return d;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("pearson: mismatched or tiny samples");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracle
