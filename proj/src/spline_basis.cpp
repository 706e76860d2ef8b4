#include "alphatest/spline_basis.hpp"

#include "alphatest/errors.hpp"

#include <algorithm>
#include <cmath>

namespace alphatest {

SplineSpec make_knots(int T, int p, int order) {
    if (p < 1) throw input_error("make_knots: interior knot count must be >= 1");
    if (T < 2) throw input_error("make_knots: time length must be >= 2");
    if (order < 1) throw input_error("make_knots: order must be >= 1");
    SplineSpec spec;
    spec.order = order;
    spec.interior_knots = p;
    spec.knots.resize(p + 2);
    for (int i = 0; i <= p + 1; ++i) spec.knots[i] = double(i) / (p + 1);
    return spec;
}

namespace {

// Clamped knot vector: each endpoint repeated `order` times, interior
// breakpoints once. Length L + order.
std::vector<double> clamped_knots(const SplineSpec& spec) {
    const int q = spec.order;
    const int p = spec.interior_knots;
    std::vector<double> t;
    t.reserve(p + 2 * q);
    t.insert(t.end(), q, 0.0);
    for (int i = 1; i <= p; ++i) t.push_back(spec.knots[i]);
    t.insert(t.end(), q, 1.0);
    return t;
}

}  // namespace

Eigen::VectorXd eval_basis(const SplineSpec& spec, double u) {
    if (u < 0.0 || u > 1.0) throw input_error("eval_basis: u outside [0,1]");
    const int q = spec.order;
    const int L = spec.basis_dim();
    const std::vector<double> t = clamped_knots(spec);

    Eigen::VectorXd out = Eigen::VectorXd::Zero(L);
    if (u >= 1.0) {
        out[L - 1] = 1.0;  // right endpoint belongs to the last clamped span
        return out;
    }

    // Knot span containing u: largest j with t[j] <= u < t[j+1].
    int span = q - 1;
    while (span + 1 < L && t[span + 1] <= u) ++span;

    // Cox-de Boor triangle over the q local functions (de Boor's algorithm
    // for basis values; only B_{span-q+1..span} are nonzero).
    std::vector<double> vals(q, 0.0);
    vals[0] = 1.0;
    std::vector<double> left(q), right(q);
    for (int k = 1; k < q; ++k) {
        left[k] = u - t[span + 1 - k];
        right[k] = t[span + k] - u;
        double saved = 0.0;
        for (int r = 0; r < k; ++r) {
            const double denom = right[r + 1] + left[k - r];
            const double tmp = vals[r] / denom;
            vals[r] = saved + right[r + 1] * tmp;
            saved = left[k - r] * tmp;
        }
        vals[k] = saved;
    }
    for (int r = 0; r < q; ++r) out[span - q + 1 + r] = vals[r];
    return out;
}

Eigen::MatrixXd basis_matrix(const SplineSpec& spec, int T) {
    if (T < 2) throw input_error("basis_matrix: time length must be >= 2");
    Eigen::MatrixXd B(T, spec.basis_dim());
    for (int t = 1; t <= T; ++t) B.row(t - 1) = eval_basis(spec, double(t) / T).transpose();
    return B;
}

DesignMatrix build_design(const Eigen::MatrixXd& factors, const SplineSpec& spec) {
    const int T = int(factors.rows());
    const int d = int(factors.cols());
    const int L = spec.basis_dim();
    if (T <= (1 + d) * L)
        throw degrees_of_freedom_error(
            "build_design: need T > (1+d)L, got T=" + std::to_string(T) + ", (1+d)L=" +
            std::to_string((1 + d) * L));

    const Eigen::MatrixXd B = basis_matrix(spec, T);
    const Eigen::RowVectorXd colmean = B.colwise().mean();

    DesignMatrix dm;
    dm.T = T;
    dm.d = d;
    dm.L = L;
    dm.Z.resize(T, (1 + d) * L);
    dm.Z.leftCols(L) = B.rowwise() - colmean;
    for (int j = 0; j < d; ++j)
        dm.Z.middleCols((1 + j) * L, L) = B.array().colwise() * factors.col(j).array();
    return dm;
}

}  // namespace alphatest
