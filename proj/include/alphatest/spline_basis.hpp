#pragma once

#include <Eigen/Dense>
#include <vector>

namespace alphatest {

/// Normalized B-spline basis on [0,1] with equally spaced interior knots.
///
/// `order` is the spline order q (number of coefficients per polynomial
/// piece, i.e. degree q-1); the basis has L = p + q functions, where p is
/// the number of interior knots. Endpoint knots carry multiplicity q
/// (clamped), so evaluation is well defined on the closed interval and the
/// basis forms a partition of unity.
struct SplineSpec {
    int order = 3;
    int interior_knots = 1;
    std::vector<double> knots;  // p+2 breakpoints, 0 = l_0 < ... < l_{p+1} = 1

    int basis_dim() const { return interior_knots + order; }
};

/// Equally spaced interior knots l_i = i/(p+1). Requires p >= 1, T >= 2.
SplineSpec make_knots(int T, int p, int order = 3);

/// Values of the L basis functions at u in [0,1] via the Cox-de Boor
/// recurrence on the clamped knot vector. At most `order` entries are
/// nonzero and the entries sum to one.
Eigen::VectorXd eval_basis(const SplineSpec& spec, double u);

/// T x L matrix of basis values on the grid u = t/T, t = 1..T.
Eigen::MatrixXd basis_matrix(const SplineSpec& spec, int T);

/// Regression design for the null conditional factor model.
///
/// Row t is [Bc(t/T)', f_1t B(t/T)', ..., f_dt B(t/T)'] where Bc is the
/// column-centered basis. Block 0 columns each sum to zero by construction;
/// the partition of unity makes them also sum to zero across columns, so Z
/// always carries exactly one structural null direction. Downstream solvers
/// must be rank revealing.
struct DesignMatrix {
    Eigen::MatrixXd Z;  // T x (1+d)L
    int T = 0;
    int d = 0;
    int L = 0;
};

/// Assemble Z from a T x d factor matrix (pass a T x 0 matrix for d = 0).
/// Requires T > (1+d)L so the annihilator is a strict projection.
DesignMatrix build_design(const Eigen::MatrixXd& factors, const SplineSpec& spec);

}  // namespace alphatest
