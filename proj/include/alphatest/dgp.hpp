#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace alphatest {

enum class ErrorDist { normal, exponential };

struct ArGarchParams {
    double mean = 0.0;    // unconditional AR level
    double ar = 0.0;      // AR(1) coefficient
    double omega = 0.0;   // GARCH constant
    double garch = 0.0;   // coefficient on lagged variance
    double arch = 0.0;    // coefficient on lagged variance times squared shock
};

struct SimConfig {
    int example = 1;  // 1: single market factor, 2: three factors
    int N = 200;
    int T = 500;
    ErrorDist error_dist = ErrorDist::normal;
    int s = 0;         // alpha support size, 0 = null hypothesis
    double c = 0.0;    // signal strength
    int replications = 1000;
    std::uint64_t seed = 42;
    int burn_in = 25;
    int knots_override = 0;  // 0 = select by BIC each replication
    int order = 3;
    double level = 0.05;
    // The printed three-factor volatility recursions all feed back on the
    // market variance h_{1,t-1}; this switches to own-lag feedback instead.
    bool own_lag_garch = false;
    int threads = 0;  // 0 = hardware concurrency
};

/// AR(1) mean with multiplicative-variance GARCH recursion:
///   h_t = omega + garch*h_{t-1} + arch*h_{t-1} zeta_{t-1}^2,
///   f_t = mean + ar (f_{t-1} - mean) + sqrt(h_t) zeta_t.
/// Starts from f = 0, h = 1, zeta = 0; the first `burn_in` draws are
/// dropped.
Eigen::VectorXd gen_ar_garch(const ArGarchParams& params, int T, int burn_in,
                             std::mt19937_64& rng);

/// Latent AR(1)-ARCH(1) state: xi_t = 0.8 xi_{t-1} + v_t eps_t with the
/// deterministic variance recursion v_t^2 = 0.1 + 0.6 v_{t-1}^2, from
/// xi = 0, v^2 = 1.
Eigen::VectorXd gen_state_path(int T, int burn_in, std::mt19937_64& rng);

/// Lower Cholesky factor of the Toeplitz covariance 0.5^|i-j|.
Eigen::MatrixXd toeplitz_cholesky(int N);

/// T x N error rows e_t' = (chol z_t)' with z entries iid standard normal
/// or centered unit-variance exponential (Exp(1) - 1).
Eigen::MatrixXd gen_error_panel(int N, int T, ErrorDist dist, const Eigen::MatrixXd& chol,
                                std::mt19937_64& rng);

struct AlphaDraw {
    Eigen::MatrixXd alpha;      // T x N, alpha_it = alpha_i * t/T on the support
    std::vector<int> support;   // sorted asset indices, size s
};

/// Support of size s drawn uniformly without replacement; levels
/// alpha_i ~ U(0, c sqrt(log N / (T s))), ramped linearly in t.
AlphaDraw gen_alphas(int N, int T, int s, double c, std::mt19937_64& rng);

/// Time-varying loadings, identical across assets: column j holds
/// a_j + b_j xi_t. Example 1 uses (a,b) = (1, 0.5); example 2 uses
/// (1, 0.5), (0.1, 0.5), (0.2, 0.4).
Eigen::MatrixXd gen_loadings(int example, const Eigen::VectorXd& state);

/// Factor paths for the configured example (T x 1 or T x 3).
Eigen::MatrixXd gen_factors(const SimConfig& config, std::mt19937_64& rng);

struct SimulatedPanel {
    Eigen::MatrixXd R;        // T x N returns
    Eigen::MatrixXd factors;  // T x d
    std::vector<int> support;
};

/// One full replication: factors, shared state, alphas, correlated errors.
/// Pass the Cholesky factor so it is computed once per (N) and shared.
SimulatedPanel simulate_panel(const SimConfig& config, const Eigen::MatrixXd& chol,
                              std::mt19937_64& rng);

/// Deterministic per-replication engine: seeded from (seed, replication).
std::mt19937_64 replication_rng(std::uint64_t seed, std::uint64_t replication);

}  // namespace alphatest
