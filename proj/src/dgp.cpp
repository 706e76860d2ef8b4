#include "alphatest/dgp.hpp"

#include "alphatest/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace alphatest {

namespace {

// Three-factor example parameters (market, size, value). The size and
// value variance equations feed back on the market variance as printed;
// own_lag switches the feedback to each factor's own lagged variance.
constexpr ArGarchParams kMarket1{0.34, 0.05, 0.23, 0.67, 0.13};
constexpr ArGarchParams kMarket2{0.34, 0.05, 0.32, 0.67, 0.13};
constexpr ArGarchParams kSmb{0.04, 0.07, 0.33, 0.51, 0.03};
constexpr ArGarchParams kHml{0.06, 0.04, 0.26, 0.72, 0.05};

}  // namespace

Eigen::VectorXd gen_ar_garch(const ArGarchParams& params, int T, int burn_in,
                             std::mt19937_64& rng) {
    if (T < 1 || burn_in < 0) throw input_error("gen_ar_garch: bad lengths");
    std::normal_distribution<double> normal;
    Eigen::VectorXd out(T);
    double f = 0.0, h = 1.0, zeta = 0.0;
    for (int t = 0; t < burn_in + T; ++t) {
        h = params.omega + params.garch * h + params.arch * h * zeta * zeta;
        zeta = normal(rng);
        f = params.mean + params.ar * (f - params.mean) + std::sqrt(h) * zeta;
        if (t >= burn_in) out[t - burn_in] = f;
    }
    return out;
}

Eigen::VectorXd gen_state_path(int T, int burn_in, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::VectorXd out(T);
    double xi = 0.0, v2 = 1.0;
    for (int t = 0; t < burn_in + T; ++t) {
        v2 = 0.1 + 0.6 * v2;
        xi = 0.8 * xi + std::sqrt(v2) * normal(rng);
        if (t >= burn_in) out[t - burn_in] = xi;
    }
    return out;
}

Eigen::MatrixXd toeplitz_cholesky(int N) {
    Eigen::MatrixXd sigma(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) sigma(i, j) = std::pow(0.5, std::abs(i - j));
    return Eigen::LLT<Eigen::MatrixXd>(sigma).matrixL();
}

Eigen::MatrixXd gen_error_panel(int N, int T, ErrorDist dist, const Eigen::MatrixXd& chol,
                                std::mt19937_64& rng) {
    Eigen::MatrixXd z(T, N);
    if (dist == ErrorDist::normal) {
        std::normal_distribution<double> normal;
        for (int t = 0; t < T; ++t)
            for (int i = 0; i < N; ++i) z(t, i) = normal(rng);
    } else {
        std::exponential_distribution<double> expo(1.0);
        for (int t = 0; t < T; ++t)
            for (int i = 0; i < N; ++i) z(t, i) = expo(rng) - 1.0;
    }
    return z * chol.transpose();
}

AlphaDraw gen_alphas(int N, int T, int s, double c, std::mt19937_64& rng) {
    if (s < 0 || s > N) throw input_error("gen_alphas: support size out of range");
    AlphaDraw draw;
    draw.alpha = Eigen::MatrixXd::Zero(T, N);
    if (s == 0) return draw;

    // Partial Fisher-Yates: first s entries are a uniform draw without
    // replacement.
    std::vector<int> idx(N);
    std::iota(idx.begin(), idx.end(), 0);
    for (int k = 0; k < s; ++k) {
        std::uniform_int_distribution<int> pick(k, N - 1);
        std::swap(idx[k], idx[pick(rng)]);
    }
    draw.support.assign(idx.begin(), idx.begin() + s);
    std::sort(draw.support.begin(), draw.support.end());

    const double hi = c * std::sqrt(std::log(double(N)) / (double(T) * s));
    std::uniform_real_distribution<double> level(0.0, hi);
    const Eigen::VectorXd ramp =
        Eigen::VectorXd::LinSpaced(T, 1.0, double(T)) / double(T);
    for (int k = 0; k < s; ++k) draw.alpha.col(draw.support[k]) = level(rng) * ramp;
    return draw;
}

Eigen::MatrixXd gen_loadings(int example, const Eigen::VectorXd& state) {
    const int T = int(state.size());
    if (example == 1) {
        Eigen::MatrixXd beta(T, 1);
        beta.col(0) = 1.0 + 0.5 * state.array();
        return beta;
    }
    Eigen::MatrixXd beta(T, 3);
    beta.col(0) = 1.0 + 0.5 * state.array();
    beta.col(1) = 0.1 + 0.5 * state.array();
    beta.col(2) = 0.2 + 0.4 * state.array();
    return beta;
}

Eigen::MatrixXd gen_factors(const SimConfig& config, std::mt19937_64& rng) {
    const int T = config.T;
    if (config.example == 1) {
        Eigen::MatrixXd f(T, 1);
        f.col(0) = gen_ar_garch(kMarket1, T, config.burn_in, rng);
        return f;
    }

    // The three factors share the draw loop so the innovation order is
    // fixed: (market, smb, hml) per time step.
    const ArGarchParams params[3] = {kMarket2, kSmb, kHml};
    std::normal_distribution<double> normal;
    Eigen::MatrixXd f(T, 3);
    double fp[3] = {0.0, 0.0, 0.0};
    double hp[3] = {1.0, 1.0, 1.0};
    double zp[3] = {0.0, 0.0, 0.0};
    for (int t = 0; t < config.burn_in + T; ++t) {
        double h[3], z[3], fv[3];
        for (int j = 0; j < 3; ++j) {
            const double lag = config.own_lag_garch ? hp[j] : hp[0];
            h[j] = params[j].omega + params[j].garch * lag + params[j].arch * hp[j] * zp[j] * zp[j];
        }
        for (int j = 0; j < 3; ++j) {
            z[j] = normal(rng);
            fv[j] = params[j].mean + params[j].ar * (fp[j] - params[j].mean) +
                    std::sqrt(h[j]) * z[j];
        }
        for (int j = 0; j < 3; ++j) {
            fp[j] = fv[j];
            hp[j] = h[j];
            zp[j] = z[j];
        }
        if (t >= config.burn_in)
            for (int j = 0; j < 3; ++j) f(t - config.burn_in, j) = fv[j];
    }
    return f;
}

SimulatedPanel simulate_panel(const SimConfig& config, const Eigen::MatrixXd& chol,
                              std::mt19937_64& rng) {
    if (config.example != 1 && config.example != 2)
        throw input_error("simulate_panel: example must be 1 or 2");

    SimulatedPanel panel;
    panel.factors = gen_factors(config, rng);
    const Eigen::VectorXd state = gen_state_path(config.T, config.burn_in, rng);
    const Eigen::MatrixXd beta = gen_loadings(config.example, state);
    AlphaDraw alphas = gen_alphas(config.N, config.T, config.s, config.c, rng);
    panel.support = std::move(alphas.support);

    // Common conditional mean: loadings are shared across assets.
    const Eigen::VectorXd mean_t = (beta.array() * panel.factors.array()).rowwise().sum();
    panel.R = gen_error_panel(config.N, config.T, config.error_dist, chol, rng);
    panel.R += alphas.alpha;
    panel.R.colwise() += mean_t;
    return panel;
}

std::mt19937_64 replication_rng(std::uint64_t seed, std::uint64_t replication) {
    std::seed_seq seq{std::uint32_t(seed & 0xffffffffu), std::uint32_t(seed >> 32),
                      std::uint32_t(replication & 0xffffffffu),
                      std::uint32_t(replication >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace alphatest
