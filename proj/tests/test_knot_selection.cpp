#include "doctest.h"

#include "alphatest/dgp.hpp"
#include "alphatest/errors.hpp"
#include "alphatest/knot_selection.hpp"

#include "oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <random>

using namespace alphatest;

TEST_SUITE("knot_selection") {

TEST_CASE("default candidate cap") {
    CHECK(default_max_knots(500, 1) == 8);  // ceil(500^{1/3}), no shrink needed
    CHECK(default_max_knots(60, 2) == 4);
    CHECK(default_max_knots(30, 2) == 3);  // shrunk once by the T-margin rule
    CHECK(default_max_knots(12, 3) == 1);
}

TEST_CASE("pure trend data prefers the smallest basis") {
    // A global linear trend lies inside every candidate spline space, so the
    // residual sum of squares is identical across p and BIC reduces to the
    // penalty: increasing in p, minimized at p_min.
    const int T = 150, N = 4;
    ReturnPanel panel;
    panel.R.resize(T, N);
    for (int i = 0; i < N; ++i)
        for (int t = 0; t < T; ++t) panel.R(t, i) = 0.3 * (i + 1) + 0.01 * (i + 1) * (t + 1);

    const Eigen::MatrixXd no_factors(T, 0);
    const BicTrace trace = select_knots(panel, no_factors, 1, 5);
    REQUIRE(trace.candidates.size() == 5);
    CHECK(trace.chosen_p == 1);
    for (std::size_t k = 1; k < trace.candidates.size(); ++k) {
        CHECK(trace.candidates[k].bic > trace.candidates[k - 1].bic);
        CHECK(trace.candidates[k].p == trace.candidates[k - 1].p + 1);
        CHECK(trace.candidates[k].L == trace.candidates[k].p + 3);
    }
}

TEST_CASE("bic values match a direct computation") {
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int T = 100, N = 6;
    ReturnPanel panel;
    panel.R.resize(T, N);
    for (int i = 0; i < N; ++i)
        for (int t = 0; t < T; ++t) panel.R(t, i) = normal(rng);
    Eigen::MatrixXd f(T, 1);
    for (int t = 0; t < T; ++t) f(t, 0) = normal(rng);

    const BicTrace trace = select_knots(panel, f, 2, 3);
    REQUIRE(trace.candidates.size() == 2);
    for (const auto& cand : trace.candidates) {
        const DesignMatrix dm = build_design(f, make_knots(T, cand.p));
        const Eigen::MatrixXd M = oracle::dense_annihilator(dm.Z);
        const double rss = (M * panel.R).squaredNorm();
        const double want =
            std::log(rss / double(N * T)) + 2.0 * cand.L * std::log(double(T)) / T;
        CHECK(cand.bic == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("selection is stable across simulated replications") {
    SimConfig cfg;
    cfg.example = 1;
    cfg.N = 200;
    cfg.T = 500;
    cfg.seed = 4711;
    const Eigen::MatrixXd chol = toeplitz_cholesky(cfg.N);

    std::map<int, int> counts;
    const int reps = 100;
    for (int r = 0; r < reps; ++r) {
        std::mt19937_64 rng = replication_rng(cfg.seed, std::uint64_t(r));
        const SimulatedPanel sim = simulate_panel(cfg, chol, rng);
        ReturnPanel panel;
        panel.R = sim.R;
        const BicTrace trace = select_knots(panel, sim.factors);
        ++counts[trace.chosen_p];
    }
    int modal = 0;
    for (const auto& [p, n] : counts) modal = std::max(modal, n);
    CHECK(modal >= 90);
}

TEST_CASE("range validation and infeasible panels") {
    ReturnPanel panel;
    panel.R = Eigen::MatrixXd::Zero(17, 2);
    const Eigen::MatrixXd f = Eigen::MatrixXd::Zero(17, 3);
    CHECK_THROWS_AS(select_knots(panel, f), input_error);  // no feasible candidate

    ReturnPanel ok;
    ok.R = Eigen::MatrixXd::Zero(100, 2);
    const Eigen::MatrixXd f1 = Eigen::MatrixXd::Zero(100, 1);
    CHECK_THROWS_AS(select_knots(ok, f1, 3, 2), input_error);  // empty range
    CHECK_THROWS_AS(select_knots(ok, f1, 0, 2), input_error);  // p < 1

    ReturnPanel mismatched;
    mismatched.R = Eigen::MatrixXd::Zero(99, 2);
    CHECK_THROWS_AS(select_knots(mismatched, f1, 1, 2), input_error);
}

TEST_CASE("candidates that run out of degrees of freedom are truncated") {
    // T = 35, d = 1: p = 1 gives (1+d)L + 1 = 17 < 35 (feasible); p = 14
    // would not be, so a wide requested range is cut short, not fatal.
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int T = 35;
    ReturnPanel panel;
    panel.R.resize(T, 3);
    for (int i = 0; i < 3; ++i)
        for (int t = 0; t < T; ++t) panel.R(t, i) = normal(rng);
    Eigen::MatrixXd f(T, 1);
    for (int t = 0; t < T; ++t) f(t, 0) = normal(rng);

    const BicTrace trace = select_knots(panel, f, 1, 30);
    CHECK(!trace.candidates.empty());
    CHECK(trace.candidates.size() < 30);
    const int last_p = trace.candidates.back().p;
    CHECK(T > 2 * (last_p + 3) + 1);      // last kept candidate is feasible
    CHECK(T <= 2 * (last_p + 1 + 3) + 1); // the next one was not
}

}  // TEST_SUITE
