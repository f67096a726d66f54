#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qspeed/angleopt.hpp"
#include "test_util.hpp"

using namespace qspeed;

namespace {

DensityMatrix maximally_mixed() {
    CMat m = CMat::identity(4);
    m *= Complex(0.25);
    return DensityMatrix::unchecked(m);
}

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

}  // namespace

TEST_CASE("evaluate_objective: stationary state, product state, product mixture") {
    SplitMix64 g(51);
    for (ObjectiveKind k : {ObjectiveKind::kickoff, ObjectiveKind::period_ddif, ObjectiveKind::max_distance}) {
        CHECK(std::abs(evaluate_objective(maximally_mixed(), test::random_config(g), k)) < 1e-12);
    }

    const DensityMatrix k00 = build_family({Family::product_mixture, 0.0});
    CHECK(evaluate_objective(k00, config_xx(), ObjectiveKind::max_distance) == doctest::Approx(1.0).epsilon(1e-9));

    const DensityMatrix pm = build_family({Family::product_mixture, 0.5});
    CHECK(evaluate_objective(pm, config_xx(), ObjectiveKind::period_ddif) == doctest::Approx(0.5).epsilon(1e-9));

    // consistency with the dynamics module
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = test::random_density(g);
        const MagnetConfig cfg = test::random_config(g);
        CHECK(evaluate_objective(rho, cfg, ObjectiveKind::period_ddif) == doctest::Approx(d_dif(rho, cfg)).epsilon(1e-9));
        CHECK(evaluate_objective(rho, cfg, ObjectiveKind::kickoff) == doctest::Approx(kickoff(rho, cfg).rate).epsilon(1e-9));
    }
}

TEST_CASE("optimize_angles: determinism and budget monotonicity") {
    SplitMix64 g(52);
    const DensityMatrix rho = sample_separable(77, 3, 8).state;
    const OptimizationResult r1 = optimize_angles(rho, ObjectiveKind::period_ddif, 120);
    const OptimizationResult r2 = optimize_angles(rho, ObjectiveKind::period_ddif, 120);
    CHECK(r1.value == r2.value);
    CHECK(r1.evaluations == r2.evaluations);
    CHECK(r1.config.dir_a.theta == r2.config.dir_a.theta);
    CHECK(r1.config.dir_a.phi == r2.config.dir_a.phi);
    CHECK(r1.config.dir_b.theta == r2.config.dir_b.theta);
    CHECK(r1.config.dir_b.phi == r2.config.dir_b.phi);

    const OptimizationResult wide = optimize_angles(rho, ObjectiveKind::period_ddif, 240);
    CHECK(wide.value >= r1.value - 1e-12);

    // reported value matches the objective at the reported config
    CHECK(evaluate_objective(rho, r1.config, ObjectiveKind::period_ddif) == doctest::Approx(r1.value).epsilon(1e-9));
}

TEST_CASE("optimize_angles: Phi+ kickoff constraint theta_a = theta_b, phi_a = -phi_b") {
    const DensityMatrix phi = DensityMatrix::from_pure(bell_state(BellKind::phi_plus));
    const OptimizationResult r = optimize_angles(phi, ObjectiveKind::kickoff, 400);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(std::abs(r.config.dir_a.theta - r.config.dir_b.theta) < 1e-3);
    double dphi = std::fmod(r.config.dir_a.phi + r.config.dir_b.phi, 2.0 * M_PI);
    if (dphi > M_PI) dphi -= 2.0 * M_PI;
    CHECK(std::abs(dphi) < 1e-3);
}

TEST_CASE("optimize_angles: singlet kickoff wants antipodal fields") {
    const DensityMatrix singlet = DensityMatrix::from_pure(bell_state(BellKind::psi_minus));
    const OptimizationResult r = optimize_angles(singlet, ObjectiveKind::kickoff, 400);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(dot(r.config.dir_a.unit(), r.config.dir_b.unit()) == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("optimize_angles: |00><00| max_distance puts a field orthogonal to z") {
    const DensityMatrix k00 = build_family({Family::product_mixture, 0.0});
    const OptimizationResult r = optimize_angles(k00, ObjectiveKind::max_distance, 200);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    const bool a_orth = std::abs(r.config.dir_a.theta - M_PI / 2.0) < 1e-3;
    const bool b_orth = std::abs(r.config.dir_b.theta - M_PI / 2.0) < 1e-3;
    CHECK((a_orth || b_orth));
}

TEST_CASE("pure-state kickoff optimum equals the max energy variance") {
    SplitMix64 g(53);
    const DensityMatrix p = DensityMatrix::from_pure(test::random_pure(g));
    const OptimizationResult r = optimize_angles(p, ObjectiveKind::kickoff, 300);
    // scan a fine config grid for the best variance
    double best = 0.0;
    for (int ta = 0; ta <= 24; ++ta)
        for (int pa = 0; pa < 24; ++pa)
            for (int tb = 0; tb <= 24; ++tb)
                for (int pb = 0; pb < 24; ++pb) {
                    const MagnetConfig cfg{BlochDirection{M_PI * ta / 24.0, 2 * M_PI * pa / 24.0},
                                           BlochDirection{M_PI * tb / 24.0, 2 * M_PI * pb / 24.0}};
                    best = std::max(best, energy_moments(p, cfg).variance);
                }
    CHECK(r.value >= best - 1e-6);
}

TEST_CASE("product mixture period_ddif never beats 1/2") {
    for (double a : {0.0, 0.2, 0.35, 0.5, 0.8, 1.0}) {
        const OptimizationResult r =
            optimize_angles(build_family({Family::product_mixture, a}), ObjectiveKind::period_ddif, 200);
        CHECK(r.value <= 0.5 + 1e-6);
    }
}
