#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qspeed/quantify.hpp"
#include "test_util.hpp"

using namespace qspeed;
using test::random_config;
using test::random_density;
using test::random_pure;

namespace {

DensityMatrix random_state_mixed_or_pure(SplitMix64& g, int trial) {
    return trial % 4 == 0 ? DensityMatrix::from_pure(random_pure(g)) : random_density(g);
}

DensityMatrix random_product_pure(SplitMix64& g) {
    const auto qubit = [&g]() {
        const double theta = std::acos(2.0 * g.uniform() - 1.0);
        const double phi = 2.0 * M_PI * g.uniform();
        return std::pair{Complex(std::cos(theta / 2.0)), std::polar(std::sin(theta / 2.0), phi)};
    };
    const auto [a0, a1] = qubit();
    const auto [b0, b1] = qubit();
    PureState p;
    p.amps[0] = a0 * b0;
    p.amps[1] = a0 * b1;
    p.amps[2] = a1 * b0;
    p.amps[3] = a1 * b1;
    return DensityMatrix::from_pure(p);
}

}  // namespace

TEST_CASE("concurrence: Bell state, product states, linear rho3 law") {
    CHECK(concurrence(build_family({Family::werner, 1.0})) == doctest::Approx(1.0).epsilon(1e-9));

    SplitMix64 g(41);
    for (int trial = 0; trial < 20; ++trial) CHECK(concurrence(random_product_pure(g)) < 1e-7);

    for (int i = 1; i <= 9; ++i) {
        const double x = i / 10.0;
        CHECK(concurrence(build_family({Family::rho3, x})) == doctest::Approx(x).epsilon(1e-9));
    }
}

TEST_CASE("is_separable_ppt: family thresholds at spot values") {
    CHECK_FALSE(is_separable_ppt(build_family({Family::werner, 0.4})));
    CHECK(is_separable_ppt(build_family({Family::gisin, 0.4})));
    CHECK_FALSE(is_separable_ppt(build_family({Family::rho3, 0.01})));
}

TEST_CASE("family thresholds under a 1e-3 scan") {
    const auto flip_point = [](Family f) {
        for (int i = 0; i <= 1000; ++i) {
            const double x = i / 1000.0;
            if (!is_separable_ppt(build_family({f, x}))) return x;
        }
        return 2.0;
    };
    CHECK(std::abs(flip_point(Family::werner) - 1.0 / 3.0) < 2e-3);
    CHECK(std::abs(flip_point(Family::gisin) - 0.5) < 2e-3);
    CHECK(flip_point(Family::rho3) <= 2e-3);
}

TEST_CASE("PPT and concurrence agree on random states") {
    SplitMix64 g(42);
    for (int trial = 0; trial < 2000; ++trial) {
        const DensityMatrix rho = random_state_mixed_or_pure(g, trial);
        CHECK(is_separable_ppt(rho) == (concurrence(rho) <= 1e-7));
    }
}

TEST_CASE("entropy_vn: pure, maximally mixed, classical mixture") {
    SplitMix64 g(43);
    CHECK(entropy_vn(DensityMatrix::from_pure(random_pure(g))) < 1e-9);

    CMat quarter = CMat::identity(4);
    quarter *= Complex(0.25);
    CHECK(entropy_vn(quarter) == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(entropy_vn(build_family({Family::product_mixture, 0.5})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy additivity on product states") {
    SplitMix64 g(44);
    for (int trial = 0; trial < 30; ++trial) {
        const CMat m2a = test::random_cmat(g, 2);
        const CMat m2b = test::random_cmat(g, 2);
        CMat ra = m2a * m2a.adjoint();
        ra *= Complex(1.0) / ra.trace();
        CMat rb = m2b * m2b.adjoint();
        rb *= Complex(1.0) / rb.trace();
        CHECK(entropy_vn(kron(ra, rb)) == doctest::Approx(entropy_vn(ra) + entropy_vn(rb)).epsilon(1e-9));
    }
}

TEST_CASE("mutual information: Bell 2, product 0, classical mixture 1") {
    CHECK(mutual_information(build_family({Family::werner, 1.0})) == doctest::Approx(2.0).epsilon(1e-9));

    SplitMix64 g(45);
    for (int trial = 0; trial < 10; ++trial) CHECK(std::abs(mutual_information(random_product_pure(g))) < 1e-9);

    CHECK(mutual_information(build_family({Family::product_mixture, 0.5})) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mutual information and concurrence are invariant under local unitaries") {
    SplitMix64 g(46);
    for (int trial = 0; trial < 30; ++trial) {
        const DensityMatrix rho = random_state_mixed_or_pure(g, trial);
        const MagnetConfig cfg = random_config(g);
        const double t = M_PI * g.uniform();
        const DensityMatrix rotated = evolve(rho, cfg, t);  // u_a (x) u_b conjugation
        CHECK(mutual_information(rotated) == doctest::Approx(mutual_information(rho)).epsilon(1e-9));
        // concurrence takes square roots of eigenvalues, so near-singular
        // spectra amplify solver error to ~sqrt(eps)
        CHECK(std::abs(concurrence(rotated) - concurrence(rho)) < 1e-6);
    }
}

TEST_CASE("measure_report: bundled values and internal consistency") {
    const MeasureReport bell = measure_report(build_family({Family::werner, 1.0}));
    CHECK(bell.concurrence == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(bell.entropy_ab) < 1e-9);
    CHECK(bell.entropy_a == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(bell.entropy_b == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(bell.mutual_info == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_FALSE(bell.separable);

    CMat quarter = CMat::identity(4);
    quarter *= Complex(0.25);
    const MeasureReport mm = measure_report(DensityMatrix::from_matrix(quarter));
    CHECK(mm.concurrence == 0.0);
    CHECK(mm.entropy_ab == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(mm.mutual_info) < 1e-9);
    CHECK(mm.separable);

    // boundary state: separable with zero concurrence
    const MeasureReport gis = measure_report(build_family({Family::gisin, 0.5}));
    CHECK(gis.separable);
    CHECK(gis.concurrence < 1e-7);

    SplitMix64 g(47);
    for (int trial = 0; trial < 30; ++trial) {
        const MeasureReport r = measure_report(random_density(g));
        CHECK(r.mutual_info == doctest::Approx(r.entropy_a + r.entropy_b - r.entropy_ab).epsilon(1e-12));
        if (r.concurrence > 1e-9) CHECK_FALSE(r.separable);
    }
}
