#include <doctest.h>

#include "ncfa/potential.hpp"

using namespace ncfa;

TEST_CASE("circle integral of ln|R + e^{iθ}| equals max(0, 2 ln R) at the poles") {
    CHECK(std::abs(unit_log_integral(0.5)) <= 1e-6);
    CHECK(std::abs(unit_log_integral(2.0) - 2.0 * std::log(2.0)) <= 1e-6);
    CHECK(std::abs(unit_log_integral(10.0) - 2.0 * std::log(10.0)) <= 1e-6);
    CHECK(std::abs(unit_log_integral(1.0)) <= 1e-3); // integrable singularity
}

TEST_CASE("balayage of a point mass keeps moments and exterior potentials") {
    AtomicMeasure mu;
    mu.atoms.push_back(Complex(0.3, 0.4));
    mu.masses.push_back(1.0);
    CircleMeasure nu = balayage_to_circle(mu, 4096);
    CHECK(nu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CVector ma = moments(mu, 10), mb = moments(nu, 10);
    for (int m = 0; m < 10; ++m) CHECK(std::abs(ma[m] - mb[m]) <= 1e-9);
    for (double r : {1.5, 4.0})
        CHECK(std::abs(log_potential(mu, Complex(r, 0.2)) -
                       log_potential(nu, Complex(r, 0.2))) <= 1e-8);
}

TEST_CASE("balayage rejects atoms on or outside the circle") {
    AtomicMeasure mu;
    mu.atoms.push_back(Complex(1.0, 0.0));
    mu.masses.push_back(1.0);
    CHECK_THROWS_AS(balayage_to_circle(mu, 256), AtomOnOrOutsideCircle);
}

TEST_CASE("sweeping strictly lowers the potential inside the disk") {
    AtomicMeasure mu;
    mu.atoms.push_back(Complex(0.5, 0.0));
    mu.masses.push_back(1.0);
    CircleMeasure nu = balayage_to_circle(mu, 4096);
    // at the origin: U_μ = ln(1/0.5) = ln 2, while the circle sweep gives 0
    CHECK(log_potential(mu, Complex(0.0, 0.0)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(std::abs(log_potential(nu, Complex(0.0, 0.0))) <= 1e-8);
}

TEST_CASE("jensen pipeline on a strictly upper triangular element") {
    DirectSumAlgebra alg({2});
    TracialState tau = TracialState::uniform(alg);
    CMatrix x = CMatrix::Zero(2, 2);
    x(0, 1) = 0.7;
    auto rep = jensen_via_potentials(tau, x, 6);
    CHECK(rep.max_moment_residual <= 1e-9);
    CHECK(std::abs(rep.delta - 1.0) <= 1e-9);
    CHECK(std::abs(rep.log_integral_mu) <= 1e-9);
    CHECK(rep.log_integral_nu >= -1e-6);
    CHECK(!rep.log_singularity);
    // all Brown mass sits at the origin, swept out to the circle
    CHECK(rep.inside.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("jensen pipeline on the cyclic shift keeps all mass on the circle") {
    DirectSumAlgebra alg({9});
    TracialState tau = TracialState::uniform(alg);
    CMatrix c = CMatrix::Zero(9, 9);
    for (int i = 0; i < 9; ++i) c((i + 1) % 9, i) = 1.0;
    auto rep = jensen_via_potentials(tau, c, 8);
    const double oracle = std::pow(2.0, 1.0 / 9.0);
    CHECK(rep.inside.total_mass() <= 1e-12);
    CHECK(rep.boundary.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.delta == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(std::exp(rep.log_integral_nu) == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(rep.max_moment_residual <= 1e-12);
}

TEST_CASE("jensen pipeline rejects nonzero trace moments or large spectra") {
    DirectSumAlgebra alg({2});
    TracialState tau = TracialState::uniform(alg);
    CHECK_THROWS_AS(jensen_via_potentials(tau, CMatrix(CMatrix::Identity(2, 2))),
                    PreconditionViolated);
    CHECK_THROWS_AS(jensen_via_potentials(tau, CMatrix(3.0 * CMatrix::Identity(2, 2))),
                    PreconditionViolated);
}

TEST_CASE("poisson kernel is a probability density in θ") {
    const Complex a(0.4, -0.3);
    const int g = 2048;
    double s0 = 0.0;
    Complex s1 = 0.0;
    for (int j = 0; j < g; ++j) {
        const double th = 2.0 * M_PI * (j + 0.5) / g;
        const double p = poisson_kernel(a, th);
        CHECK(p > 0.0);
        s0 += p / g;
        s1 += p * std::polar(1.0, th) / double(g);
    }
    CHECK(std::abs(s0 - 1.0) <= 1e-10);
    CHECK(std::abs(s1 - a) <= 1e-10); // first moment reproduces the point
}
