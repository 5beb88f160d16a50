#include <doctest.h>

#include "ncfa/determinant.hpp"

using namespace ncfa;

TEST_CASE("determinant of a positive diagonal is the weighted geometric mean") {
    DirectSumAlgebra alg({1, 1});
    TracialState tau = TracialState::uniform(alg);
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 3.0;
    FkResult r = fk_det(tau, a);
    CHECK(r.exact);
    CHECK(r.value == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
}

TEST_CASE("zero-weight blocks do not contribute") {
    DirectSumAlgebra alg({1, 1});
    RVector w(2);
    w << 1.0, 0.0;
    TracialState tau(alg, w);
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 3.0;
    // the unsupported block may even be singular
    CHECK(fk_det(tau, a).value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("singular supported block drives the determinant to zero") {
    DirectSumAlgebra alg({2});
    TracialState tau = TracialState::uniform(alg);
    CMatrix a = CMatrix::Zero(2, 2);
    a(1, 1) = 2.0;
    FkResult r = fk_det(tau, a);
    // the ε schedule decreases toward 0 ~ sqrt(2ε) without ever jumping there
    CHECK(!r.exact);
    CHECK(r.value <= 1e-4);
    CHECK(r.value < r.prev_iterate);
    CHECK(r.value == doctest::Approx(std::sqrt(2e-9)).epsilon(1e-3));
}

TEST_CASE("scaled unitaries have determinant equal to the scale") {
    DirectSumAlgebra alg({3, 2});
    TracialState tau = TracialState::uniform(alg);
    Rng rng(1);
    CMatrix u = alg.embed_blocks({rng.unitary(3), rng.unitary(2)});
    const Complex lam(-1.25, 0.5);
    CHECK(fk_det(tau, CMatrix(lam * u)).value ==
          doctest::Approx(std::abs(lam)).epsilon(1e-12));
}

TEST_CASE("multiplicativity on invertibles") {
    DirectSumAlgebra alg({3});
    TracialState tau = TracialState::uniform(alg);
    Rng rng(2);
    CMatrix a = rng.ginibre(3, 3) + 3.0 * CMatrix::Identity(3, 3);
    CMatrix b = rng.ginibre(3, 3) + 3.0 * CMatrix::Identity(3, 3);
    CHECK(fk_det(tau, CMatrix(a * b)).value ==
          doctest::Approx(fk_det(tau, a).value * fk_det(tau, b).value).epsilon(1e-10));
}

TEST_CASE("brown measure of a triangular matrix sits on the diagonal") {
    DirectSumAlgebra alg({2});
    TracialState tau = TracialState::uniform(alg);
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 5.0;
    a(1, 1) = 2.0;
    AtomicMeasure mu = brown_measure(tau, a);
    REQUIRE(mu.atoms.size() == 2);
    CHECK(std::abs(mu.atoms[0] - Complex(1.0)) <= 1e-10);
    CHECK(std::abs(mu.atoms[1] - Complex(2.0)) <= 1e-10);
    CHECK(mu.masses[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mu.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("shifted determinant equals the brown log-potential") {
    DirectSumAlgebra alg({3, 2});
    TracialState tau = TracialState::uniform(alg);
    Rng rng(3);
    CMatrix a = alg.random_element(rng);
    const Complex shift(2.5, 0.5);
    BrownDet bd = det_via_brown(tau, a, shift);
    CHECK(!bd.log_singularity);
    CHECK(bd.value ==
          doctest::Approx(fk_det(tau, CMatrix(shift * alg.identity() + a)).value)
              .epsilon(1e-9));
}

TEST_CASE("power limit extrapolation agrees with the closed form") {
    DirectSumAlgebra alg({2, 2});
    TracialState tau = TracialState::uniform(alg);
    Rng rng(4);
    CMatrix a = alg.random_element(rng) + 2.0 * alg.identity();
    CHECK(power_limit_det(tau, a) ==
          doctest::Approx(fk_det(tau, a).value).epsilon(1e-8));
}

TEST_CASE("power limit refuses singular input") {
    DirectSumAlgebra alg({2});
    TracialState tau = TracialState::uniform(alg);
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 1) = 1.0;
    CHECK_THROWS_AS(power_limit_det(tau, a), NotInvertible);
}

TEST_CASE("epsilon schedule limit decreases toward the exact value") {
    DirectSumAlgebra alg({2});
    TracialState tau = TracialState::uniform(alg);
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 1e-6;
    a(1, 1) = 1.0;
    FkResult r = fk_det(tau, a);
    CHECK(r.value == doctest::Approx(1e-3).epsilon(1e-6));
}
