#include <doctest.h>

#include "ncfa/expectation.hpp"

using namespace ncfa;

TEST_CASE("expectation onto the diagonal is unital, idempotent, trace-preserving") {
    DirectSumAlgebra alg({3});
    TracialState tau = TracialState::uniform(alg);
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    Expectation e = construct_expectation(tau, nest);
    CHECK((e.apply(alg.identity()) - alg.identity()).norm() <= 1e-14);
    Rng rng(1);
    for (int t = 0; t < 10; ++t) {
        CMatrix x = alg.random_element(rng);
        CMatrix ex = e.apply(x);
        CHECK((e.apply(ex) - ex).norm() <= 1e-13);
        CHECK(std::abs(tau(ex) - tau(x)) <= 1e-12);
        CHECK(nest.membership_D(ex).member);
        // bimodule property over the diagonal
        CMatrix d1 = nest.random_member_D(rng), d2 = nest.random_member_D(rng);
        CHECK((e.apply(CMatrix(d1 * x * d2)) - d1 * ex * d2).norm() <= 1e-10);
    }
}

TEST_CASE("expectation construction needs τ faithful on the diagonal") {
    DirectSumAlgebra alg({2, 2});
    RVector w(2);
    w << 1.0, 0.0;
    TracialState tau(alg, w);
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    CHECK_THROWS_AS(construct_expectation(tau, nest), NotFaithfulOnD);
}

TEST_CASE("expectation construction rejects mismatched algebras") {
    DirectSumAlgebra a1({2}), a2({3});
    TracialState tau = TracialState::uniform(a1);
    NestSubalgebra nest = NestSubalgebra::upper_triangular(a2);
    CHECK_THROWS_AS(construct_expectation(tau, nest), DomainMismatch);
}

TEST_CASE("jensen checks agree on nest members and enforce preconditions") {
    DirectSumAlgebra alg({4});
    TracialState tau = TracialState::uniform(alg);
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    Rng rng(2);
    auto [lhs, rhs] = jensen_check(tau, nest, nest.random_member_A(rng));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

    CMatrix x = nest.random_strict_upper(rng);
    CHECK(std::abs(ball_jensen_check(tau, nest, x) - 1.0) <= 1e-10);
    CHECK_THROWS_AS(ball_jensen_check(tau, nest, CMatrix(alg.identity() + x)),
                    PreconditionViolated);
    CHECK_THROWS_AS(jensen_check(tau, nest, CMatrix(x.adjoint())), NotInSubalgebra);
}

TEST_CASE("disk condition equality and its guards") {
    DirectSumAlgebra alg({3});
    TracialState tau = TracialState::uniform(alg);
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    Rng rng(3);
    CMatrix d = nest.project_D(alg.random_element(rng)) + 2.0 * alg.identity();
    CMatrix y = nest.random_strict_upper(rng);
    y *= 0.8 / std::max(1e-12, operator_norm(y));
    auto [lhs, rhs] = jensen_equality_disk(tau, nest, CMatrix(d * (alg.identity() + y)));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

    CHECK_THROWS_AS(jensen_equality_disk(tau, nest, nest.random_strict_upper(rng)),
                    NotInvertible);
    // ‖Φ(x)⁻¹x − 1‖ far above 1
    CMatrix bad = alg.identity() + 50.0 * y;
    CHECK_THROWS_AS(jensen_equality_disk(tau, nest, bad), DiskConditionViolated);
}

TEST_CASE("compression map is a unital bimodule map with coefficient recovery") {
    DirectSumAlgebra alg({3});
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    LinearMapOnAlgebra t = compression_map(nest);
    Rng rng(4);
    CHECK_NOTHROW(require_module_map(t, rng));
    CMatrix a = t.random_domain_element(rng);
    CHECK((t.from_coefficients(t.coefficients(a)) - a).norm() <= 1e-10);
    CHECK_THROWS_AS(t.coefficients(CMatrix(a.adjoint() + a + CMatrix::Ones(3, 3))),
                    NotInSubalgebra);
}

TEST_CASE("kernel of the compression map is the strict upper triangle") {
    DirectSumAlgebra alg({3});
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    LinearMapOnAlgebra t = compression_map(nest);
    auto ker = t.kernel();
    CHECK(ker.size() == 3);
    for (const auto& coeff : ker) {
        CMatrix x = t.from_coefficients(coeff);
        CHECK(t.apply(x).norm() <= 1e-10);
        CHECK(nest.project_D(x).norm() <= 1e-10);
    }
}

TEST_CASE("falsifier clears the honest expectation") {
    DirectSumAlgebra alg({3});
    TracialState tau = TracialState::uniform(alg);
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    auto r = bis_falsifier(tau, compression_map(nest), 200, 0.5, 11);
    CHECK(r.verdict == Verdict::NO_VIOLATION_FOUND);
    auto q = quadratic_l2_check(tau, compression_map(nest), 200, 11);
    CHECK(q.verdict == Verdict::NO_VIOLATION_FOUND);
}

TEST_CASE("falsifier catches a perturbed scalar character") {
    DirectSumAlgebra alg({2});
    TracialState tau = TracialState::uniform(alg);
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    // multiplicative on the diagonal but not on the upper corner
    auto t = scalar_character_map(nest, {Complex(0.5), Complex(0.3), Complex(0.5)});
    auto r = bis_falsifier(tau, t, 200, 0.5, 11);
    CHECK(r.verdict == Verdict::FALSIFIED);
    REQUIRE(r.witness.has_value());
    // the witness reproduces the violation
    CHECK(fk_det(tau, CMatrix(alg.identity() + *r.witness)).value < 1.0 - 1e-9);
    auto j = falsifier_to_json(r);
    CHECK(j.at("verdict") == "FALSIFIED");
}

TEST_CASE("quadratic check catches the trace restriction of the diagonal nest") {
    DirectSumAlgebra alg({2});
    TracialState tau = TracialState::uniform(alg);
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    LinearMapOnAlgebra t;
    t.n = 2;
    for (auto [i, j] : nest.basis_positions_A()) {
        CMatrix e = CMatrix::Zero(2, 2);
        e(i, j) = 1.0;
        t.basis.push_back(e);
        t.images.push_back(tau(e) * alg.identity());
    }
    t.module_basis.push_back(alg.identity());
    auto r = quadratic_l2_check(tau, t, 200, 11);
    CHECK(r.verdict == Verdict::FALSIFIED);
}

TEST_CASE("the τ-preserving expectation is the unique constrained solution") {
    DirectSumAlgebra alg({3});
    TracialState tau = TracialState::uniform(alg);
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    auto u = expectation_uniqueness_check(tau, nest);
    CHECK(u.solution_dim == 0);
    CHECK(u.deviation <= 1e-8);
}
