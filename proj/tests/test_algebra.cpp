#include <doctest.h>

#include "ncfa/algebra.hpp"
#include "ncfa/io.hpp"

using namespace ncfa;

TEST_CASE("block embedding and extraction round-trip") {
    DirectSumAlgebra alg({2, 3});
    CHECK(alg.num_blocks() == 2);
    CHECK(alg.dim() == 5);
    Rng rng(1);
    std::vector<CMatrix> blocks{rng.ginibre(2, 2), rng.ginibre(3, 3)};
    CMatrix x = alg.embed_blocks(blocks);
    CHECK((alg.block(x, 0) - blocks[0]).norm() <= 1e-15);
    CHECK((alg.block(x, 1) - blocks[1]).norm() <= 1e-15);
    CHECK_NOTHROW(alg.require_element(x));
}

TEST_CASE("off-block entries are compressed away, wrong sizes rejected") {
    DirectSumAlgebra alg({2, 2});
    CMatrix x = CMatrix::Zero(4, 4);
    x(0, 3) = 1.0;
    CHECK(alg.compress(x).norm() <= 1e-15);
    CHECK_THROWS_AS(alg.require_element(CMatrix(CMatrix::Zero(3, 3))), DimensionMismatch);
}

TEST_CASE("uniform tracial state is unital and tracial") {
    DirectSumAlgebra alg({2, 3});
    TracialState tau = TracialState::uniform(alg);
    CHECK(std::abs(tau(alg.identity()) - Complex(1.0)) <= 1e-14);
    Rng rng(2);
    CMatrix a = alg.random_element(rng), b = alg.random_element(rng);
    CHECK(std::abs(tau(CMatrix(a * b)) - tau(CMatrix(b * a))) <= 1e-12);
    CHECK(tau.faithful());
    CHECK(tau.l2_norm(alg.identity()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero-weight block makes the state non-faithful with a proper support") {
    DirectSumAlgebra alg({2, 2});
    RVector w(2);
    w << 1.0, 0.0;
    TracialState tau(alg, w);
    CHECK(!tau.faithful());
    SupportReduction red = tau.support_projection();
    CHECK(red.kept_blocks == std::vector<int>{0});
    CHECK(red.reduced_state.faithful());
    CHECK(std::abs(tau(red.z) - Complex(1.0)) <= 1e-14);
    Rng rng(3);
    CMatrix x = alg.random_element(rng);
    // the reduced state sees exactly what the full state sees
    CHECK(std::abs(red.reduced_state(red.restrict(alg, x)) - tau(x)) <= 1e-13);
}

TEST_CASE("restricted functional calculus commutes with the support cut-down") {
    DirectSumAlgebra alg({2, 3});
    RVector w(2);
    w << 0.0, 1.0;
    TracialState tau(alg, w);
    Rng rng(4);
    CMatrix g = alg.random_element(rng);
    CMatrix x = g.adjoint() * g;
    CHECK(zcalc_check(tau, x, [](double t) { return t * t + 1.0; }) <= 1e-10);
}

TEST_CASE("upper triangular nest membership and projections") {
    DirectSumAlgebra alg({3});
    NestSubalgebra nest = NestSubalgebra::upper_triangular(alg);
    CMatrix up = CMatrix::Zero(3, 3);
    up(0, 1) = 1.0;
    up(1, 2) = 2.0;
    up(0, 0) = 5.0;
    CHECK(nest.membership_A(up).member);
    CHECK(!nest.membership_D(up).member);
    CHECK(!nest.membership_A(CMatrix(up.adjoint())).member);
    CHECK((nest.project_A(up) - up).norm() <= 1e-15);
    CMatrix d = nest.project_D(up);
    CHECK(std::abs(d(0, 0).real() - 5.0) <= 1e-15);
    CHECK(std::abs(d(0, 1)) <= 1e-15);
}

TEST_CASE("coarser flags give block upper triangular patterns") {
    DirectSumAlgebra alg({4});
    NestSubalgebra nest(alg, {{2, 2}});
    CHECK(nest.allowed_in_A(0, 1));
    CHECK(nest.allowed_in_A(1, 0)); // same cell
    CHECK(nest.allowed_in_A(0, 3));
    CHECK(!nest.allowed_in_A(3, 0));
    CHECK(nest.allowed_in_D(1, 0));
    CHECK(!nest.allowed_in_D(0, 2));
}

TEST_CASE("random members of A and D stay in pattern") {
    DirectSumAlgebra alg({2, 3});
    NestSubalgebra nest(alg, {{1, 1}, {2, 1}});
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        CHECK(nest.membership_A(nest.random_member_A(rng)).member);
        CHECK(nest.membership_D(nest.random_member_D(rng)).member);
        CMatrix s = nest.random_strict_upper(rng);
        CHECK(nest.membership_A(s).member);
        CHECK(nest.project_D(s).norm() <= 1e-14);
        CHECK(spectral_radius(s) <= 1e-8);
    }
}

TEST_CASE("algebra descriptors survive a json round-trip") {
    DirectSumAlgebra alg({2, 3});
    RVector w(2);
    w << 0.25, 0.75;
    TracialState tau(alg, w);
    NestSubalgebra nest(alg, {{1, 1}, {3}});
    auto j = algebra_descriptor_to_json(tau, nest);
    auto [tau2, nest2] = algebra_descriptor_from_json(j);
    CHECK(tau2.algebra.block_sizes == alg.block_sizes);
    CHECK((tau2.weights - w).norm() <= 1e-15);
    CHECK(nest2.flags() == nest.flags());
}
