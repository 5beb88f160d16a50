#include <doctest.h>

#include "ncfa/matrix.hpp"
#include "ncfa/random.hpp"

using namespace ncfa;

TEST_CASE("hermitian eigendecomposition reconstructs the input") {
    Rng rng(1);
    CMatrix g = rng.ginibre(5, 5);
    CMatrix h = g + g.adjoint();
    HermEig e = herm_eig(h);
    CHECK((e.reconstruct() - h).norm() <= 1e-12 * h.norm());
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    CMatrix a(2, 2);
    a << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(herm_eig(a), NonHermitian);
}

TEST_CASE("functional calculus applies scalar functions to the spectrum") {
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 4.0;
    a(2, 2) = 9.0;
    CMatrix r = func_calc([](double t) { return std::sqrt(t); }, a);
    CHECK(std::abs(r(0, 0).real() - 1.0) <= 1e-14);
    CHECK(std::abs(r(1, 1).real() - 2.0) <= 1e-14);
    CHECK(std::abs(r(2, 2).real() - 3.0) <= 1e-14);
}

TEST_CASE("functional calculus rejects values outside the declared domain") {
    CMatrix a = CMatrix::Identity(2, 2);
    a(0, 0) = -1.0;
    CHECK_THROWS_AS(func_calc([](double t) { return std::log(t); }, a, kDefaultTol,
                              [](double t) { return t > 0.0; }),
                    DomainViolation);
}

TEST_CASE("modulus of a nilpotent Jordan cell") {
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 1) = 2.0;
    CMatrix m = modulus(a);
    CHECK(std::abs(m(0, 0)) <= 1e-14);
    CHECK(std::abs(m(1, 1).real() - 2.0) <= 1e-14);
    CHECK(operator_norm(a) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(spectral_radius(a) <= 1e-10);
}

TEST_CASE("singular values are sorted descending") {
    Rng rng(2);
    RVector s = singular_values(rng.ginibre(4, 4));
    for (int i = 1; i < s.size(); ++i) CHECK(s[i] <= s[i - 1]);
}

TEST_CASE("matrix exponential on a nilpotent cell and a diagonal") {
    CMatrix n = CMatrix::Zero(2, 2);
    n(0, 1) = 1.0;
    CMatrix e = matrix_exp(n);
    CHECK(std::abs(e(0, 0).real() - 1.0) <= 1e-14);
    CHECK(std::abs(e(0, 1).real() - 1.0) <= 1e-14);
    CHECK(std::abs(e(1, 0)) <= 1e-14);

    CMatrix d = std::log(2.0) * CMatrix::Identity(3, 3);
    CHECK((matrix_exp(d) - 2.0 * CMatrix::Identity(3, 3)).norm() <= 1e-13);
}

TEST_CASE("matrix exponential matches the group law on commuting input") {
    Rng rng(3);
    CMatrix g = rng.ginibre(4, 4);
    CMatrix h = 0.5 * (g + g.adjoint());
    CMatrix one_step = matrix_exp(h);
    CMatrix two_step = matrix_exp(CMatrix(0.5 * h));
    CHECK((two_step * two_step - one_step).norm() <= 1e-11 * one_step.norm());
}

TEST_CASE("general eigenvalues of a triangular matrix read off the diagonal") {
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 2.0;
    a(2, 2) = 3.0;
    a(0, 2) = 7.0;
    CVector v = general_eigenvalues(a);
    CHECK(std::abs(v[0] - Complex(1.0)) <= 1e-12);
    CHECK(std::abs(v[1] - Complex(2.0)) <= 1e-12);
    CHECK(std::abs(v[2] - Complex(3.0)) <= 1e-12);
}
