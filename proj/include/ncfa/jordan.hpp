#ifndef NCFA_JORDAN_HPP
#define NCFA_JORDAN_HPP

#include "ncfa/expectation.hpp"

namespace ncfa {

struct JordanCheck {
    bool ok = false;
    double residual = 0.0;
};

// Jordan property T(a²) = T(a)² over the whole domain, via polarization:
// checking T(ab+ba) = T(a)T(b)+T(b)T(a) on all basis pairs is complete
inline JordanCheck is_jordan_hom(const LinearMapOnAlgebra& t, double tol = 1e-10) {
    JordanCheck res;
    const size_t m = t.basis.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j) {
            const CMatrix& a = t.basis[i];
            const CMatrix& b = t.basis[j];
            const CMatrix ta = t.images[i];
            const CMatrix tb = t.images[j];
            const CMatrix lhs = t.apply(a * b + b * a);
            const double r = (lhs - ta * tb - tb * ta).norm();
            res.residual = std::max(res.residual, r);
        }
    res.ok = res.residual <= tol;
    return res;
}

struct HomCheck {
    bool ok = false;
    double residual = 0.0;
    CMatrix witness_a, witness_b; // worst multiplicativity pair
};

inline HomCheck is_hom(const LinearMapOnAlgebra& t, double tol = 1e-10) {
    HomCheck res;
    const size_t m = t.basis.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            const double r =
                (t.apply(CMatrix(t.basis[i] * t.basis[j])) - t.images[i] * t.images[j]).norm();
            if (r > res.residual) {
                res.residual = r;
                res.witness_a = t.basis[i];
                res.witness_b = t.basis[j];
            }
        }
    res.ok = res.residual <= tol;
    return res;
}

// triple identity T(aba) = T(a)T(b)T(a), polarized in the outer variable
inline double jordan_triple_residual(const LinearMapOnAlgebra& t) {
    double res = 0.0;
    const size_t m = t.basis.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            for (size_t k = i; k < m; ++k) {
                const CMatrix& a = t.basis[i];
                const CMatrix& b = t.basis[j];
                const CMatrix& c = t.basis[k];
                const CMatrix lhs = t.apply(CMatrix(a * b * c + c * b * a));
                const CMatrix rhs = t.images[i] * t.images[j] * t.images[k] +
                                    t.images[k] * t.images[j] * t.images[i];
                res = std::max(res, (lhs - rhs).norm());
            }
    return res;
}

// for a Jordan homomorphism T and a ∈ ker T, both T(ab) and T(ba) square to
// zero; returns the larger of the two square norms
inline double square_zero_check(const LinearMapOnAlgebra& t, const CMatrix& a,
                                const CMatrix& b, double tol = 1e-10) {
    auto jc = is_jordan_hom(t, tol);
    if (!jc.ok)
        throw PreconditionViolated("square_zero_check: map is not a Jordan homomorphism, residual " +
                                   std::to_string(jc.residual));
    if (t.apply(a).norm() > tol * std::max(1.0, a.norm()))
        throw PreconditionViolated("square_zero_check: a is not in the kernel");
    const CMatrix u = t.apply(CMatrix(a * b));
    const CMatrix v = t.apply(CMatrix(b * a));
    return std::max(CMatrix(u * u).norm(), CMatrix(v * v).norm());
}

// 4×4 fixture: A = ℂ1 + span{E₁₂+E₃₄, E₁₃−E₂₄} + ℂE₁₄, B = ℂ1 + ℂE₁₄,
// P the coefficient projection killing the middle two directions; P is a
// unital contractive Jordan homomorphism and B-bimodule map, but not an
// algebra homomorphism
inline LinearMapOnAlgebra counterexample_fixture() {
    LinearMapOnAlgebra t;
    t.n = 4;
    auto unit = [](int i, int j) {
        CMatrix e = CMatrix::Zero(4, 4);
        e(i, j) = 1.0;
        return e;
    };
    const CMatrix one = CMatrix::Identity(4, 4);
    const CMatrix xa = unit(0, 1) + unit(2, 3);
    const CMatrix xb = unit(0, 2) - unit(1, 3);
    const CMatrix e14 = unit(0, 3);
    t.basis = {one, xa, xb, e14};
    t.images = {one, CMatrix::Zero(4, 4), CMatrix::Zero(4, 4), e14};
    t.module_basis = {one, e14};
    return t;
}

} // namespace ncfa

#endif
