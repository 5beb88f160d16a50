#ifndef NCFA_MATRIX_HPP
#define NCFA_MATRIX_HPP

#include <algorithm>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ncfa/errors.hpp"

namespace ncfa {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Complex = std::complex<double>;

constexpr double kDefaultTol = 1e-10;

inline bool is_finite(const CMatrix& a) { return a.allFinite(); }

// eigendecomposition of a Hermitian matrix, ascending eigenvalues
struct HermEig {
    RVector eigenvalues;
    CMatrix eigenvectors; // unitary, columns

    CMatrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
    }
};

inline void require_square(const CMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionMismatch("matrix is not square");
}

inline double hermiticity_defect(const CMatrix& a) {
    return (a - a.adjoint()).norm();
}

inline HermEig herm_eig(const CMatrix& a, double tol = kDefaultTol) {
    require_square(a);
    const double scale = std::max(a.norm(), 1.0);
    // forgive rounding in callers, then symmetrize
    if (hermiticity_defect(a) > std::max(1e-8 * scale, tol * scale))
        throw NonHermitian("herm_eig: input is not Hermitian");
    CMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    if (es.info() != Eigen::Success)
        throw NoConvergence("herm_eig: eigensolver failed");
    return HermEig{es.eigenvalues(), es.eigenvectors()};
}

// eigenvalue multiset sorted by (re, im) lexicographic
inline void sort_eigs(CVector& v) {
    std::vector<Complex> tmp(v.data(), v.data() + v.size());
    std::sort(tmp.begin(), tmp.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = tmp[size_t(i)];
}

inline CVector general_eigenvalues(const CMatrix& a, double /*tol*/ = kDefaultTol) {
    require_square(a);
    if (a.rows() == 0) return CVector(0);
    Eigen::ComplexEigenSolver<CMatrix> es(a, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NoConvergence("general_eigenvalues: QR iteration failed");
    CVector v = es.eigenvalues();
    sort_eigs(v);
    return v;
}

// f applied through the spectral decomposition; f must be defined on the
// spectrum (guard reports the offending eigenvalue)
inline CMatrix func_calc(const std::function<double(double)>& f, const CMatrix& a,
                         double tol = kDefaultTol,
                         const std::function<bool(double)>& domain_ok = nullptr) {
    HermEig e = herm_eig(a, tol);
    RVector fx(e.eigenvalues.size());
    for (Eigen::Index i = 0; i < fx.size(); ++i) {
        const double t = e.eigenvalues[i];
        if (domain_ok && !domain_ok(t))
            throw DomainViolation("func_calc: eigenvalue outside function domain");
        const double y = f(t);
        if (!std::isfinite(y))
            throw DomainViolation("func_calc: function value not finite on spectrum");
        fx[i] = y;
    }
    return e.eigenvectors * fx.asDiagonal() * e.eigenvectors.adjoint();
}

// |a| = (a*a)^{1/2}
inline CMatrix modulus(const CMatrix& a) {
    require_square(a);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a.adjoint() * a);
    if (es.info() != Eigen::Success)
        throw NoConvergence("modulus: eigensolver failed");
    RVector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

inline double operator_norm(const CMatrix& a) {
    if (a.size() == 0) return 0.0;
    if (a.rows() == a.cols()) { // diagonal fast path
        bool diag = true;
        for (Eigen::Index i = 0; diag && i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < a.cols(); ++j)
                if (i != j && a(i, j) != Complex(0.0)) {
                    diag = false;
                    break;
                }
        if (diag) {
            double m = 0.0;
            for (Eigen::Index i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, i)));
            return m;
        }
    }
    return a.jacobiSvd().singularValues()(0);
}

inline RVector singular_values(const CMatrix& a) {
    return a.jacobiSvd().singularValues();
}

inline double spectral_radius(const CMatrix& a) {
    CVector ev = general_eigenvalues(a);
    double r = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) r = std::max(r, std::abs(ev[i]));
    return r;
}

// scaling-and-squaring Taylor exponential; fine for the moderate norms here
inline CMatrix matrix_exp(const CMatrix& a) {
    require_square(a);
    const double n = a.norm();
    int squarings = 0;
    double scale = 1.0;
    while (n * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const CMatrix b = a * scale;
    CMatrix term = CMatrix::Identity(a.rows(), a.cols());
    CMatrix sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = term * b / double(k);
        sum += term;
        if (term.norm() < 1e-18 * sum.norm()) break;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

} // namespace ncfa

#endif
