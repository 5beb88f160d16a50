#ifndef NCFA_EXPECTATION_HPP
#define NCFA_EXPECTATION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncfa/algebra.hpp"
#include "ncfa/determinant.hpp"
#include "ncfa/io.hpp"
#include "ncfa/random.hpp"

namespace ncfa {

// compression of a nest member onto the diagonal cells; unital, idempotent,
// multiplicative, and a D-bimodule map
struct DCharacter {
    const NestSubalgebra* nest = nullptr;

    CMatrix apply(const CMatrix& a) const {
        auto mem = nest->membership_A(a);
        if (!mem.member) throw NotInSubalgebra("off-pattern modulus " + std::to_string(mem.diagnostic));
        return nest->project_D(a);
    }
};

// τ-preserving conditional expectation onto D; on the full algebra it is the
// same cell compression, applied entrywise
struct Expectation {
    const TracialState* tau = nullptr;
    const NestSubalgebra* nest = nullptr;

    CMatrix apply(const CMatrix& m) const {
        nest->algebra().require_element(m);
        return nest->project_D(m);
    }
};

inline DCharacter d_character(const NestSubalgebra& nest) { return DCharacter{&nest}; }

inline CMatrix apply_character(const DCharacter& phi, const CMatrix& a) {
    return phi.apply(a);
}

// requires τ faithful on D: every diagonal cell must live in a block that the
// support projection keeps
inline Expectation construct_expectation(const TracialState& tau, const NestSubalgebra& nest) {
    if (tau.algebra.block_sizes != nest.algebra().block_sizes)
        throw DomainMismatch("construct_expectation: state and nest live on different algebras");
    for (int k = 0; k < tau.algebra.num_blocks(); ++k)
        if (tau.weights[k] <= 0.0 && !nest.flags()[size_t(k)].empty())
            throw NotFaithfulOnD("construct_expectation: block " + std::to_string(k) +
                                 " carries cells of D but has zero trace weight");
    return Expectation{&tau, &nest};
}

// (Δ_τ(Φ(f)), Δ_τ(f)); for nest compression the two agree (the determinant of
// a block-triangular element only sees its diagonal cells)
inline std::pair<double, double>
jensen_check(const TracialState& tau, const NestSubalgebra& nest, const CMatrix& f) {
    auto mem = nest.membership_A(f);
    if (!mem.member) throw NotInSubalgebra("off-pattern modulus " + std::to_string(mem.diagnostic));
    return {fk_det(tau, nest.project_D(f)).value, fk_det(tau, f).value};
}

// Δ_τ(1+x) for x ∈ A with Φ(x) = 0 and spectral radius ≤ 1; equals 1
inline double ball_jensen_check(const TracialState& tau, const NestSubalgebra& nest,
                                const CMatrix& x, double tol = 1e-9) {
    auto mem = nest.membership_A(x);
    if (!mem.member) throw NotInSubalgebra("off-pattern modulus " + std::to_string(mem.diagnostic));
    const double scale = std::max(1.0, x.norm());
    const double phi_norm = nest.project_D(x).norm();
    if (phi_norm > tol * scale)
        throw PreconditionViolated("ball_jensen_check: ‖Φ(x)‖ = " + std::to_string(phi_norm));
    const double r = spectral_radius(x);
    if (r > 1.0 + tol)
        throw PreconditionViolated("ball_jensen_check: spectral radius = " + std::to_string(r));
    return fk_det(tau, tau.algebra.identity() + x).value;
}

// (Δ_τ(Φ(x)), Δ_τ(x)) under the disk condition ‖Φ(x)⁻¹x − 1‖ ≤ 1
inline std::pair<double, double>
jensen_equality_disk(const TracialState& tau, const NestSubalgebra& nest,
                     const CMatrix& x, double tol = 1e-9) {
    auto mem = nest.membership_A(x);
    if (!mem.member) throw NotInSubalgebra("off-pattern modulus " + std::to_string(mem.diagnostic));
    const CMatrix d = nest.project_D(x);
    RVector sv = singular_values(d);
    if (sv[sv.size() - 1] <= 1e-12 * std::max(1.0, sv[0]))
        throw NotInvertible("jensen_equality_disk: Φ(x) is singular");
    const CMatrix y = d.partialPivLu().solve(x) - tau.algebra.identity();
    const double yn = operator_norm(y);
    if (yn > 1.0 + tol)
        throw DiskConditionViolated("jensen_equality_disk: ‖Φ(x)⁻¹x − 1‖ = " + std::to_string(yn));
    return {fk_det(tau, d).value, fk_det(tau, x).value};
}

// linear map on a subalgebra, given by its action on an explicit basis; the
// module_basis spans the subalgebra it must commute with as a bimodule map
struct LinearMapOnAlgebra {
    int n = 0;                        // ambient matrix size
    std::vector<CMatrix> basis;       // basis of the domain A
    std::vector<CMatrix> images;      // image of each basis element
    std::vector<CMatrix> module_basis;

    // coefficients of a in the basis, via the Gram system; rejects elements
    // outside span
    CVector coefficients(const CMatrix& a, double tol = 1e-8) const {
        const int m = int(basis.size());
        CMatrix gram(m, m);
        CVector rhs(m);
        for (int k = 0; k < m; ++k) {
            for (int l = 0; l < m; ++l)
                gram(k, l) = (basis[size_t(k)].adjoint() * basis[size_t(l)]).trace();
            rhs[k] = (basis[size_t(k)].adjoint() * a).trace();
        }
        CVector c = gram.ldlt().solve(rhs);
        CMatrix recon = CMatrix::Zero(n, n);
        for (int k = 0; k < m; ++k) recon += c[k] * basis[size_t(k)];
        if ((recon - a).norm() > tol * std::max(1.0, a.norm()))
            throw NotInSubalgebra("element outside the span of the domain basis");
        return c;
    }

    CMatrix apply(const CMatrix& a) const {
        CVector c = coefficients(a);
        CMatrix out = CMatrix::Zero(n, n);
        for (size_t k = 0; k < images.size(); ++k) out += c[int(k)] * images[k];
        return out;
    }

    CMatrix random_domain_element(Rng& rng, double scale = 1.0) const {
        CMatrix out = CMatrix::Zero(n, n);
        for (const auto& b : basis) out += scale * rng.cgauss() * b;
        return out;
    }

    CMatrix random_module_element(Rng& rng, double scale = 1.0) const {
        CMatrix out = CMatrix::Zero(n, n);
        for (const auto& b : module_basis) out += scale * rng.cgauss() * b;
        return out;
    }

    // orthonormal basis of ker T in coefficient space
    std::vector<CVector> kernel(double tol = 1e-10) const {
        const int m = int(basis.size());
        CMatrix t(n * n, m);
        for (int k = 0; k < m; ++k)
            t.col(k) = Eigen::Map<const CVector>(images[size_t(k)].data(), n * n);
        Eigen::JacobiSVD<CMatrix> svd(t, Eigen::ComputeFullV);
        std::vector<CVector> out;
        const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
        for (int k = 0; k < m; ++k)
            if (k >= svd.singularValues().size() ||
                svd.singularValues()[k] <= tol * std::max(1.0, smax))
                out.push_back(svd.matrixV().col(k));
        return out;
    }

    CMatrix from_coefficients(const CVector& c) const {
        CMatrix out = CMatrix::Zero(n, n);
        for (size_t k = 0; k < basis.size(); ++k) out += c[int(k)] * basis[k];
        return out;
    }
};

// T = Φ as a basis-level map: matrix units of A, compressed to the D pattern
inline LinearMapOnAlgebra compression_map(const NestSubalgebra& nest) {
    LinearMapOnAlgebra t;
    t.n = nest.algebra().dim();
    for (auto [i, j] : nest.basis_positions_A()) {
        CMatrix e = CMatrix::Zero(t.n, t.n);
        e(i, j) = 1.0;
        t.basis.push_back(e);
        t.images.push_back(nest.project_D(e));
        if (nest.allowed_in_D(i, j)) t.module_basis.push_back(e);
    }
    return t;
}

// scalar unital functional a ↦ φ(a)·1 on A, for bimodule algebra ℂ1
inline LinearMapOnAlgebra scalar_character_map(const NestSubalgebra& nest,
                                               const std::vector<Complex>& phi_values) {
    LinearMapOnAlgebra t;
    t.n = nest.algebra().dim();
    auto pos = nest.basis_positions_A();
    if (phi_values.size() != pos.size())
        throw DimensionMismatch("scalar_character_map: one value per basis position required");
    const CMatrix one = nest.algebra().identity();
    for (size_t k = 0; k < pos.size(); ++k) {
        CMatrix e = CMatrix::Zero(t.n, t.n);
        e(pos[k].first, pos[k].second) = 1.0;
        t.basis.push_back(e);
        t.images.push_back(phi_values[k] * one);
    }
    t.module_basis.push_back(one);
    return t;
}

inline void require_module_map(const LinearMapOnAlgebra& t, Rng& rng, double tol = 1e-8) {
    const CMatrix one = CMatrix::Identity(t.n, t.n);
    CMatrix t1;
    try {
        t1 = t.apply(one);
    } catch (const NotInSubalgebra&) {
        throw NotModuleMap("map domain does not contain the identity");
    }
    if ((t1 - one).norm() > tol) throw NotModuleMap("map is not unital");
    for (int s = 0; s < 8; ++s) {
        const CMatrix d1 = t.random_module_element(rng);
        const CMatrix d2 = t.random_module_element(rng);
        const CMatrix a = t.random_domain_element(rng);
        const CMatrix lhs = t.apply(d1 * a * d2);
        const CMatrix rhs = d1 * t.apply(a) * d2;
        if ((lhs - rhs).norm() > tol * std::max(1.0, lhs.norm() + rhs.norm()))
            throw NotModuleMap("bimodule identity fails on a random sample");
    }
}

enum class Verdict { FALSIFIED, NO_VIOLATION_FOUND };

struct FalsifierReport {
    Verdict verdict = Verdict::NO_VIOLATION_FOUND;
    int trials = 0;
    std::uint64_t seed = 0;
    std::optional<CMatrix> witness;
    double residual = 0.0; // size of the violation found, 0 if none
    std::string detail;
};

inline nlohmann::json falsifier_to_json(const FalsifierReport& r) {
    nlohmann::json j{{"verdict", r.verdict == Verdict::FALSIFIED ? "FALSIFIED"
                                                                 : "NO_VIOLATION_FOUND"},
                     {"trials", r.trials},
                     {"seed", r.seed},
                     {"residual", r.residual},
                     {"detail", r.detail}};
    if (r.witness) j["witness"] = matrix_to_json(*r.witness);
    return j;
}

// searches ker T for small-norm x with Δ_τ(1+x) < 1; a multiplicative
// τ-preserving T never yields one
inline FalsifierReport bis_falsifier(const TracialState& tau, const LinearMapOnAlgebra& t,
                                     int trials = 200, double delta = 0.5,
                                     std::uint64_t seed = 0) {
    Rng check_rng(fan_seed(seed, "bis-pre", 0));
    require_module_map(t, check_rng);

    FalsifierReport rep;
    rep.trials = trials;
    rep.seed = seed;

    double tau_dev = 0.0;
    for (size_t k = 0; k < t.basis.size(); ++k)
        tau_dev = std::max(tau_dev, std::abs(tau(t.images[k]) - tau(t.basis[k])));
    if (tau_dev > 1e-9)
        rep.detail = "tau-preservation fails: max basis deviation " + std::to_string(tau_dev);

    auto ker = t.kernel();
    if (ker.empty()) {
        rep.detail += (rep.detail.empty() ? "" : "; ");
        rep.detail += "kernel is trivial";
        return rep;
    }
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(fan_seed(seed, "bis", std::uint64_t(trial)));
        CVector c = CVector::Zero(int(t.basis.size()));
        for (const auto& k : ker) c += rng.cgauss() * k;
        CMatrix x = t.from_coefficients(c);
        const double nx = operator_norm(x);
        if (nx <= 1e-14) continue;
        x *= delta * rng.uniform(0.05, 0.95) / nx;
        const double d = fk_det(tau, tau.algebra.identity() + x).value;
        if (d < 1.0 - 1e-9) {
            rep.verdict = Verdict::FALSIFIED;
            rep.witness = x;
            rep.residual = 1.0 - d;
            rep.trials = trial + 1;
            return rep;
        }
    }
    return rep;
}

// p(s,t) = c₀ + c₁s + c₂t + c₃s² + c₄st + c₅ts + c₆t²
struct QuadraticPoly {
    std::array<Complex, 7> c{};

    CMatrix eval(const CMatrix& s, const CMatrix& t) const {
        const CMatrix one = CMatrix::Identity(s.rows(), s.cols());
        return c[0] * one + c[1] * s + c[2] * t + c[3] * s * s + c[4] * s * t +
               c[5] * t * s + c[6] * t * t;
    }
};

// searches for a quadratic p, d in the module algebra and a in the domain with
// ‖p(d, T(a))‖₂ > ‖p(d, a)‖₂; conditional expectations always pass
inline FalsifierReport quadratic_l2_check(const TracialState& tau, const LinearMapOnAlgebra& t,
                                          int trials = 200, std::uint64_t seed = 0) {
    Rng check_rng(fan_seed(seed, "quad-pre", 0));
    require_module_map(t, check_rng);

    FalsifierReport rep;
    rep.trials = trials;
    rep.seed = seed;

    // τ-L² projection onto the module span, for the targeted d choice
    const int md = int(t.module_basis.size());
    auto project_module = [&](const CMatrix& v) {
        CMatrix gram(md, md);
        CVector rhs(md);
        for (int k = 0; k < md; ++k) {
            for (int l = 0; l < md; ++l)
                gram(k, l) = tau(CMatrix(t.module_basis[size_t(k)].adjoint() *
                                         t.module_basis[size_t(l)]));
            rhs[k] = tau(CMatrix(t.module_basis[size_t(k)].adjoint() * v));
        }
        CVector c = gram.completeOrthogonalDecomposition().solve(rhs);
        CMatrix out = CMatrix::Zero(t.n, t.n);
        for (int k = 0; k < md; ++k) out += c[k] * t.module_basis[size_t(k)];
        return out;
    };

    auto violation = [&](const QuadraticPoly& p, const CMatrix& d, const CMatrix& a) {
        const double lhs = tau.l2_norm(p.eval(d, t.apply(a)));
        const double rhs = tau.l2_norm(p.eval(d, a));
        return lhs - rhs;
    };

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(fan_seed(seed, "quad", std::uint64_t(trial)));
        const CMatrix a = t.random_domain_element(rng);

        QuadraticPoly p;
        for (auto& ck : p.c) ck = rng.cdisk();
        CMatrix d = t.random_module_element(rng);
        double gap = violation(p, d, a);

        // targeted probe: p(s,t) = s − q(t) with d the L² projection of q(a)
        QuadraticPoly q; // q(t) only
        q.c[0] = rng.cdisk();
        q.c[2] = rng.cdisk();
        q.c[6] = rng.cdisk();
        const CMatrix qa = q.eval(CMatrix::Zero(t.n, t.n), a);
        const CMatrix dstar = project_module(qa);
        QuadraticPoly p2 = q;
        for (auto& ck : p2.c) ck = -ck;
        p2.c[1] = 1.0; // p₂(s,t) = s − q(t)
        const double gap2 = violation(p2, dstar, a);
        if (gap2 > gap) { gap = gap2; p = p2; d = dstar; }

        if (gap > 1e-9) {
            rep.verdict = Verdict::FALSIFIED;
            rep.witness = a;
            rep.residual = gap;
            rep.trials = trial + 1;
            rep.detail = "violating d has norm " + std::to_string(d.norm());
            return rep;
        }
    }
    return rep;
}

// dimension of the affine space of unital, τ-preserving, D-bimodule,
// D-fixing linear maps M → D, and the distance of its member from the cell
// compression; the space is a single point when τ is faithful on D
struct UniquenessResult {
    int solution_dim = 0;
    double deviation = 0.0; // ‖solution − Ψ‖ on the basis
};

inline UniquenessResult expectation_uniqueness_check(const TracialState& tau,
                                                     const NestSubalgebra& nest,
                                                     double tol = 1e-8) {
    const int n = tau.algebra.dim();
    // unknowns: image of each matrix unit of M, constrained to the D pattern
    std::vector<std::pair<int, int>> dpos;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (nest.allowed_in_D(i, j)) dpos.emplace_back(i, j);
    const int nd = int(dpos.size());
    const int unknowns = n * n * nd; // T(E_ij) = Σ_q X[(i,j),q]·E_{dpos[q]}

    struct Entry { int row, col; Complex v; };
    std::vector<Entry> entries;
    std::vector<Complex> rhs_rows;
    auto var = [&](int i, int j, int q) { return (i * n + j) * nd + q; };
    int row = 0;
    auto add = [&](std::vector<std::pair<int, Complex>> cols, Complex rhs) {
        for (auto& [c, v] : cols) entries.push_back({row, c, v});
        rhs_rows.push_back(rhs);
        ++row;
    };

    // unital: Σ_i T(E_ii) = 1
    for (int q = 0; q < nd; ++q) {
        std::vector<std::pair<int, Complex>> cols;
        for (int i = 0; i < n; ++i) cols.emplace_back(var(i, i, q), Complex(1.0));
        add(cols, dpos[size_t(q)].first == dpos[size_t(q)].second ? 1.0 : 0.0);
    }
    // τ-preserving on each matrix unit
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<std::pair<int, Complex>> cols;
            for (int q = 0; q < nd; ++q) {
                auto [k, l] = dpos[size_t(q)];
                if (k == l) {
                    CMatrix e = CMatrix::Zero(n, n);
                    e(k, k) = 1.0;
                    cols.emplace_back(var(i, j, q), Complex(tau(e)));
                }
            }
            CMatrix e = CMatrix::Zero(n, n);
            e(i, j) = 1.0;
            add(cols, tau(e));
        }
    // fixes D: T(E_kl) = E_kl for (k,l) in the D pattern
    for (int q0 = 0; q0 < nd; ++q0) {
        auto [k, l] = dpos[size_t(q0)];
        for (int q = 0; q < nd; ++q)
            add({{var(k, l, q), Complex(1.0)}}, q == q0 ? 1.0 : 0.0);
    }
    // bimodule: T(E_kl E_ij E_pr) = E_kl T(E_ij) E_pr over D-pattern units
    for (auto [k, l] : dpos)
        for (auto [p, r] : dpos)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    // lhs: E_kl E_ij E_pr = δ_{li}δ_{jp} E_kr → T of it
                    const bool hit = (l == i && j == p);
                    for (int q = 0; q < nd; ++q) {
                        auto [qi, qj] = dpos[size_t(q)];
                        std::vector<std::pair<int, Complex>> cols;
                        if (hit) cols.emplace_back(var(k, r, q), Complex(1.0));
                        // rhs entry (qi,qj) of E_kl T(E_ij) E_pr: nonzero only
                        // if qi == k, qj == r, sourced from T(E_ij)(l,p)
                        Complex rv = 0.0;
                        if (qi == k && qj == r) {
                            for (int q2 = 0; q2 < nd; ++q2)
                                if (dpos[size_t(q2)].first == l && dpos[size_t(q2)].second == p)
                                    cols.emplace_back(var(i, j, q2), Complex(-1.0));
                        }
                        add(cols, rv);
                    }
                }

    CMatrix sys = CMatrix::Zero(row, unknowns);
    for (auto& e : entries) sys(e.row, e.col) += e.v;
    CVector rhs = Eigen::Map<CVector>(rhs_rows.data(), row);

    Eigen::JacobiSVD<CMatrix> svd(sys, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()[0];
    int rank = 0;
    for (int k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()[k] > tol * smax) ++rank;

    UniquenessResult res;
    res.solution_dim = unknowns - rank;
    CVector sol = svd.solve(rhs);
    // compare against the compression Ψ
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int q = 0; q < nd; ++q) {
                auto [k, l] = dpos[size_t(q)];
                const Complex expect = (i == k && j == l) ? 1.0 : 0.0;
                dev = std::max(dev, std::abs(sol[var(i, j, q)] - expect));
            }
    res.deviation = dev;
    return res;
}

} // namespace ncfa

#endif
