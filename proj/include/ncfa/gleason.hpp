#ifndef NCFA_GLEASON_HPP
#define NCFA_GLEASON_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncfa/io.hpp"
#include "ncfa/matrix.hpp"
#include "ncfa/random.hpp"

namespace ncfa {

struct StrictContraction {
    CMatrix value;
    double margin;

    explicit StrictContraction(CMatrix v, double mrg = 1e-6)
        : value(std::move(v)), margin(mrg) {
        const double n = operator_norm(value);
        if (n > 1.0 - margin)
            throw NotStrictContraction("operator norm " + std::to_string(n) +
                                       " exceeds 1 - margin");
    }
};

namespace detail {

// h^{-1/2} for Hermitian h with spectrum ≥ floor
inline CMatrix inv_sqrt(const CMatrix& h, double floor_) {
    HermEig e = herm_eig(h);
    for (int i = 0; i < e.eigenvalues.size(); ++i)
        if (e.eigenvalues[i] < floor_)
            throw NotStrictContraction("defect operator eigenvalue below strictness floor");
    RVector s = e.eigenvalues.array().rsqrt();
    return e.eigenvectors * s.asDiagonal() * e.eigenvectors.adjoint();
}

} // namespace detail

// T_x(y) = (1-xx*)^{-1/2} (x+y) (1+x*y)^{-1} (1-x*x)^{1/2}
inline CMatrix mobius_map(const StrictContraction& xc, const StrictContraction& yc) {
    const CMatrix& x = xc.value;
    const CMatrix& y = yc.value;
    const int n = int(x.rows());
    const CMatrix one = CMatrix::Identity(n, n);
    const double floor_ = std::min(xc.margin, yc.margin) * std::min(xc.margin, yc.margin);
    const CMatrix left = detail::inv_sqrt(one - x * x.adjoint(), floor_);
    HermEig e = herm_eig(CMatrix(one - x.adjoint() * x));
    for (int i = 0; i < e.eigenvalues.size(); ++i)
        if (e.eigenvalues[i] < floor_)
            throw NotStrictContraction("defect operator eigenvalue below strictness floor");
    const CMatrix right =
        e.eigenvectors * e.eigenvalues.array().sqrt().matrix().asDiagonal() *
        e.eigenvectors.adjoint();
    const CMatrix res = one + x.adjoint() * y;
    RVector sv = singular_values(res);
    if (sv[sv.size() - 1] <= 1e-12 * std::max(1.0, sv[0]))
        throw SingularResolvent("1 + x*y numerically singular");
    return left * (x + y) * res.partialPivLu().solve(right);
}

// ρ(x,y) = tanh^{-1} ‖T_{-x}(y)‖
inline double hyperbolic_distance(const StrictContraction& x, const StrictContraction& y) {
    StrictContraction mx(CMatrix(-x.value), x.margin);
    double n = operator_norm(mobius_map(mx, y));
    n = std::min(n, 1.0 - 1e-16);
    return std::atanh(n);
}

// ρ(x,y) − ρ(h(x),h(y)); ≥ 0 for holomorphic self-maps of the ball, = 0 for
// Möbius maps
inline double schwarz_pick_margin(const std::function<CMatrix(const CMatrix&)>& h,
                                  const StrictContraction& x, const StrictContraction& y) {
    StrictContraction hx(h(x.value), 1e-12);
    StrictContraction hy(h(y.value), 1e-12);
    return hyperbolic_distance(x, y) - hyperbolic_distance(hx, hy);
}

inline std::vector<double> harrt_divergence(const std::vector<StrictContraction>& s,
                                            const std::vector<StrictContraction>& t) {
    if (s.size() != t.size())
        throw DimensionMismatch("harrt_divergence: sequences differ in length");
    std::vector<double> out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) out.push_back(hyperbolic_distance(s[i], t[i]));
    return out;
}

// the two candidate upper bounds for 1 − ‖T_x(y)‖²: the one with the factor
// (1−‖y‖)² fails already at x = 0, the (1−‖y‖²) variant is what the defect
// identity actually yields
struct MobiusDefectBound {
    double lhs = 0.0;           // 1 − ‖T_x(y)‖²
    double printed_rhs = 0.0;   // (1+‖x‖²)/(1−‖x‖‖y‖)² · (1−‖y‖)²
    double corrected_rhs = 0.0; // (1+‖x‖²)/(1−‖x‖‖y‖)² · (1−‖y‖²)
    bool printed_holds = false;
    bool corrected_holds = false;
};

inline MobiusDefectBound mobius_defect_bound(const StrictContraction& x,
                                             const StrictContraction& y,
                                             double tol = 1e-9) {
    MobiusDefectBound b;
    const double nx = operator_norm(x.value);
    const double ny = operator_norm(y.value);
    const double nt = operator_norm(mobius_map(x, y));
    b.lhs = 1.0 - nt * nt;
    const double common = (1.0 + nx * nx) / ((1.0 - nx * ny) * (1.0 - nx * ny));
    b.printed_rhs = common * (1.0 - ny) * (1.0 - ny);
    b.corrected_rhs = common * (1.0 - ny * ny);
    b.printed_holds = b.lhs <= b.printed_rhs + tol;
    b.corrected_holds = b.lhs <= b.corrected_rhs + tol;
    return b;
}

// a domain algebra presented by linear coordinates: `element` realizes a
// coefficient vector as a matrix, `unit` is the coordinate vector of 1
struct CharacterDomain {
    std::string name;
    int dim = 0;
    CVector unit;
    std::function<CMatrix(const CVector&)> element;
};

// linear character A → D in the same coordinates
struct CharacterMap {
    std::shared_ptr<const CharacterDomain> domain;
    std::function<CMatrix(const CVector&)> value;
};

inline void require_same_domain(const CharacterMap& a, const CharacterMap& b) {
    if (!a.domain || !b.domain || a.domain->name != b.domain->name ||
        a.domain->dim != b.domain->dim)
        throw DomainMismatch("characters live on different domains");
}

namespace detail {

inline std::vector<CVector> deterministic_probes(int dim) {
    std::vector<CVector> out;
    const Complex im(0.0, 1.0);
    for (int i = 0; i < dim; ++i) {
        CVector e = CVector::Zero(dim);
        e[i] = 1.0;
        out.push_back(e);
        out.push_back(-e);
        for (int j = i + 1; j < dim; ++j) {
            CVector f = CVector::Zero(dim);
            f[j] = 1.0;
            out.push_back(e + f);
            out.push_back(e - f);
            out.push_back(e + im * f);
            out.push_back(e - im * f);
        }
    }
    return out;
}

// multistart maximization of f over the unit sphere ‖element(c)‖ = 1, by
// finite-difference ascent with renormalization after every step
inline double sphere_maximize(const CharacterDomain& dom,
                              const std::function<double(const CVector&)>& f,
                              std::uint64_t seed, int starts, int steps,
                              CVector* best_arg = nullptr) {
    auto normalize = [&](CVector c) -> std::optional<CVector> {
        const double n = operator_norm(dom.element(c));
        if (n < 1e-12) return std::nullopt;
        return CVector(c / n);
    };

    double best = 0.0;
    std::vector<CVector> seeds = deterministic_probes(dom.dim);
    for (int s = 0; s < starts; ++s) {
        Rng rng(fan_seed(seed, "ascent", std::uint64_t(s)));
        CVector c(dom.dim);
        if (s < int(seeds.size())) c = seeds[size_t(s)];
        else
            for (int i = 0; i < dom.dim; ++i) c[i] = rng.cgauss();
        auto cn = normalize(c);
        if (!cn) continue;
        c = *cn;
        double val = f(c);
        double step = 0.1;
        for (int it = 0; it < steps; ++it) {
            CVector grad = CVector::Zero(dom.dim);
            const double h = 1e-5;
            for (int i = 0; i < dom.dim; ++i) {
                for (Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
                    CVector cp = c;
                    cp[i] += h * dir;
                    auto cpn = normalize(cp);
                    if (!cpn) continue;
                    grad[i] += dir * ((f(*cpn) - val) / h);
                }
            }
            const double gn = grad.norm();
            if (gn < 1e-12) break;
            auto cnext = normalize(CVector(c + (step / gn) * grad));
            if (!cnext) break;
            const double vnext = f(*cnext);
            if (vnext > val) {
                c = *cnext;
                val = vnext;
            } else {
                step *= 0.5;
                if (step < 1e-6) break;
            }
        }
        if (val > best) {
            best = val;
            if (best_arg) *best_arg = c;
        }
    }
    return best;
}

inline double herm_min_eig(const CMatrix& m) {
    HermEig e = herm_eig(CMatrix(0.5 * (m + m.adjoint())));
    return e.eigenvalues[0];
}

} // namespace detail

// sampled lower bound on ‖Φ − Ψ‖ over Ball(A); ≤ 2 for characters
inline double norm_gap(const CharacterMap& phi, const CharacterMap& psi,
                       std::uint64_t seed = 0, int starts = 32, int steps = 100,
                       CVector* witness = nullptr) {
    require_same_domain(phi, psi);
    auto f = [&](const CVector& c) {
        return operator_norm(CMatrix(phi.value(c) - psi.value(c)));
    };
    return detail::sphere_maximize(*phi.domain, f, fan_seed(seed, "norm-gap", 0), starts,
                                   steps, witness);
}

// sampled lower bound on ‖Φ‖ restricted to ker Ψ (kernel parametrized by SVD)
inline double kernel_norm(const CharacterMap& phi, const CharacterMap& psi,
                          std::uint64_t seed = 0, int starts = 32, int steps = 100,
                          CVector* witness = nullptr) {
    require_same_domain(phi, psi);
    const auto& dom = *phi.domain;
    // columns: Ψ on the coordinate basis, flattened
    CMatrix probe = psi.value(CVector(CVector::Unit(dom.dim, 0)));
    const int out = int(probe.rows() * probe.cols());
    CMatrix m(out, dom.dim);
    for (int k = 0; k < dom.dim; ++k) {
        CMatrix v = psi.value(CVector(CVector::Unit(dom.dim, k)));
        m.col(k) = Eigen::Map<const CVector>(v.data(), out);
    }
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    std::vector<int> null_cols;
    const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    for (int k = 0; k < dom.dim; ++k)
        if (k >= svd.singularValues().size() ||
            svd.singularValues()[k] <= 1e-10 * std::max(1.0, smax))
            null_cols.push_back(k);
    if (null_cols.empty()) return 0.0;
    CMatrix kbasis(dom.dim, int(null_cols.size()));
    for (size_t k = 0; k < null_cols.size(); ++k)
        kbasis.col(int(k)) = svd.matrixV().col(null_cols[k]);

    auto sub = std::make_shared<CharacterDomain>();
    sub->name = dom.name + "#ker";
    sub->dim = int(null_cols.size());
    sub->element = [&dom, kbasis](const CVector& u) { return dom.element(CVector(kbasis * u)); };
    auto f = [&phi, &dom, kbasis](const CVector& u) {
        return operator_norm(phi.value(CVector(kbasis * u)));
    };
    CVector sub_witness;
    double val = detail::sphere_maximize(*sub, f, fan_seed(seed, "kernel-norm", 0), starts,
                                         steps, &sub_witness);
    if (witness && sub_witness.size()) *witness = kbasis * sub_witness;
    return val;
}

// sampled sup of ρ(Φ(a), Ψ(a)) over ‖a‖ ≤ r
inline double rho_sup(const CharacterMap& phi, const CharacterMap& psi, double r,
                      int trials = 256, std::uint64_t seed = 0) {
    require_same_domain(phi, psi);
    if (r >= 1.0) throw BadConfig("rho_sup: radius must be < 1");
    const auto& dom = *phi.domain;
    double best = 0.0;
    auto consider = [&](CVector c) {
        const double n = operator_norm(dom.element(c));
        if (n < 1e-12) return;
        c *= r / n;
        const CMatrix px = phi.value(c);
        const CMatrix py = psi.value(c);
        if (operator_norm(px) >= 1.0 - 1e-12 || operator_norm(py) >= 1.0 - 1e-12) return;
        best = std::max(best, hyperbolic_distance(StrictContraction(px, 1e-12),
                                                  StrictContraction(py, 1e-12)));
    };
    for (const auto& p : detail::deterministic_probes(dom.dim)) consider(p);
    for (int t = 0; t < trials; ++t) {
        Rng rng(fan_seed(seed, "rho-sup", std::uint64_t(t)));
        CVector c(dom.dim);
        for (int i = 0; i < dom.dim; ++i) c[i] = rng.cgauss();
        consider(c);
    }
    return best;
}

struct HarnackResult {
    bool certified = false;
    double c = 0.0, d = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::optional<CMatrix> counterwitness; // real-positive a defeating every c in reach
    double worst_margin = 0.0;             // most negative Hermitian eigenvalue at (c, d)
};

struct HarnackConfig {
    std::vector<double> c_grid; // if nonempty, certificate constants snap up to the grid
    int trials = 96;
    std::uint64_t seed = 0;
    double cap = 1e8; // constants beyond this count as "no finite c"
    // optional custom sampler of real-positive coefficient vectors
    std::function<CVector(Rng&, int)> sampler;
};

// searches for Harnack constants c, d with Φ ≼ cΨ and Ψ ≼ dΦ on sampled
// real-positive elements, or a real-positive counterwitness
inline HarnackResult harnack_falsifier(const CharacterMap& phi, const CharacterMap& psi,
                                       const HarnackConfig& cfg = {}) {
    require_same_domain(phi, psi);
    const auto& dom = *phi.domain;

    HarnackResult res;
    res.trials = cfg.trials;
    res.seed = cfg.seed;

    auto default_sampler = [&dom](Rng& rng, int) {
        CVector c(dom.dim);
        for (int i = 0; i < dom.dim; ++i) c[i] = rng.cgauss();
        const double lam = detail::herm_min_eig(dom.element(c));
        if (lam < 0.0) c += (-lam + 1e-9) * dom.unit;
        return c;
    };
    auto sampler = cfg.sampler ? cfg.sampler : std::function<CVector(Rng&, int)>(default_sampler);

    // smallest c with Herm(cQ − P) ⪰ 0 for PSD parts P, Q
    auto needed = [&](const CMatrix& pv, const CMatrix& qv) -> double {
        const CMatrix p = 0.5 * (pv + pv.adjoint());
        const CMatrix q = 0.5 * (qv + qv.adjoint());
        HermEig eq = herm_eig(q);
        const double qmax = std::max(1.0, std::abs(eq.eigenvalues[eq.eigenvalues.size() - 1]));
        RVector s(eq.eigenvalues.size());
        bool degenerate = false;
        for (int i = 0; i < s.size(); ++i) {
            if (eq.eigenvalues[i] <= 1e-12 * qmax) {
                degenerate = true;
                s[i] = 0.0;
            } else {
                s[i] = 1.0 / std::sqrt(eq.eigenvalues[i]);
            }
        }
        const CMatrix qish = eq.eigenvectors * s.asDiagonal() * eq.eigenvectors.adjoint();
        const CMatrix pencil = qish * p * qish;
        HermEig ep = herm_eig(pencil);
        double c = std::max(0.0, ep.eigenvalues[ep.eigenvalues.size() - 1]);
        if (degenerate) {
            // P must vanish on ker Q, else no finite constant works
            for (int i = 0; i < s.size(); ++i)
                if (s[i] == 0.0) {
                    const CVector v = eq.eigenvectors.col(i);
                    if (std::abs(Complex(v.adjoint() * p * v)) > 1e-9)
                        return std::numeric_limits<double>::infinity();
                }
        }
        return c;
    };

    double c_req = 0.0, d_req = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        Rng rng(fan_seed(cfg.seed, "harnack", std::uint64_t(t)));
        const CVector c = sampler(rng, t);
        const CMatrix pv = phi.value(c);
        const CMatrix qv = psi.value(c);
        const double nc = needed(pv, qv);
        const double nd = needed(qv, pv);
        if (nc > cfg.cap || nd > cfg.cap) {
            res.counterwitness = dom.element(c);
            res.certified = false;
            return res;
        }
        c_req = std::max(c_req, nc);
        d_req = std::max(d_req, nd);
    }
    auto snap = [&](double v) {
        if (cfg.c_grid.empty()) return v;
        for (double g : cfg.c_grid)
            if (g >= v - 1e-12) return g;
        return cfg.c_grid.back();
    };
    res.c = snap(std::max(1e-12, c_req));
    res.d = snap(std::max(1e-12, d_req));
    res.certified = res.c >= c_req - 1e-9 && res.d >= d_req - 1e-9;
    return res;
}

enum class PartClass { SAME_PART, DIFFERENT_PART, INCONCLUSIVE };

struct PartVerdict {
    double norm_gap = 0.0;
    double kernel_norm = 0.0;
    double rho_sup = 0.0;
    double rho_radius = 0.0;
    // criterion (4) finite shadow: Ψ-norm at the Φ-peaking kernel witness
    double phi_peak = 0.0;
    double psi_at_peak = 0.0;
    HarnackResult harnack;
    PartClass verdict = PartClass::INCONCLUSIVE;
    std::uint64_t seed = 0;
};

struct PartConfig {
    int starts = 32;
    int steps = 100;
    int rho_trials = 256;
    double rho_radius = 0.9;
    std::uint64_t seed = 0;
    HarnackConfig harnack;
};

inline PartVerdict part_verdict(const CharacterMap& phi, const CharacterMap& psi,
                                PartConfig cfg = {}) {
    require_same_domain(phi, psi);
    PartVerdict v;
    v.seed = cfg.seed;
    v.rho_radius = cfg.rho_radius;
    CVector kwit;
    v.norm_gap = norm_gap(phi, psi, cfg.seed, cfg.starts, cfg.steps);
    v.kernel_norm = kernel_norm(phi, psi, cfg.seed, cfg.starts, cfg.steps, &kwit);
    v.rho_sup = rho_sup(phi, psi, cfg.rho_radius, cfg.rho_trials, cfg.seed);
    if (kwit.size()) {
        v.phi_peak = operator_norm(phi.value(kwit));
        v.psi_at_peak = operator_norm(psi.value(kwit));
    }
    cfg.harnack.seed = cfg.seed;
    v.harnack = harnack_falsifier(phi, psi, cfg.harnack);
    if (v.kernel_norm >= 1.0 - 1e-6 || v.norm_gap >= 2.0 - 1e-6)
        v.verdict = PartClass::DIFFERENT_PART;
    else if (v.harnack.certified)
        v.verdict = PartClass::SAME_PART;
    else
        v.verdict = PartClass::INCONCLUSIVE;
    return v;
}

inline nlohmann::json part_verdict_to_json(const PartVerdict& v) {
    nlohmann::json j;
    j["criteria"] = {{"norm_gap", v.norm_gap},
                     {"kernel_norm", v.kernel_norm},
                     {"rho_sup", v.rho_sup},
                     {"rho_radius", v.rho_radius},
                     {"phi_peak", v.phi_peak},
                     {"psi_at_peak", v.psi_at_peak}};
    j["verdict"] = v.verdict == PartClass::SAME_PART        ? "SAME_PART"
                   : v.verdict == PartClass::DIFFERENT_PART ? "DIFFERENT_PART"
                                                            : "INCONCLUSIVE";
    if (v.harnack.certified) j["harnack"] = {{"c", v.harnack.c}, {"d", v.harnack.d}};
    j["seed"] = v.seed;
    return j;
}

} // namespace ncfa

#endif
