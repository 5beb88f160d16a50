#ifndef NCFA_DETERMINANT_HPP
#define NCFA_DETERMINANT_HPP

#include <vector>

#include <json.hpp>

#include "ncfa/algebra.hpp"
#include "ncfa/matrix.hpp"

namespace ncfa {

// planar measure with point masses; Brown measures of matrices live here
struct AtomicMeasure {
    std::vector<Complex> atoms;
    std::vector<double> masses;

    double total_mass() const {
        double t = 0.0;
        for (double m : masses) t += m;
        return t;
    }

    // merge atoms closer than tol (sums masses, keeps first representative)
    AtomicMeasure consolidated(double tol = 1e-9) const {
        AtomicMeasure out;
        for (size_t i = 0; i < atoms.size(); ++i) {
            bool merged = false;
            for (size_t j = 0; j < out.atoms.size(); ++j)
                if (std::abs(atoms[i] - out.atoms[j]) <= tol) {
                    out.masses[j] += masses[i];
                    merged = true;
                    break;
                }
            if (!merged) {
                out.atoms.push_back(atoms[i]);
                out.masses.push_back(masses[i]);
            }
        }
        return out;
    }

    double mass_near(Complex z, double tol = 1e-9) const {
        double t = 0.0;
        for (size_t i = 0; i < atoms.size(); ++i)
            if (std::abs(atoms[i] - z) <= tol) t += masses[i];
        return t;
    }
};

inline nlohmann::json measure_to_json(const AtomicMeasure& mu) {
    std::vector<double> re, im;
    for (Complex a : mu.atoms) { re.push_back(a.real()); im.push_back(a.imag()); }
    return nlohmann::json{{"atoms_re", re}, {"atoms_im", im}, {"masses", mu.masses}};
}

inline std::vector<double> default_eps_schedule() {
    std::vector<double> s;
    for (int k = 1; k <= 9; ++k) s.push_back(std::pow(10.0, -k));
    return s;
}

struct FkResult {
    double value = 0.0;
    bool exact = false;          // |a| invertible on the support, no limit needed
    double last_iterate = 0.0;   // convergence diagnostics for the ε limit
    double prev_iterate = 0.0;
    bool converged = true;

    operator double() const { return value; }
};

namespace detail {

// singular values of the supported blocks with the τ-weights they carry
inline void supported_spectrum(const TracialState& tau, const CMatrix& a,
                               std::vector<double>& sigma, std::vector<double>& weight) {
    tau.algebra.require_element(a);
    for (int k = 0; k < tau.algebra.num_blocks(); ++k) {
        if (tau.weights[k] <= 0.0) continue;
        const int n = tau.algebra.block_sizes[size_t(k)];
        RVector s = singular_values(tau.algebra.block(a, k));
        for (int i = 0; i < n; ++i) {
            sigma.push_back(s[i]);
            weight.push_back(tau.weights[k] / double(n));
        }
    }
}

} // namespace detail

// Δ_τ(a): exp(τ'(ln|za|)) when |a| is invertible on the support of τ,
// otherwise the decreasing limit of exp τ(ln(|a| + ε)) over the schedule.
// Δ = 0 is a legitimate output, never an error.
inline FkResult fk_det(const TracialState& tau, const CMatrix& a,
                       const std::vector<double>& eps_schedule = default_eps_schedule()) {
    std::vector<double> sigma, weight;
    detail::supported_spectrum(tau, a, sigma, weight);

    double smin = std::numeric_limits<double>::infinity(), smax = 0.0;
    for (double s : sigma) { smin = std::min(smin, s); smax = std::max(smax, s); }

    FkResult r;
    if (sigma.empty()) { r.value = 1.0; r.exact = true; return r; }
    if (smin > 1e-13 * std::max(smax, 1.0)) {
        double ln = 0.0;
        for (size_t i = 0; i < sigma.size(); ++i) ln += weight[i] * std::log(sigma[i]);
        r.value = std::exp(ln);
        r.exact = true;
        r.last_iterate = r.prev_iterate = r.value;
        return r;
    }
    double prev = std::numeric_limits<double>::infinity();
    double cur = prev;
    r.converged = false;
    for (double eps : eps_schedule) {
        double ln = 0.0;
        for (size_t i = 0; i < sigma.size(); ++i)
            ln += weight[i] * std::log(sigma[i] + eps);
        prev = cur;
        cur = std::exp(ln);
        if (std::isfinite(prev) &&
            std::abs(cur - prev) <= 1e-8 * std::max(std::abs(cur), 1e-300)) {
            r.converged = true;
        }
    }
    r.value = cur;
    r.prev_iterate = prev;
    r.last_iterate = cur;
    return r;
}

// τ-weighted eigenvalue counting measure of za
inline AtomicMeasure brown_measure(const TracialState& tau, const CMatrix& a) {
    tau.algebra.require_element(a);
    AtomicMeasure mu;
    for (int k = 0; k < tau.algebra.num_blocks(); ++k) {
        if (tau.weights[k] <= 0.0) continue;
        const int n = tau.algebra.block_sizes[size_t(k)];
        CVector ev = general_eigenvalues(tau.algebra.block(a, k));
        for (int i = 0; i < n; ++i) {
            mu.atoms.push_back(ev[i]);
            mu.masses.push_back(tau.weights[k] / double(n));
        }
    }
    return mu;
}

struct BrownDet {
    double value = 0.0;
    bool log_singularity = false; // some atom hit −λ; value forced to 0
};

// exp(∫ ln|λ + z| dμ(z)) over the Brown measure; equals fk_det(τ, λ·1 + a)
inline BrownDet det_via_brown(const TracialState& tau, const CMatrix& a, Complex shift) {
    AtomicMeasure mu = brown_measure(tau, a);
    BrownDet r;
    double ln = 0.0;
    for (size_t i = 0; i < mu.atoms.size(); ++i) {
        const double d = std::abs(shift + mu.atoms[i]);
        if (d <= 1e-14) { r.log_singularity = true; r.value = 0.0; return r; }
        ln += mu.masses[i] * std::log(d);
    }
    r.value = std::exp(ln);
    return r;
}

// lim_{ε→0⁺} τ(|a|^ε)^{1/ε} for invertible a, Richardson-extrapolated on the
// log of the last three schedule iterates
inline double power_limit_det(const TracialState& tau, const CMatrix& a,
                              const std::vector<double>& eps_schedule = default_eps_schedule()) {
    std::vector<double> sigma, weight;
    detail::supported_spectrum(tau, a, sigma, weight);
    double smin = std::numeric_limits<double>::infinity(), smax = 0.0;
    for (double s : sigma) { smin = std::min(smin, s); smax = std::max(smax, s); }
    if (sigma.empty()) return 1.0;
    if (smin <= 1e-12 * std::max(smax, 1.0))
        throw NotInvertible("power_limit_det: |a| is singular on the support of τ");
    if (eps_schedule.size() < 3)
        throw BadConfig("power_limit_det: schedule needs at least 3 points");

    auto g = [&](double eps) { // ln τ(|a|^ε) / ε, smooth near ε = 0
        double t = 0.0; // accumulate τ(|a|^ε) − 1 to keep precision for small ε
        for (size_t i = 0; i < sigma.size(); ++i)
            t += weight[i] * std::expm1(eps * std::log(sigma[i]));
        return std::log1p(t) / eps;
    };
    const size_t m = eps_schedule.size();
    double e[3] = {eps_schedule[m - 3], eps_schedule[m - 2], eps_schedule[m - 1]};
    double v[3] = {g(e[0]), g(e[1]), g(e[2])};
    // Neville to ε = 0
    for (int lev = 1; lev < 3; ++lev)
        for (int i = 0; i < 3 - lev; ++i)
            v[i] = (0.0 - e[i + lev]) * (v[i] - v[i + 1]) / (e[i] - e[i + lev]) + v[i + 1];
    return std::exp(v[0]);
}

} // namespace ncfa

#endif
