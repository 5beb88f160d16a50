#ifndef NCFA_POTENTIAL_HPP
#define NCFA_POTENTIAL_HPP

#include <vector>

#include <json.hpp>

#include "ncfa/determinant.hpp"
#include "ncfa/matrix.hpp"

namespace ncfa {

// measure on the unit circle: density sampled on the uniform midpoint θ grid
// θ_j = 2π(j+1/2)/G (with the 1/2π folded into the grid weights), plus
// optional point masses
struct CircleMeasure {
    int grid = 0;
    std::vector<double> density; // size grid, ≥ 0
    struct PointMass { double theta; double mass; };
    std::vector<PointMass> point_masses;

    double theta(int j) const { return 2.0 * M_PI * (j + 0.5) / grid; }

    double total_mass() const {
        double t = 0.0;
        for (double d : density) t += d;
        t /= grid;
        for (const auto& p : point_masses) t += p.mass;
        return t;
    }
};

inline nlohmann::json circle_measure_to_json(const CircleMeasure& nu) {
    nlohmann::json pm = nlohmann::json::array();
    for (const auto& p : nu.point_masses)
        pm.push_back({{"theta", p.theta}, {"mass", p.mass}});
    return nlohmann::json{{"grid", nu.grid}, {"density", nu.density}, {"point_masses", pm}};
}

// ∫ z^m dμ for m = 1..m_max
inline CVector moments(const AtomicMeasure& mu, int m_max) {
    CVector out = CVector::Zero(m_max);
    for (int m = 1; m <= m_max; ++m) {
        Complex s = 0.0;
        for (size_t i = 0; i < mu.atoms.size(); ++i)
            s += mu.masses[i] * std::pow(mu.atoms[i], m);
        out[m - 1] = s;
    }
    return out;
}

inline CVector moments(const CircleMeasure& nu, int m_max) {
    CVector out = CVector::Zero(m_max);
    for (int m = 1; m <= m_max; ++m) {
        Complex s = 0.0;
        for (int j = 0; j < nu.grid; ++j)
            s += nu.density[size_t(j)] * std::polar(1.0, m * nu.theta(j));
        s /= double(nu.grid);
        for (const auto& p : nu.point_masses) s += p.mass * std::polar(1.0, m * p.theta);
        out[m - 1] = s;
    }
    return out;
}

// −∫ ln|z−y| dμ(y); +∞ when z sits on an atom
inline double log_potential(const AtomicMeasure& mu, Complex z) {
    double s = 0.0;
    for (size_t i = 0; i < mu.atoms.size(); ++i) {
        const double d = std::abs(z - mu.atoms[i]);
        if (d <= 1e-300) return std::numeric_limits<double>::infinity();
        s -= mu.masses[i] * std::log(d);
    }
    return s;
}

inline double log_potential(const CircleMeasure& nu, Complex z) {
    double s = 0.0;
    for (int j = 0; j < nu.grid; ++j) {
        const double d = std::abs(z - std::polar(1.0, nu.theta(j)));
        if (d <= 1e-300) return std::numeric_limits<double>::infinity();
        s -= nu.density[size_t(j)] * std::log(d);
    }
    s /= nu.grid;
    for (const auto& p : nu.point_masses) {
        const double d = std::abs(z - std::polar(1.0, p.theta));
        if (d <= 1e-300) return std::numeric_limits<double>::infinity();
        s -= p.mass * std::log(d);
    }
    return s;
}

inline double poisson_kernel(Complex a, double theta) {
    const double r2 = std::norm(a);
    return (1.0 - r2) / std::norm(std::polar(1.0, theta) - a);
}

// harmonic-measure sweep of point masses inside the disk onto the circle;
// preserves total mass and all moments
inline CircleMeasure balayage_to_circle(const AtomicMeasure& mu0, int grid) {
    CircleMeasure nu;
    nu.grid = grid;
    nu.density.assign(size_t(grid), 0.0);
    for (size_t i = 0; i < mu0.atoms.size(); ++i)
        if (std::abs(mu0.atoms[i]) >= 1.0 - 1e-12)
            throw AtomOnOrOutsideCircle("balayage: atom not strictly inside the disk");
    for (int j = 0; j < grid; ++j) {
        double d = 0.0;
        for (size_t i = 0; i < mu0.atoms.size(); ++i)
            d += mu0.masses[i] * poisson_kernel(mu0.atoms[i], nu.theta(j));
        nu.density[size_t(j)] = d;
    }
    return nu;
}

// (1/2π) ∫ ln(1 + R² + 2R cos θ) dθ on the midpoint grid; equals
// max(0, 2 ln R) analytically (midpoint grid dodges the R = 1 singularity)
inline double unit_log_integral(double R, int grid = 8192) {
    if (R < 0.0) throw BadConfig("unit_log_integral: R must be nonnegative");
    double s = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double th = 2.0 * M_PI * (j + 0.5) / grid;
        s += std::log(1.0 + R * R + 2.0 * R * std::cos(th));
    }
    return s / grid;
}

// balayage pipeline behind the ball-Jensen equality: Brown measure of x,
// inside/boundary split, sweep of the inside part, and the determinant
// cross-checks
struct JensenPotentialReport {
    AtomicMeasure brown;          // μ
    AtomicMeasure inside;         // μ₀, atoms strictly inside the disk
    AtomicMeasure boundary;       // μ₁, atoms within 1e−12 of the circle
    CircleMeasure swept;          // ν = ν₀ + μ₁ (boundary part as point masses)
    double max_moment_residual = 0.0;    // max |∫ z^m dν| for m ≤ m_max
    double log_integral_nu = 0.0;        // ∫ ln|1+y| dν
    double log_integral_mu = 0.0;        // ∫ ln|1+y| dμ
    double delta = 0.0;                  // Δ_τ(1+x)
    bool log_singularity = false;        // an atom sits at −1
};

inline JensenPotentialReport
jensen_via_potentials(const TracialState& tau, const CMatrix& x, int m_max = 12,
                      int grid = 4096, double moment_tol = 1e-9) {
    tau.algebra.require_element(x);
    if (spectral_radius(x) > 1.0 + 1e-9)
        throw PreconditionViolated("jensen_via_potentials: spectral radius exceeds 1");
    CMatrix p = tau.algebra.identity();
    for (int m = 1; m <= m_max; ++m) {
        p = p * x;
        const Complex t = tau(p);
        if (std::abs(t) > moment_tol)
            throw PreconditionViolated("jensen_via_potentials: τ(x^" + std::to_string(m) +
                                       ") = " + std::to_string(std::abs(t)) + " ≠ 0");
    }

    JensenPotentialReport rep;
    rep.brown = brown_measure(tau, x);
    for (size_t i = 0; i < rep.brown.atoms.size(); ++i) {
        if (std::abs(rep.brown.atoms[i]) < 1.0 - 1e-12) {
            rep.inside.atoms.push_back(rep.brown.atoms[i]);
            rep.inside.masses.push_back(rep.brown.masses[i]);
        } else {
            rep.boundary.atoms.push_back(rep.brown.atoms[i]);
            rep.boundary.masses.push_back(rep.brown.masses[i]);
        }
    }
    rep.swept = balayage_to_circle(rep.inside, grid);
    for (size_t i = 0; i < rep.boundary.atoms.size(); ++i)
        rep.swept.point_masses.push_back(
            {std::arg(rep.boundary.atoms[i]), rep.boundary.masses[i]});

    CVector mom = moments(rep.swept, m_max);
    for (int m = 0; m < m_max; ++m)
        rep.max_moment_residual = std::max(rep.max_moment_residual, std::abs(mom[m]));

    auto log_abs_one_plus = [&](const AtomicMeasure& mu, bool& sing) {
        double s = 0.0;
        for (size_t i = 0; i < mu.atoms.size(); ++i) {
            const double d = std::abs(1.0 + mu.atoms[i]);
            if (d <= 1e-14) { sing = true; continue; }
            s += mu.masses[i] * std::log(d);
        }
        return s;
    };
    rep.log_integral_mu = log_abs_one_plus(rep.brown, rep.log_singularity);
    // ∫ ln|1+y| dν over the swept density plus the boundary point masses
    double s = 0.0;
    for (int j = 0; j < grid; ++j)
        s += rep.swept.density[size_t(j)] *
             std::log(std::abs(1.0 + std::polar(1.0, rep.swept.theta(j))));
    s /= grid;
    bool sing2 = false;
    s += log_abs_one_plus(rep.boundary, sing2);
    rep.log_singularity = rep.log_singularity || sing2;
    rep.log_integral_nu = s;

    rep.delta = fk_det(tau, tau.algebra.identity() + x).value;
    return rep;
}

} // namespace ncfa

#endif
