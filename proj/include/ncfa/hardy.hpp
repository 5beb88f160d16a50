#ifndef NCFA_HARDY_HPP
#define NCFA_HARDY_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "ncfa/matrix.hpp"

namespace ncfa {

// trigonometric polynomial with coefficients c_m, m = −N..N
struct FourierSymbol {
    int N = 0;
    std::vector<Complex> c; // index m stored at m + N

    static FourierSymbol zero(int order) {
        FourierSymbol f;
        f.N = order;
        f.c.assign(size_t(2 * order + 1), Complex(0.0));
        return f;
    }

    Complex coeff(int m) const {
        if (m < -N || m > N) return 0.0;
        return c[size_t(m + N)];
    }

    Complex& at(int m) { return c.at(size_t(m + N)); }

    Complex eval(double theta) const {
        Complex s = 0.0;
        for (int m = -N; m <= N; ++m) s += coeff(m) * std::polar(1.0, m * theta);
        return s;
    }
};

inline nlohmann::json symbol_to_json(const FourierSymbol& f) {
    std::vector<double> re, im;
    for (const auto& v : f.c) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return nlohmann::json{{"N", f.N}, {"re", re}, {"im", im}};
}

inline FourierSymbol symbol_from_json(const nlohmann::json& j) {
    FourierSymbol f = FourierSymbol::zero(j.at("N").get<int>());
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (int(re.size()) != 2 * f.N + 1 || int(im.size()) != 2 * f.N + 1)
        throw IOError("symbol_from_json: coefficient arrays must have length 2N+1");
    for (size_t k = 0; k < f.c.size(); ++k)
        f.c[k] = Complex(re[k].get<double>(), im[k].get<double>());
    return f;
}

// degree-N truncation of the weighted Hardy space on the circle: analytic
// polynomials with the inner products of dθ/2π (τ) and w·dθ/2π (ω)
struct HardyModel {
    int N = 0;
    int G = 0;                // grid size, θ_j = 2πj/G
    std::vector<double> w;    // weight samples, > 0
    double alpha = 0.0, beta = 0.0;

    static HardyModel from_weight(int order, std::vector<double> weight) {
        HardyModel m;
        m.N = order;
        m.G = int(weight.size());
        if (m.G < 4 * order) throw TruncationTooSmall("HardyModel: grid must be ≥ 4N");
        m.w = std::move(weight);
        m.alpha = m.w[0];
        m.beta = m.w[0];
        for (double v : m.w) {
            if (v <= 0.0) throw NonPositiveWeight("HardyModel: weight sample ≤ 0");
            m.alpha = std::min(m.alpha, v);
            m.beta = std::max(m.beta, v);
        }
        return m;
    }

    // w(θ) = (1−λ²)/|1−λe^{iθ}|², the state f ↦ f(λ) on analytic polynomials
    static HardyModel poisson(int order, double lambda, int grid = 0) {
        if (lambda < 0.0 || lambda >= 1.0)
            throw BadConfig("HardyModel::poisson: need 0 ≤ λ < 1");
        if (grid == 0) grid = 8 * order;
        std::vector<double> weight(size_t(grid), 0.0);
        for (int j = 0; j < grid; ++j) {
            const double th = 2.0 * M_PI * j / grid;
            weight[size_t(j)] =
                (1.0 - lambda * lambda) / std::norm(1.0 - lambda * std::polar(1.0, th));
        }
        return from_weight(order, std::move(weight));
    }

    double theta(int j) const { return 2.0 * M_PI * j / G; }

    Complex inner_tau(const FourierSymbol& f, const FourierSymbol& g) const {
        Complex s = 0.0;
        for (int j = 0; j < G; ++j) s += std::conj(f.eval(theta(j))) * g.eval(theta(j));
        return s / double(G);
    }

    Complex inner_omega(const FourierSymbol& f, const FourierSymbol& g) const {
        Complex s = 0.0;
        for (int j = 0; j < G; ++j)
            s += w[size_t(j)] * std::conj(f.eval(theta(j))) * g.eval(theta(j));
        return s / double(G);
    }

    Complex omega(const FourierSymbol& f) const {
        Complex s = 0.0;
        for (int j = 0; j < G; ++j) s += w[size_t(j)] * f.eval(theta(j));
        return s / double(G);
    }
};

struct WeightBounds {
    double alpha = 0.0;
    double beta = 0.0;
    std::string verdict; // SAME_PART_AS_TRACE for any valid bounded weight
};

inline WeightBounds gleason_weight_check(const std::vector<double>& w) {
    if (w.empty()) throw NonPositiveWeight("gleason_weight_check: empty weight");
    WeightBounds b;
    b.alpha = w[0];
    b.beta = w[0];
    for (double v : w) {
        if (v <= 0.0) throw NonPositiveWeight("gleason_weight_check: weight sample ≤ 0");
        b.alpha = std::min(b.alpha, v);
        b.beta = std::max(b.beta, v);
    }
    b.verdict = "SAME_PART_AS_TRACE";
    return b;
}

struct WermerResult {
    FourierSymbol e;   // ω-projection of 1 onto span{z,…,z^N}
    FourierSymbol z_r; // e / c
    double c = 0.0;    // ‖e‖_ω
    double omega_e = 0.0;            // ω(e), equals c² for the true projection
    double max_orthogonality = 0.0;  // max_m |⟨1−e, z^m⟩_ω|
    double min_modulus = 0.0;        // min |z_r| on the grid (invertibility)
    double sup_modulus = 0.0;
    double constant_term = 0.0;      // |c₀(z_r)|, membership in the analytic ideal
    double subspace_angle = 0.0;     // between H²·z_r and H²₀, degree ≤ N/2 window
};

inline WermerResult wermer_embedding(const HardyModel& model) {
    const int n = model.N;
    auto monomial = [&](int m) {
        FourierSymbol f = FourierSymbol::zero(n);
        f.at(m) = 1.0;
        return f;
    };

    // Gram system for the projection of 1 onto span{z,…,z^N} under ⟨·,·⟩_ω
    CMatrix gram(n, n);
    CVector rhs(n);
    const FourierSymbol one = monomial(0);
    std::vector<FourierSymbol> zs;
    for (int m = 1; m <= n; ++m) zs.push_back(monomial(m));
    for (int k = 0; k < n; ++k) {
        for (int m = 0; m < n; ++m) gram(k, m) = model.inner_omega(zs[size_t(k)], zs[size_t(m)]);
        rhs[k] = model.inner_omega(zs[size_t(k)], one);
    }
    CVector a = gram.ldlt().solve(rhs);

    WermerResult res;
    res.e = FourierSymbol::zero(n);
    for (int m = 1; m <= n; ++m) res.e.at(m) = a[m - 1];

    const double c2 = std::abs(model.inner_omega(res.e, res.e));
    if (c2 <= 1e-12)
        throw DegenerateState("wermer_embedding: projection of 1 vanishes (ω = τ)");
    res.c = std::sqrt(c2);
    res.omega_e = model.omega(res.e).real();

    FourierSymbol diff = res.e;
    for (auto& v : diff.c) v = -v;
    diff.at(0) += 1.0; // 1 − e
    for (int m = 1; m <= n; ++m)
        res.max_orthogonality =
            std::max(res.max_orthogonality, std::abs(model.inner_omega(zs[size_t(m - 1)], diff)));

    res.z_r = res.e;
    for (auto& v : res.z_r.c) v /= res.c;
    res.constant_term = std::abs(res.z_r.coeff(0));

    res.min_modulus = std::numeric_limits<double>::infinity();
    for (int j = 0; j < model.G; ++j) {
        const double m = std::abs(res.z_r.eval(model.theta(j)));
        res.min_modulus = std::min(res.min_modulus, m);
        res.sup_modulus = std::max(res.sup_modulus, m);
    }

    // principal angle between span{z^j z_r : j < W} and span{z,…,z^W},
    // as coefficient columns truncated to degree ≤ W with W = N/2
    const int W = n / 2;
    CMatrix s1 = CMatrix::Zero(W + 1, W); // rows: degrees 0..W
    CMatrix s2 = CMatrix::Zero(W + 1, W);
    for (int j = 0; j < W; ++j) {
        for (int d = 0; d <= W; ++d)
            if (d - j >= 1) s1(d, j) = res.z_r.coeff(d - j); // coefficient of z^d in z^j z_r
        s2(std::min(j + 1, W), j) = 1.0;
    }
    auto orth = [](const CMatrix& m) {
        Eigen::HouseholderQR<CMatrix> qr(m);
        CMatrix q = qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
        return q;
    };
    Eigen::JacobiSVD<CMatrix> svd(CMatrix(orth(s1).adjoint() * orth(s2)));
    double smin = 1.0;
    for (int k = 0; k < svd.singularValues().size(); ++k)
        smin = std::min(smin, svd.singularValues()[k]);
    res.subspace_angle = std::acos(std::min(1.0, smin));
    return res;
}

// finite section of H_f: a ↦ (1−P₊)(fa); rows index z^{−j}, j = 1..N, columns
// index z^k, k = 0..N−1, so entry (j,k) = c_{−(j+k)}
inline CMatrix hankel_matrix(const FourierSymbol& f, int n) {
    if (f.N < 2 * n - 1)
        throw TruncationTooSmall("hankel_matrix: symbol order must reach 2N−1");
    CMatrix h(n, n);
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < n; ++k) h(j - 1, k) = f.coeff(-(j + k));
    return h;
}

struct CompactnessProfile {
    struct Row {
        int N = 0;
        std::vector<double> sigma; // leading singular values
    };
    std::vector<Row> rows;
    std::string verdict; // DECAYING or NON_COMPACT_SIGNATURE
};

// finite sections across N: compact symbols show singular values collapsing
// at a fixed fraction of N while the leading one stabilizes; non-compact
// tails either stay bounded below deep into the spectrum or have sections
// whose norm keeps growing with N
inline CompactnessProfile compactness_profile(const FourierSymbol& f,
                                              const std::vector<int>& n_list,
                                              int leading = 10) {
    CompactnessProfile prof;
    bool bounded_below = true;
    double sigma1_first = 0.0, sigma1_last = 0.0;
    for (int n : n_list) {
        CompactnessProfile::Row row;
        row.N = n;
        RVector sv = singular_values(hankel_matrix(f, n));
        for (int k = 0; k < std::min<int>(leading, int(sv.size())); ++k)
            row.sigma.push_back(sv[k]);
        const int frac = std::max(1, n / 4);
        if (sv[std::min<int>(frac, int(sv.size()) - 1)] <= 1e-3) bounded_below = false;
        if (prof.rows.empty()) sigma1_first = sv[0];
        sigma1_last = sv[0];
        prof.rows.push_back(std::move(row));
    }
    const bool norm_growing =
        n_list.size() >= 2 && sigma1_last > 2.0 * std::max(sigma1_first, 1e-12);
    prof.verdict = (bounded_below || norm_growing) ? "NON_COMPACT_SIGNATURE" : "DECAYING";
    return prof;
}

} // namespace ncfa

#endif
