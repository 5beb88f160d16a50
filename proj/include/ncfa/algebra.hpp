#ifndef NCFA_ALGEBRA_HPP
#define NCFA_ALGEBRA_HPP

#include <numeric>
#include <vector>

#include <json.hpp>

#include "ncfa/errors.hpp"
#include "ncfa/matrix.hpp"
#include "ncfa/random.hpp"

namespace ncfa {

// ambient algebra M = ⊕_k M_{n_k}; elements are block-diagonal CMatrix of
// total dimension Σ n_k
struct DirectSumAlgebra {
    std::vector<int> block_sizes;

    DirectSumAlgebra() = default;
    explicit DirectSumAlgebra(std::vector<int> sizes) : block_sizes(std::move(sizes)) {
        if (block_sizes.empty()) throw BadConfig("algebra needs at least one block");
        for (int n : block_sizes)
            if (n <= 0) throw BadConfig("block sizes must be positive");
    }

    int num_blocks() const { return int(block_sizes.size()); }
    int dim() const { return std::accumulate(block_sizes.begin(), block_sizes.end(), 0); }
    int block_offset(int k) const {
        return std::accumulate(block_sizes.begin(), block_sizes.begin() + k, 0);
    }

    CMatrix block(const CMatrix& x, int k) const {
        const int o = block_offset(k), n = block_sizes[size_t(k)];
        return x.block(o, o, n, n);
    }

    CMatrix embed_blocks(const std::vector<CMatrix>& blocks) const {
        CMatrix x = CMatrix::Zero(dim(), dim());
        for (int k = 0; k < num_blocks(); ++k) {
            const int o = block_offset(k), n = block_sizes[size_t(k)];
            x.block(o, o, n, n) = blocks[size_t(k)];
        }
        return x;
    }

    void require_element(const CMatrix& x) const {
        if (x.rows() != dim() || x.cols() != dim())
            throw DimensionMismatch("element does not match algebra dimension");
    }

    // block-diagonal compression; elements of M must satisfy x = compress(x)
    CMatrix compress(const CMatrix& x) const {
        require_element(x);
        std::vector<CMatrix> bs;
        bs.reserve(size_t(num_blocks()));
        for (int k = 0; k < num_blocks(); ++k) bs.push_back(block(x, k));
        return embed_blocks(bs);
    }

    CMatrix random_element(Rng& rng) const {
        std::vector<CMatrix> bs;
        for (int n : block_sizes) bs.push_back(rng.ginibre(n, n) / std::sqrt(double(n)));
        return embed_blocks(bs);
    }

    CMatrix identity() const { return CMatrix::Identity(dim(), dim()); }
};

struct SupportReduction; // below

// τ(x) = Σ_k c_k · (normalized trace of block k)
struct TracialState {
    DirectSumAlgebra algebra;
    RVector weights;

    TracialState() = default;
    TracialState(DirectSumAlgebra alg, RVector w) : algebra(std::move(alg)), weights(std::move(w)) {
        if (weights.size() != algebra.num_blocks())
            throw BadConfig("one weight per block required");
        double total = 0.0;
        for (Eigen::Index k = 0; k < weights.size(); ++k) {
            if (weights[k] < 0) throw BadConfig("weights must be nonnegative");
            total += weights[k];
        }
        if (std::abs(total - 1.0) > 1e-12) throw BadConfig("weights must sum to 1");
    }

    static TracialState uniform(DirectSumAlgebra alg) {
        RVector w = RVector::Constant(alg.num_blocks(), 1.0 / alg.num_blocks());
        return TracialState(std::move(alg), std::move(w));
    }

    bool faithful() const {
        for (Eigen::Index k = 0; k < weights.size(); ++k)
            if (weights[k] <= 0.0) return false;
        return true;
    }

    Complex operator()(const CMatrix& x) const {
        algebra.require_element(x);
        Complex t = 0.0;
        for (int k = 0; k < algebra.num_blocks(); ++k)
            t += weights[k] * algebra.block(x, k).trace() / double(algebra.block_sizes[size_t(k)]);
        return t;
    }

    // ‖x‖₂ = τ(x*x)^{1/2}
    double l2_norm(const CMatrix& x) const {
        return std::sqrt(std::max(0.0, (*this)(x.adjoint() * x).real()));
    }

    SupportReduction support_projection() const;
};

inline Complex trace_eval(const TracialState& tau, const CMatrix& x) { return tau(x); }

// central support projection z (1 on blocks with c_k > 0) and the reduced
// faithful state
struct SupportReduction {
    CMatrix z;
    std::vector<int> kept_blocks;      // indices into the original algebra
    DirectSumAlgebra reduced_algebra;  // blocks with c_k > 0
    TracialState reduced_state;        // faithful by construction

    // compress a full element to the supported blocks
    CMatrix restrict(const DirectSumAlgebra& full, const CMatrix& x) const {
        std::vector<CMatrix> bs;
        for (int k : kept_blocks) bs.push_back(full.block(x, k));
        return reduced_algebra.embed_blocks(bs);
    }
};

inline SupportReduction TracialState::support_projection() const {
    SupportReduction r;
    r.z = CMatrix::Zero(algebra.dim(), algebra.dim());
    std::vector<int> sizes;
    std::vector<double> w;
    for (int k = 0; k < algebra.num_blocks(); ++k) {
        if (weights[k] > 0.0) {
            const int o = algebra.block_offset(k), n = algebra.block_sizes[size_t(k)];
            r.z.block(o, o, n, n).setIdentity();
            r.kept_blocks.push_back(k);
            sizes.push_back(n);
            w.push_back(weights[k]);
        }
    }
    r.reduced_algebra = DirectSumAlgebra(sizes);
    r.reduced_state = TracialState(r.reduced_algebra,
                                   Eigen::Map<const RVector>(w.data(), Eigen::Index(w.size())));
    return r;
}

struct Membership {
    bool member = false;
    double diagnostic = 0.0; // max offending modulus on norm-1-scaled input
};

// nest subalgebra A: per block, an ordered partition into consecutive cells;
// x ∈ A iff every block of x is upper block-triangular wrt its flag.
// D is the block-diagonal refinement by the same flags.
class NestSubalgebra {
  public:
    NestSubalgebra() = default;
    NestSubalgebra(DirectSumAlgebra alg, std::vector<std::vector<int>> flags)
        : algebra_(std::move(alg)), flags_(std::move(flags)) {
        if (int(flags_.size()) != algebra_.num_blocks())
            throw BadConfig("one flag per block required");
        cell_of_.assign(size_t(algebra_.dim()), -1);
        int cell_id = 0;
        for (int k = 0; k < algebra_.num_blocks(); ++k) {
            int covered = 0;
            for (int c : flags_[size_t(k)]) {
                if (c <= 0) throw BadConfig("flag cells must be positive");
                for (int i = 0; i < c; ++i)
                    cell_of_[size_t(algebra_.block_offset(k) + covered + i)] = cell_id;
                covered += c;
                ++cell_id;
            }
            if (covered != algebra_.block_sizes[size_t(k)])
                throw BadConfig("flag cells must cover the block");
        }
        block_of_.assign(size_t(algebra_.dim()), -1);
        for (int k = 0; k < algebra_.num_blocks(); ++k)
            for (int i = 0; i < algebra_.block_sizes[size_t(k)]; ++i)
                block_of_[size_t(algebra_.block_offset(k) + i)] = k;
    }

    // trivial nest: one cell per block (A = D = M-diagonal blocks)... rarely
    // what you want; full_flags gives the finest nest (all cells size 1).
    static NestSubalgebra upper_triangular(DirectSumAlgebra alg) {
        std::vector<std::vector<int>> flags;
        for (int n : alg.block_sizes) flags.emplace_back(size_t(n), 1);
        return NestSubalgebra(std::move(alg), std::move(flags));
    }

    const DirectSumAlgebra& algebra() const { return algebra_; }
    const std::vector<std::vector<int>>& flags() const { return flags_; }
    int cell_of(int index) const { return cell_of_[size_t(index)]; }

    bool allowed_in_A(int i, int j) const {
        return block_of_[size_t(i)] == block_of_[size_t(j)] &&
               cell_of_[size_t(i)] <= cell_of_[size_t(j)];
    }
    bool allowed_in_D(int i, int j) const { return cell_of_[size_t(i)] == cell_of_[size_t(j)]; }

    Membership membership_A(const CMatrix& x, double tol = 1e-12) const {
        return membership(x, tol, /*diag_only=*/false);
    }
    Membership membership_D(const CMatrix& x, double tol = 1e-12) const {
        return membership(x, tol, /*diag_only=*/true);
    }

    // compression onto the A pattern (zero out disallowed entries)
    CMatrix project_A(const CMatrix& x) const {
        algebra_.require_element(x);
        CMatrix y = CMatrix::Zero(x.rows(), x.cols());
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j)
                if (allowed_in_A(int(i), int(j))) y(i, j) = x(i, j);
        return y;
    }

    // compression onto the D pattern (the nest D-character on A)
    CMatrix project_D(const CMatrix& x) const {
        algebra_.require_element(x);
        CMatrix y = CMatrix::Zero(x.rows(), x.cols());
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j)
                if (allowed_in_D(int(i), int(j))) y(i, j) = x(i, j);
        return y;
    }

    CMatrix random_member_A(Rng& rng) const {
        return project_A(algebra_.random_element(rng));
    }
    CMatrix random_member_D(Rng& rng) const {
        return project_D(algebra_.random_element(rng));
    }
    // strictly upper part, ker of the D-character
    CMatrix random_strict_upper(Rng& rng) const {
        CMatrix a = random_member_A(rng);
        return a - project_D(a);
    }

    // matrix-unit basis of A, in deterministic order
    std::vector<std::pair<int, int>> basis_positions_A() const {
        std::vector<std::pair<int, int>> b;
        for (int i = 0; i < algebra_.dim(); ++i)
            for (int j = 0; j < algebra_.dim(); ++j)
                if (allowed_in_A(i, j)) b.emplace_back(i, j);
        return b;
    }

  private:
    Membership membership(const CMatrix& x, double tol, bool diag_only) const {
        algebra_.require_element(x);
        const double scale = std::max(operator_norm(x), 1.0);
        Membership m;
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                const bool ok = diag_only ? allowed_in_D(int(i), int(j))
                                          : allowed_in_A(int(i), int(j));
                if (!ok) m.diagnostic = std::max(m.diagnostic, std::abs(x(i, j)) / scale);
            }
        m.member = m.diagnostic <= tol;
        return m;
    }

    DirectSumAlgebra algebra_;
    std::vector<std::vector<int>> flags_;
    std::vector<int> cell_of_;
    std::vector<int> block_of_;
};

// ‖f(xz)|_{zMz} − f(x)z‖ for a central projection z given by its supported
// block set; zero when the functional calculus commutes with compression
inline double zcalc_check(const TracialState& tau, const CMatrix& x,
                          const std::function<double(double)>& f,
                          const std::function<bool(double)>& domain_ok = nullptr) {
    const DirectSumAlgebra& m = tau.algebra;
    m.require_element(x);
    SupportReduction red = tau.support_projection();
    // f(xz) computed inside zMz, then embedded back
    CMatrix fx_reduced = func_calc(f, red.restrict(m, x), kDefaultTol, domain_ok);
    CMatrix lhs = CMatrix::Zero(m.dim(), m.dim());
    for (size_t idx = 0; idx < red.kept_blocks.size(); ++idx) {
        const int k = red.kept_blocks[idx];
        const int o = m.block_offset(k), n = m.block_sizes[size_t(k)];
        lhs.block(o, o, n, n) = red.reduced_algebra.block(fx_reduced, int(idx));
    }
    CMatrix rhs = func_calc(f, x, kDefaultTol, domain_ok) * red.z;
    return operator_norm(lhs - rhs);
}

// { "blocks": [...], "weights": [...], "flags": [[...], ...] }
inline nlohmann::json algebra_descriptor_to_json(const TracialState& tau,
                                                 const NestSubalgebra& nest) {
    nlohmann::json j;
    j["blocks"] = tau.algebra.block_sizes;
    std::vector<double> w(tau.weights.data(), tau.weights.data() + tau.weights.size());
    j["weights"] = w;
    j["flags"] = nest.flags();
    return j;
}

inline std::pair<TracialState, NestSubalgebra>
algebra_descriptor_from_json(const nlohmann::json& j) {
    DirectSumAlgebra alg(j.at("blocks").get<std::vector<int>>());
    auto wv = j.at("weights").get<std::vector<double>>();
    RVector w = Eigen::Map<const RVector>(wv.data(), Eigen::Index(wv.size()));
    TracialState tau(alg, w);
    NestSubalgebra nest(alg, j.at("flags").get<std::vector<std::vector<int>>>());
    return {tau, nest};
}

} // namespace ncfa

#endif
