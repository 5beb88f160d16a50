#ifndef NCFA_RANDOM_HPP
#define NCFA_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace ncfa {

// splitmix64; used to fan a root seed out into independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fan_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(root ^ mix64(a)) ^ mix64(b + 0x51ed2701));
}

inline std::uint64_t fan_seed(std::uint64_t root, const std::string& tag, std::uint64_t b = 0) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag) { h ^= c; h *= 1099511628211ULL; }
    return fan_seed(root, h, b);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double gauss() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }
    std::complex<double> cgauss() {
        const double re = gauss(), im = gauss();
        return {re * M_SQRT1_2, im * M_SQRT1_2};
    }
    // uniform on the closed unit disk
    std::complex<double> cdisk() {
        const double r = std::sqrt(uniform());
        const double t = uniform(0.0, 2.0 * M_PI);
        return std::polar(r, t);
    }

    // complex Ginibre matrix, entries iid standard complex normal
    Eigen::MatrixXcd ginibre(int rows, int cols) {
        Eigen::MatrixXcd m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = cgauss();
        return m;
    }

    // Haar-ish unitary via QR of a Ginibre matrix with phase fix
    Eigen::MatrixXcd unitary(int n) {
        Eigen::MatrixXcd g = ginibre(n, n);
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
        Eigen::MatrixXcd q = qr.householderQ();
        Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < n; ++j) {
            auto d = r(j, j);
            q.col(j) *= (std::abs(d) > 0) ? d / std::abs(d) : 1.0;
        }
        return q;
    }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

} // namespace ncfa

#endif
