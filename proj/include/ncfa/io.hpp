#ifndef NCFA_IO_HPP
#define NCFA_IO_HPP

#include <json.hpp>

#include "ncfa/errors.hpp"
#include "ncfa/matrix.hpp"

namespace ncfa {

using nlohmann::json;

// { "rows": n, "cols": m, "re": [...], "im": [...] }, row-major
inline json matrix_to_json(const CMatrix& a) {
    json j;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    std::vector<double> re, im;
    re.reserve(size_t(a.size()));
    im.reserve(size_t(a.size()));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            re.push_back(a(i, k).real());
            im.push_back(a(i, k).imag());
        }
    j["re"] = re;
    j["im"] = im;
    return j;
}

inline CMatrix matrix_from_json(const json& j) {
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (rows < 0 || cols < 0 ||
        Eigen::Index(re.size()) != rows * cols || Eigen::Index(im.size()) != rows * cols)
        throw IOError("matrix json: entry count does not match rows*cols");
    CMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) {
            const size_t idx = size_t(i * cols + k);
            a(i, k) = Complex(re[idx].get<double>(), im[idx].get<double>());
        }
    if (!is_finite(a)) throw IOError("matrix json: non-finite entries");
    return a;
}

} // namespace ncfa

#endif
