#include "geocalib/exterior.hpp"

#include <cmath>
#include <stdexcept>

namespace geocalib {

InnerProduct::InnerProduct(Mat g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols() || g_.rows() < 1)
        throw std::invalid_argument("InnerProduct: matrix must be square and nonempty");
    if (!g_.isApprox(g_.transpose(), 1e-12))
        throw std::invalid_argument("InnerProduct: matrix must be symmetric");
    if (std::abs(g_.determinant()) <= 0.0)
        throw std::invalid_argument("InnerProduct: matrix must be nondegenerate");
}

InnerProduct InnerProduct::euclidean(int dim) {
    return InnerProduct(Mat::Identity(dim, dim));
}

InnerProduct InnerProduct::minkowski(int dim) {
    Mat g = Mat::Identity(dim, dim);
    g(0, 0) = -1.0;
    return InnerProduct(std::move(g));
}

InnerProduct InnerProduct::from_matrix(Mat g) { return InnerProduct(std::move(g)); }

double InnerProduct::operator()(const Vec& u, const Vec& v) const {
    if (u.size() != g_.rows() || v.size() != g_.rows())
        throw std::invalid_argument("InnerProduct: vector dimension mismatch");
    return u.dot(g_ * v);
}

Mat gram_matrix(const Blade& blade, const InnerProduct& inner) {
    const int k = blade.grade();
    if (k < 1) throw std::invalid_argument("gram_matrix: empty blade");
    for (const Vec& v : blade.vectors)
        if (v.size() != inner.dim())
            throw std::invalid_argument("gram_matrix: blade/inner dimension mismatch");
    Mat g(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            g(i, j) = g(j, i) = inner(blade.vectors[i], blade.vectors[j]);
    return g;
}

GramVolume gram_volume(const Blade& blade, const InnerProduct& inner, double tol) {
    const Mat g = gram_matrix(blade, inner);
    const int k = blade.grade();

    bool positive_definite = true;
    for (int m = 1; m <= k; ++m) {
        if (g.topLeftCorner(m, m).determinant() <= tol) {
            positive_definite = false;
            break;
        }
    }

    const double det = g.determinant();
    GramVolume out;
    out.volume = std::sqrt(std::abs(det));
    if (positive_definite)
        out.causal_class = CausalClass::Spacelike;
    else if (std::abs(det) <= tol)
        out.causal_class = CausalClass::Degenerate;
    else
        out.causal_class = CausalClass::NonSpacelike;
    return out;
}

double form_on_blade(const std::vector<Vec>& covectors, const Blade& blade) {
    const int k = blade.grade();
    if (static_cast<int>(covectors.size()) != k)
        throw std::invalid_argument("form_on_blade: covector count must equal blade grade");
    Mat pairings(k, k);
    for (int i = 0; i < k; ++i) {
        if (covectors[i].size() != blade.dim())
            throw std::invalid_argument("form_on_blade: covector/blade dimension mismatch");
        for (int j = 0; j < k; ++j)
            pairings(i, j) = covectors[i].dot(blade.vectors[j]);
    }
    return pairings.determinant();
}

}  // namespace geocalib
