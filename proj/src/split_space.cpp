#include "geocalib/split_space.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "geocalib/sampling.hpp"

namespace geocalib::split {

namespace {

Mat parts(const std::vector<SplitVector>& blade, bool y_part) {
    const int n = static_cast<int>(blade.size());
    if (n < 1) throw std::invalid_argument("split blade must be nonempty");
    Mat m(n, n);
    for (int j = 0; j < n; ++j) {
        const Vec& col = y_part ? blade[j].y : blade[j].x;
        if (col.size() != n || blade[j].x.size() != blade[j].y.size())
            throw std::invalid_argument("split blade grade must equal the factor dimension");
        m.col(j) = col;
    }
    return m;
}

}  // namespace

double split_inner(const SplitVector& u, const SplitVector& v) {
    if (u.x.size() != u.y.size() || v.x.size() != v.y.size() || u.x.size() != v.x.size())
        throw std::invalid_argument("split_inner: dimension mismatch");
    return 0.5 * (u.x.dot(v.y) + v.x.dot(u.y));
}

InnerProduct split_inner_product(int n) {
    Mat g = Mat::Zero(2 * n, 2 * n);
    g.topRightCorner(n, n) = 0.5 * Mat::Identity(n, n);
    g.bottomLeftCorner(n, n) = 0.5 * Mat::Identity(n, n);
    return InnerProduct::from_matrix(std::move(g));
}

Vec embed(const SplitVector& u) {
    Vec v(u.x.size() + u.y.size());
    v << u.x, u.y;
    return v;
}

Blade embed(const std::vector<SplitVector>& blade) {
    Blade b;
    b.vectors.reserve(blade.size());
    for (const SplitVector& u : blade) b.vectors.push_back(embed(u));
    return b;
}

double phi_c_eval(double c, const std::vector<SplitVector>& blade) {
    if (c <= 0.0) throw std::invalid_argument("phi_c_eval: c must be positive");
    return 0.5 * (c * parts(blade, false).determinant() +
                  parts(blade, true).determinant() / c);
}

std::vector<SplitVector> graph_plane_blade(const GraphPlane& g) {
    const int n = static_cast<int>(g.A.rows());
    std::vector<SplitVector> blade(n);
    for (int i = 0; i < n; ++i) {
        blade[i].x = Vec::Unit(n, i);
        blade[i].y = g.A.col(i);
    }
    return blade;
}

double special_lagrangian_defect(double c, const std::vector<SplitVector>& blade) {
    return parts(blade, true).determinant() - c * c * parts(blade, false).determinant();
}

GraphPlane sample_spacelike_graph(std::uint64_t seed, int n, double delta,
                                  bool symmetric_only) {
    if (delta <= 0.0) throw std::invalid_argument("sample_spacelike_graph: delta must be positive");
    Rng rng(seed);

    Mat s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) s(i, j) = s(j, i) = rng.uniform(-1.0, 1.0);
    const double lambda_min =
        Eigen::SelfAdjointEigenSolver<Mat>(s).eigenvalues().minCoeff();
    if (lambda_min < delta) s += (delta - lambda_min) * Mat::Identity(n, n);

    Mat k = Mat::Zero(n, n);
    if (!symmetric_only) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                k(i, j) = rng.uniform(-1.0, 1.0);
                k(j, i) = -k(i, j);
            }
    }
    return GraphPlane{s + k};
}

}  // namespace geocalib::split
