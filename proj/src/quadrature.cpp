#include "geocalib/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geocalib/sampling.hpp"

namespace geocalib::quad {

Domain Domain::box(Vec lo, Vec hi) {
    if (lo.size() != hi.size() || lo.size() < 1)
        throw std::invalid_argument("Domain::box: bad bounds");
    for (int i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw std::invalid_argument("Domain::box: lo must be < hi");
    Domain d;
    d.kind = Kind::Box;
    d.dim = static_cast<int>(lo.size());
    d.lo = std::move(lo);
    d.hi = std::move(hi);
    return d;
}

Domain Domain::ball(int dim, double radius) {
    if (dim < 1 || radius <= 0.0) throw std::invalid_argument("Domain::ball: bad parameters");
    Domain d;
    d.kind = Kind::Ball;
    d.dim = dim;
    d.radius = radius;
    return d;
}

double Domain::volume() const {
    if (kind == Kind::Box) return (hi - lo).prod();
    switch (dim) {
        case 1: return 2.0 * radius;
        case 2: return std::numbers::pi * radius * radius;
        case 3: return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
        default: throw std::invalid_argument("Domain: ball volume only for dim <= 3");
    }
}

bool Domain::contains(const Vec& u) const {
    if (u.size() != dim) return false;
    if (kind == Kind::Ball) return u.norm() <= radius;
    for (int i = 0; i < dim; ++i)
        if (u[i] < lo[i] || u[i] > hi[i]) return false;
    return true;
}

void gauss_legendre(int k, std::vector<double>& nodes, std::vector<double>& weights) {
    if (k < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
    nodes.assign(k, 0.0);
    weights.assign(k, 0.0);
    for (int i = 0; i < k; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_k(x) and P_k'(x).
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

namespace {

std::vector<QuadNode> tensor_box(const Domain& d, int k) {
    std::vector<double> t, w;
    gauss_legendre(k, t, w);
    std::vector<QuadNode> nodes;
    std::vector<int> idx(d.dim, 0);
    const long total = static_cast<long>(std::pow(static_cast<double>(k), d.dim));
    nodes.reserve(total);
    while (true) {
        QuadNode node;
        node.u = Vec(d.dim);
        node.weight = 1.0;
        for (int i = 0; i < d.dim; ++i) {
            const double half = 0.5 * (d.hi[i] - d.lo[i]);
            node.u[i] = d.lo[i] + half * (1.0 + t[idx[i]]);
            node.weight *= half * w[idx[i]];
        }
        nodes.push_back(std::move(node));
        int i = 0;
        for (; i < d.dim; ++i) {
            if (++idx[i] < k) break;
            idx[i] = 0;
        }
        if (i == d.dim) break;
    }
    return nodes;
}

std::vector<QuadNode> tensor_ball(const Domain& d, int k) {
    std::vector<double> t, w;
    gauss_legendre(k, t, w);
    std::vector<QuadNode> nodes;
    const double R = d.radius;
    if (d.dim == 1) {
        for (int i = 0; i < k; ++i) {
            QuadNode n;
            n.u = Vec::Constant(1, R * t[i]);
            n.weight = R * w[i];
            nodes.push_back(std::move(n));
        }
        return nodes;
    }
    if (d.dim == 2) {
        for (int i = 0; i < k; ++i) {
            const double rho = 0.5 * R * (1.0 + t[i]);
            const double wr = 0.5 * R * w[i];
            for (int j = 0; j < k; ++j) {
                const double phi = std::numbers::pi * (1.0 + t[j]);
                const double wphi = std::numbers::pi * w[j];
                QuadNode n;
                n.u = Vec(2);
                n.u << rho * std::cos(phi), rho * std::sin(phi);
                n.weight = wr * wphi * rho;
                nodes.push_back(std::move(n));
            }
        }
        return nodes;
    }
    if (d.dim == 3) {
        for (int i = 0; i < k; ++i) {
            const double rho = 0.5 * R * (1.0 + t[i]);
            const double wr = 0.5 * R * w[i];
            for (int j = 0; j < k; ++j) {
                const double ct = t[j];  // cos(theta) on [-1, 1]
                const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
                for (int l = 0; l < k; ++l) {
                    const double phi = std::numbers::pi * (1.0 + t[l]);
                    QuadNode n;
                    n.u = Vec(3);
                    n.u << rho * st * std::cos(phi), rho * st * std::sin(phi), rho * ct;
                    n.weight = wr * w[j] * std::numbers::pi * w[l] * rho * rho;
                    nodes.push_back(std::move(n));
                }
            }
        }
        return nodes;
    }
    throw std::invalid_argument("make_nodes: ball quadrature only for dim <= 3");
}

std::vector<QuadNode> monte_carlo(const Domain& d, long count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("make_nodes: mc_samples must be positive");
    Rng rng(seed);
    std::vector<QuadNode> nodes;
    nodes.reserve(count);
    const double w = d.volume() / static_cast<double>(count);
    while (static_cast<long>(nodes.size()) < count) {
        Vec u(d.dim);
        if (d.kind == Domain::Kind::Box) {
            for (int i = 0; i < d.dim; ++i) u[i] = rng.uniform(d.lo[i], d.hi[i]);
        } else {
            for (int i = 0; i < d.dim; ++i) u[i] = rng.uniform(-d.radius, d.radius);
            if (u.norm() > d.radius) continue;
        }
        nodes.push_back({std::move(u), w});
    }
    return nodes;
}

}  // namespace

std::vector<QuadNode> make_nodes(const Domain& domain, const QuadratureGrid& grid) {
    if (grid.scheme == QuadratureGrid::Scheme::MonteCarlo)
        return monte_carlo(domain, grid.mc_samples, grid.seed);
    if (grid.resolution < 2) throw std::invalid_argument("make_nodes: resolution must be >= 2");
    return domain.kind == Domain::Kind::Box ? tensor_box(domain, grid.resolution)
                                            : tensor_ball(domain, grid.resolution);
}

}  // namespace geocalib::quad
