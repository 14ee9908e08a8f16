#pragma once

#include <cstdint>
#include <vector>

#include "geocalib/exterior.hpp"

// Parameter domains and quadrature grids for chart integrals. Gauss-Legendre
// tensor rules are the default; Monte Carlo is a seeded cross-check.

namespace geocalib::quad {

struct Domain {
    enum class Kind { Box, Ball };
    Kind kind = Kind::Box;
    int dim = 1;
    Vec lo, hi;          // Box
    double radius = 1.0; // Ball, centered at the origin

    static Domain box(Vec lo, Vec hi);
    static Domain ball(int dim, double radius);
    double volume() const;
    bool contains(const Vec& u) const;
};

struct QuadratureGrid {
    enum class Scheme { GaussLegendreTensor, MonteCarlo };
    Scheme scheme = Scheme::GaussLegendreTensor;
    int resolution = 17;          // points per axis (tensor rule)
    long mc_samples = 1000000;    // Monte Carlo sample count
    std::uint64_t seed = 1;
};

struct QuadNode {
    Vec u;
    double weight;
};

// Nodes and weights on [-1, 1].
void gauss_legendre(int k, std::vector<double>& nodes, std::vector<double>& weights);

// Ball domains use polar/spherical tensor products (dim <= 3).
std::vector<QuadNode> make_nodes(const Domain& domain, const QuadratureGrid& grid);

}  // namespace geocalib::quad
