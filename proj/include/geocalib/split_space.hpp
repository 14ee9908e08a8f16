#pragma once

#include <cstdint>
#include <vector>

#include "geocalib/exterior.hpp"

// The split Euclidean space R^{n,n} in null coordinates and the split special
// Lagrangian calibration phi_c, with seeded sampling of space-like n-planes.

namespace geocalib::split {

struct SplitVector {
    Vec x;
    Vec y;
};

// Space-like n-planes transverse to {0} x R^n are graphs {(v, Av)}.
struct GraphPlane {
    Mat A;
};

// Polarization of ||(x,y)|| = <x,y>.
double split_inner(const SplitVector& u, const SplitVector& v);

// The split form as a 2n x 2n symmetric matrix [[0, I/2], [I/2, 0]].
InnerProduct split_inner_product(int n);

Vec embed(const SplitVector& u);
Blade embed(const std::vector<SplitVector>& blade);

// phi_c(blade) = (c det[x-parts] + det[y-parts]/c) / 2.
double phi_c_eval(double c, const std::vector<SplitVector>& blade);

// Blade {(e_i, A e_i)}; space-like under the split product iff sym(A) is
// positive definite.
std::vector<SplitVector> graph_plane_blade(const GraphPlane& g);

// det[y-parts] - c^2 det[x-parts]; zero is the special Lagrangian condition.
double special_lagrangian_defect(double c, const std::vector<SplitVector>& blade);

// Deterministic-in-seed A = S + K with S symmetric eigen-shifted so that
// lambda_min(sym A) >= delta and K antisymmetric (zero if symmetric_only).
GraphPlane sample_spacelike_graph(std::uint64_t seed, int n, double delta,
                                  bool symmetric_only = false);

}  // namespace geocalib::split
