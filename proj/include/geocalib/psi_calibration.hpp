#pragma once

#include "geocalib/foliation.hpp"
#include "geocalib/split_space.hpp"

// The calibration psi on S^n_- x S^n_+, the constants C and c, the frame
// isometry A, chartized submanifolds with quadrature volumes and psi-fluxes,
// and the volume-maximization experiments.

namespace geocalib::calib {

struct CalibConstants {
    double C = 1.0;  // |q-p|^n / (2^n |q_0|^{n/2} |p_0|^{n/2}), always >= 1
    double c = 1.0;  // |q_0|^{n/2} / |p_0|^{n/2}
};

// Round volume form of S^n evaluated outward-normal-first:
// det [p, w_1, ..., w_n].
double theta_eval(const Vec& p, const std::vector<Vec>& w, double tol = 1e-8);

// psi_{(p,q)} = (pi_1^*(theta/|p_0|^n) + pi_2^*(theta'/|q_0|^n)) / 2, where the
// forward factor carries the orientation transported by the reflection T
// (inward-normal-first). Requires p_0 < -1e-8 and q_0 > 1e-8.
double psi_eval(const lines::OrientedLine& line, const std::vector<lines::LineTangent>& blade);

CalibConstants calib_constants(const lines::OrientedLine& line);

// The isometry A: R^{n,n} -> T_(p,q), A(e_i) = (v_i, 0), A(f_j) = (0, T v_j),
// with {v_i} a seeded orthogonal basis of T_p S^n, |v_i| = |q-p|/2, oriented
// so that theta_p(v_1, ..., v_n) > 0.
struct FrameA {
    lines::OrientedLine line;
    std::vector<lines::LineTangent> e_images;
    std::vector<lines::LineTangent> f_images;
};

FrameA frame_A(const lines::OrientedLine& line, std::uint64_t seed);

lines::LineTangent apply_frame(const FrameA& a, const split::SplitVector& u);
std::vector<lines::LineTangent> apply_frame(const FrameA& a,
                                            const std::vector<split::SplitVector>& blade);

// A space-like region of the line space given by a parametric chart with
// analytic differential. `orientation` fixes the sign convention of fluxes.
struct ChartizedSubmanifold {
    quad::Domain domain;
    std::function<lines::OrientedLine(const Vec&)> map;
    std::function<std::vector<lines::LineTangent>(const Vec&)> differential;
    double orientation = 1.0;
};

Mat chart_gram(const std::vector<lines::LineTangent>& diff);

// Compactly supported displacement of the forward endpoints of the reference
// chart: h(u) = u + amplitude * bump(dist to center / support) * direction,
// over the chart of the hyperbolic ball of radius collar_radius in S.
struct PerturbationSpec {
    int n = 2;
    Vec direction;              // unit direction in chart coordinates
    double amplitude = 0.0;
    double support_radius = 1.0;   // hyperbolic radius of the bump support
    double collar_radius = 2.0;    // hyperbolic radius of the chart domain
};

PerturbationSpec default_perturbation(int n, double amplitude);

// Chart of M_0 = {(p, Tp)} over the hyperbolic ball of radius `hyper_radius`
// in S (domain radius sinh(hyper_radius) in chart coordinates).
ChartizedSubmanifold mo_chart(int n, double hyper_radius);

// The competitor chart u -> (p_-(u), p_+(h(u))); checks injectivity of h and
// space-likeness on the given grid.
ChartizedSubmanifold perturb_mo(const PerturbationSpec& spec, const quad::QuadratureGrid& grid);

// Integral of sqrt(det Gram) over the domain; throws on a non-space-like node.
double region_volume(const ChartizedSubmanifold& m, const quad::QuadratureGrid& grid);

// Integral of psi over the chart (with the chart orientation applied).
double psi_flux(const ChartizedSubmanifold& m, const quad::QuadratureGrid& grid);

struct VolumeReport {
    double vol_reference = 0.0;
    double vol_competitor = 0.0;
    double flux_reference = 0.0;
    double flux_competitor = 0.0;
    bool spacelike_ok = false;
    double pointwise_min_ratio = 0.0;
    double epsilon = 0.0;
};

VolumeReport maximization_report(const PerturbationSpec& spec, const quad::QuadratureGrid& grid);

}  // namespace geocalib::calib
