#pragma once

#include <cstdint>
#include <utility>

#include "geocalib/psi_calibration.hpp"
#include "geocalib/reporting.hpp"
#include "geocalib/sampling.hpp"

// The verification suites behind the CLI subcommands. Each suite returns one
// assertion record per numerical claim, with all tolerances pinned here.

namespace geocalib::suites {

struct SuiteConfig {
    int n = 2;
    std::uint64_t seed = 1;
    quad::QuadratureGrid grid;
    std::vector<double> eps = {0.0, 0.02, 0.05, 0.1};
    std::string field = "orthogeodesic";

    // Sample counts; defaults match the acceptance scale.
    int planes = 10000;
    int isometry_pairs = 1000;
    int pullback_pairs = 1000;
    long c_lines = 100000;
    int calibration_blades = 200;
    int maximize_resolution = 0;  // 0 -> per-dimension default
};

// Gauss-Legendre 17 points per axis for n <= 2, 9 for n = 3.
quad::QuadratureGrid default_grid(int n, std::uint64_t seed = 1);

// Random line of S^n_- x S^n_+ with a margin from the equators and diagonal.
lines::OrientedLine sample_line(int n, Rng& rng, double hemisphere_margin = 1e-6);

// Random unit-speed geodesic with base point within ball radius 0.7.
hyp::Geodesic sample_geodesic(int n, Rng& rng);

lines::JacobiData sample_jacobi(const hyp::Geodesic& g, Rng& rng);

// Modified Gram-Schmidt under line_inner; requires a space-like frame.
std::vector<lines::LineTangent> orthonormalize(const std::vector<lines::LineTangent>& frame);

// omega_{n-1} * integral_0^R sinh^{n-1}(t) dt, n <= 3.
double hyperbolic_ball_volume(int n, double R);

// phi_c calibration inequality and equality cases on sampled graph planes.
std::vector<report::Check> check_phic(const SuiteConfig& cfg);

// line_inner(push(jd), push(jd)) vs |J0|^2 - |J0p|^2, analytic and
// finite-difference modes, plus the recorded H^2 hand examples.
std::vector<report::Check> check_isometry(const SuiteConfig& cfg);

// Pullback identity A*psi = C phi_c, the constant C, calibratedness of M_0
// and its region volume, and the calibration inequality on sampled blades.
std::vector<report::Check> check_psi(const SuiteConfig& cfg);

// t.e.r. margins, geodesic-field residuals, chart Gram signatures and Gauss
// map Jacobians for the built-in (or custom) fields.
std::vector<report::Check> check_ter(const SuiteConfig& cfg);

// Maximization experiments over the epsilon sweep; optionally records the
// (epsilon, competitor volume) rows.
std::vector<report::Check> check_maximize(const SuiteConfig& cfg,
                                          std::vector<std::pair<double, double>>* eps_vol = nullptr);

}  // namespace geocalib::suites
