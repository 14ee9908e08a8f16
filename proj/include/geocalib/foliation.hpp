#pragma once

#include <string>
#include <vector>

#include "geocalib/line_space.hpp"
#include "geocalib/quadrature.hpp"

// Geodesic foliations of H as unit vector fields: built-in families, the
// t.e.r. diagnostic, charts of the associated submanifold of the line space,
// Gauss maps and the graph-map identification.

namespace geocalib::fol {

enum class FieldFamily { Orthogeodesic, Horospherical, Custom };

struct UnitFieldSpec {
    FieldFamily family = FieldFamily::Custom;
    hyp::UnitField field;
    std::string name;
};

// Parameters for the custom family: the orthogeodesic field rotated pointwise
// in the spatial (e0, e1)-plane by amplitude * bump(dist to center / support).
// support_radius <= 0 applies the full rotation everywhere.
struct CustomFieldParams {
    Vec center;            // ball-model coordinates of the bump center
    double amplitude = 0.5;
    double support_radius = 1.0;
};

// Smooth bump: exp(1 - 1/(1 - (t/r)^2)) for |t| < r, 0 outside.
double smooth_bump(double t, double radius);
double smooth_bump_derivative(double t, double radius);

UnitFieldSpec orthogeodesic_field(int n);
// Leaves converge forward to the boundary point b.
UnitFieldSpec horospherical_field(const hyp::BoundaryPoint& b);
UnitFieldSpec custom_field(int n, const CustomFieldParams& params);

// Orthonormal basis of the orthogonal complement of V(X) inside T_X H.
std::vector<Vec> tangent_complement_basis(const hyp::HPoint& X, const Vec& v);

// Deterministic sample set: shells at radii R*k/shells (outermost exactly R)
// around `center`, along seeded sphere directions plus coordinate directions.
std::vector<hyp::HPoint> hyperbolic_ball_samples(const hyp::HPoint& center, double R,
                                                 int directions, int shells,
                                                 std::uint64_t seed);

// max_x |nabla_{V(x)} V|; <= 1e-6 certifies a geodesic field at sample
// resolution.
double geodesic_field_residual(const UnitFieldSpec& field,
                               const std::vector<hyp::HPoint>& samples,
                               hyp::DerivMode mode = hyp::DerivMode::Auto);

struct TerReport {
    double margin = 0.0;
    bool is_ter = false;
    hyp::HPoint worst_point;
};

// Largest singular value of v -> nabla_v V on V-perp over the samples.
TerReport ter_margin(const UnitFieldSpec& field, const std::vector<hyp::HPoint>& samples,
                     hyp::DerivMode mode = hyp::DerivMode::Auto);

struct FoliationChart {
    quad::Domain domain;
    std::function<hyp::HPoint(const Vec&)> section;
    // Analytic d sigma(u) e_i; finite differences when absent.
    std::function<Vec(const Vec&, int)> section_differential;
    UnitFieldSpec field;
    double transversality_min = 0.1;
};

// Chart of S = {X_0 = 0}: u -> (sqrt(1+|u|^2), 0, u).
hyp::HPoint section_S(const Vec& u);
Vec section_S_differential(const Vec& u, int i);

FoliationChart default_chart(const UnitFieldSpec& field, quad::Domain domain);

struct ChartPoint {
    lines::OrientedLine line;
    std::vector<lines::LineTangent> differential;
};

// Line of the leaf through sigma(u) and the pushed differential columns
// (J0 = d sigma_i perp to the velocity, J0p = nabla_{J0} V).
ChartPoint chart_to_line(const FoliationChart& chart, const Vec& u,
                         hyp::DerivMode mode = hyp::DerivMode::Auto);

// Determinants of the backward/forward Gauss map differentials restricted to
// a transversal through X, via finite differences.
std::pair<double, double> gauss_jacobians(const UnitFieldSpec& field, const hyp::HPoint& X);

struct GraphMapResult {
    std::vector<Vec> grid;      // sample chart coordinates on S
    std::vector<Vec> f_minus;   // backward graph-map samples, chart coordinates
    std::vector<Vec> f_plus;    // forward graph-map samples
    bool injectivity_ok = false;
};

// q_pm = endpoint(gamma_{W(x)}, pm) composed with the closed-form inverse of
// the orthogeodesic Gauss maps p_pm. Errors if a Gauss image leaves its open
// hemisphere.
GraphMapResult graph_map(const UnitFieldSpec& field, const std::vector<Vec>& grid);

}  // namespace geocalib::fol
