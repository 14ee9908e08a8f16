#pragma once

#include "geocalib/hyperbolic.hpp"

// The space of oriented geodesics of H in its boundary-pair model
// (S^n x S^n) - Delta, the split metric, the endpoint diffeomorphism and its
// differential, and the reflection T_{p,q}.

namespace geocalib::lines {

// Backward/forward endpoint pair, kept off the diagonal.
struct OrientedLine {
    hyp::BoundaryPoint p;
    hyp::BoundaryPoint q;
    OrientedLine(hyp::BoundaryPoint backward, hyp::BoundaryPoint forward,
                 double diag_tol = 1e-8);
    int n() const { return static_cast<int>(p.b.size()) - 1; }
};

// Tangent pair (x, y) with x in p-perp, y in q-perp.
struct LineTangent {
    OrientedLine at;
    Vec x;
    Vec y;
    LineTangent(OrientedLine base, Vec x_part, Vec y_part, double tol = 1e-8);
};

// A tangent vector to the line space presented as Jacobi data along gamma:
// J(0) = J0, J'(0) = J0p, both orthogonal to the velocity.
struct JacobiData {
    hyp::Geodesic gamma;
    Vec J0;
    Vec J0p;
    JacobiData(hyp::Geodesic g, const hyp::HTangent& j0, const hyp::HTangent& j0p,
               double tol = 1e-8);
};

// Reflection of R^{n+1} across the hyperplane orthogonal to p - q.
Vec reflection(const Vec& p, const Vec& q, const Vec& x);

// Polarized form of ||(x,y)||_{(p,q)} = 4 <T_{p,q} x, y> / |q-p|^2.
double line_inner(const LineTangent& u, const LineTangent& w);

OrientedLine line_of_geodesic(const hyp::Geodesic& g);

enum class PushMode { Analytic, FiniteDifference };

// Differential of the endpoint map applied to Jacobi data. Analytic mode
// differentiates b_pm = spatial(X pm v)/temporal(X pm v) by the quotient rule
// with (dX, D_t v) = (J0, J0p + <J0, v> X); finite-difference mode varies the
// geodesic explicitly.
LineTangent push_line_tangent(const JacobiData& jd, PushMode mode = PushMode::Analytic);

// ||T_gamma(J)|| = |J0|^2 - |J0p|^2.
double killing_norm(const JacobiData& jd);
double killing_inner(const JacobiData& a, const JacobiData& b);

// The geodesic variation used by the finite-difference push: gamma_t has
// initial point ~ X + t J0 and initial covariant velocity change J0p.
hyp::Geodesic vary_geodesic(const JacobiData& jd, double t);

}  // namespace geocalib::lines
