#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "geocalib/exterior.hpp"

// Hyperbolic space H^{n+1} in the hyperboloid model: geodesics, endpoints at
// infinity, parallel transport, Jacobi fields and covariant differentiation.
// Ambient coordinates are Minkowski with index order (t, 0, 1, ..., n), so the
// reference totally geodesic hypersurface S reads {X_0 = 0}.

namespace geocalib::hyp {

// -u_t v_t + sum u_i v_i.
double minkowski(const Vec& u, const Vec& v);

// Reprojects a timelike vector onto the hyperboloid: X / sqrt(-<X,X>).
Vec project_to_hyperboloid(const Vec& X);

struct HPoint {
    Vec X;
    explicit HPoint(Vec coords, double tol = 1e-9);
    int n() const { return static_cast<int>(X.size()) - 2; }
};

struct HTangent {
    Vec base;  // coordinates of the base HPoint
    Vec v;
    HTangent(const HPoint& at, Vec vec, double tol = 1e-9);
};

// Unit speed geodesic with initial point X and initial velocity v.
struct Geodesic {
    Vec X;
    Vec v;
    Geodesic(const HPoint& at, const HTangent& velocity, double tol = 1e-9);
    HPoint point() const { return HPoint(X); }
};

// Point of S^n = boundary at infinity in the ball model.
struct BoundaryPoint {
    Vec b;
    explicit BoundaryPoint(Vec coords, double tol = 1e-9);
};

struct BallPoint {
    Vec y;
    explicit BallPoint(Vec coords);
};

HPoint ball_to_hyperboloid(const BallPoint& p);
BallPoint hyperboloid_to_ball(const HPoint& p);
std::pair<HPoint, HTangent> ball_to_hyperboloid(const BallPoint& p, const Vec& dy);
std::pair<BallPoint, Vec> hyperboloid_to_ball(const HPoint& p, const HTangent& w);

// gamma(s) = cosh(s) X + sinh(s) v with velocity sinh(s) X + cosh(s) v.
std::pair<HPoint, HTangent> geodesic_eval(const Geodesic& g, double s);

// Endpoint at s -> sign * infinity: with N = X + sign*v, b = spatial(N)/N_t.
BoundaryPoint endpoint(const Geodesic& g, int sign);

// Transports w from gamma(0) to gamma(s) along gamma.
HTangent parallel_transport(const Geodesic& g, const HTangent& w, double s);

// Closed-form Jacobi field with J(0) = J0, J'(0) = J0p, both orthogonal to
// the velocity. Returns (J(s), J'(s)).
std::pair<HTangent, HTangent> jacobi_eval(const Geodesic& g, const HTangent& J0,
                                          const HTangent& J0p, double s);

// A unit vector field on H given in closed form. `value` takes hyperboloid
// coordinates; `ambient_derivative(X, w)`, when present, is the analytic
// directional derivative D_w of the coordinate expression.
struct UnitField {
    std::function<Vec(const Vec&)> value;
    std::function<Vec(const Vec&, const Vec&)> ambient_derivative;
};

enum class DerivMode { Auto, Analytic, FiniteDifference };

// Levi-Civita derivative via the Gauss formula, nabla_w V = D_w V - <V,w> X.
// Finite differences run along the reprojected curve X + t w with h = 1e-5.
HTangent covariant_derivative(const UnitField& field, const HPoint& X, const HTangent& w,
                              DerivMode mode = DerivMode::Auto);

struct FootpointData {
    HPoint foot;        // nearest point of S = {X_0 = 0}
    HTangent normal;    // V_o(X) = (X_0 X + e0bar)/sqrt(1 + X_0^2)
    double s = 0.0;     // signed distance to S, arcsinh(X_0)
};

FootpointData reference_hypersurface(const HPoint& X);

}  // namespace geocalib::hyp
