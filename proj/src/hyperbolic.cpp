#include "geocalib/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace geocalib::hyp {

namespace {
constexpr double kFdStep = 1e-5;
}

double minkowski(const Vec& u, const Vec& v) {
    if (u.size() != v.size() || u.size() < 2)
        throw std::invalid_argument("minkowski: dimension mismatch");
    return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1));
}

Vec project_to_hyperboloid(const Vec& X) {
    const double q = minkowski(X, X);
    if (q >= 0.0) throw std::invalid_argument("project_to_hyperboloid: vector is not timelike");
    return X / std::sqrt(-q);
}

HPoint::HPoint(Vec coords, double tol) : X(std::move(coords)) {
    if (X.size() < 3) throw std::invalid_argument("HPoint: ambient dimension must be >= 3");
    if (std::abs(minkowski(X, X) + 1.0) > tol)
        throw std::invalid_argument("HPoint: <X,X> must equal -1");
    if (X[0] <= 0.0) throw std::invalid_argument("HPoint: X_t must be positive");
}

HTangent::HTangent(const HPoint& at, Vec vec, double tol) : base(at.X), v(std::move(vec)) {
    if (v.size() != base.size()) throw std::invalid_argument("HTangent: dimension mismatch");
    if (std::abs(minkowski(base, v)) > tol)
        throw std::invalid_argument("HTangent: vector is not tangent to the hyperboloid");
}

Geodesic::Geodesic(const HPoint& at, const HTangent& velocity, double tol)
    : X(at.X), v(velocity.v) {
    if (!velocity.base.isApprox(at.X, 1e-12))
        throw std::invalid_argument("Geodesic: velocity based at a different point");
    if (std::abs(minkowski(v, v) - 1.0) > tol)
        throw std::invalid_argument("Geodesic: velocity must be unit");
}

BoundaryPoint::BoundaryPoint(Vec coords, double tol) : b(std::move(coords)) {
    if (std::abs(b.norm() - 1.0) > tol)
        throw std::invalid_argument("BoundaryPoint: must lie on the unit sphere");
}

BallPoint::BallPoint(Vec coords) : y(std::move(coords)) {
    if (y.norm() >= 1.0) throw std::invalid_argument("BallPoint: |y| must be < 1");
}

HPoint ball_to_hyperboloid(const BallPoint& p) {
    const double s = p.y.squaredNorm();
    const double d = 1.0 - s;
    Vec X(p.y.size() + 1);
    X[0] = (1.0 + s) / d;
    X.tail(p.y.size()) = 2.0 * p.y / d;
    return HPoint(project_to_hyperboloid(X));
}

BallPoint hyperboloid_to_ball(const HPoint& p) {
    return BallPoint(p.X.tail(p.X.size() - 1) / (1.0 + p.X[0]));
}

std::pair<HPoint, HTangent> ball_to_hyperboloid(const BallPoint& p, const Vec& dy) {
    const int m = static_cast<int>(p.y.size());
    if (dy.size() != m) throw std::invalid_argument("ball tangent dimension mismatch");
    const double d = 1.0 - p.y.squaredNorm();
    const double yd = p.y.dot(dy);
    Vec dX(m + 1);
    dX[0] = 4.0 * yd / (d * d);
    dX.tail(m) = 2.0 * dy / d + 4.0 * yd * p.y / (d * d);
    HPoint X = ball_to_hyperboloid(p);
    return {X, HTangent(X, dX)};
}

std::pair<BallPoint, Vec> hyperboloid_to_ball(const HPoint& p, const HTangent& w) {
    const int m = static_cast<int>(p.X.size()) - 1;
    const double den = 1.0 + p.X[0];
    Vec dy = w.v.tail(m) / den - p.X.tail(m) * (w.v[0] / (den * den));
    return {hyperboloid_to_ball(p), dy};
}

std::pair<HPoint, HTangent> geodesic_eval(const Geodesic& g, double s) {
    HPoint p(project_to_hyperboloid(std::cosh(s) * g.X + std::sinh(s) * g.v));
    Vec vel = std::sinh(s) * g.X + std::cosh(s) * g.v;
    vel -= minkowski(vel, p.X) / minkowski(p.X, p.X) * p.X;  // kill rounding drift
    return {p, HTangent(p, vel)};
}

BoundaryPoint endpoint(const Geodesic& g, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("endpoint: sign must be +-1");
    const Vec N = g.X + sign * g.v;  // null, future-pointing
    Vec b = N.tail(N.size() - 1) / N[0];
    return BoundaryPoint(b / b.norm());
}

HTangent parallel_transport(const Geodesic& g, const HTangent& w, double s) {
    if (!w.base.isApprox(g.X, 1e-9))
        throw std::invalid_argument("parallel_transport: tangent based off the geodesic start");
    const double a = minkowski(w.v, g.v);
    const Vec perp = w.v - a * g.v;  // orthogonal to both X and v, hence constant
    auto [p, vel] = geodesic_eval(g, s);
    return HTangent(p, a * vel.v + perp);
}

std::pair<HTangent, HTangent> jacobi_eval(const Geodesic& g, const HTangent& J0,
                                          const HTangent& J0p, double s) {
    if (std::abs(minkowski(J0.v, g.v)) > 1e-8 || std::abs(minkowski(J0p.v, g.v)) > 1e-8)
        throw std::invalid_argument("jacobi_eval: initial data must be orthogonal to the velocity");
    HTangent tj0 = parallel_transport(g, J0, s);
    HTangent tj0p = parallel_transport(g, J0p, s);
    HPoint at(tj0.base);
    HTangent j(at, std::cosh(s) * tj0.v + std::sinh(s) * tj0p.v);
    HTangent jp(at, std::sinh(s) * tj0.v + std::cosh(s) * tj0p.v);
    return {j, jp};
}

HTangent covariant_derivative(const UnitField& field, const HPoint& X, const HTangent& w,
                              DerivMode mode) {
    if (!field.value) throw std::invalid_argument("covariant_derivative: field has no evaluator");
    const bool analytic = (mode == DerivMode::Analytic) ||
                          (mode == DerivMode::Auto && static_cast<bool>(field.ambient_derivative));
    if (mode == DerivMode::Analytic && !field.ambient_derivative)
        throw std::invalid_argument("covariant_derivative: no analytic derivative available");

    Vec ambient;
    if (analytic) {
        ambient = field.ambient_derivative(X.X, w.v);
    } else {
        const double h = kFdStep;
        const Vec plus = field.value(project_to_hyperboloid(X.X + h * w.v));
        const Vec minus = field.value(project_to_hyperboloid(X.X - h * w.v));
        ambient = (plus - minus) / (2.0 * h);
    }
    const Vec value = field.value(X.X);
    Vec nabla = ambient - minkowski(value, w.v) * X.X;
    nabla += minkowski(nabla, X.X) * X.X;  // exact tangency
    return HTangent(X, nabla);
}

FootpointData reference_hypersurface(const HPoint& X) {
    const double x0 = X.X[1];
    const double s = std::asinh(x0);
    const double c = std::sqrt(1.0 + x0 * x0);
    Vec e0 = Vec::Zero(X.X.size());
    e0[1] = 1.0;

    Vec foot = (X.X - x0 * e0) / c;
    HPoint q(project_to_hyperboloid(foot));
    Vec normal = (x0 * X.X + e0) / c;
    return {q, HTangent(X, normal), s};
}

}  // namespace geocalib::hyp
