#include "geocalib/line_space.hpp"

#include <cmath>
#include <stdexcept>

namespace geocalib::lines {

using hyp::minkowski;

OrientedLine::OrientedLine(hyp::BoundaryPoint backward, hyp::BoundaryPoint forward,
                           double diag_tol)
    : p(std::move(backward)), q(std::move(forward)) {
    if (p.b.size() != q.b.size()) throw std::invalid_argument("OrientedLine: dimension mismatch");
    if ((q.b - p.b).norm() <= diag_tol)
        throw std::invalid_argument("OrientedLine: endpoints too close to the diagonal");
}

LineTangent::LineTangent(OrientedLine base, Vec x_part, Vec y_part, double tol)
    : at(std::move(base)), x(std::move(x_part)), y(std::move(y_part)) {
    if (x.size() != at.p.b.size() || y.size() != at.q.b.size())
        throw std::invalid_argument("LineTangent: dimension mismatch");
    if (std::abs(x.dot(at.p.b)) > tol || std::abs(y.dot(at.q.b)) > tol)
        throw std::invalid_argument("LineTangent: parts must be tangent to the sphere factors");
}

JacobiData::JacobiData(hyp::Geodesic g, const hyp::HTangent& j0, const hyp::HTangent& j0p,
                       double tol)
    : gamma(std::move(g)), J0(j0.v), J0p(j0p.v) {
    if (!j0.base.isApprox(gamma.X, 1e-9) || !j0p.base.isApprox(gamma.X, 1e-9))
        throw std::invalid_argument("JacobiData: data based off the geodesic start");
    if (std::abs(minkowski(J0, gamma.v)) > tol || std::abs(minkowski(J0p, gamma.v)) > tol)
        throw std::invalid_argument("JacobiData: data must be orthogonal to the velocity");
}

Vec reflection(const Vec& p, const Vec& q, const Vec& x) {
    const Vec d = p - q;
    const double len = d.norm();
    if (len <= 1e-12) throw std::invalid_argument("reflection: p and q coincide");
    const Vec u = d / len;
    return x - 2.0 * x.dot(u) * u;
}

double line_inner(const LineTangent& u, const LineTangent& w) {
    if (!u.at.p.b.isApprox(w.at.p.b, 1e-10) || !u.at.q.b.isApprox(w.at.q.b, 1e-10))
        throw std::invalid_argument("line_inner: tangents based at different lines");
    const double d2 = (u.at.q.b - u.at.p.b).squaredNorm();
    const double a = reflection(u.at.p.b, u.at.q.b, u.x).dot(w.y);
    const double b = reflection(u.at.p.b, u.at.q.b, w.x).dot(u.y);
    return 2.0 * (a + b) / d2;
}

OrientedLine line_of_geodesic(const hyp::Geodesic& g) {
    return OrientedLine(hyp::endpoint(g, -1), hyp::endpoint(g, +1));
}

namespace {

// d/dt of spatial(N)/temporal(N) for a null curve N(t).
Vec endpoint_rate(const Vec& N, const Vec& Ndot) {
    const auto m = N.size() - 1;
    return Ndot.tail(m) / N[0] - N.tail(m) * (Ndot[0] / (N[0] * N[0]));
}

Vec drop_normal(const Vec& b, const Vec& t) { return t - b.dot(t) * b; }

}  // namespace

hyp::Geodesic vary_geodesic(const JacobiData& jd, double t) {
    const Vec& X = jd.gamma.X;
    const Vec& v = jd.gamma.v;
    const Vec Xt = hyp::project_to_hyperboloid(X + t * jd.J0);
    Vec vt = v + t * (jd.J0p + minkowski(v, jd.J0) * X);
    vt += minkowski(vt, Xt) * Xt;          // project tangent at Xt
    vt /= std::sqrt(minkowski(vt, vt));    // unit speed
    hyp::HPoint pt(Xt);
    return hyp::Geodesic(pt, hyp::HTangent(pt, vt));
}

LineTangent push_line_tangent(const JacobiData& jd, PushMode mode) {
    OrientedLine base = line_of_geodesic(jd.gamma);

    if (mode == PushMode::FiniteDifference) {
        const double h = 1e-5;
        OrientedLine lp = line_of_geodesic(vary_geodesic(jd, h));
        OrientedLine lm = line_of_geodesic(vary_geodesic(jd, -h));
        Vec x = drop_normal(base.p.b, (lp.p.b - lm.p.b) / (2.0 * h));
        Vec y = drop_normal(base.q.b, (lp.q.b - lm.q.b) / (2.0 * h));
        return LineTangent(base, x, y, 1e-6);
    }

    const Vec& X = jd.gamma.X;
    const Vec& v = jd.gamma.v;
    const Vec Dv = jd.J0p + minkowski(jd.J0, v) * X;  // ambient velocity derivative
    Vec x = endpoint_rate(X - v, jd.J0 - Dv);
    Vec y = endpoint_rate(X + v, jd.J0 + Dv);
    x = drop_normal(base.p.b, x);
    y = drop_normal(base.q.b, y);
    return LineTangent(base, x, y);
}

double killing_norm(const JacobiData& jd) {
    return minkowski(jd.J0, jd.J0) - minkowski(jd.J0p, jd.J0p);
}

double killing_inner(const JacobiData& a, const JacobiData& b) {
    return minkowski(a.J0, b.J0) - minkowski(a.J0p, b.J0p);
}

}  // namespace geocalib::lines
