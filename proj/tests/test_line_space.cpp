#include <doctest.h>

#include <cmath>

#include "geocalib/line_space.hpp"
#include "geocalib/sampling.hpp"

using namespace geocalib;
using namespace geocalib::lines;

namespace {

hyp::Geodesic random_geodesic(Rng& rng, int n) {
    const hyp::HPoint X =
        hyp::ball_to_hyperboloid(hyp::BallPoint(0.7 * rng.uniform() * rng.sphere_vector(n + 1)));
    Vec v = rng.gaussian_vector(n + 2);
    v += hyp::minkowski(v, X.X) * X.X;
    v /= std::sqrt(hyp::minkowski(v, v));
    return hyp::Geodesic(X, hyp::HTangent(X, v));
}

int n_dim(const hyp::Geodesic& g) { return static_cast<int>(g.X.size()); }

JacobiData random_jacobi(Rng& rng, const hyp::Geodesic& g) {
    const hyp::HPoint X = g.point();
    auto project = [&](Vec j) {
        j += hyp::minkowski(j, X.X) * X.X;
        j -= hyp::minkowski(j, g.v) * g.v;
        return j;
    };
    return JacobiData(g, hyp::HTangent(X, project(rng.gaussian_vector(n_dim(g)))),
                      hyp::HTangent(X, project(rng.gaussian_vector(n_dim(g)))));
}

}  // namespace

TEST_CASE("reflection is an involutive isometry exchanging the endpoints") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec p = rng.sphere_vector(3), q = rng.sphere_vector(3);
        if ((q - p).norm() < 1e-3) continue;
        const Vec x = rng.gaussian_vector(3);
        CHECK(reflection(p, q, reflection(p, q, x)).isApprox(x, 1e-12));
        CHECK(reflection(p, q, x).norm() == doctest::Approx(x.norm()).epsilon(1e-12));
        CHECK(reflection(p, q, p).isApprox(q, 1e-12));
        CHECK(reflection(p, q, q).isApprox(p, 1e-12));
    }
}

TEST_CASE("line of a geodesic records both endpoints") {
    Rng rng(32);
    const hyp::Geodesic g = random_geodesic(rng, 2);
    const OrientedLine line = line_of_geodesic(g);
    CHECK(line.p.b.isApprox(hyp::endpoint(g, -1).b, 1e-12));
    CHECK(line.q.b.isApprox(hyp::endpoint(g, +1).b, 1e-12));
    // Reparametrizing the geodesic does not change its line.
    const auto [p1, v1] = hyp::geodesic_eval(g, 1.7);
    const OrientedLine same = line_of_geodesic(hyp::Geodesic(p1, v1));
    CHECK(same.p.b.isApprox(line.p.b, 1e-10));
    CHECK(same.q.b.isApprox(line.q.b, 1e-10));
}

TEST_CASE("push norms on the standard H^2 axis") {
    Vec E(3), v(3), e(3);
    E << 1, 0, 0;
    v << 0, 1, 0;
    e << 0, 0, 1;
    const hyp::HPoint X(E);
    const hyp::Geodesic g(X, hyp::HTangent(X, v));
    const Vec zero = Vec::Zero(3);

    // Pure J0: positive unit norm, equal endpoint rates.
    const LineTangent a =
        push_line_tangent(JacobiData(g, hyp::HTangent(X, e), hyp::HTangent(X, zero)));
    Vec up(2);
    up << 0, 1;
    CHECK(a.x.isApprox(up, 1e-14));
    CHECK(a.y.isApprox(up, 1e-14));
    CHECK(line_inner(a, a) == doctest::Approx(1.0));

    // Pure J0': negative unit norm, opposite endpoint rates.
    const LineTangent b =
        push_line_tangent(JacobiData(g, hyp::HTangent(X, zero), hyp::HTangent(X, e)));
    CHECK(b.x.isApprox(-up, 1e-14));
    CHECK(b.y.isApprox(up, 1e-14));
    CHECK(line_inner(b, b) == doctest::Approx(-1.0));
}

TEST_CASE("analytic and finite-difference pushes agree") {
    Rng rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 3;
        const hyp::Geodesic g = random_geodesic(rng, n);
        const JacobiData jd = random_jacobi(rng, g);
        const LineTangent pa = push_line_tangent(jd, PushMode::Analytic);
        const LineTangent pf = push_line_tangent(jd, PushMode::FiniteDifference);
        CHECK((pa.x - pf.x).norm() <= 1e-6 * (1.0 + pa.x.norm()));
        CHECK((pa.y - pf.y).norm() <= 1e-6 * (1.0 + pa.y.norm()));
    }
}

TEST_CASE("push is an isometry onto the split metric") {
    Rng rng(34);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 3;
        const hyp::Geodesic g = random_geodesic(rng, n);
        const JacobiData a = random_jacobi(rng, g), b = random_jacobi(rng, g);
        const LineTangent pa = push_line_tangent(a), pb = push_line_tangent(b);
        CHECK(line_inner(pa, pa) == doctest::Approx(killing_norm(a)).epsilon(1e-10));
        CHECK(line_inner(pa, pb) == doctest::Approx(killing_inner(a, b)).epsilon(1e-10));
    }
}

TEST_CASE("pushed tangent is independent of the base point along the leaf") {
    Rng rng(35);
    const hyp::Geodesic g = random_geodesic(rng, 2);
    const JacobiData jd = random_jacobi(rng, g);
    const LineTangent at0 = push_line_tangent(jd);

    // Slide the Jacobi data along the geodesic and push from there.
    const double s = 1.3;
    const auto [Xs, vs] = hyp::geodesic_eval(g, s);
    const hyp::Geodesic gs(Xs, vs);
    const auto [J, Jp] = hyp::jacobi_eval(g, hyp::HTangent(g.point(), jd.J0),
                                          hyp::HTangent(g.point(), jd.J0p), s);
    const LineTangent ats = push_line_tangent(JacobiData(gs, J, Jp));
    CHECK(ats.x.isApprox(at0.x, 1e-9));
    CHECK(ats.y.isApprox(at0.y, 1e-9));
}

TEST_CASE("diagonal pairs are rejected") {
    Vec b(3);
    b << 1, 0, 0;
    CHECK_THROWS(OrientedLine(hyp::BoundaryPoint(b), hyp::BoundaryPoint(b)));
}
