#include <doctest.h>

#include <cmath>

#include "geocalib/hyperbolic.hpp"
#include "geocalib/sampling.hpp"

using namespace geocalib;
using namespace geocalib::hyp;

namespace {

HPoint random_point(Rng& rng, int n) {
    return ball_to_hyperboloid(BallPoint(0.8 * rng.uniform() * rng.sphere_vector(n + 1)));
}

HTangent random_tangent(Rng& rng, const HPoint& X) {
    Vec v = rng.gaussian_vector(static_cast<int>(X.X.size()));
    v += minkowski(v, X.X) * X.X;
    return HTangent(X, v);
}

}  // namespace

TEST_CASE("ball and hyperboloid models round-trip") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 3;
        const HPoint X = random_point(rng, n);
        CHECK(minkowski(X.X, X.X) == doctest::Approx(-1.0).epsilon(1e-12));

        const BallPoint y = hyperboloid_to_ball(X);
        CHECK(ball_to_hyperboloid(y).X.isApprox(X.X, 1e-12));

        const HTangent w = random_tangent(rng, X);
        const auto [yb, dy] = hyperboloid_to_ball(X, w);
        const auto [Xb, wb] = ball_to_hyperboloid(yb, dy);
        CHECK(Xb.X.isApprox(X.X, 1e-12));
        CHECK(wb.v.isApprox(w.v, 1e-10));
    }
}

TEST_CASE("ball radius tanh(1/2) lies at hyperbolic distance 1") {
    Vec y = Vec::Zero(3);
    y[0] = std::tanh(0.5);
    const HPoint X = ball_to_hyperboloid(BallPoint(y));
    // cosh(dist to the basepoint) = -<X, E> with E the hyperboloid origin.
    CHECK(X.X[0] == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
}

TEST_CASE("geodesics are unit speed curves on the hyperboloid") {
    Rng rng(22);
    const HPoint X = random_point(rng, 2);
    const HTangent w = random_tangent(rng, X);
    const Geodesic g(X, HTangent(X, w.v / std::sqrt(minkowski(w.v, w.v))));
    for (const double s : {-3.0, -0.7, 0.0, 1.3, 4.0}) {
        const auto [p, v] = geodesic_eval(g, s);
        CHECK(minkowski(p.X, p.X) == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(minkowski(v.v, v.v) == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(minkowski(p.X, v.v) == doctest::Approx(0.0).epsilon(1e-11));
    }
}

TEST_CASE("endpoints of the axis through the origin") {
    Vec E(3), v(3);
    E << 1, 0, 0;
    v << 0, 1, 0;
    const HPoint X(E);
    const Geodesic g(X, HTangent(X, v));
    Vec plus(2), minus(2);
    plus << 1, 0;
    minus << -1, 0;
    CHECK(endpoint(g, +1).b.isApprox(plus, 1e-14));
    CHECK(endpoint(g, -1).b.isApprox(minus, 1e-14));

    // The endpoint only depends on the ray: same values further along.
    const auto [p1, v1] = geodesic_eval(g, 2.0);
    CHECK(endpoint(Geodesic(p1, v1), +1).b.isApprox(plus, 1e-12));
}

TEST_CASE("parallel transport preserves the minkowski product") {
    Rng rng(23);
    const HPoint X = random_point(rng, 2);
    HTangent u = random_tangent(rng, X);
    const Geodesic g(X, HTangent(X, u.v / std::sqrt(minkowski(u.v, u.v))));
    const HTangent a = random_tangent(rng, X), b = random_tangent(rng, X);
    for (const double s : {-2.0, 0.5, 3.0}) {
        const HTangent ta = parallel_transport(g, a, s);
        const HTangent tb = parallel_transport(g, b, s);
        CHECK(minkowski(ta.v, tb.v) == doctest::Approx(minkowski(a.v, b.v)).epsilon(1e-11));
        const auto [p, v] = geodesic_eval(g, s);
        CHECK(minkowski(ta.v, p.X) == doctest::Approx(0.0).epsilon(1e-10));
        // The velocity itself is parallel.
        CHECK(parallel_transport(g, HTangent(X, g.v), s).v.isApprox(v.v, 1e-11));
    }
}

TEST_CASE("jacobi fields: conserved quantity and finite-difference oracle") {
    Rng rng(24);
    const HPoint X = random_point(rng, 2);
    HTangent u = random_tangent(rng, X);
    const Vec vel = u.v / std::sqrt(minkowski(u.v, u.v));
    const Geodesic g(X, HTangent(X, vel));

    Vec j0 = random_tangent(rng, X).v, j0p = random_tangent(rng, X).v;
    j0 -= minkowski(j0, vel) * vel;
    j0p -= minkowski(j0p, vel) * vel;
    const HTangent J0(X, j0), J0p(X, j0p);

    const double conserved = minkowski(j0, j0) - minkowski(j0p, j0p);
    for (const double s : {-5.0, -1.0, 2.0, 5.0}) {
        const auto [J, Jp] = jacobi_eval(g, J0, J0p, s);
        CHECK(minkowski(J.v, J.v) - minkowski(Jp.v, Jp.v) ==
              doctest::Approx(conserved).epsilon(1e-9));
    }

    // d/ds at 0 of J recovers J0p + <J0,v> v ... both orthogonal here, so J0p.
    const double h = 1e-6;
    const auto [Jph, _1] = jacobi_eval(g, J0, J0p, h);
    const auto [Jmh, _2] = jacobi_eval(g, J0, J0p, -h);
    CHECK(((Jph.v - Jmh.v) / (2.0 * h)).isApprox(j0p, 1e-8));
}

TEST_CASE("covariant derivative: analytic and finite-difference modes agree") {
    Rng rng(25);
    UnitField field;
    // V(X) = normalized projection of the constant field e2 onto T_X H.
    field.value = [](const Vec& X) {
        Vec e2 = Vec::Unit(static_cast<int>(X.size()), 2);
        Vec v = e2 + minkowski(e2, X) * X;
        return Vec(v / std::sqrt(minkowski(v, v)));
    };
    for (int trial = 0; trial < 20; ++trial) {
        const HPoint X = random_point(rng, 2);
        const HTangent w = random_tangent(rng, X);
        const HTangent d = covariant_derivative(field, X, w, DerivMode::FiniteDifference);
        // Tangency and metric compatibility (|V| = 1 implies <nabla V, V> = 0).
        CHECK(std::abs(minkowski(d.v, X.X)) <= 1e-9);
        CHECK(std::abs(minkowski(d.v, field.value(X.X))) <= 1e-7);
    }
}

TEST_CASE("reference hypersurface footpoint data") {
    Rng rng(26);
    for (int trial = 0; trial < 20; ++trial) {
        const HPoint X = random_point(rng, 2);
        const FootpointData fd = reference_hypersurface(X);
        CHECK(fd.foot.X[1] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(fd.s == doctest::Approx(std::asinh(X.X[1])).epsilon(1e-12));
        CHECK(minkowski(fd.normal.v, fd.normal.v) == doctest::Approx(1.0).epsilon(1e-12));
        // The normal is based at X; walking back by s lands on the foot.
        const auto [back, unused] = geodesic_eval(Geodesic(X, fd.normal), -fd.s);
        CHECK(back.X.isApprox(fd.foot.X, 1e-10));
    }
}

TEST_CASE("model validation rejects off-sheet data") {
    Vec bad(3);
    bad << 1, 1, 1;
    CHECK_THROWS(HPoint(bad));
    Vec E(3), notangent(3);
    E << 1, 0, 0;
    notangent << 1, 0, 0;
    CHECK_THROWS(HTangent(HPoint(E), notangent));
    Vec offsphere(2);
    offsphere << 0.5, 0;
    CHECK_THROWS(BoundaryPoint(offsphere));
}
