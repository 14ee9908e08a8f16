#include <doctest.h>

#include <cmath>
#include <numbers>

#include "geocalib/psi_calibration.hpp"
#include "geocalib/sampling.hpp"
#include "geocalib/suites.hpp"

using namespace geocalib;
using namespace geocalib::calib;

namespace {

quad::QuadratureGrid grid_of(int resolution) {
    quad::QuadratureGrid g;
    g.resolution = resolution;
    return g;
}

}  // namespace

TEST_CASE("theta is the round volume form") {
    // S^1 at p = (1, 0) with the counterclockwise tangent.
    Vec p(2), w(2);
    p << 1, 0;
    w << 0, 1;
    CHECK(theta_eval(p, {w}) == doctest::Approx(1.0));
    CHECK(theta_eval(p, {Vec(-w)}) == doctest::Approx(-1.0));
    CHECK(theta_eval(p, {Vec(3.0 * w)}) == doctest::Approx(3.0));

    // S^2: oriented basis at the north pole.
    Vec n(3);
    n << 0, 0, 1;
    CHECK(theta_eval(n, {Vec(Vec::Unit(3, 0)), Vec(Vec::Unit(3, 1))}) == doctest::Approx(1.0));

    // Non-tangent arguments are rejected.
    CHECK_THROWS(theta_eval(p, {p}));
}

TEST_CASE("psi equals one on the orthonormalized tangent frames of M_0") {
    for (int n = 1; n <= 3; ++n) {
        const ChartizedSubmanifold m0 = mo_chart(n, 1.0);
        Rng rng(51);
        for (int trial = 0; trial < 10; ++trial) {
            const Vec u = std::sinh(1.0) * rng.uniform() * rng.sphere_vector(n);
            const auto frame = suites::orthonormalize(m0.differential(u));
            CHECK(std::abs(psi_eval(m0.map(u), frame)) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(calib_constants(m0.map(u)).C == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("frame A is a seeded isometry and pulls psi back to C phi_c") {
    Rng rng(52);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 3;
        const lines::OrientedLine line = suites::sample_line(n, rng, 0.05);
        const FrameA A = frame_A(line, 77 + trial);

        // Images of the split null basis have inner products <Ae_i, Af_j> = delta_ij / 2.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(lines::line_inner(A.e_images[i], A.e_images[j]) ==
                      doctest::Approx(0.0).epsilon(1e-12));
                CHECK(lines::line_inner(A.f_images[i], A.f_images[j]) ==
                      doctest::Approx(0.0).epsilon(1e-12));
                CHECK(lines::line_inner(A.e_images[i], A.f_images[j]) ==
                      doctest::Approx(i == j ? 0.5 : 0.0).epsilon(1e-12));
            }

        const CalibConstants cc = calib_constants(line);
        std::vector<split::SplitVector> blade(n);
        for (int i = 0; i < n; ++i) {
            blade[i].x = rng.uniform_vector(n, -1.0, 1.0);
            blade[i].y = rng.uniform_vector(n, -1.0, 1.0);
        }
        CHECK(psi_eval(line, apply_frame(A, blade)) ==
              doctest::Approx(cc.C * split::phi_c_eval(cc.c, blade)).epsilon(1e-10));
    }
}

TEST_CASE("the constant C") {
    // C = 1 exactly on the graph of T, strictly above away from it.
    Rng rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 3;
        const lines::OrientedLine line = suites::sample_line(n, rng);
        CHECK(calib_constants(line).C >= 1.0 - 1e-12);

        Vec tp = line.p.b;
        tp[0] = -tp[0];
        const lines::OrientedLine graph(line.p, hyp::BoundaryPoint(tp));
        CHECK(calib_constants(graph).C == doctest::Approx(1.0).epsilon(1e-13));
        if ((line.q.b - tp).norm() > 1e-3) CHECK(calib_constants(line).C > 1.0 + 1e-10);
    }

    Vec p(2), q(2);
    p << -1, 0;
    q << std::sqrt(0.5), std::sqrt(0.5);
    const auto cc = calib_constants(lines::OrientedLine(hyp::BoundaryPoint(p), hyp::BoundaryPoint(q)));
    CHECK(cc.C == doctest::Approx(1.09869).epsilon(1e-5));
    CHECK(cc.c == doctest::Approx(std::pow(std::sqrt(0.5), 0.5) / 1.0).epsilon(1e-12));
}

TEST_CASE("region volumes match the closed-form hyperbolic ball volumes") {
    const auto grid = grid_of(17);
    for (int n = 1; n <= 2; ++n) {
        for (const double R : {0.5, 1.0}) {
            const double vol = region_volume(mo_chart(n, R), grid);
            CHECK(vol == doctest::Approx(suites::hyperbolic_ball_volume(n, R)).epsilon(1e-8));
        }
    }
    // n = 1, R = 1: the region is a geodesic segment of length 2.
    CHECK(region_volume(mo_chart(1, 1.0), grid) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("flux equals volume on the calibrated reference chart") {
    const auto grid = grid_of(17);
    for (int n = 1; n <= 2; ++n) {
        const ChartizedSubmanifold m0 = mo_chart(n, 1.0);
        CHECK(psi_flux(m0, grid) == doctest::Approx(region_volume(m0, grid)).epsilon(1e-12));
    }
}

TEST_CASE("flux is odd under orientation reversal and invariant under reparametrization") {
    const int n = 2;
    const auto grid = grid_of(17);
    const ChartizedSubmanifold m0 = mo_chart(n, 1.0);
    const double flux = psi_flux(m0, grid);

    ChartizedSubmanifold reversed = m0;
    reversed.orientation = -m0.orientation;
    CHECK(psi_flux(reversed, grid) == doctest::Approx(-flux));

    // Linear reparametrization u -> 2u of the same region.
    ChartizedSubmanifold half;
    half.domain = quad::Domain::ball(n, 0.5 * m0.domain.radius);
    half.map = [m0](const Vec& u) { return m0.map(Vec(2.0 * u)); };
    half.differential = [m0](const Vec& u) {
        auto d = m0.differential(Vec(2.0 * u));
        for (auto& t : d) {
            t.x *= 2.0;
            t.y *= 2.0;
        }
        return d;
    };
    half.orientation = m0.orientation;
    CHECK(psi_flux(half, grid) == doctest::Approx(flux).epsilon(1e-10));
    CHECK(region_volume(half, grid) == doctest::Approx(region_volume(m0, grid)).epsilon(1e-10));
}

TEST_CASE("perturbed charts reduce to the reference at zero amplitude") {
    const int n = 2;
    const auto grid = grid_of(13);
    const PerturbationSpec spec = default_perturbation(n, 0.0);
    const ChartizedSubmanifold pert = perturb_mo(spec, grid);
    const ChartizedSubmanifold m0 = mo_chart(n, spec.collar_radius);
    Rng rng(54);
    for (int trial = 0; trial < 10; ++trial) {
        const Vec u = 0.9 * pert.domain.radius * rng.uniform() * rng.sphere_vector(n);
        CHECK(pert.map(u).p.b.isApprox(m0.map(u).p.b, 1e-12));
        CHECK(pert.map(u).q.b.isApprox(m0.map(u).q.b, 1e-12));
    }
    CHECK(region_volume(pert, grid) ==
          doctest::Approx(region_volume(m0, grid)).epsilon(1e-12));
}

TEST_CASE("perturbations are supported inside the bump radius") {
    const int n = 2;
    const auto grid = grid_of(13);
    const PerturbationSpec spec = default_perturbation(n, 0.08);
    const ChartizedSubmanifold pert = perturb_mo(spec, grid);
    const ChartizedSubmanifold m0 = mo_chart(n, spec.collar_radius);

    // Outside the support the perturbed chart coincides with the reference.
    Vec far = Vec::Zero(n);
    far[0] = std::sinh(1.5 * spec.support_radius);
    CHECK(pert.map(far).q.b.isApprox(m0.map(far).q.b, 1e-12));

    // Inside it genuinely moves the forward endpoint.
    const Vec near = Vec::Zero(n);
    CHECK((pert.map(near).q.b - m0.map(near).q.b).norm() > 1e-4);
    CHECK(pert.map(near).p.b.isApprox(m0.map(near).p.b, 1e-12));
}

TEST_CASE("maximization report certifies the volume bound") {
    for (const int n : {1, 2}) {
        const auto grid = grid_of(n == 1 ? 64 : 24);
        const VolumeReport rep = maximization_report(default_perturbation(n, 0.05), grid);
        CHECK(rep.spacelike_ok);
        CHECK(rep.pointwise_min_ratio >= 1.0 - 1e-10);
        CHECK(rep.vol_competitor <= rep.vol_reference + 1e-8);
        CHECK(rep.flux_reference == doctest::Approx(rep.vol_reference).epsilon(1e-10));
        CHECK(rep.epsilon == doctest::Approx(0.05));
    }
}

TEST_CASE("psi rejects lines touching the equators") {
    Vec p(3), q(3);
    p << 0, 1, 0;
    q << 0, 0, 1;
    const lines::OrientedLine line{hyp::BoundaryPoint(p), hyp::BoundaryPoint(q)};
    std::vector<lines::LineTangent> frame;
    Vec x(3), y(3);
    x << 0, 0, 1;
    y << 0, 1, 0;
    frame.emplace_back(line, x, y);
    frame.emplace_back(line, Vec(Vec::Unit(3, 0)), Vec(Vec::Unit(3, 0)));
    CHECK_THROWS(psi_eval(line, frame));
}
