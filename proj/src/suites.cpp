#include "geocalib/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "geocalib/sampling.hpp"

namespace geocalib::suites {

using report::Check;
using report::check_ge;
using report::check_le;
using report::check_true;

quad::QuadratureGrid default_grid(int n, std::uint64_t seed) {
    quad::QuadratureGrid grid;
    grid.resolution = n <= 2 ? 17 : 9;
    grid.seed = seed;
    return grid;
}

lines::OrientedLine sample_line(int n, Rng& rng, double hemisphere_margin) {
    while (true) {
        Vec p = rng.sphere_vector(n + 1);
        Vec q = rng.sphere_vector(n + 1);
        p[0] = -std::abs(p[0]);
        q[0] = std::abs(q[0]);
        if (std::abs(p[0]) <= hemisphere_margin || std::abs(q[0]) <= hemisphere_margin) continue;
        if ((q - p).norm() <= 1e-6) continue;
        return lines::OrientedLine(hyp::BoundaryPoint(p), hyp::BoundaryPoint(q));
    }
}

hyp::Geodesic sample_geodesic(int n, Rng& rng) {
    const Vec y = 0.7 * rng.uniform() * rng.sphere_vector(n + 1);
    const hyp::HPoint X = hyp::ball_to_hyperboloid(hyp::BallPoint(y));
    Vec v = rng.gaussian_vector(n + 2);
    v += hyp::minkowski(v, X.X) * X.X;
    v /= std::sqrt(hyp::minkowski(v, v));
    return hyp::Geodesic(X, hyp::HTangent(X, v));
}

lines::JacobiData sample_jacobi(const hyp::Geodesic& g, Rng& rng) {
    const hyp::HPoint X = g.point();
    const std::vector<Vec> basis = fol::tangent_complement_basis(X, g.v);
    Vec j0 = Vec::Zero(X.X.size()), j0p = Vec::Zero(X.X.size());
    for (const Vec& b : basis) {
        j0 += rng.uniform(-2.0, 2.0) * b;
        j0p += rng.uniform(-2.0, 2.0) * b;
    }
    return lines::JacobiData(g, hyp::HTangent(X, j0), hyp::HTangent(X, j0p));
}

std::vector<lines::LineTangent> orthonormalize(const std::vector<lines::LineTangent>& frame) {
    std::vector<lines::LineTangent> out;
    out.reserve(frame.size());
    for (lines::LineTangent t : frame) {
        for (const lines::LineTangent& e : out) {
            const double c = lines::line_inner(t, e);
            t.x -= c * e.x;
            t.y -= c * e.y;
        }
        const double norm2 = lines::line_inner(t, t);
        if (norm2 <= 0.0)
            throw std::invalid_argument("orthonormalize: frame is not space-like");
        const double inv = 1.0 / std::sqrt(norm2);
        t.x *= inv;
        t.y *= inv;
        out.push_back(std::move(t));
    }
    return out;
}

double hyperbolic_ball_volume(int n, double R) {
    switch (n) {
        case 1: return 2.0 * R;
        case 2: return 2.0 * std::numbers::pi * (std::cosh(R) - 1.0);
        case 3: return 2.0 * std::numbers::pi * (std::sinh(R) * std::cosh(R) - R);
        default: throw std::invalid_argument("hyperbolic_ball_volume: n must be <= 3");
    }
}

// ---------------------------------------------------------------------------
// check-phic

std::vector<Check> check_phic(const SuiteConfig& cfg) {
    const int n = cfg.n;
    const InnerProduct split_ip = split::split_inner_product(n);
    Rng rng(cfg.seed);

    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_equality = 0.0;
    double worst_defect = 0.0;
    double worst_scaling = 0.0;
    int spacelike_count = 0;

    for (int k = 0; k < cfg.planes; ++k) {
        const double c = std::pow(10.0, rng.uniform(-1.0, 1.0));
        const auto plane = split::sample_spacelike_graph(cfg.seed * 1000003 + k, n, 0.01);
        const auto blade = split::graph_plane_blade(plane);
        const auto gv = gram_volume(split::embed(blade), split_ip);
        if (gv.causal_class == CausalClass::Spacelike) ++spacelike_count;

        const double phi = split::phi_c_eval(c, blade);
        if (phi > 0.0) worst_margin = std::min(worst_margin, phi - gv.volume);

        // Equality: symmetric positive definite A with det A = c^2.
        const auto sym = split::sample_spacelike_graph(cfg.seed * 2000003 + k, n, 0.01, true);
        const double det = sym.A.determinant();
        const auto sym_blade = split::graph_plane_blade(sym);
        const double ceq = std::sqrt(det);
        const double phi_eq = split::phi_c_eval(ceq, sym_blade);
        const double vol_eq = gram_volume(split::embed(sym_blade), split_ip).volume;
        worst_equality = std::max(worst_equality, std::abs(phi_eq - vol_eq));
        worst_defect = std::max(worst_defect,
                                std::abs(split::special_lagrangian_defect(ceq, sym_blade)));

        // Multilinearity: scaling all vectors by t scales phi_c by t^n.
        if (k < 64) {
            const double t = rng.uniform(0.5, 2.0);
            auto scaled = blade;
            for (auto& v : scaled) {
                v.x *= t;
                v.y *= t;
            }
            worst_scaling = std::max(
                worst_scaling,
                std::abs(split::phi_c_eval(c, scaled) - std::pow(t, n) * phi) /
                    (1.0 + std::abs(phi)));
        }
    }

    std::vector<Check> checks;
    checks.push_back(check_true("phic/sampled_planes_spacelike", spacelike_count == cfg.planes));
    checks.push_back(check_ge("phic/calibration_margin_min", worst_margin, -1e-10));
    checks.push_back(check_le("phic/equality_case_gap_max", worst_equality, 1e-9));
    checks.push_back(check_le("phic/equality_case_sl_defect_max", worst_defect, 1e-6));
    checks.push_back(check_le("phic/scaling_relative_error_max", worst_scaling, 1e-12));
    return checks;
}

// ---------------------------------------------------------------------------
// check-isometry

std::vector<Check> check_isometry(const SuiteConfig& cfg) {
    Rng rng(cfg.seed);
    double worst_analytic = 0.0, worst_fd = 0.0, worst_polarized = 0.0;

    for (int k = 0; k < cfg.isometry_pairs; ++k) {
        const hyp::Geodesic g = sample_geodesic(cfg.n, rng);
        const lines::JacobiData jd = sample_jacobi(g, rng);
        const double expected = lines::killing_norm(jd);

        const lines::LineTangent pa = lines::push_line_tangent(jd, lines::PushMode::Analytic);
        const lines::LineTangent pf =
            lines::push_line_tangent(jd, lines::PushMode::FiniteDifference);
        worst_analytic = std::max(worst_analytic, std::abs(lines::line_inner(pa, pa) - expected));
        worst_fd = std::max(worst_fd, std::abs(lines::line_inner(pf, pf) - expected));

        const lines::JacobiData jd2 = sample_jacobi(g, rng);
        const lines::LineTangent pb = lines::push_line_tangent(jd2, lines::PushMode::Analytic);
        worst_polarized = std::max(
            worst_polarized, std::abs(lines::line_inner(pa, pb) - lines::killing_inner(jd, jd2)));
    }

    std::vector<Check> checks;
    checks.push_back(check_le("isometry/analytic_error_max", worst_analytic, 1e-9));
    checks.push_back(check_le("isometry/finite_difference_error_max", worst_fd, 1e-6));
    checks.push_back(check_le("isometry/polarized_error_max", worst_polarized, 1e-9));

    // Recorded H^2 hand examples (independent of cfg.n).
    {
        Vec X(3), v(3), E(3);
        X << 1, 0, 0;
        v << 0, 1, 0;
        E << 0, 0, 1;
        hyp::HPoint p(X);
        hyp::Geodesic g(p, hyp::HTangent(p, v));
        const Vec zero = Vec::Zero(3);

        lines::LineTangent t1 = lines::push_line_tangent(
            lines::JacobiData(g, hyp::HTangent(p, E), hyp::HTangent(p, zero)));
        Vec e1(2);
        e1 << 0, 1;
        const bool parts1 = t1.x.isApprox(e1, 1e-12) && t1.y.isApprox(e1, 1e-12);
        checks.push_back(check_true("isometry/h2_example_plus_parts", parts1));
        checks.push_back(
            check_le("isometry/h2_example_plus_norm_error",
                     std::abs(lines::line_inner(t1, t1) - 1.0), 1e-12));

        lines::LineTangent t2 = lines::push_line_tangent(
            lines::JacobiData(g, hyp::HTangent(p, zero), hyp::HTangent(p, E)));
        const bool parts2 = t2.x.isApprox(-e1, 1e-12) && t2.y.isApprox(e1, 1e-12);
        checks.push_back(check_true("isometry/h2_example_minus_parts", parts2));
        checks.push_back(
            check_le("isometry/h2_example_minus_norm_error",
                     std::abs(lines::line_inner(t2, t2) + 1.0), 1e-12));
    }
    return checks;
}

// ---------------------------------------------------------------------------
// check-psi

namespace {

std::vector<split::SplitVector> random_split_blade(int n, Rng& rng) {
    std::vector<split::SplitVector> blade(n);
    for (int i = 0; i < n; ++i) {
        blade[i].x = rng.uniform_vector(n, -1.0, 1.0);
        blade[i].y = rng.uniform_vector(n, -1.0, 1.0);
    }
    return blade;
}

Vec tangent_at(const Vec& b, Rng& rng) {
    Vec x = rng.gaussian_vector(static_cast<int>(b.size()));
    x -= x.dot(b) * b;
    return x;
}

}  // namespace

std::vector<Check> check_psi(const SuiteConfig& cfg) {
    const int n = cfg.n;
    Rng rng(cfg.seed);
    std::vector<Check> checks;

    // Pullback identity A*psi = C phi_c on arbitrary blades.
    {
        double worst = 0.0, worst_iso = 0.0;
        for (int k = 0; k < cfg.pullback_pairs; ++k) {
            const lines::OrientedLine line = sample_line(n, rng, 0.05);
            const calib::FrameA A = calib::frame_A(line, cfg.seed * 3000017 + k);
            const calib::CalibConstants cc = calib::calib_constants(line);
            const auto blade = random_split_blade(n, rng);
            const double lhs = calib::psi_eval(line, calib::apply_frame(A, blade));
            const double rhs = cc.C * split::phi_c_eval(cc.c, blade);
            worst = std::max(worst, std::abs(lhs - rhs));

            // A is an isometry: split pairing of random vectors is preserved.
            split::SplitVector u{rng.uniform_vector(n, -1.0, 1.0), rng.uniform_vector(n, -1.0, 1.0)};
            split::SplitVector w{rng.uniform_vector(n, -1.0, 1.0), rng.uniform_vector(n, -1.0, 1.0)};
            worst_iso = std::max(
                worst_iso, std::abs(lines::line_inner(calib::apply_frame(A, u),
                                                      calib::apply_frame(A, w)) -
                                    split::split_inner(u, w)));
        }
        checks.push_back(check_le("psi/pullback_identity_error_max", worst, 1e-9));
        checks.push_back(check_le("psi/frame_isometry_error_max", worst_iso, 1e-10));
    }

    // The constant C.
    {
        double c_min = std::numeric_limits<double>::infinity();
        double c_on_graph_max = 0.0;
        double c_off_graph_min = std::numeric_limits<double>::infinity();
        for (long k = 0; k < cfg.c_lines; ++k) {
            const lines::OrientedLine line = sample_line(n, rng);
            const double C = calib::calib_constants(line).C;
            c_min = std::min(c_min, C);
            const Vec Tp = lines::reflection(Vec::Unit(n + 1, 0), -Vec::Unit(n + 1, 0), line.p.b);
            if ((line.q.b - Tp).norm() > 1e-3) c_off_graph_min = std::min(c_off_graph_min, C);

            if (k < 1000) {
                lines::OrientedLine graph(line.p, hyp::BoundaryPoint(Tp));
                c_on_graph_max =
                    std::max(c_on_graph_max, std::abs(calib::calib_constants(graph).C - 1.0));
            }
        }
        checks.push_back(check_ge("psi/C_min", c_min, 1.0 - 1e-12));
        checks.push_back(check_le("psi/C_on_graph_of_T_error_max", c_on_graph_max, 1e-12));
        checks.push_back(check_ge("psi/C_off_graph_min", c_off_graph_min, 1.0 + 1e-10));

        if (n == 1) {
            Vec p(2), q(2);
            p << -1, 0;
            q << std::sqrt(0.5), std::sqrt(0.5);
            const auto cc = calib::calib_constants(
                lines::OrientedLine(hyp::BoundaryPoint(p), hyp::BoundaryPoint(q)));
            checks.push_back(check_le("psi/C_spot_value_error", std::abs(cc.C - 1.09869), 1e-5));
        }
    }

    // M_0 is calibrated; its region volume matches the closed form.
    if (n <= 3) {
        const double R = 1.0;
        const calib::ChartizedSubmanifold m0 = calib::mo_chart(n, R);
        const auto nodes = quad::make_nodes(m0.domain, cfg.grid);
        double worst_psi = 0.0, worst_c = 0.0;
        for (const auto& node : nodes) {
            const auto line = m0.map(node.u);
            const auto frame = orthonormalize(m0.differential(node.u));
            worst_psi = std::max(worst_psi, std::abs(std::abs(calib::psi_eval(line, frame)) - 1.0));
            worst_c = std::max(worst_c, std::abs(calib::calib_constants(line).C - 1.0));
        }
        checks.push_back(check_le("psi/m0_calibrated_error_max", worst_psi, 1e-10));
        checks.push_back(check_le("psi/m0_C_equals_one_error_max", worst_c, 1e-12));

        const double vol = calib::region_volume(m0, cfg.grid);
        const double oracle = hyperbolic_ball_volume(n, R);
        checks.push_back(
            check_le("psi/m0_volume_relative_error", std::abs(vol - oracle) / oracle, 1e-5));
        checks.push_back(check_le("psi/m0_flux_equals_volume_relative_error",
                                  std::abs(calib::psi_flux(m0, cfg.grid) - vol) / vol, 1e-8));

        quad::QuadratureGrid fine = cfg.grid;
        fine.resolution *= 2;
        checks.push_back(check_le("psi/m0_volume_grid_refinement_relative_delta",
                                  std::abs(calib::region_volume(m0, fine) - vol) / vol, 1e-8));
    }

    // Calibration inequality on random space-like blades, two generators.
    {
        double worst = std::numeric_limits<double>::infinity();
        int accepted = 0;
        for (int k = 0; k < cfg.calibration_blades; ++k) {
            const lines::OrientedLine line = sample_line(n, rng, 0.05);

            // Generator 1: A-images of sampled space-like graph planes.
            {
                const calib::FrameA A = calib::frame_A(line, cfg.seed * 5000011 + k);
                const auto plane = split::sample_spacelike_graph(cfg.seed * 7000003 + k, n, 0.01);
                auto blade = calib::apply_frame(A, split::graph_plane_blade(plane));
                double value = calib::psi_eval(line, blade);
                if (value < 0.0) {
                    blade.front().x *= -1.0;
                    blade.front().y *= -1.0;
                    value = -value;
                }
                const double vol = std::sqrt(calib::chart_gram(blade).determinant());
                if (value > 0.0) {
                    worst = std::min(worst, value - vol);
                    ++accepted;
                }
            }

            // Generator 2: rejection sampling of raw tangent pairs.
            for (int attempt = 0; attempt < 200; ++attempt) {
                std::vector<lines::LineTangent> blade;
                blade.reserve(n);
                for (int i = 0; i < n; ++i)
                    blade.emplace_back(line, tangent_at(line.p.b, rng), tangent_at(line.q.b, rng));
                const Mat g = calib::chart_gram(blade);
                bool pd = true;
                for (int m = 1; m <= n; ++m)
                    if (g.topLeftCorner(m, m).determinant() <= 1e-12) {
                        pd = false;
                        break;
                    }
                if (!pd) continue;
                double value = calib::psi_eval(line, blade);
                if (value < 0.0) {
                    blade.front().x *= -1.0;
                    blade.front().y *= -1.0;
                    value = -value;
                }
                if (value > 0.0) {
                    worst = std::min(worst, value - std::sqrt(g.determinant()));
                    ++accepted;
                }
                break;
            }
        }
        checks.push_back(check_ge("psi/calibration_inequality_margin_min", worst, -1e-9));
        checks.push_back(check_true("psi/calibration_inequality_samples",
                                    accepted >= cfg.calibration_blades));
    }

    return checks;
}

// ---------------------------------------------------------------------------
// ter

std::vector<Check> check_ter(const SuiteConfig& cfg) {
    const int n = cfg.n;
    std::vector<Check> checks;

    Vec center_coords = Vec::Zero(n + 2);
    center_coords[0] = 1.0;
    const hyp::HPoint center(center_coords);

    const auto vo = fol::orthogeodesic_field(n);
    const auto vb = fol::horospherical_field(hyp::BoundaryPoint(Vec::Unit(n + 1, 0)));

    // t.e.r. margins against the closed-form shape operators.
    for (const double R : {0.5, 1.0, 2.0}) {
        const auto samples = fol::hyperbolic_ball_samples(center, R, 2 * (n + 1) + 8, 6, cfg.seed);
        const auto report = fol::ter_margin(vo, samples, hyp::DerivMode::FiniteDifference);
        char name[64];
        std::snprintf(name, sizeof(name), "ter/orthogeodesic_margin_error_R%.1f", R);
        checks.push_back(check_le(name, std::abs(report.margin - std::tanh(R)), 1e-4));
        std::snprintf(name, sizeof(name), "ter/orthogeodesic_is_ter_R%.1f", R);
        checks.push_back(check_true(name, report.is_ter));
    }
    {
        const auto samples = fol::hyperbolic_ball_samples(center, 1.0, 2 * (n + 1) + 8, 6, cfg.seed);
        const auto report = fol::ter_margin(vb, samples, hyp::DerivMode::FiniteDifference);
        checks.push_back(check_le("ter/horospherical_margin_error", std::abs(report.margin - 1.0), 1e-4));
        checks.push_back(check_true("ter/horospherical_not_ter", !report.is_ter));
    }

    // Geodesic-field residuals (finite-difference oracle).
    {
        const auto samples = fol::hyperbolic_ball_samples(center, 1.5, 2 * (n + 1) + 6, 4, cfg.seed + 1);
        checks.push_back(check_le(
            "ter/orthogeodesic_residual",
            fol::geodesic_field_residual(vo, samples, hyp::DerivMode::FiniteDifference), 1e-6));
        checks.push_back(check_le(
            "ter/horospherical_residual",
            fol::geodesic_field_residual(vb, samples, hyp::DerivMode::FiniteDifference), 1e-6));

        // Deliberate non-example: a pointwise-rotated field is not geodesic.
        fol::CustomFieldParams params;
        params.center = Vec::Zero(n + 1);
        params.amplitude = 0.5;
        params.support_radius = -1.0;  // full rotation everywhere
        checks.push_back(check_ge(
            "ter/rotated_field_residual",
            fol::geodesic_field_residual(fol::custom_field(n, params), samples), 0.1));
    }

    // Margin vanishes on the base hypersurface itself.
    {
        std::vector<hyp::HPoint> on_s;
        quad::QuadratureGrid coarse;
        coarse.resolution = 3;
        for (const auto& node : quad::make_nodes(quad::Domain::ball(n, 1.0), coarse))
            on_s.push_back(fol::section_S(node.u));
        const auto report = fol::ter_margin(vo, on_s, hyp::DerivMode::FiniteDifference);
        checks.push_back(check_le("ter/orthogeodesic_margin_on_S", report.margin, 1e-6));
    }

    // Prop. correspondence: chart Grams positive definite iff the field is
    // t.e.r. at sample resolution.
    {
        quad::QuadratureGrid coarse;
        coarse.resolution = 5;
        const auto domain = quad::Domain::ball(n, std::sinh(1.0));
        const auto nodes = quad::make_nodes(domain, coarse);

        const auto chart_o = fol::default_chart(vo, domain);
        double min_eig_o = std::numeric_limits<double>::infinity();
        for (const auto& node : nodes) {
            const auto cp = fol::chart_to_line(chart_o, node.u);
            const Mat g = calib::chart_gram(cp.differential);
            min_eig_o = std::min(min_eig_o,
                                 Eigen::SelfAdjointEigenSolver<Mat>(g).eigenvalues().minCoeff());
        }
        checks.push_back(check_ge("ter/orthogeodesic_chart_gram_min_eigenvalue", min_eig_o, 1e-8));

        const auto chart_b = fol::default_chart(vb, domain);
        double max_eig_b = 0.0;
        for (const auto& node : nodes) {
            const auto cp = fol::chart_to_line(chart_b, node.u);
            const Mat g = calib::chart_gram(cp.differential);
            max_eig_b = std::max(max_eig_b,
                                 Eigen::SelfAdjointEigenSolver<Mat>(g)
                                     .eigenvalues().cwiseAbs().maxCoeff());
        }
        checks.push_back(check_le("ter/horospherical_chart_gram_degenerate", max_eig_b, 1e-6));
    }

    // Gauss maps: local diffeomorphisms for the t.e.r. field; the forward map
    // of the horospherical field is constant.
    {
        Rng rng(cfg.seed + 2);
        double min_abs_det_o = std::numeric_limits<double>::infinity();
        double max_abs_fwd_b = 0.0;
        double sign_ref = 0.0;
        bool sign_constant = true;
        for (int k = 0; k < 8; ++k) {
            const Vec y = 0.4 * rng.uniform() * rng.sphere_vector(n + 1);
            const hyp::HPoint X = hyp::ball_to_hyperboloid(hyp::BallPoint(y));
            const auto [dm, dp] = fol::gauss_jacobians(vo, X);
            min_abs_det_o = std::min({min_abs_det_o, std::abs(dm), std::abs(dp)});
            if (sign_ref == 0.0) sign_ref = dp > 0 ? 1.0 : -1.0;
            if (dp * sign_ref <= 0.0) sign_constant = false;
            const auto [bm, bp] = fol::gauss_jacobians(vb, X);
            max_abs_fwd_b = std::max(max_abs_fwd_b, std::abs(bp));
            (void)bm;
        }
        checks.push_back(check_ge("ter/orthogeodesic_gauss_jacobian_min", min_abs_det_o, 1e-6));
        checks.push_back(check_true("ter/orthogeodesic_gauss_jacobian_sign_constant", sign_constant));
        checks.push_back(check_le("ter/horospherical_forward_gauss_jacobian", max_abs_fwd_b, 1e-6));
    }

    // Graph map of the reference foliation is the identity on the grid.
    {
        quad::QuadratureGrid coarse;
        coarse.resolution = 4;
        std::vector<Vec> grid;
        for (const auto& node : quad::make_nodes(quad::Domain::ball(n, std::sinh(1.0)), coarse))
            grid.push_back(node.u);
        const auto gm = fol::graph_map(vo, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max({worst, (gm.f_minus[i] - grid[i]).norm(),
                              (gm.f_plus[i] - grid[i]).norm()});
        checks.push_back(check_le("ter/graph_map_identity_error_max", worst, 1e-10));
        checks.push_back(check_true("ter/graph_map_injectivity", gm.injectivity_ok));

        // The horospherical forward Gauss map is constant: the graph map either
        // leaves its hemisphere or fails injectivity.
        bool rejected = false;
        try {
            rejected = !fol::graph_map(vb, grid).injectivity_ok;
        } catch (const std::invalid_argument&) {
            rejected = true;
        }
        checks.push_back(check_true("ter/horospherical_graph_map_rejected", rejected));
    }

    return checks;
}

// ---------------------------------------------------------------------------
// maximize

std::vector<Check> check_maximize(const SuiteConfig& cfg,
                                  std::vector<std::pair<double, double>>* eps_vol) {
    const int n = cfg.n;
    std::vector<Check> checks;

    quad::QuadratureGrid grid = cfg.grid;
    grid.resolution = cfg.maximize_resolution > 0 ? cfg.maximize_resolution : (n == 1 ? 96 : 48);
    quad::QuadratureGrid fine = grid;
    fine.resolution = grid.resolution * 2;

    std::vector<double> eps_list = cfg.eps;
    std::sort(eps_list.begin(), eps_list.end());

    double max_eps = eps_list.empty() ? 0.0 : eps_list.back();
    double vol_ref = 0.0, gap_at_max_eps = 0.0, refinement_noise = 0.0;
    double prev_vol = std::numeric_limits<double>::infinity();
    bool monotone = true;

    for (const double eps : eps_list) {
        const calib::PerturbationSpec spec = calib::default_perturbation(n, eps);
        const calib::VolumeReport report = calib::maximization_report(spec, grid);
        vol_ref = report.vol_reference;
        if (eps_vol) eps_vol->emplace_back(eps, report.vol_competitor);
        if (report.vol_competitor > prev_vol + 1e-12) monotone = false;
        prev_vol = report.vol_competitor;

        char name[96];
        std::snprintf(name, sizeof(name), "maximize/spacelike_eps%.3f", eps);
        checks.push_back(check_true(name, report.spacelike_ok));
        std::snprintf(name, sizeof(name), "maximize/pointwise_min_ratio_eps%.3f", eps);
        checks.push_back(check_ge(name, report.pointwise_min_ratio, 1.0 - 1e-10));
        std::snprintf(name, sizeof(name), "maximize/volume_bounded_eps%.3f", eps);
        checks.push_back(check_le(name, report.vol_competitor, report.vol_reference + 1e-8));

        // Homology: competitor flux equals reference flux up to quadrature noise.
        const calib::VolumeReport fine_report = calib::maximization_report(spec, fine);
        const double flux_refine = std::abs(report.flux_competitor - fine_report.flux_competitor) +
                                   std::abs(report.flux_reference - fine_report.flux_reference);
        const double qtol = 10.0 * flux_refine + 1e-10;
        std::snprintf(name, sizeof(name), "maximize/flux_match_eps%.3f", eps);
        checks.push_back(
            check_le(name, std::abs(report.flux_competitor - report.flux_reference), qtol));

        if (eps == max_eps && eps > 0.0) {
            gap_at_max_eps = report.vol_reference - report.vol_competitor;
            refinement_noise = std::abs(report.vol_competitor - fine_report.vol_competitor) +
                               std::abs(report.vol_reference - fine_report.vol_reference);
        }
        if (eps == 0.0) {
            std::snprintf(name, sizeof(name), "maximize/eps0_volume_match");
            checks.push_back(check_le(name, std::abs(report.vol_competitor - report.vol_reference),
                                      1e-12 * (1.0 + report.vol_reference)));
        }
    }

    checks.push_back(check_true("maximize/volume_monotone_in_eps", monotone));
    if (max_eps > 0.0)
        checks.push_back(check_ge("maximize/strict_gap_vs_noise", gap_at_max_eps,
                                  10.0 * refinement_noise + 1e-12));

    // First variation: calibrated implies critical.
    {
        const double h = 1e-3;
        const calib::VolumeReport r =
            calib::maximization_report(calib::default_perturbation(n, h), grid);
        const double slope = std::abs(r.vol_competitor - r.vol_reference) / h;
        checks.push_back(check_le("maximize/first_variation_slope", slope, 1e-3));
    }

    (void)vol_ref;
    return checks;
}

}  // namespace geocalib::suites
