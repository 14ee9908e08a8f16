#include "geocalib/psi_calibration.hpp"

#include <algorithm>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "geocalib/parallel.hpp"
#include "geocalib/sampling.hpp"

namespace geocalib::calib {

namespace {
constexpr double kHemisphereTol = 1e-8;

void require_in_lprime(const lines::OrientedLine& line) {
    if (line.p.b[0] >= -kHemisphereTol || line.q.b[0] <= kHemisphereTol)
        throw std::invalid_argument("line outside S^n_- x S^n_+");
}
}  // namespace

double theta_eval(const Vec& p, const std::vector<Vec>& w, double tol) {
    const int m = static_cast<int>(p.size());
    if (static_cast<int>(w.size()) != m - 1)
        throw std::invalid_argument("theta_eval: need n tangent vectors on S^n");
    Mat frame(m, m);
    frame.col(0) = p;
    for (int j = 0; j + 1 < m; ++j) {
        if (w[j].size() != m) throw std::invalid_argument("theta_eval: dimension mismatch");
        if (std::abs(w[j].dot(p)) > tol * (1.0 + w[j].norm()))
            throw std::invalid_argument("theta_eval: vector not tangent at p");
        frame.col(j + 1) = w[j];
    }
    return frame.determinant();
}

double psi_eval(const lines::OrientedLine& line, const std::vector<lines::LineTangent>& blade) {
    require_in_lprime(line);
    const int n = line.n();
    if (static_cast<int>(blade.size()) != n)
        throw std::invalid_argument("psi_eval: blade grade must equal n");
    std::vector<Vec> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = blade[i].x;
        ys[i] = blade[i].y;
    }
    const double tp = theta_eval(line.p.b, xs);
    const double tq = theta_eval(-line.q.b, ys);  // forward factor, T-transported orientation
    const double p0 = std::abs(line.p.b[0]);
    const double q0 = std::abs(line.q.b[0]);
    return 0.5 * (tp / std::pow(p0, n) + tq / std::pow(q0, n));
}

CalibConstants calib_constants(const lines::OrientedLine& line) {
    require_in_lprime(line);
    const int n = line.n();
    const double p0 = std::abs(line.p.b[0]);
    const double q0 = std::abs(line.q.b[0]);
    const double dist = (line.q.b - line.p.b).norm();
    CalibConstants k;
    k.c = std::pow(q0, 0.5 * n) / std::pow(p0, 0.5 * n);
    k.C = std::pow(dist, n) / (std::pow(2.0, n) * std::pow(q0 * p0, 0.5 * n));
    return k;
}

FrameA frame_A(const lines::OrientedLine& line, std::uint64_t seed) {
    require_in_lprime(line);
    const int n = line.n();
    const Vec& p = line.p.b;
    const double scale = 0.5 * (line.q.b - p).norm();
    Rng rng(seed);

    std::vector<Vec> basis;
    while (static_cast<int>(basis.size()) < n) {
        Vec v = rng.gaussian_vector(n + 1);
        v -= v.dot(p) * p;
        for (const Vec& b : basis) v -= v.dot(b) * b / b.squaredNorm();
        if (v.norm() > 1e-6) basis.push_back(v * (scale / v.norm()));
    }
    if (theta_eval(p, basis) < 0.0) basis.front() *= -1.0;

    FrameA a{line, {}, {}};
    const Vec zero = Vec::Zero(n + 1);
    for (int i = 0; i < n; ++i) {
        a.e_images.emplace_back(line, basis[i], zero);
        a.f_images.emplace_back(line, zero, lines::reflection(p, line.q.b, basis[i]));
    }
    return a;
}

lines::LineTangent apply_frame(const FrameA& a, const split::SplitVector& u) {
    const int n = static_cast<int>(a.e_images.size());
    if (u.x.size() != n || u.y.size() != n)
        throw std::invalid_argument("apply_frame: dimension mismatch");
    Vec x = Vec::Zero(n + 1), y = Vec::Zero(n + 1);
    for (int i = 0; i < n; ++i) {
        x += u.x[i] * a.e_images[i].x;
        y += u.y[i] * a.f_images[i].y;
    }
    return lines::LineTangent(a.line, std::move(x), std::move(y));
}

std::vector<lines::LineTangent> apply_frame(const FrameA& a,
                                            const std::vector<split::SplitVector>& blade) {
    std::vector<lines::LineTangent> out;
    out.reserve(blade.size());
    for (const split::SplitVector& u : blade) out.push_back(apply_frame(a, u));
    return out;
}

Mat chart_gram(const std::vector<lines::LineTangent>& diff) {
    const int n = static_cast<int>(diff.size());
    Mat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) g(i, j) = g(j, i) = lines::line_inner(diff[i], diff[j]);
    return g;
}

namespace {

// Backward Gauss image of the S-chart point u: (-1, u)/sqrt(1+|u|^2).
Vec gauss_minus(const Vec& u) {
    Vec b(u.size() + 1);
    b[0] = -1.0;
    b.tail(u.size()) = u;
    return b / b.norm();
}

Vec gauss_plus(const Vec& w) {
    Vec b(w.size() + 1);
    b[0] = 1.0;
    b.tail(w.size()) = w;
    return b / b.norm();
}

// Differential of w -> (pm 1, w)/sqrt(1+|w|^2) applied to z.
Vec gauss_rate(int sign, const Vec& w, const Vec& z) {
    const double t2 = 1.0 + w.squaredNorm();
    const double t = std::sqrt(t2);
    Vec head(w.size() + 1);
    head[0] = static_cast<double>(sign);
    head.tail(w.size()) = w;
    Vec dz = Vec::Zero(w.size() + 1);
    dz.tail(w.size()) = z;
    return dz / t - head * (w.dot(z) / (t2 * t));
}

struct Displacement {
    Vec direction;
    double amplitude = 0.0;
    double support = 1.0;  // hyperbolic radius

    Vec apply(const Vec& u) const {
        if (amplitude == 0.0) return u;
        return u + amplitude * fol::smooth_bump(std::asinh(u.norm()), support) * direction;
    }

    Mat jacobian(const Vec& u) const {
        const int n = static_cast<int>(u.size());
        Mat j = Mat::Identity(n, n);
        if (amplitude == 0.0) return j;
        const double r = u.norm();
        if (r < 1e-12) return j;
        const double d = std::asinh(r);
        const Vec grad =
            fol::smooth_bump_derivative(d, support) / (r * std::sqrt(1.0 + r * r)) * u;
        j += amplitude * direction * grad.transpose();
        return j;
    }
};

ChartizedSubmanifold build_chart(int n, double domain_radius, const Displacement& disp) {
    ChartizedSubmanifold chart;
    chart.domain = quad::Domain::ball(n, std::sinh(domain_radius));
    chart.map = [disp](const Vec& u) {
        return lines::OrientedLine(hyp::BoundaryPoint(gauss_minus(u)),
                                   hyp::BoundaryPoint(gauss_plus(disp.apply(u))));
    };
    chart.differential = [disp, n](const Vec& u) {
        const Vec w = disp.apply(u);
        const Mat jh = disp.jacobian(u);
        lines::OrientedLine line(hyp::BoundaryPoint(gauss_minus(u)),
                                 hyp::BoundaryPoint(gauss_plus(w)));
        std::vector<lines::LineTangent> cols;
        cols.reserve(n);
        for (int i = 0; i < n; ++i) {
            Vec x = gauss_rate(-1, u, Vec::Unit(n, i));
            Vec y = gauss_rate(+1, w, jh.col(i));
            x -= x.dot(line.p.b) * line.p.b;
            y -= y.dot(line.q.b) * line.q.b;
            cols.emplace_back(line, std::move(x), std::move(y));
        }
        return cols;
    };
    // Orient the chart so that psi integrates positively.
    chart.orientation = psi_eval(chart.map(Vec::Zero(n)), chart.differential(Vec::Zero(n))) < 0.0
                            ? -1.0
                            : 1.0;
    return chart;
}

bool spacelike_gram(const Mat& g, double tol = 1e-12) {
    for (int m = 1; m <= g.rows(); ++m)
        if (g.topLeftCorner(m, m).determinant() <= tol) return false;
    return true;
}

}  // namespace

PerturbationSpec default_perturbation(int n, double amplitude) {
    PerturbationSpec spec;
    spec.n = n;
    spec.direction = Vec::Unit(n, 0);
    spec.amplitude = amplitude;
    spec.support_radius = 1.0;
    spec.collar_radius = 2.0;
    return spec;
}

ChartizedSubmanifold mo_chart(int n, double hyper_radius) {
    if (n < 1) throw std::invalid_argument("mo_chart: n must be >= 1");
    Displacement none;
    none.direction = Vec::Zero(n);
    return build_chart(n, hyper_radius, none);
}

ChartizedSubmanifold perturb_mo(const PerturbationSpec& spec, const quad::QuadratureGrid& grid) {
    if (spec.direction.size() != spec.n)
        throw std::invalid_argument("perturb_mo: direction dimension mismatch");
    if (spec.support_radius <= 0.0 || spec.collar_radius <= spec.support_radius)
        throw std::invalid_argument("perturb_mo: need 0 < support_radius < collar_radius");

    Displacement disp{spec.direction, spec.amplitude, spec.support_radius};
    ChartizedSubmanifold chart = build_chart(spec.n, spec.collar_radius, disp);

    const auto nodes = quad::make_nodes(chart.domain, grid);
    for (const auto& node : nodes) {
        if (disp.jacobian(node.u).determinant() <= 0.0)
            throw std::invalid_argument("perturb_mo: displacement not injective at this amplitude");
        if (disp.apply(node.u).norm() > chart.domain.radius + 1e-12)
            throw std::invalid_argument("perturb_mo: displacement leaves the chart domain");
        if (!spacelike_gram(chart_gram(chart.differential(node.u))))
            throw std::invalid_argument("perturb_mo: chart not space-like at this amplitude");
    }
    return chart;
}

double region_volume(const ChartizedSubmanifold& m, const quad::QuadratureGrid& grid) {
    const auto nodes = quad::make_nodes(m.domain, grid);
    std::vector<double> values(nodes.size());
    std::vector<char> bad(nodes.size(), 0);
    parallel_for(nodes.size(), [&](std::size_t i) {
        const Mat g = chart_gram(m.differential(nodes[i].u));
        if (!spacelike_gram(g)) {
            bad[i] = 1;
            return;
        }
        values[i] = nodes[i].weight * std::sqrt(g.determinant());
    });
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (bad[i]) {
            std::ostringstream msg;
            msg << "region_volume: non-space-like differential at node " << i << " (u = "
                << nodes[i].u.transpose() << ")";
            throw std::runtime_error(msg.str());
        }
    double total = 0.0;
    for (double v : values) total += v;
    return total;
}

double psi_flux(const ChartizedSubmanifold& m, const quad::QuadratureGrid& grid) {
    const auto nodes = quad::make_nodes(m.domain, grid);
    std::vector<double> values(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) {
        values[i] = nodes[i].weight * psi_eval(m.map(nodes[i].u), m.differential(nodes[i].u));
    });
    double total = 0.0;
    for (double v : values) total += v;
    return m.orientation * total;
}

VolumeReport maximization_report(const PerturbationSpec& spec, const quad::QuadratureGrid& grid) {
    ChartizedSubmanifold reference = mo_chart(spec.n, spec.collar_radius);
    ChartizedSubmanifold competitor = perturb_mo(spec, grid);
    competitor.orientation = reference.orientation;

    VolumeReport report;
    report.epsilon = spec.amplitude;
    report.vol_reference = region_volume(reference, grid);
    report.flux_reference = psi_flux(reference, grid);
    report.vol_competitor = region_volume(competitor, grid);
    report.flux_competitor = psi_flux(competitor, grid);
    report.spacelike_ok = true;  // perturb_mo would have thrown otherwise

    const auto nodes = quad::make_nodes(competitor.domain, grid);
    std::vector<double> ratio(nodes.size(), 1.0);
    parallel_for(nodes.size(), [&](std::size_t i) {
        const auto diff = competitor.differential(nodes[i].u);
        const double vol = std::sqrt(chart_gram(diff).determinant());
        const double value =
            competitor.orientation * psi_eval(competitor.map(nodes[i].u), diff);
        if (vol > 0.0) ratio[i] = value / vol;
    });
    report.pointwise_min_ratio = ratio.empty() ? 1.0 : *std::min_element(ratio.begin(), ratio.end());
    return report;
}

}  // namespace geocalib::calib
