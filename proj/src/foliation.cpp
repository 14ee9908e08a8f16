#include "geocalib/foliation.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "geocalib/sampling.hpp"

namespace geocalib::fol {

using hyp::minkowski;

double smooth_bump(double t, double radius) {
    const double s = std::abs(t) / radius;
    if (s >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double smooth_bump_derivative(double t, double radius) {
    const double s = t / radius;
    if (std::abs(s) >= 1.0) return 0.0;
    const double d = 1.0 - s * s;
    return smooth_bump(t, radius) * (-2.0 * s / radius) / (d * d);
}

UnitFieldSpec orthogeodesic_field(int n) {
    if (n < 1) throw std::invalid_argument("orthogeodesic_field: n must be >= 1");
    const int dim = n + 2;
    UnitFieldSpec spec;
    spec.family = FieldFamily::Orthogeodesic;
    spec.name = "orthogeodesic";
    spec.field.value = [dim](const Vec& X) -> Vec {
        Vec e0 = Vec::Zero(dim);
        e0[1] = 1.0;
        return (X[1] * X + e0) / std::sqrt(1.0 + X[1] * X[1]);
    };
    spec.field.ambient_derivative = [dim](const Vec& X, const Vec& w) -> Vec {
        Vec e0 = Vec::Zero(dim);
        e0[1] = 1.0;
        const double g = std::sqrt(1.0 + X[1] * X[1]);
        return (w[1] * X + X[1] * w) / g - (X[1] * X + e0) * (X[1] * w[1] / (g * g * g));
    };
    return spec;
}

UnitFieldSpec horospherical_field(const hyp::BoundaryPoint& b) {
    Vec N(b.b.size() + 1);
    N[0] = 1.0;
    N.tail(b.b.size()) = b.b;
    UnitFieldSpec spec;
    spec.family = FieldFamily::Horospherical;
    spec.name = "horospherical";
    spec.field.value = [N](const Vec& X) -> Vec { return -X - N / minkowski(X, N); };
    spec.field.ambient_derivative = [N](const Vec& X, const Vec& w) -> Vec {
        const double xn = minkowski(X, N);
        return -w + N * (minkowski(w, N) / (xn * xn));
    };
    return spec;
}

UnitFieldSpec custom_field(int n, const CustomFieldParams& params) {
    if (params.center.size() != n + 1)
        throw std::invalid_argument("custom_field: center must be a ball point of dimension n+1");
    const Vec center = hyp::ball_to_hyperboloid(hyp::BallPoint(params.center)).X;
    const double amplitude = params.amplitude;
    const double support = params.support_radius;
    UnitFieldSpec base = orthogeodesic_field(n);
    auto base_value = base.field.value;

    UnitFieldSpec spec;
    spec.family = FieldFamily::Custom;
    spec.name = "custom";
    spec.field.value = [=](const Vec& X) -> Vec {
        double angle = amplitude;
        if (support > 0.0) {
            const double dist = std::acosh(std::max(1.0, -minkowski(X, center)));
            angle *= smooth_bump(dist, support);
        }
        Vec w = base_value(X);
        // Rotate in the spatial (e0, e1) coordinate plane.
        const double c = std::cos(angle), s = std::sin(angle);
        const double w1 = w[1], w2 = w[2];
        w[1] = c * w1 - s * w2;
        w[2] = s * w1 + c * w2;
        w += minkowski(w, X) * X;
        return w / std::sqrt(minkowski(w, w));
    };
    return spec;
}

std::vector<Vec> tangent_complement_basis(const hyp::HPoint& X, const Vec& v) {
    const int dim = static_cast<int>(X.X.size());
    std::vector<Vec> basis;
    for (int k = 0; k < dim && static_cast<int>(basis.size()) < dim - 2; ++k) {
        Vec u = Vec::Unit(dim, k);
        u += minkowski(u, X.X) * X.X;
        u -= minkowski(u, v) * v;
        for (const Vec& b : basis) u -= minkowski(u, b) * b;
        const double norm2 = minkowski(u, u);
        if (norm2 > 1e-8) basis.push_back(u / std::sqrt(norm2));
    }
    if (static_cast<int>(basis.size()) != dim - 2)
        throw std::runtime_error("tangent_complement_basis: failed to complete basis");
    return basis;
}

std::vector<hyp::HPoint> hyperbolic_ball_samples(const hyp::HPoint& center, double R,
                                                 int directions, int shells,
                                                 std::uint64_t seed) {
    if (R <= 0.0 || shells < 1) throw std::invalid_argument("hyperbolic_ball_samples: bad parameters");
    const int dim = static_cast<int>(center.X.size());
    Rng rng(seed);

    std::vector<Vec> dirs;
    // Coordinate tangent directions first so axis-aligned extremes are hit.
    for (int k = 1; k < dim; ++k) {
        Vec u = Vec::Unit(dim, k);
        u += minkowski(u, center.X) * center.X;
        const double norm2 = minkowski(u, u);
        if (norm2 > 1e-10) {
            dirs.push_back(u / std::sqrt(norm2));
            dirs.push_back(-dirs.back());
        }
    }
    while (static_cast<int>(dirs.size()) < directions) {
        Vec u = rng.gaussian_vector(dim);
        u += minkowski(u, center.X) * center.X;
        const double norm2 = minkowski(u, u);
        if (norm2 > 1e-10) dirs.push_back(u / std::sqrt(norm2));
    }

    std::vector<hyp::HPoint> samples;
    samples.push_back(center);
    for (const Vec& d : dirs) {
        hyp::Geodesic g(center, hyp::HTangent(center, d));
        for (int k = 1; k <= shells; ++k)
            samples.push_back(hyp::geodesic_eval(g, R * k / shells).first);
    }
    return samples;
}

double geodesic_field_residual(const UnitFieldSpec& field,
                               const std::vector<hyp::HPoint>& samples,
                               hyp::DerivMode mode) {
    if (samples.empty()) throw std::invalid_argument("geodesic_field_residual: no samples");
    double worst = 0.0;
    for (const hyp::HPoint& X : samples) {
        hyp::HTangent v(X, field.field.value(X.X));
        hyp::HTangent nabla = hyp::covariant_derivative(field.field, X, v, mode);
        worst = std::max(worst, std::sqrt(std::abs(minkowski(nabla.v, nabla.v))));
    }
    return worst;
}

TerReport ter_margin(const UnitFieldSpec& field, const std::vector<hyp::HPoint>& samples,
                     hyp::DerivMode mode) {
    if (samples.empty()) throw std::invalid_argument("ter_margin: no samples");
    TerReport report{0.0, false, samples.front()};
    for (const hyp::HPoint& X : samples) {
        const Vec v = field.field.value(X.X);
        const std::vector<Vec> basis = tangent_complement_basis(X, v);
        const int n = static_cast<int>(basis.size());
        Mat m(n, n);
        for (int j = 0; j < n; ++j) {
            hyp::HTangent nabla =
                hyp::covariant_derivative(field.field, X, hyp::HTangent(X, basis[j]), mode);
            for (int i = 0; i < n; ++i) m(i, j) = minkowski(nabla.v, basis[i]);
        }
        const double sigma = Eigen::JacobiSVD<Mat>(m).singularValues().maxCoeff();
        if (sigma > report.margin) {
            report.margin = sigma;
            report.worst_point = X;
        }
    }
    // Strictness certified at tolerance; boundary cases report false.
    report.is_ter = report.margin < 1.0 - 1e-8;
    return report;
}

hyp::HPoint section_S(const Vec& u) {
    Vec X(u.size() + 2);
    X[0] = std::sqrt(1.0 + u.squaredNorm());
    X[1] = 0.0;
    X.tail(u.size()) = u;
    return hyp::HPoint(std::move(X));
}

Vec section_S_differential(const Vec& u, int i) {
    Vec d = Vec::Zero(u.size() + 2);
    d[0] = u[i] / std::sqrt(1.0 + u.squaredNorm());
    d[2 + i] = 1.0;
    return d;
}

FoliationChart default_chart(const UnitFieldSpec& field, quad::Domain domain) {
    FoliationChart chart;
    chart.domain = std::move(domain);
    chart.section = section_S;
    chart.section_differential = section_S_differential;
    chart.field = field;
    return chart;
}

ChartPoint chart_to_line(const FoliationChart& chart, const Vec& u, hyp::DerivMode mode) {
    if (!chart.domain.contains(u))
        throw std::invalid_argument("chart_to_line: parameter outside the chart domain");
    const int n = chart.domain.dim;
    const hyp::HPoint X = chart.section(u);
    const Vec v = chart.field.field.value(X.X);
    hyp::Geodesic gamma(X, hyp::HTangent(X, v));

    std::vector<Vec> dsigma(n);
    for (int i = 0; i < n; ++i) {
        if (chart.section_differential) {
            dsigma[i] = chart.section_differential(u, i);
        } else {
            const double h = 1e-6;
            Vec up = u, um = u;
            up[i] += h;
            um[i] -= h;
            dsigma[i] = (chart.section(up).X - chart.section(um).X) / (2.0 * h);
            dsigma[i] += minkowski(dsigma[i], X.X) * X.X;
        }
    }

    // Transversality: the leaf direction must not collapse into the section.
    {
        Mat g(n, n);
        Vec rhs(n);
        for (int i = 0; i < n; ++i) {
            rhs[i] = minkowski(v, dsigma[i]);
            for (int j = i; j < n; ++j) g(i, j) = g(j, i) = minkowski(dsigma[i], dsigma[j]);
        }
        Vec coeff = g.ldlt().solve(rhs);
        Vec residual = v;
        for (int i = 0; i < n; ++i) residual -= coeff[i] * dsigma[i];
        if (std::sqrt(std::abs(minkowski(residual, residual))) < chart.transversality_min)
            throw std::invalid_argument("chart_to_line: section not transversal to the field");
    }

    ChartPoint out{lines::line_of_geodesic(gamma), {}};
    out.differential.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vec j0 = dsigma[i] - minkowski(dsigma[i], v) * v;
        hyp::HTangent nabla = hyp::covariant_derivative(chart.field.field, X,
                                                        hyp::HTangent(X, j0), mode);
        Vec j0p = nabla.v - minkowski(nabla.v, v) * v;
        lines::JacobiData jd(gamma, hyp::HTangent(X, j0), hyp::HTangent(X, j0p));
        out.differential.push_back(lines::push_line_tangent(jd));
    }
    return out;
}

namespace {

// Deterministic orthonormal basis of the tangent space of S^n at b.
std::vector<Vec> sphere_tangent_basis(const Vec& b) {
    const int dim = static_cast<int>(b.size());
    std::vector<Vec> basis;
    for (int k = 0; k < dim && static_cast<int>(basis.size()) < dim - 1; ++k) {
        Vec u = Vec::Unit(dim, k) - b[k] * b;
        for (const Vec& e : basis) u -= u.dot(e) * e;
        if (u.norm() > 1e-8) basis.push_back(u / u.norm());
    }
    return basis;
}

}  // namespace

std::pair<double, double> gauss_jacobians(const UnitFieldSpec& field, const hyp::HPoint& X) {
    const Vec v = field.field.value(X.X);
    const std::vector<Vec> basis = tangent_complement_basis(X, v);
    const int n = static_cast<int>(basis.size());
    const double h = 1e-5;

    std::pair<double, double> dets;
    for (int sign : {-1, +1}) {
        hyp::Geodesic leaf(X, hyp::HTangent(X, v));
        const Vec b0 = hyp::endpoint(leaf, sign).b;
        const std::vector<Vec> sph = sphere_tangent_basis(b0);
        Mat jac(n, n);
        for (int j = 0; j < n; ++j) {
            hyp::Geodesic transversal(X, hyp::HTangent(X, basis[j]));
            Vec d(b0.size());
            {
                const hyp::HPoint xp = hyp::geodesic_eval(transversal, h).first;
                const hyp::HPoint xm = hyp::geodesic_eval(transversal, -h).first;
                hyp::Geodesic gp(xp, hyp::HTangent(xp, field.field.value(xp.X)));
                hyp::Geodesic gm(xm, hyp::HTangent(xm, field.field.value(xm.X)));
                d = (hyp::endpoint(gp, sign).b - hyp::endpoint(gm, sign).b) / (2.0 * h);
            }
            d -= b0.dot(d) * b0;
            for (int i = 0; i < n; ++i) jac(i, j) = sph[i].dot(d);
        }
        (sign < 0 ? dets.first : dets.second) = jac.determinant();
    }
    return dets;
}

GraphMapResult graph_map(const UnitFieldSpec& field, const std::vector<Vec>& grid) {
    if (grid.empty()) throw std::invalid_argument("graph_map: empty grid");
    const int n = static_cast<int>(grid.front().size());
    GraphMapResult out;
    out.grid = grid;
    out.f_minus.reserve(grid.size());
    out.f_plus.reserve(grid.size());

    for (const Vec& u : grid) {
        const hyp::HPoint x = section_S(u);
        hyp::Geodesic leaf(x, hyp::HTangent(x, field.field.value(x.X)));
        const Vec qm = hyp::endpoint(leaf, -1).b;
        const Vec qp = hyp::endpoint(leaf, +1).b;
        if (qm[0] >= -1e-8 || qp[0] <= 1e-8)
            throw std::invalid_argument(
                "graph_map: Gauss image leaves its open hemisphere; field not admissible");
        // Closed-form inverse of the orthogeodesic Gauss maps in S-chart
        // coordinates: b -> tail(b) / |b_0|.
        out.f_minus.push_back(qm.tail(n) / std::abs(qm[0]));
        out.f_plus.push_back(qp.tail(n) / std::abs(qp[0]));
    }

    out.injectivity_ok = true;
    for (std::size_t i = 0; i < grid.size() && out.injectivity_ok; ++i)
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            if ((out.f_plus[i] - out.f_plus[j]).norm() <= 1e-8 ||
                (out.f_minus[i] - out.f_minus[j]).norm() <= 1e-8) {
                out.injectivity_ok = false;
                break;
            }
        }
    return out;
}

}  // namespace geocalib::fol
