#include <doctest.h>

#include <cmath>

#include "geocalib/split_space.hpp"

using namespace geocalib;
using namespace geocalib::split;

TEST_CASE("diagonal graph plane: volume, phi_c and defect by hand") {
    GraphPlane g;
    g.A = Mat::Zero(2, 2);
    g.A(0, 0) = 1.0;
    g.A(1, 1) = 4.0;
    const auto blade = graph_plane_blade(g);

    // Gram of {(e_i, A e_i)} under the split product is sym(A) = diag(1, 4).
    const auto gv = gram_volume(embed(blade), split_inner_product(2));
    CHECK(gv.causal_class == CausalClass::Spacelike);
    CHECK(gv.volume == doctest::Approx(2.0));

    // det[x] = 1, det[y] = 4: phi_2 = (2*1 + 4/2)/2 = 2, the equality case.
    CHECK(phi_c_eval(2.0, blade) == doctest::Approx(2.0));
    CHECK(special_lagrangian_defect(2.0, blade) == doctest::Approx(0.0));
    CHECK(phi_c_eval(1.0, blade) == doctest::Approx(2.5));
}

TEST_CASE("shear graph plane: strict calibration inequality by hand") {
    GraphPlane g;
    g.A = Mat::Zero(2, 2);
    g.A << 1, 1, 0, 1;
    const auto blade = graph_plane_blade(g);

    // sym(A) = [[1, 1/2], [1/2, 1]], det = 3/4.
    const double vol = gram_volume(embed(blade), split_inner_product(2)).volume;
    CHECK(vol == doctest::Approx(std::sqrt(0.75)));
    CHECK(phi_c_eval(1.0, blade) == doctest::Approx(1.0));
    CHECK(phi_c_eval(1.0, blade) > vol);
}

TEST_CASE("split inner agrees with the embedded matrix form") {
    SplitVector u{Vec::Zero(3), Vec::Zero(3)}, w{Vec::Zero(3), Vec::Zero(3)};
    u.x << 1, 2, 0;
    u.y << 0, 1, -1;
    w.x << 3, 0, 1;
    w.y << 1, 1, 1;
    const InnerProduct ip = split_inner_product(3);
    CHECK(split_inner(u, w) == doctest::Approx(ip(embed(u), embed(w))));
    // <(x,y),(x,y)> = <x, y>.
    CHECK(split_inner(u, u) == doctest::Approx(u.x.dot(u.y)));
}

TEST_CASE("seeded graph sampling is deterministic and space-like") {
    for (int n = 1; n <= 4; ++n) {
        const GraphPlane a = sample_spacelike_graph(99, n, 0.05);
        const GraphPlane b = sample_spacelike_graph(99, n, 0.05);
        CHECK(a.A.isApprox(b.A, 0.0));
        CHECK(!a.A.isApprox(sample_spacelike_graph(100, n, 0.05).A, 1e-12));

        const Mat sym = 0.5 * (a.A + a.A.transpose());
        CHECK(Eigen::SelfAdjointEigenSolver<Mat>(sym).eigenvalues().minCoeff() >= 0.05 - 1e-12);
        CHECK(gram_volume(embed(graph_plane_blade(a)), split_inner_product(n)).causal_class ==
              CausalClass::Spacelike);

        const GraphPlane s = sample_spacelike_graph(99, n, 0.05, true);
        CHECK(s.A.isApprox(s.A.transpose(), 1e-14));
    }
}

TEST_CASE("calibration inequality on sampled planes with equality for symmetric PD") {
    for (int n = 1; n <= 3; ++n) {
        const InnerProduct ip = split_inner_product(n);
        for (int k = 0; k < 200; ++k) {
            const auto blade = graph_plane_blade(sample_spacelike_graph(1000 + k, n, 0.02));
            const double vol = gram_volume(embed(blade), ip).volume;
            const double c = 0.3 + 0.01 * k;
            CHECK(phi_c_eval(c, blade) >= vol - 1e-10);

            const GraphPlane s = sample_spacelike_graph(2000 + k, n, 0.02, true);
            const auto sblade = graph_plane_blade(s);
            const double ceq = std::sqrt(s.A.determinant());
            CHECK(phi_c_eval(ceq, sblade) ==
                  doctest::Approx(gram_volume(embed(sblade), ip).volume).epsilon(1e-10));
        }
    }
}
