#include <doctest.h>

#include <Eigen/QR>

#include "geocalib/exterior.hpp"
#include "geocalib/sampling.hpp"

using namespace geocalib;

namespace {

Blade random_blade(Rng& rng, int dim, int grade) {
    Blade b;
    for (int i = 0; i < grade; ++i) b.vectors.push_back(rng.gaussian_vector(dim));
    return b;
}

// Independent Euclidean volume: product of the R diagonal of a thin QR.
double qr_volume(const Blade& b) {
    Mat m(b.dim(), b.grade());
    for (int i = 0; i < b.grade(); ++i) m.col(i) = b.vectors[i];
    const Mat r = Eigen::HouseholderQR<Mat>(m)
                      .matrixQR()
                      .topLeftCorner(b.grade(), b.grade())
                      .template triangularView<Eigen::Upper>();
    return std::abs(r.diagonal().prod());
}

}  // namespace

TEST_CASE("euclidean blade volume matches QR factor") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 2 + static_cast<int>(rng.uniform(0.0, 4.0));
        const int grade = 1 + static_cast<int>(rng.uniform(0.0, static_cast<double>(dim)));
        const Blade b = random_blade(rng, dim, grade);
        const auto gv = gram_volume(b, InnerProduct::euclidean(dim));
        CHECK(gv.volume == doctest::Approx(qr_volume(b)).epsilon(1e-10));
        CHECK(gv.causal_class == CausalClass::Spacelike);
    }
}

TEST_CASE("volume is invariant under swaps and shears") {
    Rng rng(12);
    const InnerProduct ip = InnerProduct::euclidean(4);
    Blade b = random_blade(rng, 4, 3);
    const double vol = gram_volume(b, ip).volume;

    Blade swapped = b;
    std::swap(swapped.vectors[0], swapped.vectors[2]);
    CHECK(gram_volume(swapped, ip).volume == doctest::Approx(vol));

    Blade sheared = b;
    sheared.vectors[1] += 3.5 * sheared.vectors[0];
    CHECK(gram_volume(sheared, ip).volume == doctest::Approx(vol));

    Blade scaled = b;
    scaled.vectors[2] *= 2.0;
    CHECK(gram_volume(scaled, ip).volume == doctest::Approx(2.0 * vol));
}

TEST_CASE("minkowski causal classification") {
    const InnerProduct ip = InnerProduct::minkowski(3);

    Blade timelike;
    timelike.vectors = {Vec::Unit(3, 0)};
    CHECK(gram_volume(timelike, ip).causal_class == CausalClass::NonSpacelike);

    Blade null;
    Vec n(3);
    n << 1, 1, 0;
    null.vectors = {n};
    CHECK(gram_volume(null, ip).causal_class == CausalClass::Degenerate);

    Blade spacelike;
    spacelike.vectors = {Vec::Unit(3, 1), Vec::Unit(3, 2)};
    const auto gv = gram_volume(spacelike, ip);
    CHECK(gv.causal_class == CausalClass::Spacelike);
    CHECK(gv.volume == doctest::Approx(1.0));

    // Mixed plane spanned by a timelike and a spacelike direction.
    Blade mixed;
    mixed.vectors = {Vec::Unit(3, 0), Vec::Unit(3, 1)};
    CHECK(gram_volume(mixed, ip).causal_class == CausalClass::NonSpacelike);
}

TEST_CASE("form evaluation is alternating and multilinear") {
    Rng rng(13);
    std::vector<Vec> covs = {rng.gaussian_vector(3), rng.gaussian_vector(3),
                             rng.gaussian_vector(3)};
    Blade b = random_blade(rng, 3, 3);
    const double val = form_on_blade(covs, b);

    Blade repeated = b;
    repeated.vectors[2] = repeated.vectors[0];
    CHECK(form_on_blade(covs, repeated) == doctest::Approx(0.0));

    Blade swapped = b;
    std::swap(swapped.vectors[0], swapped.vectors[1]);
    CHECK(form_on_blade(covs, swapped) == doctest::Approx(-val));

    Blade scaled = b;
    scaled.vectors[1] *= -2.0;
    CHECK(form_on_blade(covs, scaled) == doctest::Approx(-2.0 * val));
}

TEST_CASE("inner product validation") {
    Mat asym(2, 2);
    asym << 1, 1, 0, 1;
    CHECK_THROWS(InnerProduct::from_matrix(asym));

    Mat degenerate = Mat::Zero(2, 2);
    degenerate(0, 0) = 1.0;
    CHECK_THROWS(InnerProduct::from_matrix(degenerate));

    const InnerProduct mink = InnerProduct::minkowski(3);
    CHECK(mink(Vec::Unit(3, 0), Vec::Unit(3, 0)) == doctest::Approx(-1.0));
    CHECK(mink(Vec::Unit(3, 1), Vec::Unit(3, 1)) == doctest::Approx(1.0));
}
