#pragma once

#include <Eigen/Dense>
#include <vector>

// Semi-Euclidean multilinear algebra on decomposable blades: Gram matrices,
// blade volumes, causal classification and evaluation of decomposable k-forms.

namespace geocalib {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class CausalClass { Spacelike, Degenerate, NonSpacelike };

// A symmetric nondegenerate bilinear form on R^dim.
class InnerProduct {
public:
    static InnerProduct euclidean(int dim);
    // diag(-1, 1, ..., 1); time coordinate first.
    static InnerProduct minkowski(int dim);
    static InnerProduct from_matrix(Mat g);

    int dim() const { return static_cast<int>(g_.rows()); }
    const Mat& matrix() const { return g_; }

    double operator()(const Vec& u, const Vec& v) const;

private:
    explicit InnerProduct(Mat g);
    Mat g_;
};

// Ordered list of k vectors spanning an oriented k-plane. Linear independence
// is not required; degenerate blades simply have volume 0.
struct Blade {
    std::vector<Vec> vectors;

    int grade() const { return static_cast<int>(vectors.size()); }
    int dim() const { return vectors.empty() ? 0 : static_cast<int>(vectors.front().size()); }
};

struct GramVolume {
    double volume = 0.0;
    CausalClass causal_class = CausalClass::Degenerate;
};

Mat gram_matrix(const Blade& blade, const InnerProduct& inner);

// volume = sqrt(|det G|) with G_ij = <v_i, v_j>. Spacelike iff all leading
// principal minors of G exceed `tol`; degenerate iff |det G| <= tol.
GramVolume gram_volume(const Blade& blade, const InnerProduct& inner, double tol = 1e-12);

// Evaluates lambda^1 ^ ... ^ lambda^k on the blade: det [lambda^i(w_j)].
double form_on_blade(const std::vector<Vec>& covectors, const Blade& blade);

}  // namespace geocalib
