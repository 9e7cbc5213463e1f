#ifndef JACOBI_DIRECT_HPP
#define JACOBI_DIRECT_HPP

#include "jacobi/coefficients.hpp"
#include "jacobi/quadrature.hpp"

#include <Eigen/Core>

#include <vector>

namespace jacobi {

/// Jost solution phi_side(lambda, .) of the perturbed operator: the solution
/// that coincides with the background Weyl solution psi^side near side*inf.
/// Built by recursing from exact background seeds beyond the perturbation
/// window, always against the growth direction, so it is stable.
///
/// Values far on the opposite half axis come from matching phi to the two
/// Floquet branches of the opposite background across the window, so
/// operator() is exact (up to the match) on all of Z.
class JostSolution {
public:
    JostSolution(const Coefficients& c, HalfAxis side, Complex lambda, Rim rim = Rim::upper);

    Complex operator()(long n) const;

    HalfAxis side() const { return side_; }
    Complex lambda() const { return lambda_; }
    Rim rim() const { return rim_; }

    /// Per-period multiplier of the decaying branch toward side*inf (|.| <= 1).
    Complex own_multiplier() const;

    /// Coefficient of the given opposite-background branch in the far-field
    /// expansion of phi on the opposite half axis.
    Complex far_coefficient(Branch br) const { return br == Branch::decaying_right ? far_r_ : far_l_; }

    const WeylBasis& own_basis() const { return wb_own_; }
    const WeylBasis& opposite_basis() const { return wb_opp_; }

private:
    HalfAxis side_;
    Complex lambda_;
    Rim rim_;
    long lo_, hi_;              // stored range  [lo_, hi_]
    std::vector<Complex> vals_; // vals_[n - lo_]
    WeylBasis wb_own_;          // background on this solution's half axis
    WeylBasis wb_opp_;
    Complex far_r_, far_l_;
};

/// W(f, g) = a(n) (f(n) g(n+1) - f(n+1) g(n)); constant in n for two
/// solutions of the same operator.
Complex wronskian(const Coefficients& c, const JostSolution& f, const JostSolution& g, long n = 0);

/// Jost Wronskian W(lambda) = W(phi_-, phi_+).
Complex wronskian(const Coefficients& c, Complex lambda, Rim rim = Rim::upper);

/// Pole-free Wronskian: delta_-(lambda) delta_+(lambda) W(lambda).  Real on
/// the real axis off the spectrum; its simple zeros there are the eigenvalues.
Complex wronskian_tilde(const Coefficients& c, const WeylDivisor& div_minus,
                        const WeylDivisor& div_plus, Complex lambda, Rim rim = Rim::upper);

/// Eigenvalues of the perturbed operator in R \ (sigma_+ u sigma_-):
/// sign-change scan of the pole-free Wronskian (4096 points per gap) plus
/// bisection down to tol_root.
std::vector<double> find_eigenvalues(const Coefficients& c, double tol_root = 1e-12,
                                     double tol_edge = 1e-12);

/// gamma_{side,k} with 1/gamma = sum_n |delta_side(lambda_k) phi_side(lambda_k, n)|^2.
/// The window part is summed directly and both geometric tails are summed in
/// closed form from the Floquet multipliers, so no truncation error enters.
double norming_constant(const Coefficients& c, HalfAxis side, double lambda_k);

/// One sample of the reflection/transmission pair on the upper rim of the
/// own-side spectrum, together with its quadrature weight.
struct ScatteringNode {
    double lambda = 0.0;
    Complex weight; // upper-rim d(omega) weight; lower rim = conjugate
    Complex R;
    Complex T;
};

/// One sample on the upper rim of the opposite one-sided spectrum
/// sigma_(opp)^(1); only |T_opp|^2 enters the Marchenko kernels there.
struct OneSidedNode {
    double lambda = 0.0;
    Complex weight; // d(omega_opp) weight on the upper rim
    double T_abs2 = 0.0;
};

/// Complete scattering data of a steplike operator.  Everything is stored on
/// upper rims; lower-rim values follow by conjugation.
struct ScatteringData {
    Background bg_minus;
    Background bg_plus;
    std::vector<ScatteringNode> nodes_plus;     // on sigma_+^u
    std::vector<ScatteringNode> nodes_minus;    // on sigma_-^u
    std::vector<OneSidedNode> one_sided_plus;   // on sigma_-^(1),u  (feeds F_+)
    std::vector<OneSidedNode> one_sided_minus;  // on sigma_+^(1),u  (feeds F_-)
    std::vector<double> eigenvalues;            // in R \ sigma, increasing
    std::vector<double> gamma_plus;
    std::vector<double> gamma_minus;
    int per_band = 0;
    int q = 2; // claimed finite moment order of the coefficient deviations
};

/// Reflection and transmission of the given side at a single spectral point
/// on the upper rim of sigma_side (weight left zero).
ScatteringNode scattering_at(const Coefficients& c, HalfAxis side, double lambda);

/// Forward problem: R_pm, T_pm on band grids, eigenvalues, norming constants.
ScatteringData compute_scattering(const Coefficients& c, int per_band = 64,
                                  double tol_edge = 1e-12, double tol_root = 1e-12);

/// Transformation kernel K_side(n, m) on the window [n_lo, n_hi]^2 by contour
/// quadrature of phi_side(n) conj(psi_side(m)) over the own-side spectrum.
/// Entry (i, j) is K(n_lo + i, n_lo + j); vanishes for side*(m - n) < 0.
Eigen::MatrixXd transformation_kernel(const Coefficients& c, HalfAxis side, long n_lo, long n_hi,
                                      int per_band = 64);

} // namespace jacobi

#endif
