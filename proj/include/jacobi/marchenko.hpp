#ifndef JACOBI_MARCHENKO_HPP
#define JACOBI_MARCHENKO_HPP

#include "jacobi/direct.hpp"

namespace jacobi {

/// Marchenko kernel F_side(n, m) tabulated on [lo, hi]^2.  Symmetric; built
/// from reflection data on the own-side spectrum, the transmission modulus on
/// the opposite one-sided bands, and the bound-state terms.
struct MarchenkoKernel {
    HalfAxis side = HalfAxis::plus;
    long lo = 0;
    long hi = -1;
    Eigen::MatrixXd F;
    Background bg; // own-side background, used by the reconstruction formulas

    double operator()(long n, long m) const { return F(n - lo, m - lo); }
    bool in_range(long n, long m) const { return n >= lo && n <= hi && m >= lo && m <= hi; }
};

/// Tabulates F_side on [lo, hi]^2 from scattering data.  Throws
/// NumericalError if the residual imaginary part of the (theoretically real)
/// kernel exceeds 10 * tol_quad.
MarchenkoKernel build_kernel(const ScatteringData& sd, HalfAxis side, long lo, long hi,
                             double tol_quad = 1e-8);

/// One row of the Marchenko-equation solution at base site n:
/// kappa(n, m) for side*(m - n) >= 1 up to the kernel boundary, and the
/// diagonal transformation coefficient K(n, n) > 0.
struct GlmRow {
    long n = 0;
    double Knn = 0.0;
    Eigen::VectorXd kappa; // kappa[k] = kappa(n, n + side*(k+1))
};

/// Dense solve of  kappa(n,m) + F(n,m) + sum_l kappa(n,l) F(l,m) = 0,
/// truncated at the kernel boundary.  Throws DataNotInClassError when the
/// diagonal relation yields a non-positive value for 1/K(n,n)^2.
GlmRow solve_glm_row(const MarchenkoKernel& F, long n);

/// Coefficients recovered from one-sided kernels on [lo, hi].
struct Reconstruction {
    long lo = 0;
    long hi = -1;
    std::vector<double> a; // a[n - lo]
    std::vector<double> b;
};

/// Recovers a(n), b(n) for n in [n_lo, n_hi] from the kernel of one side.
/// Needs F tabulated at least on [n_lo - 1, n_hi + 1] (plus side) resp.
/// [n_lo - 1, n_hi + 2] reach downward (minus side); truncation error decays
/// with the distance from n_hi (resp. n_lo) to the kernel boundary.
Reconstruction reconstruct(const MarchenkoKernel& F, long n_lo, long n_hi);

/// Partial sums of the moment-weighted diagonal difference tests
///   sum |n|^alpha |F(n,n) - F(n+-1,n+-1)|  and
///   sum |n|^alpha |a(n)F(n,n+1) - a(n-1)F(n-1,n)|   (background a),
/// with alpha = q for q >= 2 and alpha = 0 for q = 1.
struct KernelDecayReport {
    double diag_sum = 0.0;  // weighted diagonal-difference partial sum
    double off_sum = 0.0;   // weighted off-diagonal-difference partial sum
    double last_term = 0.0; // largest weighted term in the outer third
    bool pass = false;
};

/// Checks that the weighted difference terms have died out by the far edge of
/// the tabulated range: every term in the outer third must be below tol_tail.
KernelDecayReport kernel_decay_check(const MarchenkoKernel& F, int q, double tol_tail = 1e-10);

/// Constant-background decay test.  There F(n, m) depends on n + m only, so
/// the kernel reduces to f(k) = F on anti-diagonals and the class condition
/// is  sum |n| |f(n +- 2) - f(n)| < infinity.
struct DifferenceDecayReport {
    std::vector<double> terms; // |n| |f(n + 2s) - f(n)| over the tabulated range
    std::vector<long> index;   // the n each term belongs to
    double tail_max = 0.0;     // largest term with |n| >= tail_start
    bool pass = false;
};

DifferenceDecayReport kernel_difference_check(const MarchenkoKernel& F, double tol_tail = 1e-8,
                                              long tail_start = 40);

} // namespace jacobi

#endif
