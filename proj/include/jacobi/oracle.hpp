#ifndef JACOBI_ORACLE_HPP
#define JACOBI_ORACLE_HPP

#include "jacobi/marchenko.hpp"

namespace jacobi {

// Brute-force references used by the tests.  Everything here is slow on
// purpose and entirely independent of the recursion/dense-solver paths it
// cross-checks.

/// Eigenvalues of the (2N+1)-site finite section (simple truncation) centered
/// at 0, sorted ascending.  Eigenvalues outside the joint band spectrum
/// approximate the bound states with geometric accuracy in N.
std::vector<double> finite_section_eigen(const Coefficients& c, int N);

/// Jost solution through the summation (Volterra) equation
///   phi(n) = psi(n) + sum_{side*(m-n) >= 1} g (psi(n) psi~(m) - psi~(n) psi(m))
///            ((H - H_bg) phi)(m),
/// solved by successive approximations seeded with psi; stops when the sup
/// increment drops below 1e-12.  Throws NumericalError if `terms` successive
/// approximations do not converge.
Complex series_jost(const Coefficients& c, HalfAxis side, Complex lambda, long n, int terms = 200,
                    Rim rim = Rim::upper);

/// Neumann iteration for one Marchenko row:
///   kappa^{s+1}(m) = -F(n,m) - sum_l kappa^s(l) F(l,m),
/// truncated at the kernel boundary.  Returns the same layout as
/// GlmRow::kappa.  Throws NumericalError when the iteration diverges (the
/// dense solve may still be fine; contraction is sufficient, not necessary).
Eigen::VectorXd glm_iterative(const MarchenkoKernel& F, long n, int max_iter = 500);

} // namespace jacobi

#endif
