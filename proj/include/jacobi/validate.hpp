#ifndef JACOBI_VALIDATE_HPP
#define JACOBI_VALIDATE_HPP

#include "jacobi/direct.hpp"
#include "jacobi/marchenko.hpp"

#include <optional>
#include <string>

namespace jacobi {

enum class PropertyId {
    Ia,             // rim conjugation symmetry of R, T
    Ib,             // R = T / conj(T) on the own one-sided bands
    Ic,             // 1 - |R|^2 = (g_own/g_opp) |T|^2 on the overlap
    Id,             // conj(R_+) T_+ + R_- conj(T_+) = 0 on the overlap
    II_consistency, // 1/(T_+ g_+) = 1/(T_- g_-)
    II_norming,     // (d/dl Wtilde(l_k))^2 gamma_+ gamma_- = 1
    II_Tinfty,      // T_+(inf) = T_-(inf) > 0
    III_continuity, // Cauchy refinement of R toward the edges
    III_edge_value, // R -> -1 (or +1) at shared nonresonant edges
    IVq_decay,      // moment-weighted kernel difference sums
    IVq_differences,
    edge_sqrt_law,
};

enum class Verdict { pass, fail, inconclusive };

struct PropertyReport {
    PropertyId property_id;
    double max_residual = 0.0;
    long nodes_checked = 0;
    Verdict verdict = Verdict::inconclusive;
    std::string details;
};

const char* property_name(PropertyId id);
const char* verdict_name(Verdict v);

/// Properties I(a)-(d).  The stored grids of the two sides do not share
/// nodes, so (d) (and the opposite-side factors of (c)) re-evaluate the
/// missing coefficient from the operator; without coefficients those checks
/// come back inconclusive.
std::vector<PropertyReport> check_property_I(const ScatteringData& sd,
                                             const Coefficients* coeffs = nullptr,
                                             double tol_prop = 1e-6);

/// Property II: transmission consistency on the overlap, the norming-constant
/// derivative identity at each eigenvalue, and positivity/equality of T at a
/// large real spectral parameter.  The last two need the coefficients.
std::vector<PropertyReport> check_property_II(const ScatteringData& sd,
                                              const Coefficients* coeffs = nullptr,
                                              double tol_prop = 1e-6);

/// Analysis of one band edge E: dyadic samples from the spectrum side,
/// log-log fit of the regular Wronskian, resonance classification.
struct EdgeAnalysis {
    double edge = 0.0;
    bool resonant = false;
    double fitted_exponent = 0.0;
    Complex fitted_C;        // hat-W / sqrt(lambda - E) at the innermost sample
    Complex w_at_edge;       // extrapolated hat-W(E) (nonresonant case)
    std::vector<double> window; // sampled lambda values
};

EdgeAnalysis edge_analysis(const Coefficients& c, double E, int n_samples = 8,
                           double tol_edge = 1e-12);

/// Property III at the shared band edges: continuity of R along a dyadic
/// refinement and the nonresonant limit value -1 (+1 when the edge carries a
/// hat-M divisor point of that side).
std::vector<PropertyReport> check_property_III(const Coefficients& c, double tol_value = 1e-3,
                                               double tol_edge = 1e-12);

/// Mutual location of two constant-background spectra.
enum class SpectrumCase { nested, disjoint, overlapping };

struct SpectrumClassification {
    SpectrumCase situation = SpectrumCase::nested;
    std::vector<double> sigma_v; // possible virtual levels
    // Edges at which each side's reflection coefficient needs a continuity
    // check: (edge, side) pairs.
    std::vector<std::pair<double, HalfAxis>> edge_checks;
};

SpectrumClassification classify_spectrum_cases(const ConstantBackground& bg_plus,
                                               const ConstantBackground& bg_minus);

} // namespace jacobi

#endif
