#ifndef JACOBI_BACKGROUND_HPP
#define JACOBI_BACKGROUND_HPP

#include "jacobi/bands.hpp"

#include <complex>
#include <variant>
#include <vector>

namespace jacobi {

using Complex = std::complex<double>;

/// Which half axis a quantity is attached to ('+' = right, '-' = left).
enum class HalfAxis { plus, minus };

inline HalfAxis opposite(HalfAxis s) { return s == HalfAxis::plus ? HalfAxis::minus : HalfAxis::plus; }
inline int axis_sign(HalfAxis s) { return s == HalfAxis::plus ? +1 : -1; }

/// Constant Jacobi operator  H f(n) = a (f(n+1)+f(n-1)) + b f(n),  a > 0.
/// Spectrum is the single band [b-2a, b+2a].
struct ConstantBackground {
    double a = 0.5;
    double b = 0.0;
};

/// Periodic Jacobi operator with period p coefficient sequences.
struct PeriodicBackground {
    std::vector<double> a; // p positive reals, a[n mod p]
    std::vector<double> b; // p reals
    int period() const { return static_cast<int>(a.size()); }
};

using Background = std::variant<ConstantBackground, PeriodicBackground>;

void check_valid(const Background& bg);
double background_a(const Background& bg, long n);
double background_b(const Background& bg, long n);
int background_period(const Background& bg);
bool is_constant(const Background& bg);

/// Band spectrum.  Constant: [b-2a, b+2a].  Periodic: closure of
/// { |Floquet discriminant| <= 2 }, edges bisected to tol_edge.
BandSet spectrum(const Background& bg, double tol_edge = 1e-12);

/// Root z of  lambda - b = a (z + 1/z)  with |z| <= 1.  For real lambda inside
/// the open band the rim fixes the branch: the upper rim maps to the lower unit
/// semicircle (Im z < 0), which makes Im g(lambda^u) > 0.
Complex joukowski(const ConstantBackground& bg, Complex lambda, Rim rim = Rim::upper);

/// Inverse map z -> b + a (z + 1/z).
inline Complex joukowski_inverse(const ConstantBackground& bg, Complex z)
{
    return bg.b + bg.a * (z + 1.0 / z);
}

/// Which of the two Floquet/Weyl branches: the one square-summable near +inf
/// or the one square-summable near -inf.  For a background in the '+' role its
/// Weyl solution psi^+ is decaying_right; for the '-' role, decaying_left.
enum class Branch { decaying_right, decaying_left };

inline Branch weyl_branch(HalfAxis role) { return role == HalfAxis::plus ? Branch::decaying_right : Branch::decaying_left; }
inline Branch twin(Branch b) { return b == Branch::decaying_right ? Branch::decaying_left : Branch::decaying_right; }

/// Both Weyl/Bloch branches of one background at a fixed spectral parameter,
/// normalized to 1 at n = 0.  Values at arbitrary n extend the base period by
/// exact Floquet multiplier powers, so the recursion never runs against its
/// growth direction.
class WeylBasis {
  public:
    /// Throws NumericalError at band edges (degenerate monodromy) and flags
    /// (but tolerates) divisor poles: value() at a pole branch throws.
    WeylBasis(const Background& bg, Complex lambda, Rim rim = Rim::upper);

    Complex lambda() const { return lambda_; }
    Rim rim() const { return rim_; }

    /// psi(branch, n); branch normalized so psi(0) = 1.
    Complex value(Branch br, long n) const;
    /// Per-period Floquet multiplier of the branch (= z^{+-1} for constant bg).
    Complex multiplier(Branch br) const;
    /// Diagonal Green function g(lambda) = 1 / (a(0) (psi_r(1) - psi_l(1))).
    Complex green() const { return green_; }
    /// True if the branch's natural normalization psi(0)=1 fails (Weyl pole).
    bool at_pole(Branch br) const;

    int period() const { return period_; }

  private:
    Complex lambda_;
    Rim rim_;
    int period_;
    Complex mult_right_, mult_left_;
    std::vector<Complex> base_right_, base_left_; // psi(0..p-1)
    bool pole_right_ = false, pole_left_ = false;
    Complex green_;
};

/// Convenience wrapper: the Weyl solution psi^{role} at a single site.
Complex weyl_solution(const Background& bg, HalfAxis role, Complex lambda, long n, Rim rim = Rim::upper);

/// Diagonal Green function g(lambda) of the background.
Complex green_diagonal(const Background& bg, Complex lambda, Rim rim = Rim::upper);

/// One entry (mu_j, sheet) of the Weyl divisor, with its classification.
struct DivisorEntry {
    double mu = 0.0;
    int sheet = 0;        // +1: pole on the role branch, -1: on the twin, 0: none detected
    bool in_M = false;    // interior pole of psi(.,1) on the role branch
    bool in_Mhat = false; // mu at a band edge
    bool ambiguous = false;
};

struct WeylDivisor {
    std::vector<DivisorEntry> entries;
    std::vector<double> M() const;
    std::vector<double> Mhat() const;
};

/// Locates one mu_j per open-gap closure as the zero of g in the gap and
/// classifies it.  Constant backgrounds have no gaps: empty divisor.
WeylDivisor weyl_divisor(const Background& bg, HalfAxis role, double tol_edge = 1e-12);

/// delta(lambda) = prod_{mu in M} (lambda - mu);  empty product = 1.
Complex delta_factor(const WeylDivisor& div, Complex lambda);
/// delta_hat = delta * prod_{mu in Mhat} sqrt(lambda - mu), standard branch.
Complex delta_hat_factor(const WeylDivisor& div, Complex lambda);

} // namespace jacobi

#endif
