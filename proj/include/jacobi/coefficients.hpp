#ifndef JACOBI_COEFFICIENTS_HPP
#define JACOBI_COEFFICIENTS_HPP

#include "jacobi/background.hpp"

#include <map>

namespace jacobi {

/// Doubly infinite Jacobi coefficients (a(n), b(n)) that agree with a right
/// background for n >= 0 and a left background for n < 0, up to finitely many
/// overrides inside a compact window.  Operators of this shape are exactly
/// the class the forward/inverse machinery handles: outside the window every
/// quantity has an exact background closed form, inside it we recurse.
class Coefficients {
public:
    Coefficients(Background bg_minus, Background bg_plus);

    /// Override a single coefficient.  set_a throws unless v > 0.
    void set_a(int n, double v);
    void set_b(int n, double v);

    double a(int n) const;
    double b(int n) const;

    /// Baseline values, ignoring overrides.
    double a_background(int n) const;
    double b_background(int n) const;

    const Background& background(HalfAxis side) const;

    /// Smallest window [lo, hi] containing every override (and always the
    /// matching site 0); a(n), b(n) equal their baseline outside it.
    int window_lo() const { return window_lo_; }
    int window_hi() const { return window_hi_; }

    /// (H f)(n) = a(n-1) f(n-1) + b(n) f(n) + a(n) f(n+1).
    Complex apply(const std::map<int, Complex>& f, int n) const;

private:
    Background bg_minus_;
    Background bg_plus_;
    std::map<int, double> a_over_;
    std::map<int, double> b_over_;
    int window_lo_ = 0;
    int window_hi_ = 0;

    void grow_window(int n);
};

} // namespace jacobi

#endif
