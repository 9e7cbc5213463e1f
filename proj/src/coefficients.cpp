#include "jacobi/coefficients.hpp"
#include "jacobi/errors.hpp"

#include <algorithm>

namespace jacobi {

Coefficients::Coefficients(Background bg_minus, Background bg_plus)
    : bg_minus_(std::move(bg_minus)), bg_plus_(std::move(bg_plus))
{
    check_valid(bg_minus_);
    check_valid(bg_plus_);
}

void Coefficients::grow_window(int n)
{
    window_lo_ = std::min(window_lo_, n);
    window_hi_ = std::max(window_hi_, n);
}

void Coefficients::set_a(int n, double v)
{
    if (!(v > 0.0))
        throw InvalidInputError("off-diagonal coefficient a(n) must be positive");
    a_over_[n] = v;
    grow_window(n);
    grow_window(n + 1); // a(n) couples sites n and n+1
}

void Coefficients::set_b(int n, double v)
{
    b_over_[n] = v;
    grow_window(n);
}

double Coefficients::a_background(int n) const
{
    return background_a(n >= 0 ? bg_plus_ : bg_minus_, n);
}

double Coefficients::b_background(int n) const
{
    return background_b(n >= 0 ? bg_plus_ : bg_minus_, n);
}

double Coefficients::a(int n) const
{
    auto it = a_over_.find(n);
    return it != a_over_.end() ? it->second : a_background(n);
}

double Coefficients::b(int n) const
{
    auto it = b_over_.find(n);
    return it != b_over_.end() ? it->second : b_background(n);
}

const Background& Coefficients::background(HalfAxis side) const
{
    return side == HalfAxis::plus ? bg_plus_ : bg_minus_;
}

Complex Coefficients::apply(const std::map<int, Complex>& f, int n) const
{
    auto at = [&](int m) -> Complex {
        auto it = f.find(m);
        return it != f.end() ? it->second : Complex(0.0);
    };
    return a(n - 1) * at(n - 1) + b(n) * at(n) + a(n) * at(n + 1);
}

} // namespace jacobi
