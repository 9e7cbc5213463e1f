#include "jacobi/background.hpp"

#include "jacobi/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace jacobi {

namespace {

using Mat2c = Eigen::Matrix2cd;

Complex pow_int(Complex w, long k)
{
    if (k == 0)
        return 1.0;
    Complex base = k > 0 ? w : 1.0 / w;
    unsigned long e = static_cast<unsigned long>(k > 0 ? k : -k);
    Complex r = 1.0;
    while (e) {
        if (e & 1u)
            r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

/// One-step transfer matrix mapping (f(n), f(n-1)) -> (f(n+1), f(n)).
Mat2c step_matrix(const Background& bg, long n, Complex lambda)
{
    const double an = background_a(bg, n);
    const double anm1 = background_a(bg, n - 1);
    const double bn = background_b(bg, n);
    Mat2c t;
    t << (lambda - bn) / an, -anm1 / an, 1.0, 0.0;
    return t;
}

Mat2c monodromy(const Background& bg, Complex lambda)
{
    Mat2c m = Mat2c::Identity();
    const int p = background_period(bg);
    for (long n = 0; n < p; ++n)
        m = step_matrix(bg, n, lambda) * m;
    return m;
}

double discriminant(const Background& bg, double lambda)
{
    return std::real(monodromy(bg, Complex(lambda)).trace());
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol)
{
    double flo = f(lo);
    if (flo == 0.0)
        return lo;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0)
            return mid;
        if ((flo > 0) == (fm > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

void check_valid(const Background& bg)
{
    if (const auto* c = std::get_if<ConstantBackground>(&bg)) {
        if (!(c->a > 0.0))
            throw InvalidInputError("constant background requires a > 0");
        return;
    }
    const auto& p = std::get<PeriodicBackground>(bg);
    if (p.a.empty() || p.a.size() != p.b.size())
        throw InvalidInputError("periodic background needs equal-length nonempty a, b");
    for (double a : p.a)
        if (!(a > 0.0))
            throw InvalidInputError("periodic background requires all a(n) > 0");
}

double background_a(const Background& bg, long n)
{
    if (const auto* c = std::get_if<ConstantBackground>(&bg))
        return c->a;
    const auto& p = std::get<PeriodicBackground>(bg);
    const long q = static_cast<long>(p.a.size());
    return p.a[static_cast<std::size_t>(((n % q) + q) % q)];
}

double background_b(const Background& bg, long n)
{
    if (const auto* c = std::get_if<ConstantBackground>(&bg))
        return c->b;
    const auto& p = std::get<PeriodicBackground>(bg);
    const long q = static_cast<long>(p.b.size());
    return p.b[static_cast<std::size_t>(((n % q) + q) % q)];
}

int background_period(const Background& bg)
{
    if (std::holds_alternative<ConstantBackground>(bg))
        return 1;
    return std::get<PeriodicBackground>(bg).period();
}

bool is_constant(const Background& bg)
{
    return std::holds_alternative<ConstantBackground>(bg);
}

BandSet spectrum(const Background& bg, double tol_edge)
{
    check_valid(bg);
    if (const auto* c = std::get_if<ConstantBackground>(&bg))
        return BandSet({{c->b - 2.0 * c->a, c->b + 2.0 * c->a}});

    const auto& pb = std::get<PeriodicBackground>(bg);
    const double bmax = *std::max_element(pb.b.begin(), pb.b.end());
    const double bmin = *std::min_element(pb.b.begin(), pb.b.end());
    const double amax = *std::max_element(pb.a.begin(), pb.a.end());
    const double lo = bmin - 2.0 * amax - 1e-9;
    const double hi = bmax + 2.0 * amax + 1e-9;

    // Edges are the crossings of the Floquet discriminant through +-2.
    const int scan = 2048;
    std::vector<double> roots;
    auto dm2 = [&](double x) { return discriminant(bg, x) - 2.0; };
    auto dp2 = [&](double x) { return discriminant(bg, x) + 2.0; };
    for (auto& f : {std::function<double(double)>(dm2), std::function<double(double)>(dp2)}) {
        double prev_x = lo, prev_f = f(lo);
        for (int i = 1; i <= scan; ++i) {
            double x = lo + (hi - lo) * i / scan;
            double fx = f(x);
            if ((prev_f <= 0.0) != (fx <= 0.0)) {
                double r = bisect(f, prev_x, x, tol_edge);
                // Newton polish: the cosine-substitution quadrature needs edges
                // at machine accuracy, and bisection stops at tol_edge.
                for (int it = 0; it < 4; ++it) {
                    const double step = 1e-7 * std::max(1.0, std::abs(r));
                    const double df = (f(r + step) - f(r - step)) / (2.0 * step);
                    if (df == 0.0)
                        break;
                    const double r2 = r - f(r) / df;
                    if (!(r2 > prev_x && r2 < x))
                        break;
                    r = r2;
                }
                roots.push_back(r);
            }
            prev_x = x;
            prev_f = fx;
        }
    }
    std::sort(roots.begin(), roots.end());
    if (roots.size() % 2 != 0) {
        std::ostringstream msg;
        msg << "band-edge root finding produced " << roots.size()
            << " edges on [" << lo << ", " << hi << "]";
        throw NumericalError(msg.str());
    }

    std::vector<Band> bands;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        double mid = 0.5 * (roots[i] + roots[i + 1]);
        if (std::abs(discriminant(bg, mid)) < 2.0)
            bands.push_back({roots[i], roots[i + 1]});
    }
    // A closed gap shows up as a pair of double roots a hair apart; fuse it.
    const double fuse = 1e-8 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    for (std::size_t i = 0; i + 1 < bands.size();) {
        if (bands[i + 1].lo - bands[i].hi < fuse) {
            bands[i].hi = bands[i + 1].hi;
            bands.erase(bands.begin() + static_cast<long>(i) + 1);
        } else {
            ++i;
        }
    }
    if (bands.empty() || static_cast<int>(bands.size()) > pb.period())
        throw NumericalError("inconsistent Floquet band count");
    return BandSet(std::move(bands));
}

Complex joukowski(const ConstantBackground& bg, Complex lambda, Rim rim)
{
    const Complex zeta = (lambda - bg.b) / (2.0 * bg.a);
    if (lambda.imag() == 0.0 && std::abs(zeta.real()) <= 1.0) {
        // on the closed band: rim fixes the semicircle (upper rim -> Im z < 0)
        const double x = zeta.real();
        const double s = rim == Rim::upper ? 1.0 : -1.0;
        return Complex(x, -s * std::sqrt(std::max(0.0, 1.0 - x * x)));
    }
    const Complex s = std::sqrt(zeta - 1.0) * std::sqrt(zeta + 1.0);
    const Complex z1 = zeta - s;
    const Complex z2 = zeta + s;
    return std::abs(z1) <= std::abs(z2) ? z1 : z2;
}

WeylBasis::WeylBasis(const Background& bg, Complex lambda, Rim rim)
    : lambda_(lambda), rim_(rim), period_(background_period(bg))
{
    if (const auto* c = std::get_if<ConstantBackground>(&bg)) {
        const Complex z = joukowski(*c, lambda, rim);
        mult_right_ = z;
        mult_left_ = 1.0 / z;
        base_right_ = {1.0};
        base_left_ = {1.0};
        green_ = 1.0 / (c->a * (z - 1.0 / z));
        return;
    }

    const Mat2c m = monodromy(bg, lambda);
    const Complex tr = m.trace();
    const Complex disc = std::sqrt(tr * tr - 4.0);
    Complex w1 = 0.5 * (tr + disc);
    Complex w2 = 0.5 * (tr - disc);
    // guard against cancellation: w1 w2 = det M = 1
    if (std::abs(w1) >= std::abs(w2))
        w2 = 1.0 / w1;
    else
        w1 = 1.0 / w2;

    auto eigvec = [&](Complex w) -> Eigen::Vector2cd {
        Eigen::Vector2cd v1(m(0, 1), w - m(0, 0));
        Eigen::Vector2cd v2(w - m(1, 1), m(1, 0));
        return v1.norm() >= v2.norm() ? v1 : v2;
    };

    auto build = [&](Complex w, std::vector<Complex>& base, bool& pole) {
        const Eigen::Vector2cd v = eigvec(w);
        const double vn = v.norm();
        if (vn == 0.0)
            throw NumericalError("degenerate monodromy eigenvector (band edge?)");
        pole = std::abs(v(0)) <= 1e-12 * vn;
        base.assign(static_cast<std::size_t>(period_), Complex(0.0));
        if (pole)
            return;
        base[0] = 1.0;
        Complex prev = v(1) / v(0); // psi(-1)
        for (long n = 0; n + 1 < period_; ++n) {
            const Complex next = ((lambda - background_b(bg, n)) * base[static_cast<std::size_t>(n)]
                                  - background_a(bg, n - 1) * prev)
                                 / background_a(bg, n);
            prev = base[static_cast<std::size_t>(n)];
            base[static_cast<std::size_t>(n + 1)] = next;
        }
    };

    auto assign = [&](Complex wr, Complex wl) {
        mult_right_ = wr;
        mult_left_ = wl;
        build(wr, base_right_, pole_right_);
        build(wl, base_left_, pole_left_);
        if (pole_right_ || pole_left_) {
            green_ = std::numeric_limits<double>::infinity();
            return;
        }
        const Complex psi_r1 = period_ > 1 ? base_right_[1] : mult_right_;
        const Complex psi_l1 = period_ > 1 ? base_left_[1] : mult_left_;
        green_ = 1.0 / (background_a(bg, 0) * (psi_r1 - psi_l1));
    };

    const bool on_rim = std::abs(std::abs(w1) - 1.0) < 1e-9 && std::abs(std::abs(w2) - 1.0) < 1e-9
                        && lambda.imag() == 0.0;
    if (!on_rim) {
        if (std::abs(w1) <= std::abs(w2))
            assign(w1, w2);
        else
            assign(w2, w1);
    } else {
        assign(w1, w2);
        const bool want_positive = rim == Rim::upper;
        if ((green_.imag() > 0.0) != want_positive)
            assign(w2, w1);
    }
}

Complex WeylBasis::value(Branch br, long n) const
{
    const bool right = br == Branch::decaying_right;
    if (right ? pole_right_ : pole_left_)
        throw NumericalError("Weyl solution evaluated at a divisor pole");
    const auto& base = right ? base_right_ : base_left_;
    const Complex w = right ? mult_right_ : mult_left_;
    long q = n >= 0 ? n / period_ : -((-n + period_ - 1) / period_);
    long r = n - q * period_;
    return base[static_cast<std::size_t>(r)] * pow_int(w, q);
}

Complex WeylBasis::multiplier(Branch br) const
{
    return br == Branch::decaying_right ? mult_right_ : mult_left_;
}

bool WeylBasis::at_pole(Branch br) const
{
    return br == Branch::decaying_right ? pole_right_ : pole_left_;
}

Complex weyl_solution(const Background& bg, HalfAxis role, Complex lambda, long n, Rim rim)
{
    return WeylBasis(bg, lambda, rim).value(weyl_branch(role), n);
}

Complex green_diagonal(const Background& bg, Complex lambda, Rim rim)
{
    return WeylBasis(bg, lambda, rim).green();
}

std::vector<double> WeylDivisor::M() const
{
    std::vector<double> v;
    for (const auto& e : entries)
        if (e.in_M)
            v.push_back(e.mu);
    return v;
}

std::vector<double> WeylDivisor::Mhat() const
{
    std::vector<double> v;
    for (const auto& e : entries)
        if (e.in_Mhat)
            v.push_back(e.mu);
    return v;
}

WeylDivisor weyl_divisor(const Background& bg, HalfAxis role, double tol_edge)
{
    WeylDivisor div;
    if (is_constant(bg))
        return div; // no gaps, empty divisor

    const BandSet bands = spectrum(bg, tol_edge);
    const Branch role_branch = weyl_branch(role);

    auto g_real = [&](double lam) { return green_diagonal(bg, Complex(lam)).real(); };

    for (std::size_t j = 0; j + 1 < bands.size(); ++j) {
        const double lo = bands[j].hi;
        const double hi = bands[j + 1].lo;
        const double gap = hi - lo;
        const double eps = 1e-7 * gap;

        DivisorEntry entry;
        // g is real in the gap and vanishes exactly at mu_j
        const int scan = 512;
        bool found = false;
        double prev_x = lo + eps, prev_g = g_real(prev_x);
        for (int i = 1; i <= scan; ++i) {
            const double x = lo + eps + (gap - 2 * eps) * i / scan;
            const double gx = g_real(x);
            if ((prev_g <= 0.0) != (gx <= 0.0)) {
                entry.mu = bisect(g_real, prev_x, x, tol_edge);
                found = true;
                break;
            }
            prev_x = x;
            prev_g = gx;
        }
        if (!found) {
            // mu sits at a gap edge: g ~ sqrt(lambda - E) at the edge carrying it
            const double glo = std::abs(g_real(lo + eps));
            const double ghi = std::abs(g_real(hi - eps));
            entry.mu = glo < ghi ? lo : hi;
            entry.in_Mhat = true;
            entry.ambiguous = std::abs(glo - ghi) < 0.1 * std::max(glo, ghi);
            div.entries.push_back(entry);
            continue;
        }

        if (std::min(entry.mu - lo, hi - entry.mu) <= tol_edge) {
            entry.in_Mhat = true;
            div.entries.push_back(entry);
            continue;
        }

        // sheet classification: the branch whose psi(.,1) blows up near mu carries the pole
        const double d = std::min({1e-6, 0.25 * (entry.mu - lo), 0.25 * (hi - entry.mu)});
        const WeylBasis wb(bg, Complex(entry.mu + d));
        double v_role, v_twin;
        try {
            v_role = std::abs(wb.value(role_branch, 1));
            v_twin = std::abs(wb.value(twin(role_branch), 1));
        } catch (const NumericalError&) {
            entry.ambiguous = true;
            div.entries.push_back(entry);
            continue;
        }
        if (v_role > 1e6 * v_twin) {
            entry.sheet = +1;
            entry.in_M = true;
        } else if (v_twin > 1e6 * v_role) {
            entry.sheet = -1;
        } else {
            entry.ambiguous = true;
        }
        div.entries.push_back(entry);
    }
    return div;
}

Complex delta_factor(const WeylDivisor& div, Complex lambda)
{
    Complex d = 1.0;
    for (const auto& e : div.entries)
        if (e.in_M)
            d *= lambda - e.mu;
    return d;
}

Complex delta_hat_factor(const WeylDivisor& div, Complex lambda)
{
    Complex d = delta_factor(div, lambda);
    for (const auto& e : div.entries)
        if (e.in_Mhat)
            d *= std::sqrt(lambda - e.mu);
    return d;
}

} // namespace jacobi
