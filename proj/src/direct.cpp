#include "jacobi/direct.hpp"
#include "jacobi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace jacobi {

namespace {

// Stored range of the windowed recursion.  The matching region must contain
// site 0 on both sides even when the override window does not.
long store_lo(const Coefficients& c) { return std::min<long>(c.window_lo(), 0) - 2; }
long store_hi(const Coefficients& c) { return std::max<long>(c.window_hi(), 0) + 2; }

} // namespace

JostSolution::JostSolution(const Coefficients& c, HalfAxis side, Complex lambda, Rim rim)
    : side_(side),
      lambda_(lambda),
      rim_(rim),
      lo_(store_lo(c)),
      hi_(store_hi(c)),
      wb_own_(c.background(side), lambda, rim),
      wb_opp_(c.background(opposite(side)), lambda, rim)
{
    vals_.resize(static_cast<std::size_t>(hi_ - lo_ + 1));
    auto at = [&](long n) -> Complex& { return vals_[static_cast<std::size_t>(n - lo_)]; };

    const Branch own = weyl_branch(side);
    if (side == HalfAxis::plus) {
        at(hi_) = wb_own_.value(own, hi_);
        at(hi_ - 1) = wb_own_.value(own, hi_ - 1);
        for (long n = hi_ - 1; n > lo_; --n)
            at(n - 1) = ((lambda - c.b(static_cast<int>(n))) * at(n) -
                         c.a(static_cast<int>(n)) * at(n + 1)) /
                        c.a(static_cast<int>(n - 1));
    } else {
        at(lo_) = wb_own_.value(own, lo_);
        at(lo_ + 1) = wb_own_.value(own, lo_ + 1);
        for (long n = lo_ + 1; n < hi_; ++n)
            at(n + 1) = ((lambda - c.b(static_cast<int>(n))) * at(n) -
                         c.a(static_cast<int>(n - 1)) * at(n - 1)) /
                        c.a(static_cast<int>(n));
    }

    // Match to the opposite-background Floquet pair at the two outermost
    // stored sites on the far side.
    const long m0 = side == HalfAxis::plus ? lo_ : hi_ - 1;
    const Complex ur0 = wb_opp_.value(Branch::decaying_right, m0);
    const Complex ur1 = wb_opp_.value(Branch::decaying_right, m0 + 1);
    const Complex ul0 = wb_opp_.value(Branch::decaying_left, m0);
    const Complex ul1 = wb_opp_.value(Branch::decaying_left, m0 + 1);
    const Complex det = ur0 * ul1 - ur1 * ul0;
    if (std::abs(det) < 1e-300)
        throw NumericalError("degenerate Floquet pair while matching a Jost solution");
    far_r_ = (at(m0) * ul1 - at(m0 + 1) * ul0) / det;
    far_l_ = (ur0 * at(m0 + 1) - ur1 * at(m0)) / det;
}

Complex JostSolution::operator()(long n) const
{
    if (n >= lo_ && n <= hi_)
        return vals_[static_cast<std::size_t>(n - lo_)];
    if ((side_ == HalfAxis::plus && n > hi_) || (side_ == HalfAxis::minus && n < lo_))
        return wb_own_.value(weyl_branch(side_), n);
    return far_r_ * wb_opp_.value(Branch::decaying_right, n) +
           far_l_ * wb_opp_.value(Branch::decaying_left, n);
}

Complex JostSolution::own_multiplier() const
{
    return wb_own_.multiplier(weyl_branch(side_));
}

Complex wronskian(const Coefficients& c, const JostSolution& f, const JostSolution& g, long n)
{
    return c.a(static_cast<int>(n)) * (f(n) * g(n + 1) - f(n + 1) * g(n));
}

Complex wronskian(const Coefficients& c, Complex lambda, Rim rim)
{
    JostSolution fm(c, HalfAxis::minus, lambda, rim);
    JostSolution fp(c, HalfAxis::plus, lambda, rim);
    return wronskian(c, fm, fp);
}

Complex wronskian_tilde(const Coefficients& c, const WeylDivisor& div_minus,
                        const WeylDivisor& div_plus, Complex lambda, Rim rim)
{
    return delta_factor(div_minus, lambda) * delta_factor(div_plus, lambda) *
           wronskian(c, lambda, rim);
}

namespace {

// Real part of the pole-free Wronskian on the real axis off the spectrum,
// NaN where the evaluation fails (band-edge degeneracy).
double wtilde_real(const Coefficients& c, const WeylDivisor& dm, const WeylDivisor& dp, double x)
{
    try {
        return wronskian_tilde(c, dm, dp, Complex(x)).real();
    } catch (const NumericalError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

std::vector<double> find_eigenvalues(const Coefficients& c, double tol_root, double tol_edge)
{
    const BandSet sig =
        BandSet::unite(spectrum(c.background(HalfAxis::minus), tol_edge),
                       spectrum(c.background(HalfAxis::plus), tol_edge));

    double amax = 0.0, bmax = 0.0;
    for (int n = c.window_lo() - 1; n <= c.window_hi() + 1; ++n) {
        amax = std::max(amax, c.a(n));
        bmax = std::max(bmax, std::abs(c.b(n)));
    }
    for (HalfAxis s : {HalfAxis::minus, HalfAxis::plus}) {
        const int p = background_period(c.background(s));
        for (int n = 0; n < p; ++n) {
            amax = std::max(amax, background_a(c.background(s), n));
            bmax = std::max(bmax, std::abs(background_b(c.background(s), n)));
        }
    }
    const double B = bmax + 2.0 * amax + 1.0;

    // Gaps of the joint spectrum inside [-B, B].
    std::vector<std::pair<double, double>> gaps;
    double left = -B;
    for (const Band& b : sig.bands()) {
        if (b.lo > left)
            gaps.emplace_back(left, std::min(b.lo, B));
        left = std::max(left, b.hi);
    }
    if (left < B)
        gaps.emplace_back(left, B);

    const WeylDivisor dm = weyl_divisor(c.background(HalfAxis::minus), HalfAxis::minus, tol_edge);
    const WeylDivisor dp = weyl_divisor(c.background(HalfAxis::plus), HalfAxis::plus, tol_edge);

    std::vector<double> out;
    constexpr int scan = 4096;
    for (auto [lo, hi] : gaps) {
        if (!(hi > lo))
            continue;
        // Stay clear of band edges, where the Floquet pair degenerates.
        const double pad = 1e-9 * std::max(1.0, hi - lo);
        lo += pad;
        hi -= pad;
        double xp = lo;
        double fp_ = wtilde_real(c, dm, dp, xp);
        for (int k = 1; k <= scan; ++k) {
            const double x = lo + (hi - lo) * k / scan;
            const double f = wtilde_real(c, dm, dp, x);
            if (std::isfinite(fp_) && std::isfinite(f) && fp_ * f < 0.0) {
                double a = xp, b = x, fa = fp_;
                while (b - a > tol_root) {
                    const double m = 0.5 * (a + b);
                    const double fm = wtilde_real(c, dm, dp, m);
                    if (!std::isfinite(fm))
                        break;
                    if (fa * fm <= 0.0)
                        b = m;
                    else {
                        a = m;
                        fa = fm;
                    }
                }
                out.push_back(0.5 * (a + b));
            }
            xp = x;
            fp_ = f;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Exact tail  sum_{n = start, start + dir, ...} |coef|^2 |psi(br, n)|^2  of a
// pure Floquet branch: one period block summed directly, the rest geometric.
double floquet_tail_sq(const WeylBasis& wb, Branch br, Complex coef, long start, int dir)
{
    const int p = wb.period();
    double block = 0.0;
    for (int r = 0; r < p; ++r)
        block += std::norm(coef * wb.value(br, start + dir * r));
    const double ratio = dir > 0 ? std::norm(wb.multiplier(br)) : 1.0 / std::norm(wb.multiplier(br));
    if (!(ratio < 1.0))
        throw NumericalError("non-decaying tail in norming-constant sum");
    return block / (1.0 - ratio);
}

} // namespace

double norming_constant(const Coefficients& c, HalfAxis side, double lambda_k)
{
    const JostSolution f(c, side, Complex(lambda_k));
    const long lo = store_lo(c), hi = store_hi(c);

    double s = 0.0;
    for (long n = lo; n <= hi; ++n)
        s += std::norm(f(n));

    // Own-side tail: the Jost solution equals the background branch there.
    // Far-side tail: project onto the decaying branch; the growing component
    // vanishes at a true eigenvalue.
    if (side == HalfAxis::plus) {
        s += floquet_tail_sq(f.own_basis(), Branch::decaying_right, Complex(1.0), hi + 1, +1);
        s += floquet_tail_sq(f.opposite_basis(), Branch::decaying_left,
                             f.far_coefficient(Branch::decaying_left), lo - 1, -1);
    } else {
        s += floquet_tail_sq(f.own_basis(), Branch::decaying_left, Complex(1.0), lo - 1, -1);
        s += floquet_tail_sq(f.opposite_basis(), Branch::decaying_right,
                             f.far_coefficient(Branch::decaying_right), hi + 1, +1);
    }

    const WeylDivisor dv = weyl_divisor(c.background(side), side);
    const double d = std::abs(delta_factor(dv, Complex(lambda_k)));
    return 1.0 / (d * d * s);
}

ScatteringNode scattering_at(const Coefficients& c, HalfAxis side, double lambda)
{
    const Complex lam(lambda);
    JostSolution fm(c, HalfAxis::minus, lam);
    JostSolution fp(c, HalfAxis::plus, lam);
    const Complex W = wronskian(c, fm, fp);
    const Complex g = green_diagonal(c.background(side), lam);
    ScatteringNode n;
    n.lambda = lambda;
    n.T = 1.0 / (g * W);
    if (side == HalfAxis::plus) {
        // R_+ = W(conj phi_+, phi_-) / W
        const Complex w1 = c.a(0) * (std::conj(fp(0)) * fm(1) - std::conj(fp(1)) * fm(0));
        n.R = w1 / W;
    } else {
        // R_- = -W(conj phi_-, phi_+) / W
        const Complex w1 = c.a(0) * (std::conj(fm(0)) * fp(1) - std::conj(fm(1)) * fp(0));
        n.R = -w1 / W;
    }
    return n;
}

ScatteringData compute_scattering(const Coefficients& c, int per_band, double tol_edge,
                                  double tol_root)
{
    if (per_band < 2)
        throw InvalidInputError("per_band must be at least 2");

    ScatteringData sd;
    sd.bg_minus = c.background(HalfAxis::minus);
    sd.bg_plus = c.background(HalfAxis::plus);
    sd.per_band = per_band;

    const BandSet sig_p = spectrum(sd.bg_plus, tol_edge);
    const BandSet sig_m = spectrum(sd.bg_minus, tol_edge);
    const SpectralSets sets = spectral_sets(sig_p, sig_m);

    auto fill_nodes = [&](HalfAxis side) {
        const Background& bg = c.background(side);
        const BandSet& bands = side == HalfAxis::plus ? sig_p : sig_m;
        const BandSet& other = side == HalfAxis::plus ? sig_m : sig_p;
        // R and T have square-root kinks at edges of the opposite spectrum
        // that fall inside the integration bands; split panels there so the
        // cosine rule keeps its accuracy.
        const std::vector<Band> panels = split_bands(bands, other.edges());
        std::vector<ScatteringNode> nodes;
        for (const QuadratureNode& q : quadrature_grid_upper(bg, panels, per_band)) {
            ScatteringNode n = scattering_at(c, side, q.pt.lambda);
            n.weight = q.weight;
            nodes.push_back(n);
        }
        return nodes;
    };
    sd.nodes_plus = fill_nodes(HalfAxis::plus);
    sd.nodes_minus = fill_nodes(HalfAxis::minus);

    auto fill_one_sided = [&](HalfAxis opp_side, const BandSet& bands) {
        // Samples of |T_opp|^2 with d(omega_opp) weights, on sigma_opp^(1),u.
        std::vector<OneSidedNode> nodes;
        const Background& bg = c.background(opp_side);
        for (const QuadratureNode& q : quadrature_grid_upper(bg, bands, per_band)) {
            const Complex lam(q.pt.lambda);
            const Complex W = wronskian(c, lam);
            const Complex g = green_diagonal(bg, lam);
            OneSidedNode n;
            n.lambda = q.pt.lambda;
            n.weight = q.weight;
            n.T_abs2 = std::norm(1.0 / (g * W));
            nodes.push_back(n);
        }
        return nodes;
    };
    sd.one_sided_plus = fill_one_sided(HalfAxis::minus, sets.sigma1_minus);
    sd.one_sided_minus = fill_one_sided(HalfAxis::plus, sets.sigma1_plus);

    sd.eigenvalues = find_eigenvalues(c, tol_root, tol_edge);
    for (double lk : sd.eigenvalues) {
        sd.gamma_plus.push_back(norming_constant(c, HalfAxis::plus, lk));
        sd.gamma_minus.push_back(norming_constant(c, HalfAxis::minus, lk));
    }
    return sd;
}

Eigen::MatrixXd transformation_kernel(const Coefficients& c, HalfAxis side, long n_lo, long n_hi,
                                      int per_band)
{
    if (n_hi < n_lo)
        throw InvalidInputError("empty site window for the transformation kernel");
    const Background& bg = c.background(side);
    const BandSet bands = spectrum(bg);
    const BandSet other = spectrum(c.background(opposite(side)));
    const std::vector<Band> panels = split_bands(bands, other.edges());
    const long N = n_hi - n_lo + 1;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
    for (const QuadratureNode& q : quadrature_grid_upper(bg, panels, per_band)) {
        const Complex lam(q.pt.lambda);
        const JostSolution f(c, side, lam);
        const WeylBasis wb(bg, lam);
        const Branch br = weyl_branch(side);
        for (long i = 0; i < N; ++i) {
            const Complex fi = f(n_lo + i);
            for (long j = 0; j < N; ++j) {
                // upper rim + conjugate lower rim = twice the real part
                const Complex term = q.weight * fi * std::conj(wb.value(br, n_lo + j));
                K(i, j) += 2.0 * term.real();
            }
        }
    }
    return K;
}

} // namespace jacobi
