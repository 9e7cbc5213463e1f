#include "jacobi/marchenko.hpp"
#include "jacobi/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace jacobi {

MarchenkoKernel build_kernel(const ScatteringData& sd, HalfAxis side, long lo, long hi,
                             double tol_quad)
{
    if (hi < lo)
        throw InvalidInputError("empty site range for the Marchenko kernel");

    MarchenkoKernel out;
    out.side = side;
    out.lo = lo;
    out.hi = hi;
    out.bg = side == HalfAxis::plus ? sd.bg_plus : sd.bg_minus;

    const long N = hi - lo + 1;
    const Branch br = weyl_branch(side);
    const auto& nodes = side == HalfAxis::plus ? sd.nodes_plus : sd.nodes_minus;
    const auto& one_sided = side == HalfAxis::plus ? sd.one_sided_plus : sd.one_sided_minus;
    const auto& gammas = side == HalfAxis::plus ? sd.gamma_plus : sd.gamma_minus;

    // Kernel entries are sums of thousands of same-sign node contributions
    // that can reach ~1e7 on the non-decaying side; accumulate in extended
    // precision so the summation round-off stays below what the Marchenko
    // solve can amplify.
    using LComplex = std::complex<long double>;
    using MatrixXlc = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;
    MatrixXlc acc = MatrixXlc::Zero(N, N);
    Eigen::VectorXcd psi(N);

    // Reflection term over the own-side spectrum.  Upper rim is stored; the
    // lower rim is its conjugate, so the pair contributes twice the real part.
    for (const ScatteringNode& nd : nodes) {
        const WeylBasis wb(out.bg, Complex(nd.lambda));
        for (long i = 0; i < N; ++i)
            psi(i) = wb.value(br, lo + i);
        const Eigen::MatrixXcd o = (nd.weight * nd.R) * (psi * psi.transpose());
        acc += (2.0 * o.real()).cast<LComplex>();
    }

    // Transmission term over the opposite one-sided bands (upper rim only).
    for (const OneSidedNode& nd : one_sided) {
        const WeylBasis wb(out.bg, Complex(nd.lambda));
        for (long i = 0; i < N; ++i)
            psi(i) = wb.value(br, lo + i);
        acc += ((nd.weight * nd.T_abs2) * (psi * psi.transpose())).cast<LComplex>();
    }

    // Bound states.
    const WeylDivisor dv = weyl_divisor(out.bg, side);
    for (std::size_t k = 0; k < sd.eigenvalues.size(); ++k) {
        const Complex lam(sd.eigenvalues[k]);
        const WeylBasis wb(out.bg, lam);
        const Complex d = delta_factor(dv, lam);
        for (long i = 0; i < N; ++i)
            psi(i) = d * wb.value(br, lo + i);
        acc += (gammas[k] * (psi * psi.transpose())).cast<LComplex>();
    }

    const double imag_resid = static_cast<double>(
        acc.imag().cwiseAbs().maxCoeff());
    if (imag_resid > 10.0 * tol_quad)
        throw NumericalError("Marchenko kernel has a non-real residue of " +
                             std::to_string(imag_resid));
    out.F = acc.real().cast<double>();
    // Symmetrize away quadrature round-off.
    out.F = 0.5 * (out.F + out.F.transpose()).eval();
    return out;
}

GlmRow solve_glm_row(const MarchenkoKernel& F, long n)
{
    const int s = axis_sign(F.side);
    if (n < F.lo || n > F.hi)
        throw InvalidInputError("site outside the tabulated Marchenko kernel");
    const long D = F.side == HalfAxis::plus ? F.hi - n : n - F.lo;

    GlmRow row;
    row.n = n;
    Eigen::VectorXd x(D);
    if (D > 0) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(D, D);
        Eigen::VectorXd rhs(D);
        for (long i = 0; i < D; ++i) {
            const long m = n + s * (i + 1);
            rhs(i) = -F(n, m);
            for (long j = 0; j < D; ++j)
                A(i, j) += F(n + s * (j + 1), m);
        }
        x = A.partialPivLu().solve(rhs);
    }
    row.kappa = x;

    double diag = 1.0 + F(n, n);
    for (long j = 0; j < D; ++j)
        diag += x(j) * F(n + s * (j + 1), n);
    if (!(diag > 0.0))
        throw DataNotInClassError("Marchenko diagonal relation yields a non-positive square");
    row.Knn = 1.0 / std::sqrt(diag);
    return row;
}

Reconstruction reconstruct(const MarchenkoKernel& F, long n_lo, long n_hi)
{
    if (n_hi < n_lo)
        throw InvalidInputError("empty reconstruction window");
    if (F.lo > n_lo - 1 || F.hi < n_hi + 1)
        throw InvalidInputError("Marchenko kernel range too small for the reconstruction window");

    // Rows n_lo - 1 .. n_hi + 1; row k holds K(n,n) and kappa(n, n +- 1).
    const long r_lo = n_lo - 1, r_hi = n_hi + 1;
    std::vector<double> Knn(static_cast<std::size_t>(r_hi - r_lo + 1));
    std::vector<double> kap1(Knn.size(), 0.0);
    for (long n = r_lo; n <= r_hi; ++n) {
        const GlmRow row = solve_glm_row(F, n);
        Knn[static_cast<std::size_t>(n - r_lo)] = row.Knn;
        if (row.kappa.size() > 0)
            kap1[static_cast<std::size_t>(n - r_lo)] = row.kappa(0);
    }
    auto K = [&](long n) { return Knn[static_cast<std::size_t>(n - r_lo)]; };
    auto k1 = [&](long n) { return kap1[static_cast<std::size_t>(n - r_lo)]; };

    Reconstruction rec;
    rec.lo = n_lo;
    rec.hi = n_hi;
    for (long n = n_lo; n <= n_hi; ++n) {
        const double ap = background_a(F.bg, n);
        const double ap1 = background_a(F.bg, n - 1);
        const double bp = background_b(F.bg, n);
        if (F.side == HalfAxis::plus) {
            rec.a.push_back(ap * K(n + 1) / K(n));
            rec.b.push_back(bp + ap * k1(n) - ap1 * k1(n - 1));
        } else {
            rec.a.push_back(ap * K(n) / K(n + 1));
            rec.b.push_back(bp + ap1 * k1(n) - ap * k1(n + 1));
        }
    }
    return rec;
}

DifferenceDecayReport kernel_difference_check(const MarchenkoKernel& F, double tol_tail,
                                              long tail_start)
{
    if (!is_constant(F.bg))
        throw InvalidInputError("anti-diagonal kernel reduction requires a constant background");
    const int s = axis_sign(F.side);

    // f(k) = F(n, m) for any split n + m = k inside the tabulated square.
    auto f = [&](long k) {
        const long n = k / 2;
        return F(n, k - n);
    };

    DifferenceDecayReport rep;
    rep.pass = true;
    // k and k + 2s must both split inside [lo, hi]^2.
    for (long k = 2 * F.lo; k <= 2 * F.hi; ++k) {
        const long k2 = k + 2 * s;
        if (k2 < 2 * F.lo || k2 > 2 * F.hi)
            continue;
        const double t = std::abs(static_cast<double>(k)) * std::abs(f(k2) - f(k));
        rep.terms.push_back(t);
        rep.index.push_back(k);
        if (s * k >= tail_start) {
            rep.tail_max = std::max(rep.tail_max, t);
            if (t > tol_tail)
                rep.pass = false;
        }
    }
    return rep;
}

KernelDecayReport kernel_decay_check(const MarchenkoKernel& F, int q, double tol_tail)
{
    const double alpha = q >= 2 ? static_cast<double>(q) : 0.0;
    const int s = axis_sign(F.side);
    KernelDecayReport rep;

    const long span = F.hi - F.lo;
    // The outer third of the range, toward side*inf.
    const long cut = F.side == HalfAxis::plus ? F.hi - span / 3 : F.lo + span / 3;

    bool tail_ok = true;
    for (long n = F.lo + 1; n <= F.hi - 1; ++n) {
        const double w = std::pow(std::abs(static_cast<double>(n)) + 1.0, alpha);
        const double d1 = w * std::abs(F(n, n) - F(n + s, n + s));
        const double d2 =
            w * std::abs(background_a(F.bg, n) * F(n, n + 1) -
                         background_a(F.bg, n - 1) * F(n - 1, n));
        rep.diag_sum += d1;
        rep.off_sum += d2;
        const bool outer = F.side == HalfAxis::plus ? n >= cut : n <= cut;
        if (outer) {
            rep.last_term = std::max(rep.last_term, std::max(d1, d2));
            if (d1 > tol_tail || d2 > tol_tail)
                tail_ok = false;
        }
    }
    rep.pass = tail_ok;
    return rep;
}

} // namespace jacobi
