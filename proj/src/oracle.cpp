#include "jacobi/oracle.hpp"
#include "jacobi/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace jacobi {

std::vector<double> finite_section_eigen(const Coefficients& c, int N)
{
    if (N < 1)
        throw InvalidInputError("finite section needs N >= 1");
    const int size = 2 * N + 1;
    Eigen::VectorXd diag(size), subdiag(size - 1);
    for (int i = 0; i < size; ++i)
        diag(i) = c.b(i - N);
    for (int i = 0; i + 1 < size; ++i)
        subdiag(i) = c.a(i - N);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("tridiagonal eigensolver failed");
    const auto& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

Complex series_jost(const Coefficients& c, HalfAxis side, Complex lambda, long n, int terms,
                    Rim rim)
{
    const Background& bg = c.background(side);
    const WeylBasis wb(bg, lambda, rim);
    const Branch own = weyl_branch(side);
    const Complex g = wb.green();
    const int s = axis_sign(side);

    // The perturbation of H relative to the own-side background vanishes for
    // side*m beyond the window, so the Volterra sum is finite.  Past the
    // window the equation collapses to its seed.
    // The steplike change at site 0 is itself part of the perturbation seen
    // from either background, hence the clamps toward 0.
    const long whi = std::max<long>(c.window_hi(), -1);
    const long wlo = std::min<long>(c.window_lo(), 0);
    if (side == HalfAxis::plus && n > whi)
        return wb.value(own, n);
    if (side == HalfAxis::minus && n < wlo)
        return wb.value(own, n);
    const long edge = n;
    const long far = side == HalfAxis::plus ? whi + 1 : wlo - 1;
    const long lo = std::min(edge, far) - 1, hi = std::max(edge, far) + 1;
    const long N = hi - lo + 1;

    std::vector<Complex> psi(N), psib(N);
    for (long i = 0; i < N; ++i) {
        psi[i] = wb.value(own, lo + i);
        psib[i] = wb.value(twin(own), lo + i);
    }
    auto PSI = [&](long m) { return psi[static_cast<std::size_t>(m - lo)]; };
    auto PSIB = [&](long m) { return psib[static_cast<std::size_t>(m - lo)]; };

    std::vector<Complex> x(N), xn(N);
    for (long i = 0; i < N; ++i)
        x[i] = psi[i];

    auto da = [&](long m) { return c.a(static_cast<int>(m)) - background_a(bg, m); };
    auto db = [&](long m) { return c.b(static_cast<int>(m)) - background_b(bg, m); };

    for (int it = 0; it < terms; ++it) {
        double inc = 0.0, scale = 0.0;
        for (long j = lo + 1; j <= hi - 1; ++j) {
            Complex acc = PSI(j);
            for (long m = j + s; m >= lo + 1 && m <= hi - 1; m += s) {
                const Complex pert = da(m - 1) * x[m - 1 - lo] + db(m) * x[m - lo] +
                                     da(m) * x[m + 1 - lo];
                if (pert != Complex(0.0))
                    acc += g * (PSI(j) * PSIB(m) - PSIB(j) * PSI(m)) * pert;
            }
            xn[j - lo] = acc;
            inc = std::max(inc, std::abs(acc - x[j - lo]));
            scale = std::max(scale, std::abs(acc));
        }
        // boundary sites never feed a perturbed term; keep their seed values
        xn[0] = x[0];
        xn[N - 1] = x[N - 1];
        x.swap(xn);
        if (inc <= 1e-12 * std::max(1.0, scale))
            return x[static_cast<std::size_t>(n - lo)];
    }
    throw NumericalError("summation-equation Jost iteration did not converge");
}

Eigen::VectorXd glm_iterative(const MarchenkoKernel& F, long n, int max_iter)
{
    const int s = axis_sign(F.side);
    const long D = F.side == HalfAxis::plus ? F.hi - n : n - F.lo;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(D), xn(D);
    double prev_inc = std::numeric_limits<double>::infinity();
    int growing = 0;
    for (int it = 0; it < max_iter; ++it) {
        for (long i = 0; i < D; ++i) {
            const long m = n + s * (i + 1);
            double acc = -F(n, m);
            for (long j = 0; j < D; ++j)
                acc -= x(j) * F(n + s * (j + 1), m);
            xn(i) = acc;
        }
        const double inc = D > 0 ? (xn - x).cwiseAbs().maxCoeff() : 0.0;
        x = xn;
        if (inc <= 1e-13 * std::max(1.0, x.cwiseAbs().maxCoeff()))
            return x;
        growing = inc > prev_inc ? growing + 1 : 0;
        if (growing >= 5 || !std::isfinite(inc))
            throw NumericalError("Marchenko Neumann iteration diverges");
        prev_inc = inc;
    }
    throw NumericalError("Marchenko Neumann iteration did not converge");
}

} // namespace jacobi
