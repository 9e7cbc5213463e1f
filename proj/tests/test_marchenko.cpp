#include "jacobi/marchenko.hpp"
#include "jacobi/errors.hpp"
#include "jacobi/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace jacobi;

namespace {

Coefficients rank_one()
{
    Coefficients c{Background(ConstantBackground{}), Background(ConstantBackground{})};
    c.set_b(0, 1.0);
    return c;
}

// Closed-form '+' kernel of the rank-one fixture: F(n, m) = f(n + m) with
// f(k) = 0 for k >= 0 and f(-k) = ((1+sqrt2)^k - (1-sqrt2)^k)/sqrt2 (twice
// the Pell numbers: 2, 4, 10, 24, ...).
double rank_one_f(long k)
{
    if (k >= 0)
        return 0.0;
    const double s = std::sqrt(2.0);
    return (std::pow(1.0 + s, static_cast<double>(-k)) -
            std::pow(1.0 - s, static_cast<double>(-k))) /
           s;
}

MarchenkoKernel analytic_rank_one_kernel(long lo, long hi)
{
    MarchenkoKernel F;
    F.side = HalfAxis::plus;
    F.lo = lo;
    F.hi = hi;
    F.bg = Background(ConstantBackground{});
    const long N = hi - lo + 1;
    F.F.resize(N, N);
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
            F.F(i, j) = rank_one_f(lo + i + lo + j);
    return F;
}

} // namespace

TEST_CASE("rank-one Marchenko kernel matches its closed form")
{
    const Coefficients c = rank_one();
    const ScatteringData sd = compute_scattering(c, 128);
    const MarchenkoKernel F = build_kernel(sd, HalfAxis::plus, -3, 40);
    for (long n = -3; n <= 4; ++n)
        for (long m = n; m <= 4; ++m)
            CHECK(std::abs(F(n, m) - rank_one_f(n + m)) < 1e-10);
}

TEST_CASE("kernel depends on n+m only over a constant background")
{
    const Coefficients c = rank_one();
    const ScatteringData sd = compute_scattering(c, 96);
    const MarchenkoKernel F = build_kernel(sd, HalfAxis::plus, -2, 30);
    for (long k : {-2L, -1L, 0L, 4L})
        CHECK(std::abs(F(k + 1, -1) - F(k, 0)) < 1e-10);
}

TEST_CASE("GLM rows of the analytic rank-one kernel are exact integers")
{
    const MarchenkoKernel F = analytic_rank_one_kernel(-4, 80);
    const GlmRow r0 = solve_glm_row(F, 0);
    CHECK(std::abs(r0.Knn - 1.0) < 1e-12);
    for (long j = 0; j < r0.kappa.size(); ++j)
        CHECK(std::abs(r0.kappa(j)) < 1e-12);

    const GlmRow rm1 = solve_glm_row(F, -1);
    CHECK(std::abs(rm1.Knn - 1.0) < 1e-12);
    CHECK(std::abs(rm1.kappa(0) + 2.0) < 1e-12);
    CHECK(std::abs(rm1.kappa(1)) < 1e-12);
}

TEST_CASE("reconstruction from the analytic kernel reproduces the rank-one coefficients")
{
    const MarchenkoKernel F = analytic_rank_one_kernel(-4, 80);
    const Coefficients c = rank_one();
    const Reconstruction r = reconstruct(F, -2, 3);
    for (long n = -2; n <= 3; ++n) {
        const std::size_t i = static_cast<std::size_t>(n + 2);
        CHECK(std::abs(r.a[i] - c.a(static_cast<int>(n))) < 1e-12);
        CHECK(std::abs(r.b[i] - c.b(static_cast<int>(n))) < 1e-12);
    }
}

TEST_CASE("engine roundtrip on a two-sided step with a and b deviations")
{
    Coefficients c{Background(ConstantBackground{0.5, 3.0}), Background(ConstantBackground{})};
    c.set_b(0, 1.2);
    c.set_a(-1, 0.6);
    const ScatteringData sd = compute_scattering(c, 128);
    const MarchenkoKernel Fp = build_kernel(sd, HalfAxis::plus, -4, 45);
    const MarchenkoKernel Fm = build_kernel(sd, HalfAxis::minus, -45, 4);
    const Reconstruction rp = reconstruct(Fp, -1, 3);
    const Reconstruction rm = reconstruct(Fm, -3, 1);
    for (long n = -1; n <= 3; ++n) {
        const std::size_t i = static_cast<std::size_t>(n + 1);
        CHECK(std::abs(rp.a[i] - c.a(static_cast<int>(n))) < 1e-7);
        CHECK(std::abs(rp.b[i] - c.b(static_cast<int>(n))) < 1e-7);
    }
    for (long n = -3; n <= 1; ++n) {
        const std::size_t i = static_cast<std::size_t>(n + 3);
        CHECK(std::abs(rm.a[i] - c.a(static_cast<int>(n))) < 1e-7);
        CHECK(std::abs(rm.b[i] - c.b(static_cast<int>(n))) < 1e-7);
    }
}

TEST_CASE("Neumann iteration agrees with the dense GLM solve")
{
    const Coefficients c = rank_one();
    const ScatteringData sd = compute_scattering(c, 128);
    const MarchenkoKernel F = build_kernel(sd, HalfAxis::plus, -2, 40);
    for (long n : {0L, 1L, 3L}) {
        const GlmRow direct = solve_glm_row(F, n);
        const Eigen::VectorXd iter = glm_iterative(F, n);
        REQUIRE(direct.kappa.size() == iter.size());
        CHECK((direct.kappa - iter).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("moment-weighted decay check passes on a compact fixture")
{
    const Coefficients c = rank_one();
    const ScatteringData sd = compute_scattering(c, 192);
    const MarchenkoKernel F = build_kernel(sd, HalfAxis::plus, -2, 60);
    const KernelDecayReport r = kernel_decay_check(F, 2);
    CHECK(r.pass);
    CHECK(r.last_term < 1e-10);
}

TEST_CASE("anti-diagonal difference test passes on a compact fixture")
{
    const Coefficients c = rank_one();
    const ScatteringData sd = compute_scattering(c, 224);
    const MarchenkoKernel F = build_kernel(sd, HalfAxis::plus, -2, 80);
    const DifferenceDecayReport r = kernel_difference_check(F);
    CHECK(r.pass);
    CHECK(r.tail_max < 1e-8);
}

TEST_CASE("negative control: a harmonic kernel tail is reported non-convergent")
{
    // f(k) ~ 1/k gives |n||f(n+2)-f(n)| ~ 2/n, a divergent series.
    MarchenkoKernel F;
    F.side = HalfAxis::plus;
    F.lo = 0;
    F.hi = 120;
    F.bg = Background(ConstantBackground{});
    const long N = F.hi - F.lo + 1;
    F.F.resize(N, N);
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j)
            F.F(i, j) = 1.0 / (1.0 + static_cast<double>(i + j));
    const DifferenceDecayReport r = kernel_difference_check(F);
    CHECK(!r.pass);
    CHECK(r.tail_max > 1e-8);
}

TEST_CASE("non-positive diagonal relation is flagged as data outside the class")
{
    MarchenkoKernel F;
    F.side = HalfAxis::plus;
    F.lo = 0;
    F.hi = 10;
    F.bg = Background(ConstantBackground{});
    F.F = Eigen::MatrixXd::Zero(11, 11);
    F.F(0, 0) = -2.0; // 1 + F(0,0) < 0
    CHECK_THROWS_AS(solve_glm_row(F, 0), DataNotInClassError);
}
