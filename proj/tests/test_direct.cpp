#include "jacobi/direct.hpp"

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

Coefficients disjoint_step()
{
    Coefficients c{Background(ConstantBackground{0.5, 3.0}), Background(ConstantBackground{})};
    c.set_b(0, 1.2);
    c.set_a(-1, 0.6);
    return c;
}

double residual(const Coefficients& c, const JostSolution& f, long n)
{
    const Complex lhs = c.a(static_cast<int>(n - 1)) * f(n - 1) +
                        c.b(static_cast<int>(n)) * f(n) + c.a(static_cast<int>(n)) * f(n + 1);
    // relative: Jost solutions grow exponentially on the opposite half axis
    const double scale = std::max(1.0, std::abs(f(n)));
    return std::abs(lhs - f.lambda() * f(n)) / scale;
}

} // namespace

TEST_CASE("Jost solutions solve the perturbed recurrence everywhere")
{
    const Coefficients c = disjoint_step();
    for (Complex lam : {Complex(0.4), Complex(3.1), Complex(1.5), Complex(0.2, 0.3)}) {
        for (HalfAxis side : {HalfAxis::plus, HalfAxis::minus}) {
            const JostSolution f(c, side, lam);
            for (long n = -12; n <= 12; ++n)
                CHECK(residual(c, f, n) < 1e-10);
        }
    }
}

TEST_CASE("Wronskian of two Jost solutions is site-independent")
{
    const Coefficients c = disjoint_step();
    const Complex lam(0.7);
    const JostSolution fm(c, HalfAxis::minus, lam);
    const JostSolution fp(c, HalfAxis::plus, lam);
    const Complex w0 = wronskian(c, fm, fp, 0);
    for (long n : {-9L, -3L, 2L, 8L})
        CHECK(std::abs(wronskian(c, fm, fp, n) - w0) < 1e-12 * std::abs(w0));
}

TEST_CASE("lower-rim scattering quantities are conjugates of the upper rim")
{
    const Coefficients c = disjoint_step();
    const Complex lam(0.45);
    CHECK(std::abs(wronskian(c, lam, Rim::lower) - std::conj(wronskian(c, lam, Rim::upper))) <
          1e-13);
    const JostSolution fu(c, HalfAxis::plus, lam, Rim::upper);
    const JostSolution fl(c, HalfAxis::plus, lam, Rim::lower);
    for (long n : {-6L, 0L, 5L})
        CHECK(std::abs(fl(n) - std::conj(fu(n))) < 1e-12);
}

TEST_CASE("rank-one perturbation: bound state at sqrt(2) with norming constants 1/sqrt(2)")
{
    const Coefficients c = rank_one();
    const auto ev = find_eigenvalues(c);
    REQUIRE(ev.size() == 1);
    CHECK(std::abs(ev[0] - std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(norming_constant(c, HalfAxis::plus, ev[0]) - 1.0 / std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(norming_constant(c, HalfAxis::minus, ev[0]) - 1.0 / std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("rank-one perturbation: |R|^2 = |T|^2 = 1/2 at the band center")
{
    const Coefficients c = rank_one();
    const ScatteringNode nd = scattering_at(c, HalfAxis::plus, 0.0);
    CHECK(std::abs(std::norm(nd.R) - 0.5) < 1e-12);
    CHECK(std::abs(std::norm(nd.T) - 0.5) < 1e-12);
    // equal backgrounds: |R|^2 + |T|^2 = 1 on the whole band
    for (double lam : {-0.8, -0.3, 0.6}) {
        const ScatteringNode x = scattering_at(c, HalfAxis::plus, lam);
        CHECK(std::abs(std::norm(x.R) + std::norm(x.T) - 1.0) < 1e-12);
    }
}

TEST_CASE("free operator scatters trivially")
{
    const Coefficients c{Background(ConstantBackground{}), Background(ConstantBackground{})};
    CHECK(find_eigenvalues(c).empty());
    for (double lam : {-0.9, 0.0, 0.5}) {
        const ScatteringNode nd = scattering_at(c, HalfAxis::plus, lam);
        CHECK(std::abs(nd.R) < 1e-12);
        CHECK(std::abs(nd.T - 1.0) < 1e-12);
    }
}

TEST_CASE("steplike eigenvalue matches the finite-section value frozen from the oracle")
{
    // 401-site truncation of the disjoint-step fixture puts its single bound
    // state at 1.2326726640229... between the two bands.
    const Coefficients c = disjoint_step();
    const auto ev = find_eigenvalues(c);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0] == doctest::Approx(1.2326726639694).epsilon(1e-10));
}

TEST_CASE("transformation kernel of the rank-one fixture")
{
    // K(n, m) = delta_{nm} for n >= 0; row -1 is (1, -2, 0, ...).
    const Coefficients c = rank_one();
    const Eigen::MatrixXd K = transformation_kernel(c, HalfAxis::plus, -2, 30, 96);
    auto at = [&](long n, long m) { return K(n + 2, m + 2); };
    CHECK(std::abs(at(-1, -1) - 1.0) < 1e-9);
    CHECK(std::abs(at(-1, 0) + 2.0) < 1e-9);
    CHECK(std::abs(at(-1, 1)) < 1e-9);
    CHECK(std::abs(at(0, 0) - 1.0) < 1e-9);
    CHECK(std::abs(at(0, 1)) < 1e-9);
    CHECK(std::abs(at(1, 1) - 1.0) < 1e-9);
    // triangularity: vanishes below the diagonal for the '+' side
    CHECK(std::abs(at(0, -1)) < 1e-9);
    CHECK(std::abs(at(2, 1)) < 1e-9);
}

TEST_CASE("Jost expansion through the transformation kernel reproduces the solution")
{
    const Coefficients c = rank_one();
    const Eigen::MatrixXd K = transformation_kernel(c, HalfAxis::plus, -2, 30, 96);
    const Complex lam(0.3);
    const JostSolution f(c, HalfAxis::plus, lam);
    const WeylBasis wb(c.background(HalfAxis::plus), lam);
    for (long n : {-1L, 0L, 1L}) {
        Complex s = 0.0;
        for (long m = n; m <= 30; ++m)
            s += K(n + 2, m + 2) * wb.value(Branch::decaying_right, m);
        CHECK(std::abs(s - f(n)) < 1e-9);
    }
}

TEST_CASE("scattering data grids stay clear of band edges and carry weights")
{
    const Coefficients c = disjoint_step();
    const ScatteringData sd = compute_scattering(c, 32);
    const BandSet sp = spectrum(sd.bg_plus);
    CHECK(sd.nodes_plus.size() == 32);
    for (const ScatteringNode& nd : sd.nodes_plus) {
        CHECK(sp.contains(nd.lambda));
        CHECK(std::abs(nd.weight) > 0.0);
    }
    CHECK(!sd.one_sided_plus.empty());
    CHECK(!sd.one_sided_minus.empty());
    REQUIRE(sd.eigenvalues.size() == 1);
    REQUIRE(sd.gamma_plus.size() == 1);
    CHECK(sd.gamma_plus[0] > 0.0);
}
