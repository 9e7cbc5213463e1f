#include "jacobi/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace jacobi;

namespace {

// oint psi(n) conj(psi(m)) domega = delta_{nm} for the Weyl solutions of one
// background; the upper-rim half contributes twice its real part.
double orthogonality_residual(const Background& bg, Branch br, int per_band, long n, long m)
{
    const BandSet s = spectrum(bg);
    Complex acc = 0.0;
    for (const QuadratureNode& q : quadrature_grid_upper(bg, s, per_band)) {
        const WeylBasis wb(bg, Complex(q.pt.lambda), q.pt.rim);
        acc += q.weight * wb.value(br, n) * std::conj(wb.value(br, m));
    }
    const double target = n == m ? 1.0 : 0.0;
    return std::abs(2.0 * acc.real() - target);
}

} // namespace

TEST_CASE("orthogonality of the constant-background Weyl solutions")
{
    const Background bg(ConstantBackground{});
    for (long n : {0L, 2L})
        for (long m : {0L, 1L, 2L, 7L})
            CHECK(orthogonality_residual(bg, Branch::decaying_right, 64, n, m) < 1e-12);
}

TEST_CASE("orthogonality of the period-2 Bloch solutions")
{
    const Background bg(PeriodicBackground{{0.5, 0.5}, {0.5, -0.5}});
    for (long n : {-2L, 0L, 1L})
        for (long m : {-2L, 0L, 1L, 4L})
            CHECK(orthogonality_residual(bg, Branch::decaying_right, 96, n, m) < 1e-8);
}

TEST_CASE("lower-rim nodes are the conjugates of the upper-rim nodes")
{
    const Background bg(ConstantBackground{0.5, 1.0});
    const BandSet s = spectrum(bg);
    const auto both = quadrature_grid(bg, s, 16);
    REQUIRE(both.size() == 32);
    for (std::size_t k = 0; k + 1 < both.size(); k += 2) {
        CHECK(both[k].pt.rim == Rim::upper);
        CHECK(both[k + 1].pt.rim == Rim::lower);
        CHECK(both[k].pt.lambda == both[k + 1].pt.lambda);
        CHECK(both[k].weight == std::conj(both[k + 1].weight));
    }
}

TEST_CASE("total spectral measure of one band is 1 per multiplicity")
{
    // oint domega = 1: with f == psi(0) conj(psi(0)) = 1 the orthogonality
    // relation at n = m = 0 reduces to the total-mass statement.
    const Background bg(ConstantBackground{0.3, -2.0});
    CHECK(orthogonality_residual(bg, Branch::decaying_right, 48, 0, 0) < 1e-13);
}

TEST_CASE("split_bands inserts interior cuts only")
{
    const BandSet s({{-1.0, 1.0}, {2.0, 4.0}});
    const auto panels = split_bands(s, {0.0, 2.0, 3.5, 7.0});
    REQUIRE(panels.size() == 4);
    CHECK(panels[0].lo == doctest::Approx(-1.0));
    CHECK(panels[0].hi == doctest::Approx(0.0));
    CHECK(panels[1].lo == doctest::Approx(0.0));
    CHECK(panels[1].hi == doctest::Approx(1.0));
    CHECK(panels[2].hi == doctest::Approx(3.5));
    CHECK(panels[3].hi == doctest::Approx(4.0));
}

TEST_CASE("splitting a band does not change the integral")
{
    const Background bg(ConstantBackground{});
    const BandSet s = spectrum(bg);
    auto moment = [&](const std::vector<QuadratureNode>& grid) {
        Complex acc = 0.0;
        for (const QuadratureNode& q : grid) {
            const WeylBasis wb(bg, Complex(q.pt.lambda), q.pt.rim);
            acc += q.weight * Complex(q.pt.lambda) * wb.value(Branch::decaying_right, 1) *
                   std::conj(wb.value(Branch::decaying_right, 0));
        }
        return 2.0 * acc.real();
    };
    const double whole = moment(quadrature_grid_upper(bg, s, 80));
    const double split = moment(quadrature_grid_upper(bg, split_bands(s, {0.37}), 80));
    CHECK(std::abs(whole - split) < 1e-12);
}

TEST_CASE("quadrature converges fast for an integrand with a square-root kink at a cut")
{
    const Background bg(ConstantBackground{});
    const BandSet s = spectrum(bg);
    auto integral = [&](int per_band) {
        Complex acc = 0.0;
        for (const QuadratureNode& q : quadrature_grid_upper(bg, split_bands(s, {0.0}), per_band))
            acc += q.weight * std::sqrt(std::abs(q.pt.lambda));
        return 2.0 * acc.real();
    };
    // self-convergence against a fine reference
    const double ref = integral(512);
    CHECK(std::abs(integral(48) - ref) < 1e-10);
}
