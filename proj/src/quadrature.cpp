#include "jacobi/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace jacobi {

namespace {

constexpr double pi = std::numbers::pi;

// Gauss-Legendre nodes and weights on (-1, 1) by the Golub-Welsch eigenvalue
// method, cached per order.
struct GaussRule {
    Eigen::VectorXd x;
    Eigen::VectorXd w;
};

const GaussRule& gauss_legendre(int n)
{
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd off(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k)
        off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off);
    GaussRule r;
    r.x = es.eigenvalues();
    r.w = 2.0 * es.eigenvectors().row(0).transpose().array().square();
    return cache.emplace(n, std::move(r)).first->second;
}

void append_band(std::vector<QuadratureNode>& out, const Background& bg, const Band& band,
                 int n, bool upper_only)
{
    const double h = 0.5 * band.length();
    const double mid = band.mid();
    // Substitute lambda = mid + h cos t, t in [0, pi]. The substitution makes
    // the integrand analytic in t across both inverse-square-root band edges
    // and square-root branch points placed at panel ends; Gauss-Legendre in t
    // then converges spectrally without relying on endpoint symmetry.
    const GaussRule& gl = gauss_legendre(n);
    for (int k = 0; k < n; ++k) {
        const double t = 0.5 * pi * (gl.x[k] + 1.0);   // oriented hi -> lo in t
        const double dt = 0.5 * pi * gl.w[k];
        const double lambda = mid + h * std::cos(t);   // descending in t
        const Complex g_u = green_diagonal(bg, Complex(lambda), Rim::upper);
        // ∫_u f g dλ/(2πi) over the band, oriented lo -> hi
        const Complex w_u = dt / (2.0 * pi * Complex(0.0, 1.0)) * g_u * h * std::sin(t);
        out.push_back({{lambda, Rim::upper}, w_u});
        if (!upper_only)
            out.push_back({{lambda, Rim::lower}, std::conj(w_u)});
    }
}

} // namespace

std::vector<QuadratureNode> quadrature_grid(const Background& bg, const BandSet& bands, int per_band)
{
    std::vector<QuadratureNode> out;
    out.reserve(2 * static_cast<std::size_t>(per_band) * bands.size());
    for (const Band& b : bands.bands())
        append_band(out, bg, b, per_band, false);
    return out;
}

std::vector<QuadratureNode> quadrature_grid_upper(const Background& bg, const BandSet& bands,
                                                  int per_band)
{
    std::vector<QuadratureNode> out;
    out.reserve(static_cast<std::size_t>(per_band) * bands.size());
    for (const Band& b : bands.bands())
        append_band(out, bg, b, per_band, true);
    return out;
}

std::vector<Band> split_bands(const BandSet& bands, const std::vector<double>& cuts)
{
    std::vector<Band> out;
    for (const Band& b : bands.bands()) {
        std::vector<double> inner;
        const double tol = 1e-12 * std::max(1.0, b.length());
        for (double c : cuts)
            if (c > b.lo + tol && c < b.hi - tol)
                inner.push_back(c);
        std::sort(inner.begin(), inner.end());
        double lo = b.lo;
        for (double c : inner) {
            out.push_back({lo, c});
            lo = c;
        }
        out.push_back({lo, b.hi});
    }
    return out;
}

std::vector<QuadratureNode> quadrature_grid_upper(const Background& bg,
                                                  const std::vector<Band>& panels, int per_band)
{
    std::vector<QuadratureNode> out;
    out.reserve(static_cast<std::size_t>(per_band) * panels.size());
    for (const Band& b : panels)
        append_band(out, bg, b, per_band, true);
    return out;
}

} // namespace jacobi
