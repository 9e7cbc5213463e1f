#ifndef JACOBI_QUADRATURE_HPP
#define JACOBI_QUADRATURE_HPP

#include "jacobi/background.hpp"
#include "jacobi/bands.hpp"

#include <vector>

namespace jacobi {

/// One node of the rim-contour quadrature:  oint f dω  ≈  Σ weight * f(pt).
/// The weight already contains the spectral measure dω = g dλ / (2πi) and the
/// rim orientation, so plain weighted sums implement the contour integrals.
struct QuadratureNode {
    SpectralPoint pt;
    Complex weight;
};

/// Gauss-Legendre rule in the Chebyshev angle per band, both rims.  The
/// cosine substitution absorbs the inverse-square-root singularity of g at
/// band edges, and makes the integrand analytic in the angle so the rule
/// converges spectrally.  Nodes never touch a band edge.
///
/// per_band = nodes per band per rim (so 2*per_band nodes per band).
std::vector<QuadratureNode> quadrature_grid(const Background& bg, const BandSet& bands,
                                            int per_band);

/// Upper-rim half of the grid only (implements  ∫_{σ^u} f dω ).
std::vector<QuadratureNode> quadrature_grid_upper(const Background& bg, const BandSet& bands,
                                                  int per_band);

/// Panel decomposition of a band set with extra panel boundaries at the given
/// interior cut points.  Integrands with square-root branch points (e.g. at
/// edges of the opposite spectrum inside a band) keep fast quadrature
/// convergence when every branch point is a panel endpoint.
std::vector<Band> split_bands(const BandSet& bands, const std::vector<double>& cuts);

/// Upper-rim grid over an explicit panel list, per_band nodes per panel.
std::vector<QuadratureNode> quadrature_grid_upper(const Background& bg,
                                                  const std::vector<Band>& panels, int per_band);

} // namespace jacobi

#endif
