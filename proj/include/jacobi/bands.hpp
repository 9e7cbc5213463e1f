#ifndef JACOBI_BANDS_HPP
#define JACOBI_BANDS_HPP

#include <vector>

namespace jacobi {

/// Closed spectral band [lo, hi], lo < hi.
struct Band {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

/// Finite union of closed bands with pairwise disjoint interiors,
/// kept sorted in ascending order.
class BandSet {
  public:
    BandSet() = default;
    explicit BandSet(std::vector<Band> bands);

    const std::vector<Band>& bands() const { return bands_; }
    bool empty() const { return bands_.empty(); }
    std::size_t size() const { return bands_.size(); }
    const Band& operator[](std::size_t i) const { return bands_[i]; }

    double lower() const;
    double upper() const;
    bool contains(double lambda, double tol = 0.0) const;
    /// All band endpoints, ascending (set of spectral edges).
    std::vector<double> edges() const;
    double total_length() const;

    static BandSet unite(const BandSet& a, const BandSet& b);
    static BandSet intersect(const BandSet& a, const BandSet& b);
    /// Closure of a \ b.
    static BandSet difference_closure(const BandSet& a, const BandSet& b);

  private:
    std::vector<Band> bands_;
};

/// Which rim of a spectral cut a point sits on: lambda^u = lim from above,
/// lambda^l = lim from below.
enum class Rim { upper, lower };

inline Rim conj_rim(Rim r) { return r == Rim::upper ? Rim::lower : Rim::upper; }

struct SpectralPoint {
    double lambda = 0.0;
    Rim rim = Rim::upper;
};

/// The derived spectral sets of a steplike pair of backgrounds:
/// sigma = union, sigma2 = overlap (multiplicity two),
/// sigma1_* = one-sided parts, plus the possible virtual levels.
struct SpectralSets {
    BandSet sigma;
    BandSet sigma2;
    BandSet sigma1_plus;
    BandSet sigma1_minus;
    std::vector<double> virtual_levels;
};

SpectralSets spectral_sets(const BandSet& sigma_plus, const BandSet& sigma_minus);

} // namespace jacobi

#endif
