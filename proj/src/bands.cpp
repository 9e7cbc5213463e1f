#include "jacobi/bands.hpp"

#include "jacobi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace jacobi {

namespace {

std::vector<Band> normalized(std::vector<Band> v)
{
    for (const Band& b : v)
        if (!(b.lo < b.hi))
            throw InvalidInputError("band with lo >= hi");
    std::sort(v.begin(), v.end(), [](const Band& x, const Band& y) { return x.lo < y.lo; });
    std::vector<Band> out;
    for (const Band& b : v) {
        if (!out.empty() && b.lo < out.back().hi)
            throw InvalidInputError("bands with overlapping interiors");
        if (!out.empty() && b.lo == out.back().hi)
            out.back().hi = b.hi; // touching bands merge
        else
            out.push_back(b);
    }
    return out;
}

} // namespace

BandSet::BandSet(std::vector<Band> bands) : bands_(normalized(std::move(bands))) {}

double BandSet::lower() const
{
    if (bands_.empty())
        throw InvalidInputError("lower() on empty BandSet");
    return bands_.front().lo;
}

double BandSet::upper() const
{
    if (bands_.empty())
        throw InvalidInputError("upper() on empty BandSet");
    return bands_.back().hi;
}

bool BandSet::contains(double lambda, double tol) const
{
    for (const Band& b : bands_)
        if (lambda >= b.lo - tol && lambda <= b.hi + tol)
            return true;
    return false;
}

std::vector<double> BandSet::edges() const
{
    std::vector<double> e;
    e.reserve(2 * bands_.size());
    for (const Band& b : bands_) {
        e.push_back(b.lo);
        e.push_back(b.hi);
    }
    return e;
}

double BandSet::total_length() const
{
    double s = 0.0;
    for (const Band& b : bands_)
        s += b.length();
    return s;
}

BandSet BandSet::unite(const BandSet& a, const BandSet& b)
{
    std::vector<Band> all = a.bands();
    all.insert(all.end(), b.bands().begin(), b.bands().end());
    std::sort(all.begin(), all.end(), [](const Band& x, const Band& y) { return x.lo < y.lo; });
    std::vector<Band> out;
    for (const Band& c : all) {
        if (out.empty() || c.lo > out.back().hi)
            out.push_back(c);
        else
            out.back().hi = std::max(out.back().hi, c.hi);
    }
    return BandSet(std::move(out));
}

BandSet BandSet::intersect(const BandSet& a, const BandSet& b)
{
    std::vector<Band> out;
    for (const Band& x : a.bands())
        for (const Band& y : b.bands()) {
            double lo = std::max(x.lo, y.lo);
            double hi = std::min(x.hi, y.hi);
            if (lo < hi)
                out.push_back({lo, hi});
        }
    return BandSet(std::move(out));
}

BandSet BandSet::difference_closure(const BandSet& a, const BandSet& b)
{
    std::vector<Band> out;
    for (const Band& x : a.bands()) {
        double cur = x.lo;
        for (const Band& y : b.bands()) {
            if (y.hi <= cur || y.lo >= x.hi)
                continue;
            if (y.lo > cur)
                out.push_back({cur, y.lo});
            cur = std::max(cur, y.hi);
        }
        if (cur < x.hi)
            out.push_back({cur, x.hi});
    }
    return BandSet(std::move(out));
}

SpectralSets spectral_sets(const BandSet& sigma_plus, const BandSet& sigma_minus)
{
    SpectralSets s;
    s.sigma = BandSet::unite(sigma_plus, sigma_minus);
    s.sigma2 = BandSet::intersect(sigma_plus, sigma_minus);
    s.sigma1_plus = BandSet::difference_closure(sigma_plus, s.sigma2);
    s.sigma1_minus = BandSet::difference_closure(sigma_minus, s.sigma2);

    // Sigma_v = boundary(sigma) plus common boundary points of the one-sided parts.
    std::set<double> v;
    for (double e : s.sigma.edges())
        v.insert(e);
    const double tol = 1e-14 * (1.0 + std::abs(s.sigma.empty() ? 0.0 : s.sigma.upper()));
    for (double ep : s.sigma1_plus.edges())
        for (double em : s.sigma1_minus.edges())
            if (std::abs(ep - em) <= tol)
                v.insert(ep);
    s.virtual_levels.assign(v.begin(), v.end());
    return s;
}

} // namespace jacobi
