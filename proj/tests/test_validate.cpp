#include "jacobi/validate.hpp"
#include "jacobi/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace jacobi;

namespace {

Coefficients overlap_step()
{
    Coefficients c{Background(ConstantBackground{0.5, 1.0}), Background(ConstantBackground{})};
    c.set_b(0, -0.4);
    c.set_a(0, 0.55);
    return c;
}

const PropertyReport& find_report(const std::vector<PropertyReport>& v, PropertyId id)
{
    for (const PropertyReport& r : v)
        if (r.property_id == id)
            return r;
    REQUIRE(false);
    return v.front();
}

} // namespace

TEST_CASE("scattering identities hold on an overlapping two-sided step")
{
    const Coefficients c = overlap_step();
    const ScatteringData sd = compute_scattering(c, 64);
    const auto rep1 = check_property_I(sd, &c);
    for (PropertyId id : {PropertyId::Ia, PropertyId::Ib, PropertyId::Ic, PropertyId::Id}) {
        const PropertyReport& r = find_report(rep1, id);
        CHECK(r.verdict == Verdict::pass);
        CHECK(r.max_residual < 1e-10);
    }
    const auto rep2 = check_property_II(sd, &c);
    CHECK(find_report(rep2, PropertyId::II_consistency).verdict == Verdict::pass);
    CHECK(find_report(rep2, PropertyId::II_norming).verdict == Verdict::pass);
    CHECK(find_report(rep2, PropertyId::II_Tinfty).verdict == Verdict::pass);
}

TEST_CASE("negative control: scaled reflection data fails the unitarity check")
{
    const Coefficients c = overlap_step();
    ScatteringData sd = compute_scattering(c, 64);
    for (ScatteringNode& nd : sd.nodes_plus)
        nd.R *= 1.01;
    const auto rep = check_property_I(sd, &c);
    CHECK(find_report(rep, PropertyId::Ic).verdict == Verdict::fail);
}

TEST_CASE("negative control: doubled norming constants fail the derivative identity")
{
    const Coefficients c = overlap_step();
    ScatteringData sd = compute_scattering(c, 64);
    REQUIRE(!sd.gamma_plus.empty());
    for (double& g : sd.gamma_plus)
        g *= 2.0;
    const auto rep = check_property_II(sd, &c);
    CHECK(find_report(rep, PropertyId::II_norming).verdict == Verdict::fail);
}

TEST_CASE("free band edge is resonant with the square-root law")
{
    const Coefficients c{Background(ConstantBackground{}), Background(ConstantBackground{})};
    const EdgeAnalysis ea = edge_analysis(c, 1.0);
    CHECK(ea.resonant);
    CHECK(ea.fitted_exponent == doctest::Approx(0.5).epsilon(0.04));
    CHECK(std::abs(std::abs(ea.fitted_C) - std::sqrt(2.0)) < 1e-3);
}

TEST_CASE("rank-one fixture is nonresonant at the band edge with limit 1")
{
    Coefficients c{Background(ConstantBackground{}), Background(ConstantBackground{})};
    c.set_b(0, 1.0);
    const EdgeAnalysis ea = edge_analysis(c, 1.0);
    CHECK(!ea.resonant);
    CHECK(std::abs(ea.w_at_edge - 1.0) < 1e-6);
}

TEST_CASE("reflection tends to -1 at shared nonresonant edges")
{
    Coefficients c{Background(ConstantBackground{}), Background(ConstantBackground{})};
    c.set_b(0, 1.0);
    const auto rep = check_property_III(c);
    const PropertyReport& cont = find_report(rep, PropertyId::III_continuity);
    const PropertyReport& val = find_report(rep, PropertyId::III_edge_value);
    CHECK(cont.verdict == Verdict::pass);
    CHECK(val.verdict == Verdict::pass);
    CHECK(val.max_residual < 1e-3);
}

TEST_CASE("spectrum classification distinguishes the three mutual positions")
{
    const ConstantBackground fr{0.5, 0.0};
    CHECK(classify_spectrum_cases(fr, ConstantBackground{0.3, 0.0}).situation ==
          SpectrumCase::nested);
    CHECK(classify_spectrum_cases(fr, ConstantBackground{0.5, 3.0}).situation ==
          SpectrumCase::disjoint);
    CHECK(classify_spectrum_cases(fr, ConstantBackground{0.5, 1.0}).situation ==
          SpectrumCase::overlapping);

    // overlapping case: virtual levels at the edges of the union plus the
    // interior edges shared by the one-sided parts
    const SpectrumClassification sc = classify_spectrum_cases(fr, ConstantBackground{0.5, 1.0});
    REQUIRE(!sc.sigma_v.empty());
    CHECK(sc.sigma_v.front() == doctest::Approx(-1.0));
    CHECK(sc.sigma_v.back() == doctest::Approx(2.0));
}
