// jscat: direct and inverse scattering pipelines for steplike Jacobi
// operators, driven by JSON configs.
#include "jacobi/errors.hpp"
#include "jacobi/io.hpp"
#include "jacobi/oracle.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>

namespace {

using namespace jacobi;
namespace fs = std::filesystem;

struct CommonOpts {
    std::string config_path;
    std::string data_path;
    std::string out_dir = ".";
    int grid_points = 0;  // 0 = take from config
    long truncation = 0;  // 0 = take from config
    double tol_quad = 0.0;
    int moment_q = 0;
};

JobConfig effective_config(const CommonOpts& o)
{
    JobConfig cfg = load_config(o.config_path);
    if (o.grid_points > 0)
        cfg.grid_per_band = o.grid_points;
    if (o.truncation > 0)
        cfg.truncation = o.truncation;
    if (o.tol_quad > 0.0)
        cfg.tol.quad = o.tol_quad;
    if (o.moment_q > 0)
        cfg.moment_q = o.moment_q;
    return cfg;
}

std::string out_path(const CommonOpts& o, const std::string& name)
{
    fs::create_directories(o.out_dir);
    return (fs::path(o.out_dir) / name).string();
}

void write_band_csv(const CommonOpts& o, const std::string& name, const ScatteringData& sd,
                    HalfAxis side)
{
    const auto& nodes = side == HalfAxis::plus ? sd.nodes_plus : sd.nodes_minus;
    const Background& bg_own = side == HalfAxis::plus ? sd.bg_plus : sd.bg_minus;
    const Background& bg_opp = side == HalfAxis::plus ? sd.bg_minus : sd.bg_plus;
    const BandSet opp = spectrum(bg_opp);
    std::vector<std::vector<std::string>> rows;
    for (const ScatteringNode& n : nodes) {
        std::string gratio;
        if (opp.contains(n.lambda)) {
            const Complex r = green_diagonal(bg_own, Complex(n.lambda)) /
                              green_diagonal(bg_opp, Complex(n.lambda));
            gratio = format_double(r.real());
        }
        rows.push_back({format_double(n.lambda), format_double(n.R.real()),
                        format_double(n.R.imag()), format_double(std::norm(n.T)), gratio});
    }
    write_csv(out_path(o, name), {"lambda", "re_R", "im_R", "abs_T2", "g_ratio"}, rows);
}

ScatteringData run_forward(const CommonOpts& o, const JobConfig& cfg)
{
    const Coefficients c = cfg.make_coefficients();
    ScatteringData sd = compute_scattering(c, cfg.grid_per_band, cfg.tol.edge, cfg.tol.root);
    sd.q = cfg.moment_q;
    save_scattering(sd, out_path(o, "scattering.json"));
    write_band_csv(o, "forward_plus.csv", sd, HalfAxis::plus);
    write_band_csv(o, "forward_minus.csv", sd, HalfAxis::minus);
    return sd;
}

Json run_inverse(const CommonOpts& o, const JobConfig& cfg, const ScatteringData& sd)
{
    const long t = cfg.truncation;
    long rlo = -3, rhi = 3, p_lo = 0, p_hi = 0;
    for (auto [n, v] : cfg.a_dev) {
        rlo = std::min<long>(rlo, n - 2);
        rhi = std::max<long>(rhi, n + 2);
        p_lo = std::min<long>(p_lo, n);
        p_hi = std::max<long>(p_hi, n + 1);
    }
    for (auto [n, v] : cfg.b_dev) {
        rlo = std::min<long>(rlo, n - 2);
        rhi = std::max<long>(rhi, n + 2);
        p_lo = std::min<long>(p_lo, n);
        p_hi = std::max<long>(p_hi, n);
    }

    const MarchenkoKernel Fp = build_kernel(sd, HalfAxis::plus, rlo - 1, rhi + t, cfg.tol.quad);
    const MarchenkoKernel Fm = build_kernel(sd, HalfAxis::minus, rlo - t, rhi + 2, cfg.tol.quad);
    const Reconstruction rp = reconstruct(Fp, rlo, rhi);
    const Reconstruction rm = reconstruct(Fm, rlo, rhi);

    // Each kernel is well conditioned only towards its own half axis, so the
    // two-sided agreement is measured on the perturbation window where both
    // reconstructions are reliable.
    double agree = 0.0;
    std::vector<std::vector<std::string>> rows;
    for (long n = rlo; n <= rhi; ++n) {
        const std::size_t i = static_cast<std::size_t>(n - rlo);
        if (n >= p_lo - 1 && n <= p_hi + 1)
            agree = std::max({agree, std::abs(rp.a[i] - rm.a[i]), std::abs(rp.b[i] - rm.b[i])});
        rows.push_back({std::to_string(n), format_double(rp.a[i]), format_double(rp.b[i]),
                        format_double(rm.a[i]), format_double(rm.b[i])});
    }
    write_csv(out_path(o, "coefficients.csv"),
              {"n", "a_from_plus", "b_from_plus", "a_from_minus", "b_from_minus"}, rows);

    Json rep;
    rep["agreement"] = agree;
    for (const MarchenkoKernel* F : {&Fp, &Fm}) {
        Json d;
        const KernelDecayReport kd = kernel_decay_check(*F, sd.q, cfg.tol.tail);
        d["diag_sum"] = kd.diag_sum;
        d["off_sum"] = kd.off_sum;
        d["tail_term"] = kd.last_term;
        d["pass"] = kd.pass;
        if (is_constant(F->bg)) {
            const DifferenceDecayReport dd = kernel_difference_check(*F);
            d["difference_tail_max"] = dd.tail_max;
            d["difference_pass"] = dd.pass;
        }
        rep[F->side == HalfAxis::plus ? "kernel_plus" : "kernel_minus"] = std::move(d);
    }
    write_text(out_path(o, "inverse_report.json"), rep.dump(2) + "\n");
    return rep;
}

void run_validate(const CommonOpts& o, const ScatteringData& sd, const Coefficients* c)
{
    std::vector<PropertyReport> reports = check_property_I(sd, c);
    for (PropertyReport& r : check_property_II(sd, c))
        reports.push_back(r);
    if (c)
        for (PropertyReport& r : check_property_III(*c))
            reports.push_back(r);
    write_text(out_path(o, "validate_report.json"), report_to_json(reports).dump(2) + "\n");
}

void run_spectrum(const CommonOpts& o, const JobConfig& cfg)
{
    const Coefficients c = cfg.make_coefficients();
    const BandSet sp = spectrum(cfg.bg_plus, cfg.tol.edge);
    const BandSet sm = spectrum(cfg.bg_minus, cfg.tol.edge);
    const SpectralSets sets = spectral_sets(sp, sm);

    std::vector<std::vector<std::string>> rows;
    auto bands = [&](const char* kind, const BandSet& bs) {
        for (const Band& b : bs.bands())
            rows.push_back({kind, format_double(b.lo), format_double(b.hi), ""});
    };
    bands("sigma_plus", sp);
    bands("sigma_minus", sm);
    bands("sigma2", sets.sigma2);
    bands("sigma1_plus", sets.sigma1_plus);
    bands("sigma1_minus", sets.sigma1_minus);
    for (double lk : find_eigenvalues(c, cfg.tol.root, cfg.tol.edge))
        rows.push_back({"eigenvalue", format_double(lk), "", ""});
    for (double E : sets.virtual_levels) {
        const EdgeAnalysis ea = edge_analysis(c, E, 8, cfg.tol.edge);
        rows.push_back({"virtual_level", format_double(E), ea.resonant ? "resonant" : "nonresonant",
                        format_double(ea.fitted_exponent)});
    }
    write_csv(out_path(o, "spectrum.csv"), {"kind", "x1", "x2", "info"}, rows);
}

void run_fixture(const CommonOpts& o, unsigned seed, const std::string& situation)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> site(-8, 8);
    std::uniform_real_distribution<double> dev(-0.3, 0.3);
    std::uniform_int_distribution<int> count(2, 5);

    Json cfg;
    cfg["background_plus"] = {{"type", "constant"}, {"a", 0.5}, {"b", 0.0}};
    double bm = 0.0;
    if (situation == "nested")
        bm = 0.0;
    else if (situation == "disjoint")
        bm = 3.0;
    else if (situation == "overlapping")
        bm = 1.0;
    else
        throw InvalidInputError("fixture case must be nested, disjoint, or overlapping");
    cfg["background_minus"] = {{"type", "constant"}, {"a", 0.5}, {"b", bm}};

    Json a = Json::object(), b = Json::object();
    const int na = count(rng), nb = count(rng);
    for (int i = 0; i < na; ++i)
        a[std::to_string(site(rng))] = 0.5 + 0.5 * std::abs(dev(rng)) + 0.05;
    for (int i = 0; i < nb; ++i) {
        const int n = site(rng);
        b[std::to_string(n)] = (n < 0 ? bm : 0.0) + dev(rng);
    }
    cfg["perturbation"] = {{"a", a}, {"b", b}};
    cfg["grid_per_band"] = 512;
    cfg["moment_q"] = 2;
    write_text(out_path(o, "fixture.json"), cfg.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"direct/inverse scattering for steplike Jacobi operators"};
    app.require_subcommand(1);

    CommonOpts o;
    unsigned seed = 1;
    std::string situation = "nested";

    auto add_common = [&](CLI::App* sub, bool needs_config, bool needs_data) {
        if (needs_config)
            sub->add_option("--config", o.config_path, "job config (JSON)")->required();
        if (needs_data)
            sub->add_option("--data", o.data_path, "scattering-data file (JSON)")->required();
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_option("--grid-points", o.grid_points, "quadrature nodes per band");
        sub->add_option("--truncation", o.truncation, "Marchenko kernel half-width");
        sub->add_option("--tol-quad", o.tol_quad, "quadrature tolerance override");
        sub->add_option("--moment-q", o.moment_q, "declared moment order");
    };

    CLI::App* fwd = app.add_subcommand("forward", "coefficients -> scattering data + CSV");
    add_common(fwd, true, false);
    CLI::App* inv = app.add_subcommand("inverse", "scattering data -> coefficients");
    add_common(inv, true, true);
    CLI::App* rt = app.add_subcommand("roundtrip", "forward followed by inverse");
    add_common(rt, true, false);
    CLI::App* val = app.add_subcommand("validate", "property checks on a scattering-data file");
    add_common(val, false, true);
    val->add_option("--config", o.config_path, "optional config enabling coefficient-based checks");
    CLI::App* spec = app.add_subcommand("spectrum", "band structure, eigenvalues, edge analysis");
    add_common(spec, true, false);
    CLI::App* fix = app.add_subcommand("fixture", "generate a randomized compact-perturbation config");
    fix->add_option("--out", o.out_dir, "output directory");
    fix->add_option("--seed", seed, "random seed");
    fix->add_option("--case", situation, "spectrum situation: nested|disjoint|overlapping");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fwd->parsed()) {
            run_forward(o, effective_config(o));
        } else if (inv->parsed()) {
            const JobConfig cfg = effective_config(o);
            run_inverse(o, cfg, load_scattering(o.data_path));
        } else if (rt->parsed()) {
            const JobConfig cfg = effective_config(o);
            const ScatteringData sd = run_forward(o, cfg);
            run_inverse(o, cfg, sd);
        } else if (val->parsed()) {
            const ScatteringData sd = load_scattering(o.data_path);
            if (!o.config_path.empty()) {
                const Coefficients c = effective_config(o).make_coefficients();
                run_validate(o, sd, &c);
            } else {
                run_validate(o, sd, nullptr);
            }
        } else if (spec->parsed()) {
            run_spectrum(o, effective_config(o));
        } else if (fix->parsed()) {
            run_fixture(o, seed, situation);
        }
    } catch (const jacobi::InvalidInputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const jacobi::DataNotInClassError& e) {
        std::cerr << "data not in class: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
