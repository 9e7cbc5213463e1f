#include "jacobi/io.hpp"
#include "jacobi/errors.hpp"

#include <cstdio>
#include <fstream>

namespace jacobi {

namespace {

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed,
                    const std::string& where)
{
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a)
                ok = true;
        if (!ok)
            throw InvalidInputError("unknown key '" + key + "' in " + where);
    }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw InvalidInputError("complex values must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::map<int, double> site_map_from_json(const Json& j, const std::string& where)
{
    std::map<int, double> out;
    for (const auto& [key, val] : j.items()) {
        std::size_t pos = 0;
        int n = 0;
        try {
            n = std::stoi(key, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != key.size())
            throw InvalidInputError("site index '" + key + "' in " + where + " is not an integer");
        out[n] = val.get<double>();
    }
    return out;
}

} // namespace

Json background_to_json(const Background& bg)
{
    Json j;
    if (is_constant(bg)) {
        const auto& c = std::get<ConstantBackground>(bg);
        j["type"] = "constant";
        j["a"] = c.a;
        j["b"] = c.b;
    } else {
        const auto& p = std::get<PeriodicBackground>(bg);
        j["type"] = "periodic";
        j["a"] = p.a;
        j["b"] = p.b;
    }
    return j;
}

Background background_from_json(const Json& j)
{
    reject_unknown(j, {"type", "a", "b"}, "background");
    const std::string type = j.at("type").get<std::string>();
    Background bg;
    if (type == "constant") {
        ConstantBackground c;
        c.a = j.at("a").get<double>();
        c.b = j.at("b").get<double>();
        bg = c;
    } else if (type == "periodic") {
        PeriodicBackground p;
        p.a = j.at("a").get<std::vector<double>>();
        p.b = j.at("b").get<std::vector<double>>();
        bg = p;
    } else {
        throw InvalidInputError("background type must be 'constant' or 'periodic'");
    }
    check_valid(bg);
    return bg;
}

Coefficients JobConfig::make_coefficients() const
{
    Coefficients c(bg_minus, bg_plus);
    for (auto [n, v] : a_dev)
        c.set_a(n, v);
    for (auto [n, v] : b_dev)
        c.set_b(n, v);
    return c;
}

JobConfig parse_config(const Json& j)
{
    reject_unknown(j,
                   {"background_plus", "background_minus", "perturbation", "grid_per_band",
                    "moment_q", "truncation", "tolerances"},
                   "config");
    JobConfig cfg;
    if (j.contains("background_plus"))
        cfg.bg_plus = background_from_json(j["background_plus"]);
    if (j.contains("background_minus"))
        cfg.bg_minus = background_from_json(j["background_minus"]);
    if (j.contains("perturbation")) {
        const Json& p = j["perturbation"];
        reject_unknown(p, {"a", "b"}, "perturbation");
        if (p.contains("a")) {
            cfg.a_dev = site_map_from_json(p["a"], "perturbation.a");
            for (const auto& [n, v] : cfg.a_dev)
                if (!(v > 0.0))
                    throw InvalidInputError("perturbation.a values must be positive (site " +
                                            std::to_string(n) + ")");
        }
        if (p.contains("b"))
            cfg.b_dev = site_map_from_json(p["b"], "perturbation.b");
    }
    if (j.contains("grid_per_band"))
        cfg.grid_per_band = j["grid_per_band"].get<int>();
    if (j.contains("moment_q"))
        cfg.moment_q = j["moment_q"].get<int>();
    if (j.contains("truncation"))
        cfg.truncation = j["truncation"].get<long>();
    if (j.contains("tolerances")) {
        const Json& t = j["tolerances"];
        reject_unknown(t, {"resid", "quad", "edge", "root", "prop", "tail"}, "tolerances");
        if (t.contains("resid"))
            cfg.tol.resid = t["resid"].get<double>();
        if (t.contains("quad"))
            cfg.tol.quad = t["quad"].get<double>();
        if (t.contains("edge"))
            cfg.tol.edge = t["edge"].get<double>();
        if (t.contains("root"))
            cfg.tol.root = t["root"].get<double>();
        if (t.contains("prop"))
            cfg.tol.prop = t["prop"].get<double>();
        if (t.contains("tail"))
            cfg.tol.tail = t["tail"].get<double>();
    }
    if (cfg.grid_per_band < 2 || cfg.moment_q < 1 || cfg.truncation < 4)
        throw InvalidInputError("grid_per_band >= 2, moment_q >= 1, truncation >= 4 required");
    return cfg;
}

JobConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInputError("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInputError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

Json scattering_to_json(const ScatteringData& sd)
{
    Json j;
    j["format"] = "jscat-scattering-v1";
    j["background_minus"] = background_to_json(sd.bg_minus);
    j["background_plus"] = background_to_json(sd.bg_plus);
    j["per_band"] = sd.per_band;
    j["q"] = sd.q;
    auto dump_nodes = [](const std::vector<ScatteringNode>& nodes) {
        Json arr = Json::array();
        for (const ScatteringNode& n : nodes) {
            Json e;
            e["lambda"] = n.lambda;
            e["weight"] = complex_to_json(n.weight);
            e["R"] = complex_to_json(n.R);
            e["T"] = complex_to_json(n.T);
            arr.push_back(std::move(e));
        }
        return arr;
    };
    auto dump_one_sided = [](const std::vector<OneSidedNode>& nodes) {
        Json arr = Json::array();
        for (const OneSidedNode& n : nodes) {
            Json e;
            e["lambda"] = n.lambda;
            e["weight"] = complex_to_json(n.weight);
            e["T_abs2"] = n.T_abs2;
            arr.push_back(std::move(e));
        }
        return arr;
    };
    j["nodes_plus"] = dump_nodes(sd.nodes_plus);
    j["nodes_minus"] = dump_nodes(sd.nodes_minus);
    j["one_sided_plus"] = dump_one_sided(sd.one_sided_plus);
    j["one_sided_minus"] = dump_one_sided(sd.one_sided_minus);
    j["eigenvalues"] = sd.eigenvalues;
    j["gamma_plus"] = sd.gamma_plus;
    j["gamma_minus"] = sd.gamma_minus;
    return j;
}

ScatteringData scattering_from_json(const Json& j)
{
    reject_unknown(j,
                   {"format", "background_minus", "background_plus", "per_band", "q", "nodes_plus",
                    "nodes_minus", "one_sided_plus", "one_sided_minus", "eigenvalues", "gamma_plus",
                    "gamma_minus"},
                   "scattering data");
    if (j.at("format").get<std::string>() != "jscat-scattering-v1")
        throw InvalidInputError("unsupported scattering-data format tag");
    ScatteringData sd;
    sd.bg_minus = background_from_json(j.at("background_minus"));
    sd.bg_plus = background_from_json(j.at("background_plus"));
    sd.per_band = j.at("per_band").get<int>();
    sd.q = j.at("q").get<int>();
    auto read_nodes = [](const Json& arr) {
        std::vector<ScatteringNode> nodes;
        for (const Json& e : arr) {
            reject_unknown(e, {"lambda", "weight", "R", "T"}, "scattering node");
            ScatteringNode n;
            n.lambda = e.at("lambda").get<double>();
            n.weight = complex_from_json(e.at("weight"));
            n.R = complex_from_json(e.at("R"));
            n.T = complex_from_json(e.at("T"));
            nodes.push_back(n);
        }
        return nodes;
    };
    auto read_one_sided = [](const Json& arr) {
        std::vector<OneSidedNode> nodes;
        for (const Json& e : arr) {
            reject_unknown(e, {"lambda", "weight", "T_abs2"}, "one-sided node");
            OneSidedNode n;
            n.lambda = e.at("lambda").get<double>();
            n.weight = complex_from_json(e.at("weight"));
            n.T_abs2 = e.at("T_abs2").get<double>();
            nodes.push_back(n);
        }
        return nodes;
    };
    sd.nodes_plus = read_nodes(j.at("nodes_plus"));
    sd.nodes_minus = read_nodes(j.at("nodes_minus"));
    sd.one_sided_plus = read_one_sided(j.at("one_sided_plus"));
    sd.one_sided_minus = read_one_sided(j.at("one_sided_minus"));
    sd.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    sd.gamma_plus = j.at("gamma_plus").get<std::vector<double>>();
    sd.gamma_minus = j.at("gamma_minus").get<std::vector<double>>();
    if (sd.gamma_plus.size() != sd.eigenvalues.size() ||
        sd.gamma_minus.size() != sd.eigenvalues.size())
        throw InvalidInputError("norming-constant lists must match the eigenvalue list");
    return sd;
}

void save_scattering(const ScatteringData& sd, const std::string& path)
{
    write_text(path, scattering_to_json(sd).dump(2) + "\n");
}

ScatteringData load_scattering(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInputError("cannot open scattering-data file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidInputError(std::string("scattering-data parse error: ") + e.what());
    }
    return scattering_from_json(j);
}

Json report_to_json(const std::vector<PropertyReport>& reports)
{
    Json arr = Json::array();
    bool all_pass = true;
    for (const PropertyReport& r : reports) {
        Json e;
        e["property"] = property_name(r.property_id);
        e["verdict"] = verdict_name(r.verdict);
        e["max_residual"] = r.max_residual;
        e["nodes_checked"] = r.nodes_checked;
        e["details"] = r.details;
        arr.push_back(std::move(e));
        if (r.verdict == Verdict::fail)
            all_pass = false;
    }
    Json j;
    j["properties"] = std::move(arr);
    j["overall"] = all_pass ? "pass" : "fail";
    return j;
}

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows)
{
    std::string out;
    auto append_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += ',';
            out += cells[i];
        }
        out += "\r\n";
    };
    append_row(header);
    for (const auto& r : rows)
        append_row(r);
    write_text(path, out);
}

void write_text(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidInputError("cannot open output file: " + path);
    out << content;
    if (!out)
        throw InvalidInputError("failed writing " + path);
}

} // namespace jacobi
