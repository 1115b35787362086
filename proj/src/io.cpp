#include "crnf/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "crnf/expr.hpp"

namespace crnf {

json chart_to_json(const Chart &c)
{
    json j;
    j["name"] = c.name;
    j["variables"] = c.vars;
    j["weights"] = c.weights;
    j["pairing"] = c.pairing ? json(*c.pairing) : json(nullptr);
    return j;
}

ChartPtr chart_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("variables") || !j.contains("weights"))
        throw error(errc::bad_input, "chart needs \"variables\" and \"weights\"");
    auto vars = j["variables"].get<std::vector<std::string>>();
    auto weights = j["weights"].get<std::vector<int>>();
    if (vars.size() != weights.size())
        throw error(errc::exponent_length, "chart has " + std::to_string(vars.size()) + " variables but " +
                                               std::to_string(weights.size()) + " weights");
    if (vars.size() > 8)
        throw error(errc::bad_input, "at most 8 variables per chart");
    std::optional<std::vector<int>> pairing;
    if (j.contains("pairing") && !j["pairing"].is_null()) {
        pairing = j["pairing"].get<std::vector<int>>();
        if (pairing->size() != vars.size())
            throw error(errc::exponent_length, "pairing length differs from the number of variables");
        for (std::size_t k = 0; k < pairing->size(); ++k) {
            int p = (*pairing)[k];
            if (p < 0 || p >= static_cast<int>(vars.size()) || (*pairing)[static_cast<std::size_t>(p)] != int(k))
                throw error(errc::bad_input, "pairing is not an involution");
        }
    }
    std::string name = j.value("name", std::string("chart"));
    for (const ChartPtr &known : {cr_chart(), holo_chart(), affine_chart(), affine_field_chart(), surface_chart()})
        if (known->vars == vars && known->weights == weights && known->pairing == pairing)
            return known;
    return make_chart(name, vars, weights, pairing);
}

json to_json(const Series &s)
{
    json j;
    j["chart"] = chart_to_json(s.chart());
    j["order"] = s.order() >= kExact ? json("exact") : json(s.order());
    json terms = json::array();
    for (auto &t : s.terms())
        terms.push_back({{"exp", exp_to(t.exp, s.chart().size())}, {"coeff", t.coeff.str()}});
    j["terms"] = terms;
    return j;
}

Series series_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("chart") || !j.contains("terms"))
        throw error(errc::bad_input, "series needs \"chart\" and \"terms\"");
    ChartPtr c = chart_from_json(j["chart"]);
    int order = kExact;
    if (j.contains("order")) {
        const json &o = j["order"];
        if (o.is_string() && o.get<std::string>() == "exact")
            order = kExact;
        else if (o.is_number_integer())
            order = o.get<int>();
        else
            throw error(errc::bad_input, "order must be an integer or \"exact\"");
        if (order < 0)
            throw error(errc::bad_input, "negative order");
    }
    std::vector<Term> terms;
    std::size_t idx = 0;
    for (auto &t : j["terms"]) {
        std::string where = "term " + std::to_string(idx++);
        if (!t.contains("exp") || !t.contains("coeff"))
            throw error(errc::bad_input, where + " needs \"exp\" and \"coeff\"");
        auto e = t["exp"].get<std::vector<int>>();
        if (e.size() != c->size())
            throw error(errc::exponent_length, where + ": exponent of length " + std::to_string(e.size()) +
                                                   " in a chart with " + std::to_string(c->size()) + " variables");
        for (int x : e)
            if (x < 0 || x > 255)
                throw error(errc::bad_input, where + ": exponent out of range");
        Exp x = exp_from(e);
        if (exp_weight(x, *c) > order)
            throw error(errc::bad_input, where + ": weight exceeds the order");
        const json &cj = t["coeff"];
        Scalar v = cj.is_string() ? parse_scalar(cj.get<std::string>())
                                  : (cj.is_number_integer() ? Scalar(cj.get<long>())
                                                            : throw error(errc::bad_input, where + ": bad coeff"));
        terms.push_back({x, v});
    }
    return Series::from_terms(c, order, std::move(terms));
}

json to_json(const HypersurfaceGraph &g)
{
    json j = to_json(g.F);
    j["kind"] = "cr_graph";
    j["label"] = g.label;
    return j;
}

json to_json(const AffineGraph &g)
{
    json j = to_json(g.F);
    j["kind"] = "affine_graph";
    j["label"] = g.label;
    return j;
}

HypersurfaceGraph cr_graph_from_json(const json &j)
{
    Series F = series_from_json(j);
    if (!same_chart(F.chart_ptr(), cr_chart()))
        throw error(errc::chart_mismatch, "CR graph must be over (z, zeta, zb, zetab, v)");
    return {F, j.value("label", std::string("input"))};
}

AffineGraph affine_graph_from_json(const json &j)
{
    Series F = series_from_json(j);
    if (!same_chart(F.chart_ptr(), affine_chart()))
        throw error(errc::chart_mismatch, "affine graph must be over (x, y)");
    return {F, j.value("label", std::string("input"))};
}

json to_json(const VectorField &X)
{
    json comps = json::array();
    for (auto &c : X.comps)
        comps.push_back(to_json(c));
    return {{"kind", "field"}, {"components", comps}};
}

VectorField field_from_json(const json &j)
{
    if (!j.contains("components") || !j["components"].is_array() || j["components"].empty())
        throw error(errc::bad_input, "field needs a non-empty \"components\" array");
    VectorField X;
    for (auto &c : j["components"])
        X.comps.push_back(series_from_json(c));
    for (auto &c : X.comps)
        if (!same_chart(c.chart_ptr(), X.chart()))
            throw error(errc::chart_mismatch, "field components over different charts");
    if (X.size() != X.chart()->size())
        throw error(errc::bad_input, "field needs one component per chart variable");
    return X;
}

json read_json_file(const std::string &path)
{
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw error(errc::bad_input, "cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw error(errc::parse_error, path + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

} // namespace crnf
