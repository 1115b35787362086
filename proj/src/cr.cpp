#include "crnf/cr.hpp"

#include <filesystem>

#include "crnf/expr.hpp"
#include "crnf/tables.hpp"

namespace crnf {

Exp cr_exp(int h, int i, int j, int k, int l) { return exp_from({h, i, j, k, l}); }

Scalar cr_coeff(const Series &F, int h, int i, int j, int k, int l) { return F.coeff(cr_exp(h, i, j, k, l)); }

std::string cr_name(Exp e)
{
    std::string s = "F";
    for (int x : exp_to(e, 5))
        s += std::to_string(x);
    return s;
}

namespace {

const nlohmann::json *errata()
{
    if (!std::filesystem::exists(table_dir() + "/errata.json"))
        return nullptr;
    return &load_table("errata.json");
}

} // namespace

Series apply_errata(Series s, const std::string &model, const std::string &section, const std::string &block,
                    const ChartPtr &chart, TableVariant v, const Bindings &bindings)
{
    if (v != TableVariant::corrected)
        return s;
    const nlohmann::json *e = errata();
    if (!e || !e->contains(model) || !(*e)[model].contains(section) || !(*e)[model][section].contains(block))
        return s;
    for (auto &fix : (*e)[model][section][block]) {
        if (fix.contains("remove")) {
            Series r = parse_series(fix["remove"].get<std::string>(), chart, kExact, bindings);
            for (auto &t : r.terms())
                if (s.coeff(t.exp).is_zero())
                    throw error(errc::bad_input, "errata for " + model + " " + section + " " + block +
                                                     " removes a term the printed block does not have");
            s = s - r;
        }
        if (fix.contains("add"))
            s = s + parse_series(fix["add"].get<std::string>(), chart, kExact, bindings);
    }
    return s;
}

namespace {

int model_max_order(const std::string &model)
{
    return load_table(model + ".json")["graph_order"].get<int>();
}

HypersurfaceGraph table_model(const std::string &model, int order, TableVariant v)
{
    int top = model_max_order(model);
    if (order > top)
        throw error(errc::no_paper_data,
                    model + " tables stop at weighted order " + std::to_string(top) + "; requested " +
                        std::to_string(order));
    if (order < 2)
        throw error(errc::bad_input, "model order must be at least 2");
    Series F(cr_chart(), kExact);
    for (auto &[k, s] : model_blocks(model, v))
        if (k <= order)
            F = F + s;
    std::string label = model;
    if (v == TableVariant::corrected)
        label += " (corrected)";
    return {F.truncate(order), label};
}

} // namespace

std::map<int, Series> model_blocks(const std::string &model, TableVariant v)
{
    const auto &t = load_table(model + ".json");
    std::map<int, Series> out;
    for (auto &[k, text] : t["graph"].items()) {
        Series s = parse_series(text.get<std::string>(), cr_chart());
        out.emplace(std::stoi(k), apply_errata(std::move(s), model, "graph", k, cr_chart(), v));
    }
    return out;
}

std::vector<BlockWeightIssue> block_weight_issues(const std::string &model, TableVariant v)
{
    std::vector<BlockWeightIssue> out;
    for (auto &[k, s] : model_blocks(model, v))
        for (auto &t : s.terms())
            if (s.weight(t.exp) != k)
                out.push_back({k, t.exp, s.weight(t.exp)});
    return out;
}

HypersurfaceGraph gm_flat_model(int order)
{
    if (order < 2)
        throw error(errc::bad_input, "model order must be at least 2");
    const auto &t = load_table("flat.json");
    return {parse_series(t["graph"].get<std::string>(), cr_chart(), order), "flat"};
}

HypersurfaceGraph thm31_model(int order, TableVariant v) { return table_model("thm31", order, v); }

HypersurfaceGraph thm33_model(int order, TableVariant v) { return table_model("thm33", order, v); }

RealityReport reality_check(const HypersurfaceGraph &g)
{
    RealityReport r;
    Series c = g.F.conj();
    Series diff = g.F - c;
    auto &pairing = *g.F.chart().pairing;
    for (auto &t : diff.terms()) {
        Exp m = 0;
        for (std::size_t i = 0; i < pairing.size(); ++i)
            m = exp_set(m, static_cast<std::size_t>(pairing[i]), exp_get(t.exp, i));
        // report each unordered pair once
        if (m < t.exp)
            continue;
        r.violations.push_back({t.exp, m, g.F.coeff(t.exp), g.F.coeff(m)});
    }
    return r;
}

namespace {

struct Condition {
    std::string name;
    // pattern on (h,i,j,k); negative entries are free
    std::array<int, 4> pat;
};

bool matches(const std::array<int, 4> &pat, const std::vector<int> &e)
{
    for (std::size_t q = 0; q < 4; ++q)
        if (pat[q] >= 0 && pat[q] != e[q])
            return false;
    return true;
}

Scalar expected_value(const std::vector<int> &e)
{
    if (e[4] != 0)
        return Scalar();
    if (e == std::vector<int>{1, 0, 1, 0, 0})
        return Scalar(1);
    if (e == std::vector<int>{2, 0, 0, 1, 0} || e == std::vector<int>{0, 1, 2, 0, 0})
        return Scalar::rational(1, 2);
    return Scalar();
}

} // namespace

namespace {

const std::vector<Condition> &nf_conditions()
{
    static const std::vector<Condition> conds = [] {
        std::vector<Condition> base = {
            {"F_{h,i,0,0}", {-1, -1, 0, 0}}, {"F_{h,i,1,0}", {-1, -1, 1, 0}}, {"F_{h,i,2,0}", {-1, -1, 2, 0}},
            {"F_{3,0,0,1}", {3, 0, 0, 1}},   {"F_{4,0,0,1}", {4, 0, 0, 1}},   {"F_{3,0,1,1}", {3, 0, 1, 1}},
            {"F_{4,0,1,1}", {4, 0, 1, 1}},   {"F_{3,0,3,0}", {3, 0, 3, 0}},
        };
        // conditions and their conjugates
        std::vector<Condition> all = base;
        for (auto &c : base) {
            std::array<int, 4> m = {c.pat[2], c.pat[3], c.pat[0], c.pat[1]};
            if (m != c.pat)
                all.push_back({"conj " + c.name, m});
        }
        return all;
    }();
    return conds;
}

const Condition *nf_condition(const std::vector<int> &e)
{
    for (auto &c : nf_conditions())
        if (matches(c.pat, e))
            return &c;
    return nullptr;
}

} // namespace

std::optional<Scalar> normal_form_value(Exp x)
{
    auto e = exp_to(x, 5);
    if (!nf_condition(e))
        return std::nullopt;
    return expected_value(e);
}

NormalFormReport normal_form_check(const HypersurfaceGraph &g)
{
    NormalFormReport r;
    const Series &F = g.F;
    int N = F.order();
    // enumerate every monomial of weight <= N matched by some condition
    std::vector<int> e(5, 0);
    for (e[4] = 0; 2 * e[4] <= N; ++e[4])
        for (e[0] = 0; e[0] + 2 * e[4] <= N; ++e[0])
            for (e[1] = 0; e[0] + e[1] + 2 * e[4] <= N; ++e[1])
                for (e[2] = 0; e[0] + e[1] + e[2] + 2 * e[4] <= N; ++e[2])
                    for (e[3] = 0; e[0] + e[1] + e[2] + e[3] + 2 * e[4] <= N; ++e[3]) {
                        const Condition *hit = nf_condition(e);
                        if (!hit)
                            continue;
                        Exp x = exp_from(e);
                        Scalar want = expected_value(e);
                        Scalar got = F.coeff(x);
                        if (got != want)
                            r.failures.push_back({hit->name, x, want, got});
                    }
    return r;
}

const std::optional<Scalar> &InvariantProfile::get(const std::string &name) const
{
    for (std::size_t k = 0; k < names.size(); ++k)
        if (name == names[k])
            return values[k];
    throw error(errc::bad_input, "no invariant named " + name);
}

InvariantProfile extract_invariants(const HypersurfaceGraph &g)
{
    InvariantProfile p;
    for (std::size_t k = 0; k < p.names.size(); ++k) {
        std::string n = p.names[k];
        std::vector<int> e;
        for (std::size_t q = 1; q < n.size(); ++q)
            e.push_back(n[q] - '0');
        Exp x = exp_from(e);
        if (g.F.weight(x) <= g.F.order())
            p.values[k] = g.F.coeff(x);
    }
    return p;
}

const char *branch_name(Branch b)
{
    switch (b) {
    case Branch::FLAT: return "FLAT";
    case Branch::BRANCH_F30020: return "BRANCH_F30020";
    case Branch::BRANCH_THETA: return "BRANCH_THETA";
    case Branch::UNKNOWN: return "UNKNOWN";
    }
    return "?";
}

BranchLabel classify_by_invariants(const HypersurfaceGraph &g)
{
    if (g.order() < 6)
        return {Branch::UNKNOWN, "order below 6", std::nullopt};
    Scalar f5 = cr_coeff(g.F, 3, 0, 0, 2, 0);
    if (!f5.is_zero()) {
        if (f5.is_number())
            return {Branch::BRANCH_F30020, "F30020 = " + f5.str(), f5};
        return {Branch::UNKNOWN, "F30020 carries parameters and is not identically zero", f5};
    }
    Scalar f6 = cr_coeff(g.F, 5, 0, 0, 1, 0);
    if (!f6.is_zero()) {
        if (f6.is_number())
            return {Branch::BRANCH_THETA, "F30020 = 0, F50010 = " + f6.str(), f6};
        return {Branch::UNKNOWN, "F50010 carries parameters and is not identically zero", f6};
    }
    return {Branch::FLAT, "F30020 = 0, F50010 = 0", std::nullopt};
}

BranchLabel classify_branch(const HypersurfaceGraph &g)
{
    auto nf = normal_form_check(g);
    if (!nf.pass()) {
        auto &f = nf.failures.front();
        throw error(errc::not_normal_form, "graph is not in normal form: " + f.condition + " at " + cr_name(f.exp) +
                                               " is " + f.found.str() + ", expected " + f.expected.str());
    }
    return classify_by_invariants(g);
}

} // namespace crnf
