#include "crnf/solver.hpp"

#include <set>

#include "crnf/expr.hpp"

namespace crnf {

namespace {

struct Slot {
    Exp exp, mirror;
    bool self_mirror;
    int weight;
    // fixed real parts; otherwise the unknown ids below are live
    std::optional<Scalar> re_fixed, im_fixed;
    std::uint32_t re_id = 0, im_id = 0;
    std::string name;
};

struct Problem {
    ChartPtr chart;
    Series known; // coefficients outside the slots
    std::vector<Slot> slots;
    // F with the current unknown values; extra unknowns are substituted by the callee
    std::function<std::vector<Series>(const Series &, const std::map<std::uint32_t, Scalar> &)> residual;
    // unknowns outside the graph (e.g. field coefficients), live from the start
    std::vector<std::pair<std::uint32_t, std::string>> extra;
    std::vector<std::uint32_t> split;
    int first_weight = 0, max_order = 0, lookahead = 0;
    bool paired = false;
};

struct State {
    // unknown id -> value in terms of still-free unknowns
    std::map<std::uint32_t, Scalar> values;
    std::set<std::uint32_t> unknowns;
};

Scalar unknown_value(const State &st, std::uint32_t id)
{
    auto it = st.values.find(id);
    return it != st.values.end() ? it->second : Scalar(ParamPoly::var(id));
}

Series build_template(const Problem &pb, const State &st, int top)
{
    SeriesAccumulator acc(pb.chart, top);
    acc.add(pb.known.truncate(top));
    for (auto &s : pb.slots) {
        if (s.weight > top)
            continue;
        Scalar re = s.re_fixed ? *s.re_fixed : unknown_value(st, s.re_id);
        Scalar im = s.im_fixed ? *s.im_fixed : unknown_value(st, s.im_id);
        acc.add_term(s.exp, re + Scalar::i() * im);
        if (!s.self_mirror)
            acc.add_term(s.mirror, re - Scalar::i() * im);
    }
    return acc.finish();
}

bool depends_on(const Scalar &s, const std::set<std::uint32_t> &ids)
{
    for (auto v : s.variables())
        if (ids.count(v))
            return true;
    return false;
}

void add_equations(const Scalar &coeff, const Problem &pb, const std::map<std::uint32_t, int> &col,
                   std::vector<LinearEquation> &eqs, const std::string &label)
{
    if (coeff.is_zero())
        return;
    // denominators only carry coefficient parameters
    ParamPoly num = coeff.num();
    for (auto &[mono, part] : num.split(pb.split)) {
        Scalar whole(part);
        for (const Scalar &r : {whole.re(), whole.im()}) {
            if (r.is_zero())
                continue;
            LinearEquation eq;
            eq.label = label + (mono.is_one() ? std::string() : " [" + mono.str() + "]");
            std::vector<std::uint32_t> ids;
            for (auto &[id, c] : col)
                ids.push_back(id);
            for (auto &[m, c] : r.num().split(ids)) {
                if (m.is_one())
                    eq.constant = Scalar(c);
                else if (m.degree() == 1)
                    eq.coeffs[col.at(m.entries()[0].first)] = Scalar(c);
                else
                    throw error(errc::nonlinear_system, "tangency equation nonlinear in the unknowns: " + label);
            }
            eqs.push_back(std::move(eq));
        }
    }
}

std::string slot_name(const Problem &pb, Exp e)
{
    if (pb.paired)
        return cr_name(e);
    auto v = exp_to(e, 2);
    return "F" + std::to_string(v[0]) + std::to_string(v[1]);
}

GraphSolution run(const Problem &pb)
{
    GraphSolution out;
    State st;
    for (auto &s : pb.slots) {
        if (!s.re_fixed)
            st.unknowns.insert(s.re_id);
        if (!s.im_fixed)
            st.unknowns.insert(s.im_id);
    }
    for (auto &[id, name] : pb.extra)
        st.unknowns.insert(id);
    int last_weight = pb.max_order + pb.lookahead;
    for (int r = pb.first_weight - pb.lookahead; r < pb.max_order; ++r) {
        if (r < 0)
            continue;
        int top = std::min(r + pb.lookahead, last_weight);
        Series F = build_template(pb, st, top);
        std::vector<Series> res = pb.residual(F, st.values);
        bool exact = true;
        for (auto &s : res)
            if (s.order() < r)
                exact = false;
        if (!exact) {
            out.log.push_back("residual not exact at weight " + std::to_string(r) + "; stopping");
            break;
        }
        // live unknowns at this step
        std::set<std::uint32_t> live;
        for (auto &s : pb.slots)
            if (s.weight <= top) {
                if (!s.re_fixed && !st.values.count(s.re_id))
                    live.insert(s.re_id);
                if (!s.im_fixed && !st.values.count(s.im_id))
                    live.insert(s.im_id);
            }
        for (auto &[id, name] : pb.extra)
            if (!st.values.count(id))
                live.insert(id);
        std::map<std::uint32_t, int> col;
        std::vector<std::uint32_t> ids;
        for (auto id : live) {
            col[id] = static_cast<int>(ids.size());
            ids.push_back(id);
        }
        std::vector<LinearEquation> eqs;
        for (std::size_t f = 0; f < res.size(); ++f) {
            Series comp = res[f].weighted_component(r);
            for (auto &t : comp.terms()) {
                if (pb.paired) {
                    Exp m = exp_from({static_cast<int>(exp_get(t.exp, 2)), static_cast<int>(exp_get(t.exp, 3)),
                                      static_cast<int>(exp_get(t.exp, 0)), static_cast<int>(exp_get(t.exp, 1)),
                                      static_cast<int>(exp_get(t.exp, 4))});
                    if (m > t.exp)
                        continue;
                }
                std::string label = "weight " + std::to_string(r) + " " + slot_name(pb, t.exp);
                if (res.size() > 1)
                    label += " field " + std::to_string(f + 1);
                add_equations(t.coeff, pb, col, eqs, label);
            }
        }
        auto sol = solve_linear(std::move(eqs), static_cast<int>(ids.size()));
        out.residual_weights.push_back(r);
        for (auto &p : sol.pivot_conditions)
            out.pivot_conditions.push_back(p);
        if (!sol.inconsistent.empty()) {
            SolverInconsistency inc{r, {}};
            for (auto &e : sol.inconsistent)
                inc.equations.push_back(e.label + ": " + e.constant.str() + " = 0");
            out.inconsistencies.push_back(std::move(inc));
        }
        std::map<std::uint32_t, Scalar> fresh;
        for (auto &[c, val] : sol.determined) {
            Scalar v = val.second;
            for (auto &[fc, coef] : val.first)
                v += coef * Scalar(ParamPoly::var(ids[static_cast<std::size_t>(fc)]));
            fresh[ids[static_cast<std::size_t>(c)]] = v;
        }
        for (auto &[id, v] : st.values)
            if (depends_on(v, live))
                v = v.compose(fresh);
        for (auto &[id, v] : fresh)
            st.values[id] = v;
        out.log.push_back("weight " + std::to_string(r) + ": " + std::to_string(fresh.size()) + " of " +
                          std::to_string(ids.size()) + " unknowns determined");
    }
    // report
    int solved = pb.max_order;
    for (auto &s : pb.slots) {
        if (s.weight > pb.max_order)
            continue;
        for (auto [fixed, id, part] : {std::tuple{s.re_fixed.has_value(), s.re_id, "_re"},
                                       std::tuple{s.im_fixed.has_value(), s.im_id, "_im"}}) {
            if (fixed)
                continue;
            auto it = st.values.find(id);
            if (it == st.values.end() || depends_on(it->second, st.unknowns)) {
                out.free_unknowns[s.weight].push_back(s.name + (s.self_mirror && !pb.paired ? "" : part));
                solved = std::min(solved, s.weight - 1);
            }
        }
    }
    for (auto &[id, name] : pb.extra) {
        auto it = st.values.find(id);
        if (it == st.values.end() || depends_on(it->second, st.unknowns))
            out.free_extra.push_back(name);
    }
    out.solved_order = solved;
    out.F = build_template(pb, st, pb.max_order);
    out.values = st.values;
    return out;
}

std::uint32_t unknown_id(const std::string &name) { return ParamRegistry::instance().intern(name); }

Exp cr_mirror(Exp e)
{
    auto v = exp_to(e, 5);
    return exp_from({v[2], v[3], v[0], v[1], v[4]});
}

struct PinSpec {
    enum { whole, re, im } part;
    std::string coeff;
    Scalar value;
};

PinSpec parse_pin(const std::string &key, const std::string &value)
{
    PinSpec p{PinSpec::whole, key, parse_scalar(value)};
    if (key.rfind("Re ", 0) == 0) {
        p.part = PinSpec::re;
        p.coeff = key.substr(3);
    } else if (key.rfind("Im ", 0) == 0) {
        p.part = PinSpec::im;
        p.coeff = key.substr(3);
    }
    return p;
}

Exp parse_cr_name(const std::string &name)
{
    if (name.size() != 6 || name[0] != 'F')
        throw error(errc::parse_error, "coefficient name '" + name + "' is not of the form Fhijkl");
    std::vector<int> v;
    for (std::size_t q = 1; q < 6; ++q) {
        if (!std::isdigit(static_cast<unsigned char>(name[q])))
            throw error(errc::parse_error, "coefficient name '" + name + "' is not of the form Fhijkl");
        v.push_back(name[q] - '0');
    }
    return exp_from(v);
}

} // namespace

namespace {

Problem cr_problem(const Pins &pins, int max_order, int first_unknown_weight)
{
    Problem pb;
    pb.chart = cr_chart();
    pb.paired = true;
    pb.lookahead = 2;
    pb.first_weight = first_unknown_weight;
    pb.max_order = max_order;
    for (const char *p : {"a", "b", "c", "d", "e", "A004_re", "A004_im", "B103_re", "B103_im"})
        pb.split.push_back(param(p));
    std::map<Exp, PinSpec> pinned;
    for (auto &[k, v] : pins) {
        PinSpec p = parse_pin(k, v);
        pinned.emplace(parse_cr_name(p.coeff), p);
    }
    // seed: normal-form values below the first unknown weight
    SeriesAccumulator known(pb.chart, kExact);
    std::vector<int> e(5);
    int last = max_order + pb.lookahead;
    for (e[4] = 0; 2 * e[4] <= last; ++e[4])
        for (e[0] = 0; e[0] + 2 * e[4] <= last; ++e[0])
            for (e[1] = 0; e[0] + e[1] + 2 * e[4] <= last; ++e[1])
                for (e[2] = 0; e[0] + e[1] + e[2] + 2 * e[4] <= last; ++e[2])
                    for (e[3] = 0; e[0] + e[1] + e[2] + e[3] + 2 * e[4] <= last; ++e[3]) {
                        Exp x = exp_from(e);
                        int w = e[0] + e[1] + e[2] + e[3] + 2 * e[4];
                        if (w == 0)
                            continue;
                        Exp m = cr_mirror(x);
                        if (m > x)
                            continue;
                        if (auto nf = normal_form_value(x)) {
                            known.add_term(x, *nf);
                            if (m != x)
                                known.add_term(m, nf->conj());
                            continue;
                        }
                        if (w < first_unknown_weight)
                            continue; // zero below the template
                        Slot s{x, m, m == x, w, std::nullopt, std::nullopt, 0, 0, cr_name(x)};
                        for (Exp key : {x, m}) {
                            auto it = pinned.find(key);
                            if (it == pinned.end())
                                continue;
                            Scalar v = key == x ? it->second.value : it->second.value.conj();
                            if (it->second.part != PinSpec::im)
                                s.re_fixed = it->second.part == PinSpec::whole ? v.re() : it->second.value;
                            if (it->second.part != PinSpec::re)
                                s.im_fixed = it->second.part == PinSpec::whole
                                                 ? v.im()
                                                 : (key == x ? it->second.value : -it->second.value);
                            pinned.erase(it);
                            break;
                        }
                        if (s.self_mirror && !s.im_fixed)
                            s.im_fixed = Scalar(0);
                        s.re_id = unknown_id("u" + s.name + "_re");
                        s.im_id = unknown_id("u" + s.name + "_im");
                        pb.slots.push_back(s);
                    }
    if (!pinned.empty())
        throw error(errc::bad_input, "pin on a coefficient fixed by the normal form or outside the template: " +
                                         pinned.begin()->second.coeff);
    pb.known = known.finish();
    return pb;
}

const char *family_param_names[] = {"a", "b", "c", "d", "e"};

} // namespace

GraphSolution solve_graph_from_symmetry(const HoloVectorField &family, const Pins &pins, int max_order,
                                        int first_unknown_weight)
{
    Problem pb = cr_problem(pins, max_order, first_unknown_weight);
    pb.residual = [&family](const Series &F, const std::map<std::uint32_t, Scalar> &) {
        return std::vector<Series>{tangency_residual(family, HypersurfaceGraph{F, "template"})};
    };
    return run(pb);
}

namespace {

bool has_unknowns(const Scalar &c)
{
    for (auto id : c.variables()) {
        const std::string &n = ParamRegistry::instance().name(id);
        if (n.size() > 1 && n[0] == 'u' && std::isupper(static_cast<unsigned char>(n[1])))
            return true;
    }
    return false;
}

// Splits the raw top-block diffs into typos (coefficients free of A004, B103
// and of undetermined field unknowns) and the rest, which must be matched by
// per-direction values of A004, B103.
void classify_top_diffs(const std::string &model, TableVariant v, const std::vector<int> &tops,
                        FieldBlockRederivation &out)
{
    static const char *comp_names[] = {"A", "B", "C"};
    std::vector<std::uint32_t> ids;
    std::map<std::uint32_t, int> col;
    auto column = [&](std::uint32_t id) {
        if (!col.count(id)) {
            col[id] = static_cast<int>(ids.size());
            ids.push_back(id);
        }
    };
    std::map<std::string, std::pair<Scalar, Scalar>> formal;
    std::set<std::uint32_t> constant_ids;
    for (const char *pn : family_param_names) {
        std::string stem = std::string("_") + pn;
        auto a_re = unknown_id("uA004" + stem + "_re"), a_im = unknown_id("uA004" + stem + "_im");
        auto b_re = unknown_id("uB103" + stem + "_re"), b_im = unknown_id("uB103" + stem + "_im");
        for (auto id : {a_re, a_im, b_re, b_im}) {
            column(id);
            constant_ids.insert(id);
        }
        formal[pn] = {Scalar(ParamPoly::var(a_re)) + Scalar::i() * Scalar(ParamPoly::var(a_im)),
                      Scalar(ParamPoly::var(b_re)) + Scalar::i() * Scalar(ParamPoly::var(b_im))};
    }
    Problem q;
    std::vector<LinearEquation> eqs;
    for (std::size_t p = 0; p < 5; ++p) {
        FamilyParams fp = FamilyParams::unit(static_cast<int>(p));
        fp.A004 = formal[family_param_names[p]].first;
        fp.B103 = formal[family_param_names[p]].second;
        HoloVectorField printed = model_symmetry_family(model, fp, kExact, v);
        const HoloVectorField &derived = out.blocks.at(family_param_names[p]);
        for (std::size_t m = 0; m < 3; ++m) {
            Series want = printed[m].weighted_component(tops[m]);
            const Series &got = derived[m];
            std::set<Exp> exps;
            for (const Series *ser : std::initializer_list<const Series *>{&got, &want})
                for (auto &t : ser->terms())
                    exps.insert(t.exp);
            for (Exp x : exps) {
                Scalar d = got.coeff(x), w = want.coeff(x);
                Scalar diff = d - w;
                if (diff.is_zero())
                    continue;
                bool coupled = false;
                for (auto id : w.variables())
                    coupled = coupled || constant_ids.count(id);
                if (!coupled && !has_unknowns(d)) {
                    out.typos.push_back({comp_names[m], tops[m], family_param_names[p], x, d, w});
                    continue;
                }
                for (auto id : diff.variables())
                    if (constant_ids.count(id) || has_unknowns(Scalar(ParamPoly::var(id))))
                        column(id);
                auto e = exp_to(x, 3);
                std::string label = std::string(comp_names[m]) + std::to_string(tops[m]) + " [" +
                                    family_param_names[p] + "] z^" + std::to_string(e[0]) + " zeta^" +
                                    std::to_string(e[1]) + " w^" + std::to_string(e[2]);
                add_equations(diff, q, col, eqs, label);
            }
        }
    }
    auto sol = solve_linear(std::move(eqs), static_cast<int>(ids.size()));
    for (auto &e : sol.inconsistent)
        out.constant_conflicts.push_back(e.label + ": " + e.constant.str() + " = 0");
    auto value = [&](std::uint32_t id) {
        int c = col.at(id);
        auto it = sol.determined.find(c);
        if (it == sol.determined.end())
            return Scalar(ParamPoly::var(id));
        Scalar r = it->second.second;
        for (auto &[fc, coef] : it->second.first)
            r += coef * Scalar(ParamPoly::var(ids[static_cast<std::size_t>(fc)]));
        return r;
    };
    for (const char *pn : family_param_names) {
        std::string stem = std::string("_") + pn;
        Scalar a = value(unknown_id("uA004" + stem + "_re")) + Scalar::i() * value(unknown_id("uA004" + stem + "_im"));
        Scalar b = value(unknown_id("uB103" + stem + "_re")) + Scalar::i() * value(unknown_id("uB103" + stem + "_im"));
        out.top_constants[pn] = {a, b};
    }
}

} // namespace

FieldBlockRederivation solve_graph_and_top_blocks(const std::string &model, const Pins &pins, int max_order,
                                                  TableVariant v, int first_unknown_weight)
{
    Problem pb = cr_problem(pins, max_order, first_unknown_weight);
    HoloVectorField printed = model_symmetry_family(model, FamilyParams::formal(), kExact, v);
    auto holo = holo_chart();
    std::vector<std::uint32_t> pids;
    for (const char *n : family_param_names)
        pids.push_back(param(n));
    // printed blocks below the top one, plus unknown top blocks linear in a..e
    HoloVectorField base;
    std::vector<int> tops;
    const char *comp_names = "ABC";
    for (std::size_t m = 0; m < 3; ++m) {
        int top = printed[m].order();
        tops.push_back(top);
        SeriesAccumulator acc(holo, top);
        Series below = printed[m].truncate(top - 1);
        for (auto &t : below.terms())
            acc.add_term(t.exp, t.coeff);
        for (int l = 0; 2 * l <= top; ++l)
            for (int j = 0; j + 2 * l <= top; ++j) {
                int i = top - 2 * l - j;
                Exp x = exp_from({i, j, l});
                for (std::size_t p = 0; p < 5; ++p) {
                    std::string stem = std::string("u") + comp_names[m] + "_" + family_param_names[p] + "_" +
                                       std::to_string(i) + std::to_string(j) + std::to_string(l);
                    auto re = unknown_id(stem + "_re"), im = unknown_id(stem + "_im");
                    pb.extra.push_back({re, stem + "_re"});
                    pb.extra.push_back({im, stem + "_im"});
                    Scalar c = (Scalar(ParamPoly::var(re)) + Scalar::i() * Scalar(ParamPoly::var(im))) *
                               Scalar(ParamPoly::var(pids[p]));
                    acc.add_term(x, c);
                }
            }
        base.comps.push_back(acc.finish());
    }
    pb.residual = [&base](const Series &F, const std::map<std::uint32_t, Scalar> &values) {
        HoloVectorField L = base;
        if (!values.empty())
            L = L.map_coeffs([&](const Scalar &c) { return c.compose(values); });
        return std::vector<Series>{tangency_residual(L, HypersurfaceGraph{F, "template"})};
    };
    FieldBlockRederivation out;
    out.solution = run(pb);
    HoloVectorField solved = base.map_coeffs([&](const Scalar &c) { return c.compose(out.solution.values); });
    for (std::size_t p = 0; p < 5; ++p) {
        HoloVectorField unit_printed = model_symmetry_family(model, FamilyParams::unit(static_cast<int>(p)), kExact, v);
        HoloVectorField blk;
        for (std::size_t m = 0; m < 3; ++m) {
            Series top = solved[m].weighted_component(tops[m]);
            ParamMonomial mono = ParamMonomial::var(pids[p]);
            Series part = top.map_coeffs([&](const Scalar &c) {
                auto split = c.num().split(pids);
                auto it = split.find(mono);
                return it == split.end() ? Scalar() : Scalar::fraction(it->second, c.den());
            });
            blk.comps.push_back(part);
            Series want = unit_printed[m].weighted_component(tops[m]);
            std::set<Exp> exps;
            for (auto *ser : {&part, &want})
                for (auto &t : ser->terms())
                    exps.insert(t.exp);
            for (Exp x : exps) {
                Scalar d = part.coeff(x), w = want.coeff(x);
                if (d != w)
                    out.diffs.push_back({std::string(1, comp_names[m]), tops[m], family_param_names[p], x, d, w});
            }
        }
        out.blocks.emplace(family_param_names[p], std::move(blk));
    }
    classify_top_diffs(model, v, tops, out);
    return out;
}



GraphSolution solve_affine_graph(const std::vector<VectorField> &fields, const Pins &pins, int max_order)
{
    Problem pb;
    pb.chart = affine_chart();
    pb.lookahead = 1;
    pb.first_weight = 5;
    pb.max_order = max_order;
    auto fact = [](int n) {
        mpz_class f = 1;
        for (int k = 2; k <= n; ++k)
            f *= k;
        return f;
    };
    std::map<Exp, Scalar> pinned;
    for (auto &[k, v] : pins) {
        if (k.size() != 3 || k[0] != 'F' || !std::isdigit(static_cast<unsigned char>(k[1])) ||
            !std::isdigit(static_cast<unsigned char>(k[2])))
            throw error(errc::parse_error, "affine pin '" + k + "' is not of the form Fjk");
        int j = k[1] - '0', l = k[2] - '0';
        mpq_class scale(mpz_class(1), fact(j) * fact(l));
        scale.canonicalize();
        pinned[exp_from({j, l})] = parse_scalar(v) * Scalar(GaussRational(scale));
    }
    auto f31 = pinned.find(exp_from({3, 1}));
    if (f31 == pinned.end())
        throw error(errc::bad_input, "affine template needs a pin on F31");
    pb.known = parse_series("1/2*x^2 + 1/2*x^2*y + 1/2*x^2*y^2", pb.chart) +
               Series::monomial(pb.chart, f31->first, f31->second);
    pinned.erase(f31);
    int last = max_order + pb.lookahead;
    for (int w = pb.first_weight; w <= last; ++w)
        for (int j = w; j >= 0; --j) {
            Exp x = exp_from({j, w - j});
            std::string name = "F" + std::to_string(j) + std::to_string(w - j);
            Slot s{x, x, true, w, std::nullopt, Scalar(0), 0, 0, name};
            if (auto it = pinned.find(x); it != pinned.end()) {
                s.re_fixed = it->second;
                pinned.erase(it);
            }
            s.re_id = unknown_id("u" + name);
            s.im_id = s.re_id;
            pb.slots.push_back(s);
        }
    if (!pinned.empty())
        throw error(errc::bad_input, "affine pin outside the template");
    auto target = affine_chart();
    pb.residual = [&fields, target](const Series &F, const std::map<std::uint32_t, Scalar> &) {
        std::vector<Series> out;
        for (auto &X : fields) {
            std::map<std::size_t, Series> at{{2, F}};
            Series P = substitute(X[0], at, target), Q = substitute(X[1], at, target),
                   R = substitute(X[2], at, target);
            out.push_back(R - mul(P, F.derivative("x")) - mul(Q, F.derivative("y")));
        }
        return out;
    };
    return run(pb);
}

std::vector<CoefficientDiff> table_diff(const Series &solved, const Series &printed, int lo, int hi)
{
    std::vector<CoefficientDiff> out;
    std::set<Exp> exps;
    for (auto *s : {&solved, &printed})
        for (auto &t : s->terms()) {
            int w = s->weight(t.exp);
            if (w >= lo && w <= hi)
                exps.insert(t.exp);
        }
    const bool cr = solved.chart().size() == 5;
    for (auto it = exps.rbegin(); it != exps.rend(); ++it) {
        Scalar a = solved.coeff(*it), b = printed.coeff(*it);
        bool determined = true;
        for (auto v : a.variables()) {
            const std::string &n = ParamRegistry::instance().name(v);
            if (n.size() > 1 && n[0] == 'u' && std::isupper(static_cast<unsigned char>(n[1])))
                determined = false;
        }
        if (!determined || a == b)
            continue;
        std::string name;
        if (cr) {
            name = cr_name(*it);
        } else {
            auto v = exp_to(*it, 2);
            name = "x^" + std::to_string(v[0]) + " y^" + std::to_string(v[1]);
        }
        out.push_back({*it, name, a, b});
    }
    std::stable_sort(out.begin(), out.end(), [&](const CoefficientDiff &x, const CoefficientDiff &y) {
        return solved.weight(x.exp) < solved.weight(y.exp);
    });
    return out;
}

} // namespace crnf
