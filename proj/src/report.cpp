#include "crnf/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "crnf/solver.hpp"
#include "crnf/tables.hpp"

namespace crnf {

const char *status_name(Status s)
{
    switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::partial: return "PARTIAL";
    }
    return "?";
}

CheckRecord &VerificationReport::check(const std::string &name, bool ok, const std::string &detail, json witness,
                                       std::optional<int> feasible_order)
{
    CheckRecord r{name, ok ? Status::pass : Status::fail, feasible_order, detail, std::move(witness)};
    if (!ok && r.witness.is_null())
        r.witness = detail.empty() ? json(name) : json(detail);
    checks.push_back(std::move(r));
    return checks.back();
}

CheckRecord &VerificationReport::partial(const std::string &name, const std::string &detail, json witness)
{
    checks.push_back({name, Status::partial, std::nullopt, detail, std::move(witness)});
    return checks.back();
}

Status VerificationReport::overall() const
{
    if (checks.empty())
        return Status::fail;
    Status s = Status::pass;
    for (auto &c : checks) {
        if (c.status == Status::fail)
            return Status::fail;
        if (c.status == Status::partial)
            s = Status::partial;
    }
    return s;
}

void VerificationReport::append(const VerificationReport &other, const std::string &prefix)
{
    for (auto c : other.checks) {
        c.name = prefix + c.name;
        checks.push_back(std::move(c));
    }
    for (auto &[k, v] : other.inputs)
        inputs[k] = v;
    if (!other.output.is_null()) {
        if (output.is_null())
            output = json::object();
        output[prefix.empty() ? "sub" : prefix.substr(0, prefix.size() - 2)] = other.output;
    }
}

json VerificationReport::to_json() const
{
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    json cs = json::array();
    for (auto &c : checks) {
        json r;
        r["name"] = c.name;
        r["status"] = status_name(c.status);
        r["feasible_order"] = c.feasible_order ? json(*c.feasible_order) : json(nullptr);
        r["detail"] = c.detail;
        r["witness"] = c.witness;
        cs.push_back(r);
    }
    j["checks"] = cs;
    j["overall"] = status_name(overall());
    if (!output.is_null())
        j["output"] = output;
    if (seconds)
        j["seconds"] = *seconds;
    return j;
}

std::string VerificationReport::to_text() const
{
    std::ostringstream o;
    o << "command: " << command << "\n";
    for (auto &[k, v] : inputs)
        o << "input " << k << " sha256 " << v << "\n";
    for (auto &c : checks) {
        o << "[" << status_name(c.status) << "] " << c.name;
        if (c.feasible_order)
            o << " (order " << *c.feasible_order << ")";
        if (!c.detail.empty())
            o << ": " << c.detail;
        o << "\n";
        if (c.status != Status::pass && !c.witness.is_null())
            o << "    witness: " << c.witness.dump() << "\n";
    }
    if (text_output && !output.is_null())
        o << "output: " << output.dump(2) << "\n";
    if (seconds)
        o << "seconds: " << *seconds << "\n";
    o << "overall: " << status_name(overall()) << "\n";
    return o.str();
}

namespace {

void add_table_digest(VerificationReport &r)
{
    std::ifstream in(table_dir() + "/manifest.json", std::ios::binary);
    if (!in)
        return;
    std::ostringstream ss;
    ss << in.rdbuf();
    r.inputs["tables/manifest.json"] = sha256_hex(ss.str());
}

const char *variant_name(TableVariant v) { return v == TableVariant::corrected ? "corrected" : "printed"; }

// order through which the residual is known to vanish
int vanishing_order(const Series &r) { return r.is_zero() ? r.order() : r.valuation() - 1; }

json lowest_component(const Series &r)
{
    if (r.is_zero())
        return nullptr;
    return to_json(r.weighted_component(r.valuation()));
}

void tangency_check(VerificationReport &rep, const std::string &name, const HoloVectorField &X,
                    const HypersurfaceGraph &g, int min_order)
{
    Series r = tangency_residual(X, g);
    int k = vanishing_order(r);
    bool ok = k >= min_order;
    std::string detail = "residual vanishes through weight " + std::to_string(k) + " (need " +
                         std::to_string(min_order) + ")";
    if (!r.is_zero())
        detail += "; first nonzero at weight " + std::to_string(r.valuation());
    rep.check(name, ok, detail, ok ? json(nullptr) : lowest_component(r), k);
}

json diff_json(const std::vector<CoefficientDiff> &d)
{
    json a = json::array();
    for (auto &x : d)
        a.push_back({{"coefficient", x.name}, {"solved", x.solved.str()}, {"printed", x.printed.str()}});
    return a;
}

HypersurfaceGraph theorem_model(const std::string &model, int order, TableVariant v)
{
    return model == "thm31" ? thm31_model(order, v) : thm33_model(order, v);
}

void check_model(const std::string &model)
{
    if (model != "thm31" && model != "thm33")
        throw error(errc::bad_input, "model must be thm31 or thm33");
}

std::map<std::uint32_t, GaussRational> theta_binding(const std::optional<Scalar> &theta)
{
    std::map<std::uint32_t, GaussRational> b;
    if (theta) {
        if (!theta->is_number() || !theta->number().is_real())
            throw error(errc::bad_input, "theta must be a real rational");
        b[param("theta")] = theta->number();
    }
    return b;
}

Vec subst(const Vec &v, const std::map<std::uint32_t, GaussRational> &b)
{
    Vec out;
    for (auto &s : v)
        out.push_back(s.substitute(b));
    return out;
}

void bracket_checks(VerificationReport &rep, const std::string &model, const LieBasis &basis,
                    const std::map<std::uint32_t, GaussRational> &b)
{
    const auto &t = load_table(model + ".json");
    int n = static_cast<int>(basis.fields.size());
    StructureConstants sc = structure_constants(basis);
    StructureConstants tab =
        structure_constants_from_table(n, t["brackets"].get<std::map<std::string, std::string>>());
    for (auto &e : sc.expansions) {
        std::string name = "[e" + std::to_string(e.i + 1) + ",e" + std::to_string(e.j + 1) + "]";
        if (e.i >= e.j)
            continue;
        Vec want = subst(tab.c[e.i][e.j], b);
        bool match = sc.c[e.i][e.j] == want;
        std::string detail = "computed " + combination_str(sc.c[e.i][e.j]) + ", printed " + combination_str(want);
        json w = nullptr;
        if (!e.in_span)
            w = json{{"note", e.note}, {"residual", to_json(e.residual)}};
        rep.check("bracket " + name, match && e.in_span, detail, w, e.checked_order);
    }
    auto jac = jacobi_check(sc);
    rep.check("Jacobi identity", jac.pass(), "", jac.pass() ? json(nullptr) : json(jac.failures));
    auto ds = derived_series(sc);
    auto want = t["derived_series"].get<std::vector<int>>();
    rep.check("derived series dims", ds.dims == want,
              "computed " + json(ds.dims).dump() + ", printed " + json(want).dump());
}

} // namespace

VerificationReport verify_flat(int order)
{
    VerificationReport rep;
    add_table_digest(rep);
    auto g = gm_flat_model(order);
    auto nf = normal_form_check(g);
    rep.check("flat model normal form", nf.pass(), "", nf.pass() ? json(nullptr) : json(nf.failures.size()));
    for (auto &p : flat_sample_params()) {
        auto h = pushforward_graph(g, flat_automorphism(p, order));
        int k = h.order();
        Series d = h.F - g.F.truncate(k);
        bool ok = d.is_zero() && k >= 6;
        rep.check("automorphism invariance " + p.str(), ok,
                  "image equals the model through order " + std::to_string(k) + " (need 6)",
                  d.is_zero() ? json(nullptr) : lowest_component(d), k);
    }
    return rep;
}

VerificationReport verify_tangency(const std::string &model, TableVariant v)
{
    check_model(model);
    VerificationReport rep;
    add_table_digest(rep);
    auto g = theorem_model(model, load_table(model + ".json")["graph_order"].get<int>(), v);
    int need = model == "thm31" ? 6 : 7;
    LieBasis basis = model_basis(model, v);
    for (std::size_t k = 0; k < basis.fields.size(); ++k)
        tangency_check(rep, "tangency e" + std::to_string(k + 1), basis.fields[k], g, need);
    auto fam = model_symmetry_family(model, FamilyParams::formal(), kExact, v);
    Series r = tangency_residual(fam, g);
    std::string d = "formal family (A004, B103 formal): residual vanishes through weight " +
                    std::to_string(vanishing_order(r));
    if (model == "thm31")
        tangency_check(rep, "tangency of the formal family", fam, g, need);
    else
        rep.output = {{"formal_family", d}};
    return rep;
}

VerificationReport verify_brackets(const std::string &model, TableVariant v)
{
    check_model(model);
    VerificationReport rep;
    add_table_digest(rep);
    bracket_checks(rep, model, model_basis(model, v), {});
    return rep;
}

VerificationReport verify_tube(const std::string &model, TableVariant v)
{
    check_model(model);
    VerificationReport rep;
    add_table_digest(rep);
    const auto &t = load_table(model + ".json");
    LieBasis basis = model_basis(model, v);
    StructureConstants sc = structure_constants(basis);
    std::vector<Vec> cand;
    for (auto &s : t["ideal"])
        cand.push_back(parse_combination(s.get<std::string>(), static_cast<int>(basis.fields.size())));
    auto tr = tube_criterion(basis, sc, cand);
    json names = t["ideal"];
    rep.check("abelian ideal (dim 3)", tr.ideal.pass(3),
              "candidate " + names.dump() + ", dim " + std::to_string(tr.ideal.dim), json(tr.ideal.failures));
    rep.check("maximally real at 0", tr.real_span.pass,
              "real rank " + std::to_string(tr.real_span.rank) + ", rank with i " +
                  std::to_string(tr.real_span.rank_with_i));
    rep.check("tube criterion", tr.pass);
    return rep;
}

VerificationReport resolve_tables(const std::string &model, int order, TableVariant v)
{
    check_model(model);
    VerificationReport rep;
    add_table_digest(rep);
    const auto &t = load_table(model + ".json");
    int top = t["graph_order"].get<int>();
    if (order > top)
        throw error(errc::no_paper_data, model + " tables stop at order " + std::to_string(top));
    Pins pins = t["pins"].get<Pins>();
    auto printed = theorem_model(model, order, v);
    json out;
    out["variant"] = variant_name(v);
    const GraphSolution *sol;
    FieldBlockRederivation joint;
    GraphSolution plain;
    if (model == "thm33") {
        joint = solve_graph_and_top_blocks(model, pins, order, v);
        sol = &joint.solution;
        json typos = json::array();
        for (auto &d : joint.typos)
            typos.push_back({{"block", d.component + std::to_string(d.block)},
                             {"param", d.param},
                             {"exp", exp_to(d.exp, 3)},
                             {"derived", d.derived.str()},
                             {"printed", d.printed.str()}});
        rep.check("field top blocks match printed (up to A004, B103)", joint.typos.empty(),
                  std::to_string(joint.typos.size()) + " coefficient(s) differ", typos);
        rep.check("A004, B103 consistent", joint.constant_conflicts.empty(), "",
                  json(joint.constant_conflicts));
        json consts;
        for (auto &[p, ab] : joint.top_constants)
            consts[p] = {{"A004", ab.first.str()}, {"B103", ab.second.str()}};
        out["top_constants"] = consts;
        plain = solve_graph_from_symmetry(model_symmetry_family(model, FamilyParams::formal(), kExact, v), pins,
                                          order);
        json inc = json::array();
        for (auto &i : plain.inconsistencies)
            inc.push_back({{"weight", i.weight}, {"equations", i.equations}});
        out["independent_A004_B103"] = {{"consistent", plain.consistent()}, {"inconsistencies", inc}};
    } else {
        plain = solve_graph_from_symmetry(model_symmetry_family(model, FamilyParams::formal(), kExact, v), pins,
                                          order);
        sol = &plain;
    }
    json inc = json::array();
    for (auto &i : sol->inconsistencies)
        inc.push_back({{"weight", i.weight}, {"equations", i.equations}});
    rep.check("tangency system consistent", sol->consistent(), "", inc);
    json freej;
    for (auto &[w, names] : sol->free_unknowns)
        freej[std::to_string(w)] = names;
    out["free_unknowns"] = freej;
    auto diffs = table_diff(sol->F, printed.F, 5, order);
    rep.check("printed F^5..F^" + std::to_string(order) + " reproduced", diffs.empty(),
              std::to_string(diffs.size()) + " coefficient(s) differ", diff_json(diffs), sol->solved_order);
    if (model == "thm33" && order >= 6) {
        Scalar f = cr_coeff(sol->F, 3, 0, 2, 1, 0);
        rep.check("F30210 = -15", f == Scalar(-15), "solved " + f.str());
    }
    out["solved_graph"] = to_json(sol->F);
    rep.output = out;
    return rep;
}

VerificationReport verify_theorem(const std::string &which, int order, const std::optional<Scalar> &theta,
                                  TableVariant v)
{
    VerificationReport rep;
    add_table_digest(rep);
    if (which == "3.2") {
        if (theta)
            throw error(errc::bad_input, "--theta applies to 3.3 only");
        auto g = gm_flat_model(order);
        auto nf = normal_form_check(g);
        rep.check("normal form", nf.pass(), "", json(nf.failures.size()));
        auto inv = extract_invariants(g);
        for (const char *n : {"F30020", "F50010", "F30210"}) {
            auto &val = inv.get(n);
            if (!val)
                rep.partial(std::string(n) + " = 0", "order too low");
            else
                rep.check(std::string(n) + " = 0", val->is_zero(), "value " + val->str());
        }
        if (nf.pass() && order >= 6) {
            auto b = classify_branch(g);
            rep.check("branch FLAT", b.kind == Branch::FLAT, b.reason);
        }
        Series closed = parse_series(load_table("flat.json")["graph"].get<std::string>(), cr_chart(), order);
        rep.check("zero perturbation of the flat model", (g.F - closed).is_zero());
        rep.append(verify_flat(order));
        return rep;
    }
    std::string model = which == "3.1" ? "thm31" : which == "3.3" ? "thm33" : "";
    if (model.empty())
        throw error(errc::bad_input, "theorem must be 3.1, 3.2 or 3.3");
    if (theta && model != "thm33")
        throw error(errc::bad_input, "--theta applies to 3.3 only");
    auto b = theta_binding(theta);
    auto g = theorem_model(model, order, v);
    g.F = g.F.substitute_params(b);
    rep.output = {{"variant", variant_name(v)}};
    auto real = reality_check(g);
    rep.check("reality", real.pass(), std::to_string(real.violations.size()) + " violation(s)",
              real.pass() ? json(nullptr) : json(cr_name(real.violations.front().exp)));
    auto nf = normal_form_check(g);
    json nfw = json::array();
    for (auto &f : nf.failures)
        nfw.push_back({{"condition", f.condition},
                       {"coefficient", cr_name(f.exp)},
                       {"expected", f.expected.str()},
                       {"found", f.found.str()}});
    rep.check("normal form", nf.pass(), std::to_string(nf.failures.size()) + " failure(s)", nfw);
    if (order >= 6) {
        auto br = classify_by_invariants(g);
        Branch want = model == "thm31" ? Branch::BRANCH_F30020 : Branch::BRANCH_THETA;
        rep.check(std::string("branch ") + branch_name(want), br.kind == want, br.reason);
    }
    int need = model == "thm31" ? 6 : 7;
    LieBasis basis = model_basis(model, v);
    for (auto &f : basis.fields)
        f = f.map_coeffs([&](const Scalar &s) { return s.substitute(b); });
    for (std::size_t k = 0; k < basis.fields.size(); ++k)
        tangency_check(rep, "tangency e" + std::to_string(k + 1), basis.fields[k], g, need);
    if (model == "thm31") {
        auto fam = model_symmetry_family(model, FamilyParams::formal(), kExact, v);
        tangency_check(rep, "tangency of the formal family", fam, g, need);
    }
    bracket_checks(rep, model, basis, b);
    if (!theta)
        rep.append(verify_tube(model, v));
    int top = load_table(model + ".json")["graph_order"].get<int>();
    if (!theta)
        rep.append(resolve_tables(model, std::min(order, top), v), "re-derivation: ");
    return rep;
}

VerificationReport classify_report(const HypersurfaceGraph &g)
{
    VerificationReport rep;
    rep.text_output = true;
    auto real = reality_check(g);
    rep.check("reality", real.pass(), std::to_string(real.violations.size()) + " violation(s)");
    auto nf = normal_form_check(g);
    BranchLabel br;
    if (nf.pass()) {
        rep.check("normal form", true);
        br = classify_branch(g);
    } else {
        auto &f = nf.failures.front();
        rep.partial("normal form", "fails at " + cr_name(f.exp) + " (" + f.condition + "); branch read from the zero pattern only",
                    json({{"expected", f.expected.str()}, {"found", f.found.str()}}));
        br = classify_by_invariants(g);
    }
    if (br.kind == Branch::UNKNOWN)
        rep.partial("branch", br.reason);
    else
        rep.check("branch", true, br.reason);
    json inv;
    auto p = extract_invariants(g);
    for (std::size_t k = 0; k < p.names.size(); ++k)
        inv[p.names[k]] = p.values[k] ? json(p.values[k]->str()) : json(nullptr);
    rep.output = {{"branch", branch_name(br.kind)}, {"invariants", inv}};
    if (br.witness)
        rep.output["witness"] = br.witness->str();
    return rep;
}

VerificationReport transform_report(const HypersurfaceGraph &g, const ResidualParams &p)
{
    VerificationReport rep;
    rep.text_output = true;
    auto h = pushforward_graph(g, flat_automorphism(p, g.order()));
    rep.check("pushforward", true, p.str(), nullptr, h.order());
    if (h.order() >= 6 && g.order() >= 6) {
        auto a = classify_by_invariants(g), b = classify_by_invariants(h);
        rep.check("branch preserved", a.kind == b.kind,
                  std::string(branch_name(a.kind)) + " -> " + branch_name(b.kind));
    }
    rep.output = to_json(h);
    return rep;
}

VerificationReport normalize_report(const HypersurfaceGraph &g)
{
    VerificationReport rep;
    rep.text_output = true;
    auto n = normalize_residuals(g);
    const Series &F = n.graph.F;
    auto want = [&](const std::string &name, const Scalar &got, const Scalar &value) {
        rep.check(name, got == value, "value " + got.str());
    };
    switch (n.branch.kind) {
    case Branch::BRANCH_F30020:
        want("F30020 = 1", cr_coeff(F, 3, 0, 0, 2, 0), Scalar(1));
        want("F40020 = 0", cr_coeff(F, 4, 0, 0, 2, 0), Scalar(0));
        want("Im F30210 = 0", cr_coeff(F, 3, 0, 2, 1, 0).im(), Scalar(0));
        break;
    case Branch::BRANCH_THETA:
        want("F50010 = 1", cr_coeff(F, 5, 0, 0, 1, 0), Scalar(1));
        want("F60010 = 0", cr_coeff(F, 6, 0, 0, 1, 0), Scalar(0));
        want("Im F40300 = 0", cr_coeff(F, 4, 0, 3, 0, 0).im(), Scalar(0));
        break;
    case Branch::FLAT: rep.check("branch FLAT", true, "nothing to normalize"); break;
    case Branch::UNKNOWN: rep.partial("branch", n.branch.reason); break;
    }
    rep.output = {{"branch", branch_name(n.branch.kind)},
                  {"lambda", n.params.lambda.str()},
                  {"alpha", n.params.alpha.str()},
                  {"rho", n.params.rho.str()},
                  {"alternatives", n.alternatives},
                  {"log", n.log},
                  {"graph", to_json(n.graph)}};
    return rep;
}

std::string affine_label(const std::string &name)
{
    if (name == "3" || name == "BRANCH3" || name == "branch3")
        return "BRANCH3";
    if (name == "flat" || name == "FLAT")
        return "FLAT";
    if (name == "theta" || name == "THETA")
        return "THETA";
    throw error(errc::bad_input, "affine model must be 3, flat or theta");
}

namespace {

json affine_map_json(const AffineMap &m)
{
    json rows = json::array();
    for (auto &r : m.linear) {
        json row = json::array();
        for (auto &s : r)
            row.push_back(s.str());
        rows.push_back(row);
    }
    json t = json::array();
    for (auto &s : m.translation)
        t.push_back(s.str());
    return {{"linear", rows}, {"translation", t}};
}

void parabolic_checks(VerificationReport &rep, const AffineGraph &g)
{
    auto p = parabolic_noncylindrical_check(g);
    if (p.partial) {
        rep.partial("parabolic noncylindrical", "order below 3");
        return;
    }
    rep.check("F_xx(0) != 0", p.fxx_nonzero, "F_xx(0) = " + p.fxx.str());
    rep.check("Hessian determinant vanishes", p.hessian_vanishes, "", to_json(p.hessian), p.hessian.order());
    rep.check("noncylindrical", p.noncylindrical, "F_xxy F_xx - F_xxx F_xy = " + p.cylindrical.str());
}

json branch_json(const AffineBranch &b)
{
    return {{"branch", affine_branch_name(b.kind)},
            {"theta", b.theta ? json(b.theta->str()) : json(nullptr)},
            {"reason", b.reason}};
}

} // namespace

VerificationReport affine_verify_model(const std::string &name, int order)
{
    std::string label = affine_label(name);
    VerificationReport rep;
    add_table_digest(rep);
    auto g = affine_model(label, order);
    parabolic_checks(rep, g);
    auto fields = affine_model_fields(label);
    for (std::size_t k = 0; k < fields.size(); ++k) {
        Series r = affine_tangency_residual(fields[k], g);
        int z = vanishing_order(r);
        rep.check("tangency e" + std::to_string(k + 1), z >= order - 1,
                  "residual vanishes through order " + std::to_string(z), lowest_component(r), z);
    }
    auto sc = affine_structure(fields);
    auto tab = affine_model_table(label);
    for (int i = 0; i < sc.n; ++i)
        for (int j = i + 1; j < sc.n; ++j)
            rep.check("bracket [e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + "]",
                      sc.c[i][j] == tab.c[i][j],
                      "computed " + combination_str(sc.c[i][j]) + ", printed " + combination_str(tab.c[i][j]));
    for (auto &e : sc.expansions)
        if (!e.in_span)
            rep.check("bracket in span", false, e.note, to_json(e.residual));
    auto jac = jacobi_check(sc);
    rep.check("Jacobi identity", jac.pass(), "", json(jac.failures));

    auto sol = solve_affine_graph(fields, affine_model_pins(label), order);
    rep.check("tangency system consistent", sol.consistent());
    Series d = sol.F.truncate(order) - g.F;
    json dj = json::array();
    for (auto &t : d.terms())
        dj.push_back({{"exp", exp_to(t.exp, 2)}, {"difference", t.coeff.str()}});
    rep.check("solved graph matches the printed expansion", d.is_zero(), "", dj, sol.solved_order);
    for (auto &[k, v] : affine_model_implied(label)) {
        Scalar got = affine_coeff(sol.F, k[1] - '0', k[2] - '0');
        rep.check(k + " = " + v + " forced", got == parse_scalar(v), "solved " + got.str());
    }

    auto c = affine_classify_full(g);
    rep.check("branch " + label, affine_branch_name(c.branch.kind) == label, c.branch.reason);
    if (label == "THETA")
        rep.check("theta = F70 read off exactly", c.branch.theta && *c.branch.theta == Scalar::param("theta"),
                  c.branch.theta ? c.branch.theta->str() : "absent");
    int k = 0;
    for (auto &m : affine_sample_maps()) {
        auto c2 = affine_classify_full(affine_pushforward(g, m));
        bool same = c2.branch.kind == c.branch.kind && c2.branch.theta == c.branch.theta;
        rep.check("classification invariant under sample map " + std::to_string(++k), same,
                  affine_branch_name(c2.branch.kind) + std::string(c2.branch.theta ? " " + c2.branch.theta->str() : ""),
                  same ? json(nullptr) : affine_map_json(m));
    }
    rep.output = {{"graph", to_json(g)}, {"solved", to_json(sol.F)}};
    return rep;
}

VerificationReport affine_classify_report(const AffineGraph &g)
{
    VerificationReport rep;
    rep.text_output = true;
    parabolic_checks(rep, g);
    if (rep.overall() != Status::pass)
        return rep;
    auto c = affine_classify_full(g);
    if (c.branch.kind == AffineBranchKind::UNKNOWN)
        rep.partial("branch", c.branch.reason);
    else
        rep.check("branch", true, c.branch.reason);
    rep.output = branch_json(c.branch);
    rep.output["map"] = affine_map_json(c.map);
    rep.output["normalized"] = to_json(c.normalized);
    rep.output["log"] = c.log;
    return rep;
}

VerificationReport tube_lift_report(const std::array<std::string, 3> &comps, const Scalar &r0, const Scalar &t0,
                                    int order)
{
    VerificationReport rep;
    rep.text_output = true;
    auto t = parametrized_to_graph(comps, r0, t0, order);
    rep.check("graph at the base point", true, t.note, nullptr, t.graph.order());
    parabolic_checks(rep, t.graph);
    rep.output = {{"graph", to_json(t.graph)}, {"map", affine_map_json(t.map)}, {"axis", t.axis}};
    return rep;
}

} // namespace crnf
