#include "crnf/symmetry.hpp"

#include <set>
#include <sstream>

#include "crnf/expr.hpp"
#include "crnf/tables.hpp"

namespace crnf {

int VectorField::order() const
{
    int n = kExact;
    for (auto &c : comps)
        n = std::min(n, c.order());
    return n;
}

bool VectorField::is_zero() const
{
    return std::all_of(comps.begin(), comps.end(), [](const Series &s) { return s.is_zero(); });
}

VectorField VectorField::scale(const Scalar &c) const
{
    VectorField r;
    for (auto &s : comps)
        r.comps.push_back(s.scale(c));
    return r;
}

VectorField VectorField::map_coeffs(const std::function<Scalar(const Scalar &)> &f) const
{
    VectorField r;
    for (auto &s : comps)
        r.comps.push_back(s.map_coeffs(f));
    return r;
}

VectorField VectorField::truncate(int n) const
{
    VectorField r;
    for (auto &s : comps)
        r.comps.push_back(s.order() > n ? s.truncate(n) : s);
    return r;
}

std::string VectorField::str() const
{
    std::ostringstream os;
    const Chart &c = comps.at(0).chart();
    for (std::size_t m = 0; m < comps.size(); ++m) {
        if (m)
            os << "\n";
        os << "d/d" << (m < c.size() ? c.vars[m] : std::to_string(m)) << ": " << comps[m].str();
    }
    return os.str();
}

VectorField operator+(const VectorField &a, const VectorField &b)
{
    if (a.size() != b.size())
        throw error(errc::chart_mismatch, "vector fields of different length");
    VectorField r;
    for (std::size_t m = 0; m < a.size(); ++m)
        r.comps.push_back(a[m] + b[m]);
    return r;
}

VectorField operator-(const VectorField &a, const VectorField &b) { return a + b.scale(Scalar(-1)); }

bool operator==(const VectorField &a, const VectorField &b) { return a.comps == b.comps; }

FamilyParams FamilyParams::formal()
{
    return {Scalar::param("a"), Scalar::param("b"), Scalar::param("c"), Scalar::param("d"), Scalar::param("e"),
            std::nullopt, std::nullopt};
}

FamilyParams FamilyParams::unit(int k)
{
    FamilyParams p;
    Scalar *slots[] = {&p.a, &p.b, &p.c, &p.d, &p.e};
    if (k < 0 || k > 4)
        throw error(errc::bad_input, "family parameter index out of range");
    *slots[k] = Scalar(1);
    p.A004 = Scalar(0);
    p.B103 = Scalar(0);
    return p;
}

HoloVectorField model_symmetry_family(const std::string &model, const FamilyParams &p, int order, TableVariant v)
{
    const auto &t = load_table(model + ".json");
    if (!t.contains("field"))
        throw error(errc::no_paper_data, model + " has no symmetry family");
    Bindings b{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}, {"e", p.e}};
    if (p.A004) {
        b["A004"] = *p.A004;
        b["A004b"] = p.A004->conj();
    }
    if (p.B103) {
        b["B103"] = *p.B103;
        b["B103b"] = p.B103->conj();
    }
    HoloVectorField L;
    for (const char *name : {"A", "B", "C"}) {
        const auto &blocks = t["field"][name];
        int top = -1;
        SeriesAccumulator acc(holo_chart(), kExact);
        for (auto &[k, text] : blocks.items()) {
            int deg = std::stoi(k);
            top = std::max(top, deg);
            if (deg > order)
                continue;
            Series s = parse_series(text.get<std::string>(), holo_chart(), kExact, b);
            acc.add(apply_errata(std::move(s), model, std::string("field.") + name, k, holo_chart(), v, b));
        }
        acc.lower_order(std::min(top, order));
        L.comps.push_back(acc.finish());
    }
    return L;
}

Series apply_field(const VectorField &X, const Series &f)
{
    SeriesAccumulator acc(f.chart_ptr(), kExact);
    int n = kExact;
    for (std::size_t m = 0; m < X.size(); ++m) {
        Series d = f.derivative(m);
        Series p = mul(X[m], d);
        n = std::min(n, p.order());
        acc.add(p);
    }
    acc.lower_order(n);
    return acc.finish();
}

VectorField lie_bracket(const VectorField &X, const VectorField &Y)
{
    if (X.size() != Y.size() || !same_chart(X.chart(), Y.chart()))
        throw error(errc::chart_mismatch, "bracket of fields on different charts");
    VectorField r;
    for (std::size_t m = 0; m < X.size(); ++m)
        r.comps.push_back(apply_field(X, Y[m]) - apply_field(Y, X[m]));
    return r;
}

Series tangency_residual(const HoloVectorField &L, const HypersurfaceGraph &g)
{
    if (L.size() != 3 || !same_chart(L.chart(), holo_chart()))
        throw error(errc::chart_mismatch, "tangency_residual expects a field in (z, zeta, w)");
    auto cr = cr_chart();
    const Series &F = g.F;
    Series W = F + Series::variable(cr, "v").scale(Scalar::i());
    std::map<std::size_t, Series> at{{2, W}};
    Series A = substitute(L[0], at, cr);
    Series B = substitute(L[1], at, cr);
    Series C = substitute(L[2], at, cr);
    Series half = Series::constant(cr, Scalar::rational(1, 2));
    Series X = -(mul(A, F.derivative("z")) + mul(B, F.derivative("zeta"))) +
               mul(C, half + F.derivative("v").scale(Scalar::i() * Scalar::rational(1, 2)));
    return X + X.conj();
}

int open_block_cut(const std::string &model, std::size_t comp)
{
    const auto &t = load_table(model + ".json");
    static const char *comp_names[] = {"A", "B", "C"};
    int cut = kExact;
    for (auto &[k, text] : t["field"][comp_names[comp]].items()) {
        auto s = text.get<std::string>();
        if (s.find("A004") != std::string::npos || s.find("B103") != std::string::npos)
            cut = std::min(cut, std::stoi(k) - 1);
    }
    return cut;
}

LieBasis model_basis(const std::string &model, TableVariant v)
{
    LieBasis b;
    static const char *names[] = {"a", "b", "c", "d", "e"};
    for (int k = 0; k < 5; ++k) {
        VectorField f = model_symmetry_family(model, FamilyParams::unit(k), kExact, v);
        for (std::size_t m = 0; m < f.size(); ++m) {
            int cut = open_block_cut(model, m);
            if (cut < f.comps[m].order())
                f.comps[m] = f.comps[m].truncate(cut);
        }
        b.fields.push_back(std::move(f));
        b.provenance.push_back(std::string(names[k]) + " = 1");
    }
    return b;
}

namespace {

ChartPtr basis_chart(int n)
{
    static std::map<int, ChartPtr> cache;
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    std::vector<std::string> vars;
    for (int k = 1; k <= n; ++k)
        vars.push_back("e" + std::to_string(k));
    auto c = make_chart("basis" + std::to_string(n), vars, std::vector<int>(static_cast<std::size_t>(n), 1),
                        std::nullopt);
    cache.emplace(n, c);
    return c;
}

std::vector<std::vector<Vec>> zero_table(int n)
{
    auto N = static_cast<std::size_t>(n);
    return std::vector<std::vector<Vec>>(N, std::vector<Vec>(N, Vec(N)));
}

} // namespace

Vec parse_combination(const std::string &text, int n)
{
    Series s = parse_series(text, basis_chart(n));
    Vec v(static_cast<std::size_t>(n));
    for (auto &t : s.terms()) {
        if (exp_weight(t.exp, s.chart()) != 1)
            throw error(errc::parse_error, "not a linear combination of basis elements: " + text);
        for (int k = 0; k < n; ++k)
            if (t.exp == exp_unit(static_cast<std::size_t>(k)))
                v[static_cast<std::size_t>(k)] = t.coeff;
    }
    return v;
}

std::string combination_str(const Vec &v)
{
    auto chart = basis_chart(static_cast<int>(v.size()));
    SeriesAccumulator acc(chart, kExact);
    for (std::size_t k = 0; k < v.size(); ++k)
        acc.add_term(exp_unit(k), v[k]);
    Series s = acc.finish();
    std::string r = s.str();
    return r;
}

bool StructureConstants::ok() const
{
    return std::all_of(expansions.begin(), expansions.end(), [](const BracketExpansion &e) { return e.in_span; });
}

Vec StructureConstants::bracket(const Vec &u, const Vec &v) const
{
    auto N = static_cast<std::size_t>(n);
    Vec r(N);
    for (std::size_t i = 0; i < N; ++i) {
        if (u[i].is_zero())
            continue;
        for (std::size_t j = 0; j < N; ++j) {
            if (v[j].is_zero() || i == j)
                continue;
            Scalar f = u[i] * v[j];
            for (std::size_t k = 0; k < N; ++k)
                if (!c[i][j][k].is_zero())
                    r[k] += f * c[i][j][k];
        }
    }
    return r;
}

std::string StructureConstants::entry_str(int i, int j) const
{
    return combination_str(c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
}

StructureConstants structure_constants(const LieBasis &basis)
{
    StructureConstants sc;
    sc.n = static_cast<int>(basis.fields.size());
    sc.c = zero_table(sc.n);
    auto N = basis.fields.size();
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            VectorField Z = lie_bracket(basis.fields[i], basis.fields[j]);
            std::vector<LinearEquation> eqs;
            int checked = kExact;
            for (std::size_t m = 0; m < Z.size(); ++m) {
                int top = Z[m].order();
                for (auto &f : basis.fields)
                    top = std::min(top, f[m].order());
                checked = std::min(checked, top);
                std::set<Exp> exps;
                for (auto &t : Z[m].terms())
                    if (Z[m].weight(t.exp) <= top)
                        exps.insert(t.exp);
                for (auto &f : basis.fields)
                    for (auto &t : f[m].terms())
                        if (f[m].weight(t.exp) <= top)
                            exps.insert(t.exp);
                for (Exp e : exps) {
                    LinearEquation eq;
                    for (std::size_t k = 0; k < N; ++k) {
                        Scalar a = basis.fields[k][m].coeff(e);
                        if (!a.is_zero())
                            eq.coeffs[static_cast<int>(k)] = a;
                    }
                    eq.constant = -Z[m].coeff(e);
                    eqs.push_back(std::move(eq));
                }
            }
            auto sol = solve_linear(std::move(eqs), static_cast<int>(N));
            sc.pivot_conditions.insert(sc.pivot_conditions.end(), sol.pivot_conditions.begin(),
                                       sol.pivot_conditions.end());
            BracketExpansion ex{static_cast<int>(i), static_cast<int>(j), {}, checked, true, ""};
            if (!sol.free.empty()) {
                ex.in_span = false;
                ex.note = "basis elements not independent through order " + std::to_string(checked);
            }
            Vec coeffs(N);
            for (auto &[k, val] : sol.determined)
                coeffs[static_cast<std::size_t>(k)] = val.second;
            VectorField R = Z;
            for (std::size_t k = 0; k < N; ++k)
                if (!coeffs[k].is_zero())
                    R = R - basis.fields[k].scale(coeffs[k]);
            ex.residual = R.truncate(checked);
            if (!sol.inconsistent.empty()) {
                ex.in_span = false;
                ex.note = "bracket leaves the span through order " + std::to_string(checked);
            }
            sc.c[i][j] = coeffs;
            for (std::size_t k = 0; k < N; ++k)
                sc.c[j][i][k] = -coeffs[k];
            sc.expansions.push_back(std::move(ex));
        }
    }
    return sc;
}

StructureConstants structure_constants_from_table(int n, const std::map<std::string, std::string> &table)
{
    StructureConstants sc;
    sc.n = n;
    sc.c = zero_table(n);
    for (auto &[key, text] : table) {
        auto comma = key.find(',');
        if (comma == std::string::npos)
            throw error(errc::parse_error, "bracket key '" + key + "' is not of the form i,j");
        int i = std::stoi(key.substr(0, comma)) - 1, j = std::stoi(key.substr(comma + 1)) - 1;
        if (i < 0 || j < 0 || i >= n || j >= n)
            throw error(errc::parse_error, "bracket key '" + key + "' out of range");
        Vec v = parse_combination(text, n);
        auto I = static_cast<std::size_t>(i), J = static_cast<std::size_t>(j);
        sc.c[I][J] = v;
        for (auto &x : v)
            x = -x;
        sc.c[J][I] = v;
    }
    return sc;
}

JacobiReport jacobi_check(const StructureConstants &sc)
{
    JacobiReport r;
    auto N = static_cast<std::size_t>(sc.n);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < N; ++k)
                if (sc.c[i][j][k] != -sc.c[j][i][k])
                    r.antisymmetric = false;
    auto e = [&](std::size_t i) {
        Vec v(N);
        v[i] = Scalar(1);
        return v;
    };
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j)
            for (std::size_t k = j + 1; k < N; ++k) {
                Vec s = sc.bracket(e(i), sc.bracket(e(j), e(k)));
                Vec t = sc.bracket(e(j), sc.bracket(e(k), e(i)));
                Vec u = sc.bracket(e(k), sc.bracket(e(i), e(j)));
                for (std::size_t l = 0; l < N; ++l) {
                    if (!(s[l] + t[l] + u[l]).is_zero()) {
                        r.failures.push_back("e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + ", e" +
                                             std::to_string(k + 1));
                        break;
                    }
                }
            }
    return r;
}

DerivedSeries derived_series(const StructureConstants &sc)
{
    DerivedSeries r;
    auto N = static_cast<std::size_t>(sc.n);
    Matrix cur;
    for (std::size_t i = 0; i < N; ++i) {
        Vec v(N);
        v[i] = Scalar(1);
        cur.push_back(v);
    }
    r.dims.push_back(static_cast<int>(N));
    while (!cur.empty()) {
        Matrix next;
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (std::size_t b = a + 1; b < cur.size(); ++b)
                next.push_back(sc.bracket(cur[a], cur[b]));
        auto ech = row_reduce(next);
        r.pivot_conditions.insert(r.pivot_conditions.end(), ech.pivot_conditions.begin(),
                                  ech.pivot_conditions.end());
        int d = static_cast<int>(ech.pivots.size());
        if (d == static_cast<int>(cur.size()))
            break; // perfect from here on
        r.dims.push_back(d);
        cur = std::move(ech.rows);
    }
    return r;
}

IdealReport abelian_ideal_check(const std::vector<Vec> &candidate, const StructureConstants &sc)
{
    IdealReport r;
    r.dim = rank(candidate);
    r.abelian = true;
    for (std::size_t a = 0; a < candidate.size(); ++a)
        for (std::size_t b = a + 1; b < candidate.size(); ++b) {
            Vec z = sc.bracket(candidate[a], candidate[b]);
            if (std::any_of(z.begin(), z.end(), [](const Scalar &s) { return !s.is_zero(); })) {
                r.abelian = false;
                r.failures.push_back("[" + combination_str(candidate[a]) + ", " + combination_str(candidate[b]) +
                                     "] = " + combination_str(z));
            }
        }
    r.ideal = true;
    for (int k = 0; k < sc.n; ++k) {
        Vec ek(static_cast<std::size_t>(sc.n));
        ek[static_cast<std::size_t>(k)] = Scalar(1);
        for (auto &u : candidate) {
            Vec z = sc.bracket(ek, u);
            if (!in_span(candidate, z)) {
                r.ideal = false;
                r.failures.push_back("[e" + std::to_string(k + 1) + ", " + combination_str(u) +
                                     "] = " + combination_str(z) + " is outside the candidate span");
            }
        }
    }
    return r;
}

RealSpanReport maximally_real_check(const std::vector<VectorField> &fields)
{
    RealSpanReport r;
    if (fields.empty())
        return r;
    std::size_t ncomp = fields[0].size();
    Matrix with_i;
    for (auto &f : fields) {
        Vec v, jv;
        for (std::size_t m = 0; m < ncomp; ++m) {
            Scalar c0 = f[m].constant_term();
            Scalar re = c0.re(), im = c0.im();
            v.push_back(re);
            v.push_back(im);
            jv.push_back(-im);
            jv.push_back(re);
        }
        r.vectors.push_back(v);
        with_i.push_back(v);
        with_i.push_back(jv);
    }
    r.rank = rank(r.vectors);
    r.rank_with_i = rank(with_i);
    auto n = static_cast<int>(ncomp);
    r.pass = static_cast<int>(fields.size()) == n && r.rank == n && r.rank_with_i == 2 * n;
    return r;
}

VectorField combine(const LieBasis &basis, const Vec &coeffs)
{
    VectorField r;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero())
            continue;
        VectorField t = basis.fields[k].scale(coeffs[k]);
        r = r.comps.empty() ? t : r + t;
    }
    if (r.comps.empty())
        r = basis.fields.at(0).scale(Scalar(0));
    return r;
}

TubeReport tube_criterion(const LieBasis &basis, const StructureConstants &sc, const std::vector<Vec> &candidate)
{
    TubeReport r;
    r.ideal = abelian_ideal_check(candidate, sc);
    std::vector<VectorField> fields;
    for (auto &v : candidate)
        fields.push_back(combine(basis, v));
    r.real_span = maximally_real_check(fields);
    std::size_t ambient = basis.fields.empty() ? 0 : basis.fields[0].size();
    r.pass = r.ideal.abelian && r.ideal.ideal && r.ideal.dim == static_cast<int>(ambient) && r.real_span.pass;
    return r;
}

} // namespace crnf
