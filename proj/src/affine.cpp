#include "crnf/affine.hpp"

#include <regex>

#include "crnf/expr.hpp"
#include "crnf/tables.hpp"

namespace crnf {

namespace {

mpz_class factorial(int n)
{
    mpz_class f = 1;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

const nlohmann::json &model_entry(const std::string &label)
{
    const auto &t = load_table("affine.json")["models"];
    if (!t.contains(label))
        throw error(errc::bad_input, "unknown affine model '" + label + "' (BRANCH3, FLAT, THETA)");
    return t[label];
}

Scalar q(const mpq_class &v) { return Scalar(GaussRational(v)); }

} // namespace

Scalar affine_coeff(const Series &F, int j, int k)
{
    return F.coeff(exp_from({j, k})) * q(mpq_class(factorial(j) * factorial(k)));
}

AffineMap AffineMap::identity()
{
    AffineMap m;
    m.linear = Matrix(3, Vec(3));
    for (std::size_t i = 0; i < 3; ++i)
        m.linear[i][i] = Scalar(1);
    m.translation = Vec(3);
    return m;
}

AffineMap AffineMap::from_rows(const std::array<std::array<Scalar, 3>, 3> &rows)
{
    AffineMap m = identity();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            m.linear[i][j] = rows[i][j];
    return m;
}

AffineMap AffineMap::after(const AffineMap &first) const
{
    AffineMap m = identity();
    for (std::size_t i = 0; i < 3; ++i) {
        Scalar t = translation[i];
        for (std::size_t j = 0; j < 3; ++j) {
            Scalar s;
            for (std::size_t k = 0; k < 3; ++k)
                s += linear[i][k] * first.linear[k][j];
            m.linear[i][j] = s;
            t += linear[i][j] * first.translation[j];
        }
        m.translation[i] = t;
    }
    return m;
}

std::optional<AffineMap> AffineMap::inverse() const
{
    auto inv = crnf::inverse(linear);
    if (!inv)
        return std::nullopt;
    AffineMap m = identity();
    m.linear = *inv;
    for (std::size_t i = 0; i < 3; ++i) {
        Scalar t;
        for (std::size_t j = 0; j < 3; ++j)
            t -= (*inv)[i][j] * translation[j];
        m.translation[i] = t;
    }
    return m;
}

std::string AffineMap::str() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < 3; ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < 3; ++j)
            s += (j ? ", " : "") + linear[i][j].str();
    }
    s += "] + (";
    for (std::size_t i = 0; i < 3; ++i)
        s += (i ? ", " : "") + translation[i].str();
    return s + ")";
}

std::vector<AffineMap> affine_sample_maps()
{
    using R = std::array<std::array<Scalar, 3>, 3>;
    Scalar h = Scalar::rational(1, 2), t = Scalar::rational(1, 3);
    return {
        AffineMap::from_rows(R{{{2, 0, 0}, {0, 1, 0}, {0, 0, 4}}}),
        AffineMap::from_rows(R{{{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}}),
        AffineMap::from_rows(R{{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}}),
        AffineMap::from_rows(R{{{-1, h, 0}, {0, 3, -2}, {1, 0, 2}}}),
        AffineMap::from_rows(R{{{2, 1, 3}, {t, 1, -1}, {1, 0, Scalar::rational(5, 2)}}}),
    };
}

ParabolicReport parabolic_noncylindrical_check(const AffineGraph &g)
{
    ParabolicReport r;
    const Series &F = g.F;
    r.order = F.order();
    if (r.order < 3) {
        r.partial = true;
        return r;
    }
    Series Fxx = F.derivative(0).derivative(0);
    Series Fxy = F.derivative(0).derivative(1);
    Series Fyy = F.derivative(1).derivative(1);
    r.fxx = Fxx.constant_term();
    r.hessian = mul(Fxx, Fyy) - mul(Fxy, Fxy);
    r.fxx_nonzero = !r.fxx.is_zero();
    r.hessian_vanishes = r.hessian.is_zero();
    Scalar fxxy = affine_coeff(F, 2, 1), fxxx = affine_coeff(F, 3, 0), fxy = affine_coeff(F, 1, 1);
    r.cylindrical = fxxy * r.fxx - fxxx * fxy;
    r.noncylindrical = !r.cylindrical.is_zero();
    return r;
}

AffineGraph affine_pushforward(const AffineGraph &g, const AffineMap &m)
{
    for (auto &t : m.translation)
        if (!t.is_zero())
            throw error(errc::bad_input, "affine map must send the base point 0 of the surface to 0");
    if (!crnf::inverse(m.linear))
        throw error(errc::singular_linear_part, "affine map is not invertible");
    auto ch = affine_chart();
    const Series &F = g.F;
    if (!F.constant_term().is_zero())
        throw error(errc::bad_input, "graph does not pass through 0");
    std::array<Series, 3> X = {Series::variable(ch, 0), Series::variable(ch, 1), F};
    auto row = [&](std::size_t i) {
        SeriesAccumulator acc(ch, F.order());
        for (std::size_t j = 0; j < 3; ++j)
            acc.add(X[j], m.linear[i][j]);
        return acc.finish();
    };
    MapGerm germ{ch, ch, {row(0), row(1)}};
    MapGerm inv;
    try {
        inv = invert_map_germ(germ);
    } catch (const error &e) {
        if (e.code() == errc::singular_linear_part)
            throw error(errc::not_transverse, "image tangent plane contains the u direction; not a graph over (x, y)");
        throw;
    }
    Series u = row(2);
    Series out = substitute(u, {{0, inv.comps[0]}, {1, inv.comps[1]}}, ch);
    return {out, g.label};
}

namespace {

struct Stepper {
    Prenormalization &out;

    Scalar F(int j, int k) const { return affine_coeff(out.graph.F, j, k); }

    void apply(const AffineMap &m, const std::string &what)
    {
        out.graph = affine_pushforward(out.graph, m);
        out.map = m.after(out.map);
        out.log.push_back(what + ": " + m.str());
    }
};

using Rows = std::array<std::array<Scalar, 3>, 3>;

// cubic and quartic steps; assumes u = 1/2 x^2 + O(3) with F21 != 0
void fix_cubic_quartic(Stepper &st)
{
    if (st.out.graph.order() < 3)
        return;
    Scalar f30 = st.F(3, 0), f21 = st.F(2, 1);
    if (f21.is_zero())
        throw error(errc::not_applicable, "prenormalization obstruction: F21 vanishes (cylindrical at 0)");
    if (!f30.is_zero() || !f21.is_one())
        st.apply(AffineMap::from_rows(Rows{{{1, 0, 0}, {f30 / Scalar(3), f21, 0}, {0, 0, 1}}}),
                 "x^3 removed, x^2 y normalized");
    if (st.out.graph.order() < 4)
        return;
    Scalar f40 = st.F(4, 0);
    if (!f40.is_zero())
        st.apply(AffineMap::from_rows(Rows{{{1, 0, 0}, {0, 1, f40 / Scalar(6)}, {0, 0, 1}}}), "x^4 removed");
}

void verify_shape(const Prenormalization &p)
{
    struct Want {
        int j, k;
        long v;
    };
    static const Want want[] = {{1, 0, 0}, {0, 1, 0}, {2, 0, 1}, {1, 1, 0}, {0, 2, 0}, {3, 0, 0}, {2, 1, 1},
                                {1, 2, 0}, {0, 3, 0}, {4, 0, 0}, {2, 2, 2}, {1, 3, 0}, {0, 4, 0}};
    for (auto &w : want) {
        if (w.j + w.k > p.graph.order())
            continue;
        Scalar got = affine_coeff(p.graph.F, w.j, w.k);
        if (got != Scalar(w.v))
            throw error(errc::not_applicable, "prenormalization obstruction: F" + std::to_string(w.j) +
                                                  std::to_string(w.k) + " = " + got.str() + ", expected " +
                                                  std::to_string(w.v));
    }
}

} // namespace

Prenormalization affine_prenormalize(const AffineGraph &g)
{
    auto rep = parabolic_noncylindrical_check(g);
    if (!rep.pass())
        throw error(errc::not_applicable, "surface is not parabolic noncylindrical at 0 (or order below 3)");
    Prenormalization out{AffineMap::identity(), g, {}};
    Stepper st{out};
    Scalar f10 = st.F(1, 0), f01 = st.F(0, 1);
    if (!f10.is_zero() || !f01.is_zero())
        st.apply(AffineMap::from_rows(Rows{{{1, 0, 0}, {0, 1, 0}, {-f10, -f01, 1}}}), "tangent plane to u = 0");
    Scalar p = st.F(2, 0), qq = st.F(1, 1);
    if (!p.is_one() || !qq.is_zero())
        st.apply(AffineMap::from_rows(Rows{{{1, qq / p, 0}, {0, 1, 0}, {0, 0, Scalar(1) / p}}}),
                 "quadratic part to 1/2 x^2");
    fix_cubic_quartic(st);
    verify_shape(out);
    return out;
}

const char *affine_branch_name(AffineBranchKind k)
{
    switch (k) {
    case AffineBranchKind::BRANCH3: return "BRANCH3";
    case AffineBranchKind::FLAT: return "FLAT";
    case AffineBranchKind::THETA: return "THETA";
    case AffineBranchKind::UNKNOWN: return "UNKNOWN";
    }
    return "?";
}

namespace {

std::optional<mpz_class> exact_root(const mpz_class &a, unsigned n)
{
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), n) == 0)
        return std::nullopt;
    return r;
}

std::optional<Scalar> rational_cube_root(const Scalar &s)
{
    if (!s.is_number() || !s.number().is_real())
        return std::nullopt;
    mpq_class v = s.number().re;
    auto n = exact_root(v.get_num(), 3), d = exact_root(v.get_den(), 3);
    if (!n || !d)
        return std::nullopt;
    mpq_class r(*n, *d);
    r.canonicalize();
    return q(r);
}

// x -> s x, u -> s^2 u: F_{j,k} -> s^(2-j) F_{j,k}
AffineMap scaling(const Scalar &s) { return AffineMap::from_rows(Rows{{{s, 0, 0}, {0, 1, 0}, {0, 0, s * s}}}); }

// x -> x + tau u, followed by the cubic/quartic repairs; this one-parameter
// family keeps the prenormal shape and F31, F50
void shear_step(Stepper &st, const Scalar &tau)
{
    st.apply(AffineMap::from_rows(Rows{{{1, 0, tau}, {0, 1, 0}, {0, 0, 1}}}), "x -> x + tau u");
    fix_cubic_quartic(st);
}

// finds tau with F_{j,k} = 0 after shear_step, and applies it
void kill_by_shear(Stepper &st, int j, int k)
{
    if (st.F(j, k).is_zero())
        return;
    static const std::uint32_t tau_id = param("tau");
    Prenormalization trial = st.out;
    Stepper ts{trial};
    shear_step(ts, Scalar(ParamPoly::var(tau_id)));
    Scalar c = ts.F(j, k);
    auto parts = c.num().split({tau_id});
    ParamPoly c0, c1;
    for (auto &[mono, coef] : parts) {
        if (mono.is_one())
            c0 = coef;
        else if (mono.degree() == 1)
            c1 = coef;
        else
            throw error(errc::nonlinear_system, "F" + std::to_string(j) + std::to_string(k) +
                                                    " is not affine in the shear parameter");
    }
    if (c1.is_zero())
        throw error(errc::not_applicable, "shear does not move F" + std::to_string(j) + std::to_string(k));
    Scalar tau = -Scalar(c0) / Scalar(c1);
    shear_step(st, tau);
    st.out.log.push_back("F" + std::to_string(j) + std::to_string(k) + " := 0 with tau = " + tau.str());
}

} // namespace

AffineClassification affine_classify_full(const AffineGraph &g)
{
    AffineClassification r;
    r.map = AffineMap::identity();
    r.normalized = g;
    if (g.order() < 4) {
        r.branch = {AffineBranchKind::UNKNOWN, std::nullopt, "order below 4"};
        return r;
    }
    Prenormalization pre = affine_prenormalize(g);
    Stepper st{pre};
    auto finish = [&](AffineBranchKind k, std::optional<Scalar> theta, std::string reason) {
        r.branch = {k, std::move(theta), std::move(reason)};
        r.map = pre.map;
        r.normalized = pre.graph;
        r.log = pre.log;
        return r;
    };
    Scalar f31 = st.F(3, 1);
    if (!f31.is_zero()) {
        if (!f31.is_number())
            return finish(AffineBranchKind::UNKNOWN, std::nullopt,
                          "F31 = " + f31.str() + " carries parameters and is not identically zero");
        st.apply(scaling(f31), "F31 := 1");
        if (g.order() >= 5)
            kill_by_shear(st, 4, 1);
        return finish(AffineBranchKind::BRANCH3, std::nullopt, "F31 != 0");
    }
    if (g.order() < 5)
        return finish(AffineBranchKind::UNKNOWN, std::nullopt, "F31 = 0; order below 5");
    Scalar f41 = st.F(4, 1);
    if (!f41.is_zero())
        pre.log.push_back("warning: F31 = 0 but F41 = " + f41.str());
    Scalar f50 = st.F(5, 0);
    if (f50.is_zero())
        return finish(AffineBranchKind::FLAT, std::nullopt, "F31 = 0, F50 = 0");
    auto s = rational_cube_root(f50);
    if (!s)
        return finish(AffineBranchKind::UNKNOWN, std::nullopt,
                      "F50 = " + f50.str() + " has no rational cube root; theta is not rational in the data");
    if (!s->is_one())
        st.apply(scaling(*s), "F50 := 1");
    if (g.order() < 7)
        return finish(AffineBranchKind::UNKNOWN, std::nullopt, "F31 = 0 != F50; order below 7");
    kill_by_shear(st, 6, 0);
    return finish(AffineBranchKind::THETA, st.F(7, 0), "F31 = 0 != F50");
}

int affine_model_order(const std::string &label)
{
    const auto &m = model_entry(label);
    return m.contains("order") ? m["order"].get<int>() : kExact;
}

AffineGraph affine_model(const std::string &label, int order)
{
    const auto &m = model_entry(label);
    int top = affine_model_order(label);
    if (order > top)
        throw error(errc::no_paper_data, "affine model " + label + " is printed through order " +
                                             std::to_string(top) + "; requested " + std::to_string(order));
    if (order < 2)
        throw error(errc::bad_input, "model order must be at least 2");
    return {parse_series(m["graph"].get<std::string>(), affine_chart(), order), label};
}

VectorField affine_field(const std::string &P, const std::string &Q, const std::string &R)
{
    auto ch = affine_field_chart();
    return VectorField{{parse_series(P, ch), parse_series(Q, ch), parse_series(R, ch)}};
}

std::vector<VectorField> affine_model_fields(const std::string &label)
{
    std::vector<VectorField> out;
    for (auto &f : model_entry(label)["fields"])
        out.push_back(affine_field(f["P"].get<std::string>(), f["Q"].get<std::string>(), f["R"].get<std::string>()));
    return out;
}

StructureConstants affine_model_table(const std::string &label)
{
    const auto &m = model_entry(label);
    return structure_constants_from_table(static_cast<int>(m["fields"].size()),
                                          m["brackets"].get<std::map<std::string, std::string>>());
}

Pins affine_model_pins(const std::string &label) { return model_entry(label)["pins"].get<Pins>(); }

std::map<std::string, std::string> affine_model_implied(const std::string &label)
{
    return model_entry(label)["implied"].get<std::map<std::string, std::string>>();
}

Series affine_tangency_residual(const VectorField &X, const AffineGraph &g)
{
    if (X.size() != 3 || !same_chart(X.chart(), affine_field_chart()))
        throw error(errc::chart_mismatch, "affine field expected over (x, y, u)");
    auto ch = affine_chart();
    std::map<std::size_t, Series> at{{2, g.F}};
    Series P = substitute(X[0], at, ch), Q = substitute(X[1], at, ch), R = substitute(X[2], at, ch);
    return R - mul(P, g.F.derivative(0)) - mul(Q, g.F.derivative(1));
}

StructureConstants affine_structure(const std::vector<VectorField> &basis)
{
    LieBasis b;
    b.fields = basis;
    for (std::size_t k = 0; k < basis.size(); ++k)
        b.provenance.push_back("e" + std::to_string(k + 1));
    return structure_constants(b);
}

ChartPtr surface_chart()
{
    static ChartPtr c = make_chart("surface", {"r", "t"}, {1, 1}, std::vector<int>{0, 1});
    return c;
}

namespace {

int abs_compare(const Scalar &a, const Scalar &b)
{
    mpq_class x = abs(a.number().re), y = abs(b.number().re);
    return x < y ? -1 : (x > y ? 1 : 0);
}

} // namespace

TubeLift parametrized_to_graph(const std::array<Series, 3> &comps, int order)
{
    auto sc = surface_chart();
    Vec P0(3), Tr(3), Tt(3);
    for (std::size_t i = 0; i < 3; ++i) {
        if (!same_chart(comps[i].chart_ptr(), sc))
            throw error(errc::chart_mismatch, "parametrization must be over (r, t)");
        P0[i] = comps[i].constant_term();
        Tr[i] = comps[i].coeff(exp_unit(0));
        Tt[i] = comps[i].coeff(exp_unit(1));
        for (auto *s : {&P0[i], &Tr[i], &Tt[i]})
            if (!s->is_number() || !s->number().is_real())
                throw error(errc::bad_input, "base point and tangent vectors must be real numbers");
    }
    Vec n = {Tr[1] * Tt[2] - Tr[2] * Tt[1], Tr[2] * Tt[0] - Tr[0] * Tt[2], Tr[0] * Tt[1] - Tr[1] * Tt[0]};
    if (n[0].is_zero() && n[1].is_zero() && n[2].is_zero())
        throw error(errc::not_transverse, "parametrization is not immersed at the base point");
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (abs_compare(n[i], n[k]) > 0)
            k = i;
    std::size_t i0 = k == 0 ? 1 : 0, i1 = k == 2 ? 1 : 2;
    TubeLift out;
    out.axis = static_cast<int>(k);
    AffineMap m = AffineMap::identity();
    Matrix L(3, Vec(3));
    L[0][i0] = Scalar(1);
    L[1][i1] = Scalar(1);
    L[2][k] = Scalar(1);
    L[2][i0] = n[i0] / n[k];
    L[2][i1] = n[i1] / n[k];
    m.linear = L;
    for (std::size_t r = 0; r < 3; ++r) {
        Scalar t;
        for (std::size_t c = 0; c < 3; ++c)
            t -= L[r][c] * P0[c];
        m.translation[r] = t;
    }
    std::vector<Series> img;
    for (std::size_t r = 0; r < 3; ++r) {
        SeriesAccumulator acc(sc, order);
        for (std::size_t c = 0; c < 3; ++c)
            acc.add(comps[c].truncate(order), L[r][c]);
        acc.add_term(Exp(0), m.translation[r]);
        img.push_back(acc.finish());
    }
    auto ach = affine_chart();
    MapGerm germ{sc, ach, {img[0], img[1]}};
    MapGerm inv = invert_map_germ(germ);
    Series F = substitute(img[2], {{0, inv.comps[0]}, {1, inv.comps[1]}}, ach);
    static const char *names[] = {"x1", "x2", "x3"};
    out.note = std::string("graphed as ") + names[k] + " over (" + names[i0] + ", " + names[i1] + ")";
    if (affine_coeff(F, 2, 0).is_zero() && !affine_coeff(F, 0, 2).is_zero()) {
        F = substitute(F, {{0, Series::variable(ach, 1)}, {1, Series::variable(ach, 0)}}, ach);
        out.swapped = true;
        out.note += ", x and y exchanged";
        std::swap(m.linear[0], m.linear[1]);
        std::swap(m.translation[0], m.translation[1]);
    }
    out.map = m;
    out.graph = {F, "tube-lift"};
    return out;
}

TubeLift parametrized_to_graph(const std::array<std::string, 3> &comps, const Scalar &r0, const Scalar &t0,
                               int order)
{
    static const std::regex r_tok("\\br\\b"), t_tok("\\bt\\b");
    std::array<Series, 3> s;
    for (std::size_t i = 0; i < 3; ++i) {
        std::string text = comps[i];
        text = std::regex_replace(text, r_tok, "(" + r0.str() + " + r)");
        text = std::regex_replace(text, t_tok, "(" + t0.str() + " + t)");
        s[i] = parse_series(text, surface_chart(), order);
    }
    return parametrized_to_graph(s, order);
}

} // namespace crnf
