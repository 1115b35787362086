#include "crnf/transform.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "crnf/expr.hpp"
#include "crnf/linsolve.hpp"
#include "crnf/tables.hpp"

namespace crnf {

ResidualParams ResidualParams::formal()
{
    ResidualParams p;
    p.lambda = Scalar::param("lambda_re") + Scalar::i() * Scalar::param("lambda_im");
    p.alpha = Scalar::param("alpha_re") + Scalar::i() * Scalar::param("alpha_im");
    p.rho = Scalar::param("rho");
    return p;
}

std::string ResidualParams::str() const
{
    return "lambda=" + lambda.str() + " alpha=" + alpha.str() + " rho=" + rho.str();
}

std::vector<ResidualParams> flat_sample_params()
{
    Scalar i = Scalar::i();
    auto mk = [](Scalar l, Scalar a, Scalar r) {
        ResidualParams p;
        p.lambda = l;
        p.alpha = a;
        p.rho = r;
        return p;
    };
    return {mk(2, 0, 0), mk(i, 0, 0), mk(1, 1, 0), mk(1, i, 0), mk(1, 0, 1),
            mk(Scalar(1) + i / Scalar(2), Scalar(1) - i, 3)};
}

MapGerm flat_automorphism(const ResidualParams &p, int order)
{
    if (order < 2)
        throw error(errc::bad_input, "automorphism order must be at least 2");
    if (p.lambda.is_zero())
        throw error(errc::division_by_zero, "lambda must be nonzero");
    if (!p.rho.is_real())
        throw error(errc::bad_input, "rho must be real");
    const auto &t = load_table("flat.json")["automorphism"];
    Bindings b = {{"lambda", p.lambda}, {"lambdab", p.lambda.conj()}, {"alpha", p.alpha},
                  {"alphab", p.alpha.conj()}, {"rho", p.rho}};
    auto h = holo_chart();
    Series den = parse_series(t["denominator"].get<std::string>(), h, order, b);
    Series inv = invert_unit(den.truncate(order));
    MapGerm m{h, h, {}};
    for (const char *c : {"z", "zeta", "w"})
        m.comps.push_back(mul(parse_series(t[c].get<std::string>(), h, order, b), inv, order));
    return m;
}

namespace {

Series conj_coeffs(const Series &s)
{
    return s.map_coeffs([](const Scalar &c) { return c.conj(); });
}

} // namespace

HypersurfaceGraph pushforward_graph(const HypersurfaceGraph &g, const MapGerm &M)
{
    auto cr = cr_chart();
    if (!same_chart(M.source, holo_chart()) || !same_chart(M.target, holo_chart()))
        throw error(errc::chart_mismatch, "pushforward needs a germ of the (z, zeta, w) chart");
    if (!same_chart(g.F.chart_ptr(), cr))
        throw error(errc::chart_mismatch, "graph is not in the CR chart");
    Series v = Series::variable(cr, "v");
    Series iv = v.scale(Scalar::i());
    Series W = g.F + iv;
    Series Wb = g.F - iv;
    std::map<std::size_t, Series> holo_side = {{2, W}};
    std::map<std::size_t, Series> anti_side = {{0, Series::variable(cr, "zb")}, {1, Series::variable(cr, "zetab")},
                                               {2, Wb}};
    std::vector<Series> img, img_bar;
    for (auto &c : M.comps) {
        img.push_back(substitute(c, holo_side, cr));
        img_bar.push_back(substitute(conj_coeffs(c), anti_side, cr));
    }
    Series u1 = (img[2] + img_bar[2]).scale(Scalar::rational(1, 2));
    Series v1 = (img[2] - img_bar[2]).scale(Scalar(1) / (Scalar(2) * Scalar::i()));
    MapGerm phi{cr, cr, {img[0], img[1], img_bar[0], img_bar[1], v1}};
    MapGerm inv = invert_map_germ(phi);
    std::map<std::size_t, Series> back;
    for (std::size_t k = 0; k < inv.comps.size(); ++k)
        back.emplace(k, inv.comps[k]);
    Series F1 = substitute(u1, back, cr);
    return {F1, g.label + " pushed"};
}

std::pair<RescalingFactor, RescalingFactor> invariant_rescaling(const HypersurfaceGraph &g, const ResidualParams &p)
{
    if (g.order() < 6)
        throw error(errc::order_underflow, "invariant_rescaling needs order 6");
    auto g1 = pushforward_graph(g, flat_automorphism(p, g.order() + 2));
    if (g1.order() < 6)
        throw error(errc::order_underflow, "pushforward order " + std::to_string(g1.order()) + " below 6");
    auto factor = [&](int h, int j, int k) {
        Scalar a = cr_coeff(g.F, h, 0, j, k, 0);
        Scalar b = cr_coeff(g1.F, h, 0, j, k, 0);
        std::string name = cr_name(cr_exp(h, 0, j, k, 0));
        if (a.is_zero())
            return RescalingFactor{std::nullopt, name + " vanishes: not applicable"};
        return RescalingFactor{b / a, name};
    };
    return {factor(3, 0, 2), factor(5, 0, 1)};
}

} // namespace crnf

namespace crnf {

namespace {

// Gaussian rational close to z, verified by the caller.
std::optional<GaussRational> rationalize(std::complex<long double> z)
{
    auto frac = [](long double x) -> std::optional<mpq_class> {
        // continued fraction with bounded denominators
        long double y = x;
        mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
        for (int it = 0; it < 40; ++it) {
            long double a = std::floor(y);
            if (std::fabs(a) > 1e15L)
                return std::nullopt;
            mpz_class ai(static_cast<long>(a));
            mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            if (k1 > 1000000)
                break;
            mpq_class q(h1, k1);
            q.canonicalize();
            if (std::fabs(static_cast<long double>(q.get_d()) - x) < 1e-12L * std::max(1.0L, std::fabs(x)))
                return q;
            long double r = y - a;
            if (r < 1e-18L)
                break;
            y = 1 / r;
        }
        return std::nullopt;
    };
    auto re = frac(z.real()), im = frac(z.imag());
    if (!re || !im)
        return std::nullopt;
    return GaussRational(*re, *im);
}

std::complex<long double> to_complex(const GaussRational &g)
{
    return {static_cast<long double>(g.re.get_d()), static_cast<long double>(g.im.get_d())};
}

GaussRational gpow(const GaussRational &x, int n)
{
    GaussRational r(1);
    GaussRational b = n < 0 ? GaussRational(1) / x : x;
    for (int k = 0; k < std::abs(n); ++k)
        r *= b;
    return r;
}

struct MonomialLaw {
    int a, b; // factor lambda^a * conj(lambda)^b
};

// Finds the exponents with c' = c * lambda^a * conj(lambda)^b under
// z -> lambda z, zeta -> (lambda/conj lambda) zeta, w -> |lambda|^2 w.
MonomialLaw weight_law(int h, int i, int j, int k, int l)
{
    // F' (lambda z, ...) * ... : u' = |lambda|^2 u
    int a = 1 - h - i + k - l;
    int b = 1 - j + i - k - l;
    return {a, b};
}

struct Roots {
    std::vector<GaussRational> exact;
    int total = 0;
};

// all lambda with lambda^a conj(lambda)^b = c, exact ones collected
Roots solve_monomial(const MonomialLaw &law, const GaussRational &c)
{
    Roots r;
    int s = law.a + law.b, d = law.a - law.b;
    if (s == 0 || d == 0) {
        // modulus or argument undetermined; not reached for the two invariants
        return r;
    }
    auto cz = to_complex(c);
    long double mod = std::pow(std::abs(cz), 1.0L / s);
    long double arg = std::arg(cz);
    int n = std::abs(d);
    r.total = n;
    for (int k = 0; k < n; ++k) {
        long double phi = (arg + 2 * M_PIl * k) / d;
        auto cand = rationalize(std::polar(mod, phi));
        if (!cand)
            continue;
        if (gpow(*cand, law.a) * gpow(cand->conj(), law.b) == c)
            r.exact.push_back(*cand);
    }
    std::sort(r.exact.begin(), r.exact.end(), [](const GaussRational &x, const GaussRational &y) {
        if (x.re != y.re)
            return x.re > y.re;
        return x.im > y.im;
    });
    return r;
}

// solve sum_j coeff_j * p_j + const = 0 for real unknowns, from complex
// equations split into real and imaginary parts
std::map<std::uint32_t, Scalar> solve_real_affine(const std::vector<Scalar> &eqs,
                                                  const std::vector<std::uint32_t> &unknowns, const std::string &what)
{
    std::vector<LinearEquation> sys;
    for (auto &e : eqs) {
        for (const Scalar &part : {e.re(), e.im()}) {
            if (!part.is_polynomial())
                throw error(errc::nonlinear_system, what + ": rational dependence on the parameters");
            LinearEquation le;
            auto split = part.num().split(unknowns);
            for (auto &[m, c] : split) {
                if (m.is_one())
                    le.constant = Scalar(c);
                else if (m.degree() == 1)
                    le.coeffs[static_cast<int>(std::find(unknowns.begin(), unknowns.end(), m.entries()[0].first) -
                                               unknowns.begin())] = Scalar(c);
                else
                    throw error(errc::nonlinear_system, what + ": equation " + part.str() + " is not affine");
            }
            if (!le.coeffs.empty() || !le.constant.is_zero())
                sys.push_back(std::move(le));
        }
    }
    auto sol = solve_linear(sys, static_cast<int>(unknowns.size()));
    if (!sol.inconsistent.empty())
        throw error(errc::nonlinear_system, what + ": inconsistent");
    if (!sol.free.empty())
        throw error(errc::nonlinear_system, what + ": underdetermined");
    std::map<std::uint32_t, Scalar> out;
    for (auto &[j, val] : sol.determined)
        out[unknowns[static_cast<std::size_t>(j)]] = val.second;
    return out;
}

} // namespace

Normalization normalize_residuals(const HypersurfaceGraph &g)
{
    Normalization r;
    r.branch = classify_by_invariants(g);
    r.graph = g;
    if (r.branch.kind == Branch::FLAT) {
        r.log.push_back("flat branch: nothing to normalize");
        return r;
    }
    if (r.branch.kind == Branch::UNKNOWN)
        throw error(errc::not_applicable, "cannot normalize: " + r.branch.reason);
    bool b31 = r.branch.kind == Branch::BRANCH_F30020;
    // target coefficients per branch
    std::array<int, 5> lead = b31 ? std::array<int, 5>{3, 0, 0, 2, 0} : std::array<int, 5>{5, 0, 0, 1, 0};
    std::array<int, 5> acoef = b31 ? std::array<int, 5>{4, 0, 0, 2, 0} : std::array<int, 5>{6, 0, 0, 1, 0};
    std::array<int, 5> rcoef = b31 ? std::array<int, 5>{3, 0, 2, 1, 0} : std::array<int, 5>{4, 0, 3, 0, 0};
    auto coeff = [](const Series &F, const std::array<int, 5> &e) {
        return cr_coeff(F, e[0], e[1], e[2], e[3], e[4]);
    };
    int need = b31 ? 6 : 7;
    if (g.order() < need)
        throw error(errc::order_underflow, "normalization needs order " + std::to_string(need));
    int order = need;
    HypersurfaceGraph gt{g.F.truncate(order), g.label};
    int aut_order = order + 2;

    // lambda
    Scalar c = coeff(g.F, lead);
    MonomialLaw law = weight_law(lead[0], lead[1], lead[2], lead[3], lead[4]);
    // F'(lead) = c * lambda^a conj(lambda)^b = 1
    Roots roots = solve_monomial(law, (GaussRational(1) / c.number()));
    if (roots.exact.empty())
        throw error(errc::not_applicable, "no Gaussian rational lambda normalizes " + cr_name(cr_exp(lead[0], lead[1], lead[2], lead[3], lead[4])) + " = " + c.str());
    r.params.lambda = Scalar(roots.exact.front());
    for (std::size_t k = 1; k < roots.exact.size(); ++k)
        r.alternatives.push_back("lambda = " + roots.exact[k].str());
    if (roots.total > static_cast<int>(roots.exact.size()))
        r.alternatives.push_back(std::to_string(roots.total - static_cast<int>(roots.exact.size())) +
                                 " further root(s) outside Q(i)");
    r.log.push_back("lambda = " + r.params.lambda.str() + " from " + cr_name(cr_exp(lead[0], lead[1], lead[2], lead[3], lead[4])));

    // alpha, with lambda fixed
    {
        ResidualParams p = r.params;
        p.alpha = Scalar::param("alpha_re") + Scalar::i() * Scalar::param("alpha_im");
        auto pushed = pushforward_graph(gt, flat_automorphism(p, aut_order));
        Scalar t = coeff(pushed.F, acoef);
        auto sol = solve_real_affine({t}, {param("alpha_re"), param("alpha_im")}, "alpha equation");
        r.params.alpha = sol[param("alpha_re")] + Scalar::i() * sol[param("alpha_im")];
        r.log.push_back("alpha = " + r.params.alpha.str() + " from " + cr_name(cr_exp(acoef[0], acoef[1], acoef[2], acoef[3], acoef[4])) + " = 0");
    }
    // rho, with lambda and alpha fixed
    {
        ResidualParams p = r.params;
        p.rho = Scalar::param("rho");
        auto pushed = pushforward_graph(gt, flat_automorphism(p, aut_order));
        Scalar t = coeff(pushed.F, rcoef).im();
        auto sol = solve_real_affine({t}, {param("rho")}, "rho equation");
        r.params.rho = sol[param("rho")];
        r.log.push_back("rho = " + r.params.rho.str() + " from Im " + cr_name(cr_exp(rcoef[0], rcoef[1], rcoef[2], rcoef[3], rcoef[4])) + " = 0");
    }
    r.graph = pushforward_graph(g, flat_automorphism(r.params, g.order() + 2));
    r.branch = classify_by_invariants(r.graph);
    return r;
}

} // namespace crnf
