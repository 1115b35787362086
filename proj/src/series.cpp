#include "crnf/series.hpp"

#include <algorithm>
#include <unordered_map>

#include "crnf/linsolve.hpp"

namespace crnf {

// ---------------------------------------------------------------- charts

int Chart::index(const std::string &v) const
{
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v)
            return static_cast<int>(i);
    return -1;
}

int Chart::at(const std::string &v) const
{
    int i = index(v);
    if (i < 0)
        throw error(errc::bad_input, "chart " + name + " has no variable " + v);
    return i;
}

ChartPtr make_chart(std::string name, std::vector<std::string> vars, std::vector<int> weights,
                    std::optional<std::vector<int>> pairing)
{
    if (vars.size() != weights.size() || vars.size() > 8)
        throw error(errc::bad_input, "bad chart " + name);
    for (int w : weights)
        if (w <= 0)
            throw error(errc::bad_input, "chart weights must be positive");
    if (pairing) {
        if (pairing->size() != vars.size())
            throw error(errc::bad_input, "pairing length mismatch");
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto j = static_cast<std::size_t>((*pairing)[i]);
            if (j >= vars.size() || static_cast<std::size_t>((*pairing)[j]) != i || weights[i] != weights[j])
                throw error(errc::bad_input, "pairing is not a weight-preserving involution");
        }
    }
    auto c = std::make_shared<Chart>();
    c->name = std::move(name);
    c->vars = std::move(vars);
    c->weights = std::move(weights);
    c->pairing = std::move(pairing);
    return c;
}

ChartPtr cr_chart()
{
    static ChartPtr c =
        make_chart("cr", {"z", "zeta", "zb", "zetab", "v"}, {1, 1, 1, 1, 2}, std::vector<int>{2, 3, 0, 1, 4});
    return c;
}

ChartPtr holo_chart()
{
    static ChartPtr c = make_chart("holo", {"z", "zeta", "w"}, {1, 1, 2}, std::nullopt);
    return c;
}

ChartPtr affine_chart()
{
    static ChartPtr c = make_chart("affine", {"x", "y"}, {1, 1}, std::vector<int>{0, 1});
    return c;
}

ChartPtr affine_field_chart()
{
    static ChartPtr c = make_chart("affine3", {"x", "y", "u"}, {1, 1, 1}, std::vector<int>{0, 1, 2});
    return c;
}

bool same_chart(const ChartPtr &a, const ChartPtr &b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------- exponents

Exp exp_set(Exp e, std::size_t i, unsigned v)
{
    if (v > 0xff)
        throw error(errc::bad_input, "exponent too large");
    unsigned shift = 8 * (7 - static_cast<unsigned>(i));
    e &= ~(Exp(0xff) << shift);
    return e | (Exp(v) << shift);
}

Exp exp_from(const std::vector<int> &v)
{
    if (v.size() > 8)
        throw error(errc::exponent_length, "too many exponents");
    Exp e = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0)
            throw error(errc::bad_input, "negative exponent");
        e = exp_set(e, i, static_cast<unsigned>(v[i]));
    }
    return e;
}

std::vector<int> exp_to(Exp e, std::size_t n)
{
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = static_cast<int>(exp_get(e, i));
    return v;
}

int exp_weight(Exp e, const Chart &c)
{
    int w = 0;
    for (std::size_t i = 0; i < c.weights.size(); ++i)
        w += static_cast<int>(exp_get(e, i)) * c.weights[i];
    return w;
}

namespace {

struct TermOrder {
    const Chart *c;
    bool operator()(const Term &a, const Term &b) const
    {
        int wa = exp_weight(a.exp, *c), wb = exp_weight(b.exp, *c);
        if (wa != wb)
            return wa < wb;
        return a.exp > b.exp;
    }
};

void check_same(const Series &a, const Series &b)
{
    if (!same_chart(a.chart_ptr(), b.chart_ptr()))
        throw error(errc::chart_mismatch, "chart mismatch: " + a.chart().name + " vs " + b.chart().name);
}

} // namespace

// ---------------------------------------------------------------- Series

Series::Series(ChartPtr chart, int order) : chart_(std::move(chart)), order_(order) {}

Series Series::constant(ChartPtr chart, Scalar c, int order)
{
    Series s(std::move(chart), order);
    if (!c.is_zero() && order >= 0)
        s.terms_.push_back({0, std::move(c)});
    return s;
}

Series Series::variable(ChartPtr chart, std::size_t idx, int order)
{
    if (idx >= chart->size())
        throw error(errc::bad_input, "variable index out of range");
    Exp e = exp_unit(idx);
    return monomial(std::move(chart), e, Scalar(1), order);
}

Series Series::variable(ChartPtr chart, const std::string &name, int order)
{
    auto idx = static_cast<std::size_t>(chart->at(name));
    return variable(std::move(chart), idx, order);
}

Series Series::monomial(ChartPtr chart, Exp e, Scalar c, int order)
{
    Series s(std::move(chart), order);
    if (!c.is_zero() && s.weight(e) <= order)
        s.terms_.push_back({e, std::move(c)});
    return s;
}

Series Series::from_terms(ChartPtr chart, int order, std::vector<Term> terms)
{
    SeriesAccumulator acc(std::move(chart), order);
    for (auto &t : terms)
        acc.add_term(t.exp, t.coeff);
    return acc.finish();
}

int Series::valuation() const { return terms_.empty() ? sat_add(order_, 1) : weight(terms_.front().exp); }

Scalar Series::coeff(Exp e) const
{
    if (weight(e) > order_)
        throw error(errc::order_underflow, "coefficient above the truncation order requested");
    for (auto &t : terms_)
        if (t.exp == e)
            return t.coeff;
    return Scalar();
}

Series Series::truncate(int n) const
{
    Series r(chart_, std::min(order_, n));
    for (auto &t : terms_)
        if (weight(t.exp) <= r.order_)
            r.terms_.push_back(t);
    return r;
}

Series Series::with_order(int n) const
{
    if (n <= order_)
        return truncate(n);
    Series r = *this;
    r.order_ = n;
    return r;
}

Series Series::weighted_component(int k) const
{
    if (k > order_)
        throw error(errc::order_underflow,
                    "weighted component " + std::to_string(k) + " above order " + std::to_string(order_));
    Series r(chart_, kExact);
    for (auto &t : terms_)
        if (weight(t.exp) == k)
            r.terms_.push_back(t);
    return r;
}

Series Series::derivative(std::size_t var) const
{
    int w = chart_->weights.at(var);
    Series r(chart_, order_ >= kExact ? kExact : order_ - w);
    std::vector<Term> ts;
    for (auto &t : terms_) {
        unsigned e = exp_get(t.exp, var);
        if (e == 0)
            continue;
        ts.push_back({exp_set(t.exp, var, e - 1), t.coeff * Scalar(static_cast<long>(e))});
    }
    std::sort(ts.begin(), ts.end(), TermOrder{chart_.get()});
    r.terms_ = std::move(ts);
    return r;
}

Series Series::conj() const
{
    if (!chart_->pairing)
        throw error(errc::bad_input, "chart " + chart_->name + " has no conjugation pairing");
    auto &p = *chart_->pairing;
    Series r(chart_, order_);
    r.terms_.reserve(terms_.size());
    for (auto &t : terms_) {
        Exp e = 0;
        for (std::size_t i = 0; i < p.size(); ++i)
            e = exp_set(e, static_cast<std::size_t>(p[i]), exp_get(t.exp, i));
        r.terms_.push_back({e, t.coeff.conj()});
    }
    std::sort(r.terms_.begin(), r.terms_.end(), TermOrder{chart_.get()});
    return r;
}

Series Series::scale(const Scalar &c) const
{
    Series r(chart_, order_);
    if (c.is_zero())
        return r;
    r.terms_.reserve(terms_.size());
    for (auto &t : terms_)
        r.terms_.push_back({t.exp, t.coeff * c});
    return r;
}

Series Series::map_coeffs(const std::function<Scalar(const Scalar &)> &f) const
{
    Series r(chart_, order_);
    for (auto &t : terms_) {
        Scalar c = f(t.coeff);
        if (!c.is_zero())
            r.terms_.push_back({t.exp, std::move(c)});
    }
    return r;
}

Series Series::substitute_params(const std::map<std::uint32_t, GaussRational> &b) const
{
    return map_coeffs([&](const Scalar &c) { return c.substitute(b); });
}

Series Series::compose_params(const std::map<std::uint32_t, Scalar> &b) const
{
    return map_coeffs([&](const Scalar &c) { return c.compose(b); });
}

Series Series::operator-() const
{
    Series r = *this;
    for (auto &t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

Series operator+(const Series &a, const Series &b)
{
    check_same(a, b);
    Series r(a.chart_, std::min(a.order_, b.order_));
    TermOrder less{a.chart_.get()};
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
        const Term *pick;
        if (j == b.terms_.end() || (i != a.terms_.end() && less(*i, *j)))
            pick = &*i++;
        else if (i == a.terms_.end() || less(*j, *i))
            pick = &*j++;
        else {
            Scalar s = i->coeff + j->coeff;
            Exp e = i->exp;
            ++i;
            ++j;
            if (!s.is_zero() && a.weight(e) <= r.order_)
                r.terms_.push_back({e, std::move(s)});
            continue;
        }
        if (a.weight(pick->exp) <= r.order_)
            r.terms_.push_back(*pick);
    }
    return r;
}

Series operator-(const Series &a, const Series &b) { return a + (-b); }

Series operator*(const Series &a, const Series &b) { return mul(a, b); }

bool operator==(const Series &a, const Series &b)
{
    if (!same_chart(a.chart_, b.chart_) || a.order_ != b.order_ || a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
        if (a.terms_[k].exp != b.terms_[k].exp || a.terms_[k].coeff != b.terms_[k].coeff)
            return false;
    return true;
}

std::string Series::str() const
{
    std::string s;
    for (auto &t : terms_) {
        std::string c = t.coeff.str();
        std::string m;
        for (std::size_t i = 0; i < chart_->size(); ++i) {
            unsigned e = exp_get(t.exp, i);
            if (e == 0)
                continue;
            if (!m.empty())
                m += "*";
            m += chart_->vars[i];
            if (e > 1)
                m += "^" + std::to_string(e);
        }
        if (!s.empty())
            s += " + ";
        if (m.empty())
            s += "(" + c + ")";
        else if (c == "1")
            s += m;
        else
            s += "(" + c + ")*" + m;
    }
    if (s.empty())
        s = "0";
    if (order_ < kExact)
        s += " + O(" + std::to_string(order_ + 1) + ")";
    return s;
}

// ---------------------------------------------------------------- accumulation

SeriesAccumulator::SeriesAccumulator(ChartPtr chart, int order) : chart_(std::move(chart)), order_(order) {}

void SeriesAccumulator::add_term(Exp e, const Scalar &c)
{
    if (c.is_zero() || exp_weight(e, *chart_) > order_)
        return;
    auto it = acc_.find(e);
    if (it == acc_.end())
        acc_.emplace(e, c);
    else
        it->second += c;
}

void SeriesAccumulator::add(const Series &s, const Scalar &c)
{
    if (!same_chart(s.chart_ptr(), chart_))
        throw error(errc::chart_mismatch, "accumulator chart mismatch");
    order_ = std::min(order_, s.order());
    if (c.is_zero())
        return;
    bool one = c.is_one();
    for (auto &t : s.terms()) {
        if (exp_weight(t.exp, *chart_) > order_)
            break;
        add_term(t.exp, one ? t.coeff : t.coeff * c);
    }
}

void SeriesAccumulator::lower_order(int n) { order_ = std::min(order_, n); }

Series SeriesAccumulator::finish()
{
    Series r(chart_, order_);
    r.terms_.reserve(acc_.size());
    for (auto &[e, c] : acc_)
        if (!c.is_zero() && exp_weight(e, *chart_) <= order_)
            r.terms_.push_back({e, std::move(c)});
    acc_.clear();
    std::sort(r.terms_.begin(), r.terms_.end(), TermOrder{chart_.get()});
    return r;
}

// ---------------------------------------------------------------- products

Series mul(const Series &a, const Series &b, int cap)
{
    check_same(a, b);
    int va = a.valuation(), vb = b.valuation();
    int order = std::min({sat_add(a.order(), vb), sat_add(b.order(), va), cap});
    SeriesAccumulator acc(a.chart_ptr(), order);
    const Chart &c = a.chart();
    std::vector<int> wb;
    wb.reserve(b.terms().size());
    for (auto &t : b.terms())
        wb.push_back(exp_weight(t.exp, c));
    for (auto &x : a.terms()) {
        int wx = exp_weight(x.exp, c);
        if (wx + vb > order)
            break;
        for (std::size_t k = 0; k < b.terms().size(); ++k) {
            if (wx + wb[k] > order)
                break;
            auto &y = b.terms()[k];
            acc.add_term(x.exp + y.exp, x.coeff * y.coeff);
        }
    }
    return acc.finish();
}

Series pow(const Series &a, unsigned n, int cap)
{
    Series r = Series::constant(a.chart_ptr(), Scalar(1));
    Series b = a;
    bool first = true;
    while (n) {
        if (n & 1)
            r = first ? b.truncate(cap) : mul(r, b, cap);
        first = first && !(n & 1);
        n >>= 1;
        if (n)
            b = mul(b, b, cap);
    }
    return r.truncate(cap);
}

// ---------------------------------------------------------------- substitution

namespace {

struct SubstPlan {
    std::vector<const Series *> images; // per source variable
    std::vector<Series> owned;
    std::vector<int> vals, orders;
    int order = kExact;
};

SubstPlan plan_substitution(const Series &s, const std::map<std::size_t, Series> &assignment,
                            const ChartPtr &target)
{
    const Chart &src = s.chart();
    std::size_t n = src.size();
    SubstPlan p;
    p.owned.reserve(n);
    std::vector<int> own_idx(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = assignment.find(i);
        if (it != assignment.end()) {
            if (!same_chart(it->second.chart_ptr(), target))
                throw error(errc::chart_mismatch, "assigned series not in target chart");
            continue;
        }
        int j = target->index(src.vars[i]);
        if (j < 0)
            throw error(errc::bad_input, "unassigned variable " + src.vars[i] + " missing from target chart");
        own_idx[i] = static_cast<int>(p.owned.size());
        p.owned.push_back(Series::variable(target, static_cast<std::size_t>(j)));
    }
    p.images.resize(n);
    p.vals.resize(n);
    p.orders.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Series *img =
            own_idx[i] >= 0 ? &p.owned[static_cast<std::size_t>(own_idx[i])] : &assignment.find(i)->second;
        p.images[i] = img;
        p.vals[i] = img->valuation();
        p.orders[i] = img->order();
        bool used = false;
        for (auto &t : s.terms())
            if (exp_get(t.exp, i) > 0) {
                used = true;
                break;
            }
        if (used && p.vals[i] <= 0)
            throw error(errc::constant_term, "substituted series for " + src.vars[i] + " has a constant term");
    }
    // truncation of s: cheapest image of an unknown monomial of weight > N_s
    if (s.order() < kExact) {
        int need = s.order() + 1;
        std::vector<long> f(static_cast<std::size_t>(need) + 1, kExact);
        f[0] = 0;
        for (int t = 1; t <= need; ++t)
            for (std::size_t i = 0; i < n; ++i) {
                int prev = std::max(0, t - src.weights[i]);
                long cand = std::min<long>(kExact, static_cast<long>(std::max(p.vals[i], 1)) + f[static_cast<std::size_t>(prev)]);
                f[static_cast<std::size_t>(t)] = std::min(f[static_cast<std::size_t>(t)], cand);
            }
        p.order = static_cast<int>(std::min<long>(kExact, f[static_cast<std::size_t>(need)] - 1));
    }
    // truncation of the images
    for (auto &t : s.terms()) {
        long base = 0;
        for (std::size_t i = 0; i < n; ++i)
            base += static_cast<long>(exp_get(t.exp, i)) * p.vals[i];
        for (std::size_t i = 0; i < n; ++i) {
            unsigned e = exp_get(t.exp, i);
            if (e == 0 || p.orders[i] >= kExact)
                continue;
            long bound = static_cast<long>(p.orders[i]) + base - p.vals[i];
            p.order = static_cast<int>(std::min<long>(p.order, bound));
        }
    }
    return p;
}

} // namespace

int substitution_order(const Series &s, const std::map<std::size_t, Series> &assignment, const ChartPtr &target)
{
    return plan_substitution(s, assignment, target).order;
}

Series substitute(const Series &s, const std::map<std::size_t, Series> &assignment, const ChartPtr &target, int cap)
{
    SubstPlan p = plan_substitution(s, assignment, target);
    int order = std::min(p.order, cap);
    if (order < 0)
        throw error(errc::order_underflow, "substitution result has negative order");
    std::size_t n = s.chart().size();
    // powers of each image, truncated at the result order
    std::vector<std::vector<Series>> powers(n);
    auto power = [&](std::size_t i, unsigned e) -> const Series & {
        auto &pw = powers[i];
        if (pw.empty())
            pw.push_back(Series::constant(target, Scalar(1)));
        while (pw.size() <= e)
            pw.push_back(mul(pw.back(), *p.images[i], order));
        return pw[e];
    };
    // cache of prefix products keyed by the exponents of variables 0..k
    std::vector<std::unordered_map<Exp, Series>> prefix(n);
    SeriesAccumulator acc(target, order);
    for (auto &t : s.terms()) {
        long lowest = 0;
        for (std::size_t i = 0; i < n; ++i)
            lowest += static_cast<long>(exp_get(t.exp, i)) * p.vals[i];
        if (lowest > order)
            continue;
        const Series *cur = nullptr;
        Series tmp;
        for (std::size_t i = 0; i < n; ++i) {
            unsigned e = exp_get(t.exp, i);
            Exp key = t.exp & ~((Exp(1) << (8 * (7 - i))) - 1);
            auto &cache = prefix[i];
            auto it = cache.find(key);
            if (it == cache.end()) {
                Series val;
                if (!cur)
                    val = power(i, e);
                else if (e == 0)
                    val = *cur;
                else
                    val = mul(*cur, power(i, e), order);
                it = cache.emplace(key, std::move(val)).first;
            }
            cur = &it->second;
        }
        acc.add(*cur, t.coeff);
    }
    Series r = acc.finish();
    return r.with_order(order);
}

// ---------------------------------------------------------------- units

Series invert_unit(const Series &s)
{
    Scalar c0 = s.terms().empty() || s.terms().front().exp != 0 ? Scalar() : s.terms().front().coeff;
    if (c0.is_zero())
        throw error(errc::degenerate_constant, "invert_unit: zero constant term");
    if (!c0.is_number())
        throw error(errc::degenerate_constant, "invert_unit: constant term carries parameters: " + c0.str());
    Scalar inv = Scalar(1) / c0;
    int N = s.order();
    // t = s/c0 - 1, 1/s = inv * sum (-t)^k
    Series t = s.scale(inv) - Series::constant(s.chart_ptr(), Scalar(1));
    if (t.is_zero())
        return Series::constant(s.chart_ptr(), inv, N);
    if (N >= kExact)
        throw error(errc::order_underflow, "invert_unit of an exact non-constant series needs a truncation order");
    int vt = t.valuation();
    int K = N / vt;
    Series one = Series::constant(s.chart_ptr(), Scalar(1));
    Series r = one;
    for (int k = 0; k < K; ++k)
        r = one - mul(t, r, N);
    return r.scale(inv).with_order(std::min(N, (K + 1) * vt - 1));
}

// ---------------------------------------------------------------- germs

int MapGerm::order() const
{
    int o = kExact;
    for (auto &c : comps)
        o = std::min(o, c.order());
    return o;
}

MapGerm identity_germ(const ChartPtr &c, int order)
{
    MapGerm m{c, c, {}};
    for (std::size_t i = 0; i < c->size(); ++i)
        m.comps.push_back(Series::variable(c, i, order));
    return m;
}

MapGerm compose(const MapGerm &first, const MapGerm &second)
{
    if (!same_chart(first.target, second.source))
        throw error(errc::chart_mismatch, "germ composition chart mismatch");
    std::map<std::size_t, Series> asg;
    for (std::size_t i = 0; i < first.comps.size(); ++i)
        asg.emplace(i, first.comps[i]);
    MapGerm r{first.source, second.target, {}};
    for (auto &c : second.comps)
        r.comps.push_back(substitute(c, asg, first.source));
    return r;
}

MapGerm invert_map_germ(const MapGerm &m)
{
    const Chart &src = *m.source;
    const Chart &tgt = *m.target;
    std::size_t n = tgt.size();
    if (src.size() != n || m.comps.size() != n)
        throw error(errc::bad_input, "germ is not square");
    int N = m.order();
    Matrix L(n, Vec(n));
    std::vector<Series> nonlin;
    for (std::size_t k = 0; k < n; ++k) {
        const Series &c = m.comps[k];
        int wk = tgt.weights[k];
        std::vector<Term> rest;
        for (auto &t : c.terms()) {
            int w = exp_weight(t.exp, src);
            if (w < wk)
                throw error(errc::singular_linear_part,
                            "component " + tgt.vars[k] + " has a term below its weight; unsupported germ");
            bool linear = false;
            for (std::size_t j = 0; j < n; ++j)
                if (t.exp == exp_unit(j) && src.weights[j] == wk) {
                    L[k][j] = t.coeff;
                    linear = true;
                }
            if (!linear)
                rest.push_back(t);
        }
        nonlin.push_back(Series::from_terms(m.source, c.order(), std::move(rest)));
    }
    auto Linv = inverse(L);
    if (!Linv)
        throw error(errc::singular_linear_part, "weighted-linear part is singular");
    // x = Linv (y - N(x)), x in target-chart variables
    std::vector<Series> y;
    for (std::size_t k = 0; k < n; ++k)
        y.push_back(Series::variable(m.target, k));
    auto step = [&](const std::vector<Series> &x, int cap) {
        std::map<std::size_t, Series> asg;
        for (std::size_t j = 0; j < n; ++j)
            asg.emplace(j, x[j]);
        std::vector<Series> rhs;
        for (std::size_t k = 0; k < n; ++k) {
            Series nk = nonlin[k].is_zero() ? Series(m.target, kExact) : substitute(nonlin[k], asg, m.target, cap);
            rhs.push_back(y[k] - nk);
        }
        std::vector<Series> out;
        for (std::size_t j = 0; j < n; ++j) {
            SeriesAccumulator acc(m.target, cap);
            for (std::size_t k = 0; k < n; ++k)
                acc.add(rhs[k], (*Linv)[j][k]);
            out.push_back(acc.finish());
        }
        return out;
    };
    int minw = *std::min_element(tgt.weights.begin(), tgt.weights.end());
    std::vector<Series> x;
    for (std::size_t j = 0; j < n; ++j) {
        SeriesAccumulator acc(m.target, kExact);
        for (std::size_t k = 0; k < n; ++k)
            acc.add(y[k], (*Linv)[j][k]);
        x.push_back(acc.finish());
    }
    if (N >= kExact)
        throw error(errc::order_underflow, "invert_map_germ needs a finite order");
    auto exact = [](const std::vector<Series> &v) {
        std::vector<Series> out;
        for (auto &s : v)
            out.push_back(s.with_order(kExact));
        return out;
    };
    // one sweep per weight, then iterate to the fixed point at full order
    for (int cap = minw; cap < N; ++cap)
        x = step(exact(x), cap);
    for (int it = 0;; ++it) {
        auto nx = step(exact(x), N);
        bool same = true;
        for (std::size_t j = 0; j < n && same; ++j)
            same = (nx[j] - x[j].truncate(N)).is_zero();
        x = std::move(nx);
        if (same)
            break;
        if (it > 2 * N + 4)
            throw error(errc::singular_linear_part, "germ inversion did not converge");
    }
    // final pass with true order bookkeeping
    auto fin = step(x, N);
    MapGerm r{m.target, m.source, {}};
    for (auto &s : fin)
        r.comps.push_back(s.with_order(std::min(s.order(), N)));
    return r;
}

} // namespace crnf
