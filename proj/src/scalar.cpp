#include "crnf/scalar.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace crnf {

const char *errc_name(errc e)
{
    switch (e) {
    case errc::division_by_zero: return "DIVISION_BY_ZERO";
    case errc::degenerate_constant: return "DEGENERATE_CONSTANT";
    case errc::chart_mismatch: return "CHART_MISMATCH";
    case errc::order_underflow: return "ORDER_UNDERFLOW";
    case errc::constant_term: return "CONSTANT_TERM";
    case errc::singular_linear_part: return "SINGULAR_LINEAR_PART";
    case errc::no_paper_data: return "NO_PAPER_DATA";
    case errc::not_normal_form: return "NOT_NORMAL_FORM";
    case errc::parse_error: return "PARSE_ERROR";
    case errc::unknown_parameter: return "UNKNOWN_PARAMETER";
    case errc::exponent_length: return "EXPONENT_LENGTH";
    case errc::table_checksum: return "TABLE_CHECKSUM";
    case errc::not_transverse: return "NOT_TRANSVERSE";
    case errc::not_applicable: return "NOT_APPLICABLE";
    case errc::nonlinear_system: return "NONLINEAR_SYSTEM";
    case errc::bad_input: return "BAD_INPUT";
    }
    return "UNKNOWN";
}

// ---------------------------------------------------------------- GaussRational

GaussRational &GaussRational::operator+=(const GaussRational &o)
{
    re += o.re;
    im += o.im;
    return *this;
}

GaussRational &GaussRational::operator-=(const GaussRational &o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussRational &GaussRational::operator*=(const GaussRational &o)
{
    if (sgn(im) == 0 && sgn(o.im) == 0) {
        re *= o.re;
        return *this;
    }
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussRational &GaussRational::operator/=(const GaussRational &o)
{
    if (o.is_zero())
        throw error(errc::division_by_zero, "division by zero");
    if (sgn(o.im) == 0) {
        re /= o.re;
        im /= o.re;
        return *this;
    }
    mpq_class n = o.norm();
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
}

std::string GaussRational::str() const
{
    if (sgn(im) == 0)
        return re.get_str();
    std::string ims;
    if (im == 1)
        ims = "i";
    else if (im == -1)
        ims = "-i";
    else
        ims = im.get_str() + "*i";
    if (sgn(re) == 0)
        return ims;
    if (sgn(im) > 0)
        return re.get_str() + "+" + ims;
    return re.get_str() + ims;
}

int compare(const GaussRational &a, const GaussRational &b)
{
    int c = cmp(a.re, b.re);
    if (c != 0)
        return c < 0 ? -1 : 1;
    c = cmp(a.im, b.im);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

// ---------------------------------------------------------------- registry

struct ParamRegistry::impl {
    mutable std::mutex mu;
    std::vector<std::string> names;
    std::unordered_map<std::string, std::uint32_t> index;
};

ParamRegistry::ParamRegistry() : p_(new impl)
{
    for (const char *n : {"theta", "a", "b", "c", "d", "e", "lambda_re", "lambda_im", "alpha_re", "alpha_im", "rho",
                          "A004_re", "A004_im", "B103_re", "B103_im", "F50500"})
        intern(n);
}

ParamRegistry &ParamRegistry::instance()
{
    static ParamRegistry r;
    return r;
}

std::uint32_t ParamRegistry::intern(const std::string &name)
{
    std::lock_guard<std::mutex> lk(p_->mu);
    auto it = p_->index.find(name);
    if (it != p_->index.end())
        return it->second;
    auto idx = static_cast<std::uint32_t>(p_->names.size());
    p_->names.push_back(name);
    p_->index.emplace(name, idx);
    return idx;
}

std::optional<std::uint32_t> ParamRegistry::find(const std::string &name) const
{
    std::lock_guard<std::mutex> lk(p_->mu);
    auto it = p_->index.find(name);
    if (it == p_->index.end())
        return std::nullopt;
    return it->second;
}

const std::string &ParamRegistry::name(std::uint32_t idx) const
{
    std::lock_guard<std::mutex> lk(p_->mu);
    return p_->names.at(idx);
}

std::size_t ParamRegistry::size() const
{
    std::lock_guard<std::mutex> lk(p_->mu);
    return p_->names.size();
}

std::uint32_t param(const std::string &name) { return ParamRegistry::instance().intern(name); }

// ---------------------------------------------------------------- ParamMonomial

ParamMonomial ParamMonomial::var(std::uint32_t idx, std::uint32_t e)
{
    ParamMonomial m;
    if (e > 0)
        m.e_.emplace_back(idx, e);
    return m;
}

std::uint32_t ParamMonomial::degree() const
{
    std::uint32_t d = 0;
    for (auto &[i, e] : e_)
        d += e;
    return d;
}

std::uint32_t ParamMonomial::exponent(std::uint32_t idx) const
{
    for (auto &[i, e] : e_)
        if (i == idx)
            return e;
    return 0;
}

bool ParamMonomial::divides(const ParamMonomial &o) const
{
    auto it = o.e_.begin();
    for (auto &[i, e] : e_) {
        while (it != o.e_.end() && it->first < i)
            ++it;
        if (it == o.e_.end() || it->first != i || it->second < e)
            return false;
    }
    return true;
}

ParamMonomial operator*(const ParamMonomial &a, const ParamMonomial &b)
{
    ParamMonomial r;
    auto i = a.e_.begin(), j = b.e_.begin();
    while (i != a.e_.end() || j != b.e_.end()) {
        if (j == b.e_.end() || (i != a.e_.end() && i->first < j->first))
            r.e_.push_back(*i++);
        else if (i == a.e_.end() || j->first < i->first)
            r.e_.push_back(*j++);
        else {
            r.e_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return r;
}

ParamMonomial operator/(const ParamMonomial &a, const ParamMonomial &b)
{
    ParamMonomial r;
    auto j = b.e_.begin();
    for (auto &[i, e] : a.e_) {
        std::uint32_t d = 0;
        if (j != b.e_.end() && j->first == i) {
            d = j->second;
            ++j;
        }
        if (e > d)
            r.e_.emplace_back(i, e - d);
    }
    return r;
}

std::string ParamMonomial::str() const
{
    std::string s;
    auto &reg = ParamRegistry::instance();
    for (auto &[i, e] : e_) {
        if (!s.empty())
            s += "*";
        s += reg.name(i);
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

int compare(const ParamMonomial &a, const ParamMonomial &b)
{
    auto da = a.degree(), db = b.degree();
    if (da != db)
        return da < db ? -1 : 1;
    auto &ea = a.entries();
    auto &eb = b.entries();
    auto i = ea.begin(), j = eb.begin();
    while (i != ea.end() && j != eb.end()) {
        if (i->first != j->first)
            return i->first < j->first ? 1 : -1;
        if (i->second != j->second)
            return i->second > j->second ? 1 : -1;
        ++i;
        ++j;
    }
    if (i != ea.end())
        return 1;
    if (j != eb.end())
        return -1;
    return 0;
}

ParamMonomial gcd(const ParamMonomial &a, const ParamMonomial &b)
{
    ParamMonomial r;
    for (auto &[i, e] : a.entries()) {
        auto f = b.exponent(i);
        auto m = std::min(e, f);
        if (m > 0)
            r = r * ParamMonomial::var(i, m);
    }
    return r;
}

// ---------------------------------------------------------------- ParamPoly

namespace {

bool term_before(const ParamPoly::term &x, const ParamPoly::term &y) { return compare(x.first, y.first) > 0; }

} // namespace

ParamPoly::ParamPoly(long n)
{
    if (n != 0)
        t_.emplace_back(ParamMonomial(), GaussRational(n));
}

ParamPoly::ParamPoly(GaussRational c)
{
    if (!c.is_zero())
        t_.emplace_back(ParamMonomial(), std::move(c));
}

ParamPoly ParamPoly::var(std::uint32_t idx) { return monomial(ParamMonomial::var(idx), GaussRational(1)); }

ParamPoly ParamPoly::monomial(ParamMonomial m, GaussRational c)
{
    ParamPoly p;
    if (!c.is_zero())
        p.t_.emplace_back(std::move(m), std::move(c));
    return p;
}

ParamPoly ParamPoly::from_terms(std::vector<term> ts)
{
    std::sort(ts.begin(), ts.end(), term_before);
    ParamPoly p;
    for (auto &t : ts) {
        if (!p.t_.empty() && p.t_.back().first == t.first)
            p.t_.back().second += t.second;
        else {
            if (!p.t_.empty() && p.t_.back().second.is_zero())
                p.t_.pop_back();
            p.t_.push_back(std::move(t));
        }
    }
    if (!p.t_.empty() && p.t_.back().second.is_zero())
        p.t_.pop_back();
    return p;
}

GaussRational ParamPoly::constant_value() const
{
    if (!is_constant())
        throw error(errc::bad_input, "polynomial is not constant: " + str());
    return t_.empty() ? GaussRational(0) : t_[0].second;
}

GaussRational ParamPoly::constant_term() const
{
    if (!t_.empty() && t_.back().first.is_one())
        return t_.back().second;
    return GaussRational(0);
}

std::uint32_t ParamPoly::total_degree() const { return t_.empty() ? 0 : t_.front().first.degree(); }

std::vector<std::uint32_t> ParamPoly::variables() const
{
    std::vector<std::uint32_t> v;
    for (auto &[m, c] : t_)
        for (auto &[i, e] : m.entries())
            v.push_back(i);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool ParamPoly::is_real() const
{
    for (auto &[m, c] : t_)
        if (!c.is_real())
            return false;
    return true;
}

ParamPoly &ParamPoly::operator+=(const ParamPoly &o)
{
    if (o.t_.empty())
        return *this;
    if (t_.empty()) {
        t_ = o.t_;
        return *this;
    }
    if (&o == this) {
        ParamPoly copy = o;
        return *this += copy;
    }
    std::vector<term> r;
    r.reserve(t_.size() + o.t_.size());
    auto i = t_.begin();
    auto j = o.t_.cbegin();
    while (i != t_.end() || j != o.t_.end()) {
        int c;
        if (i == t_.end())
            c = -1;
        else if (j == o.t_.end())
            c = 1;
        else
            c = compare(i->first, j->first);
        if (c > 0)
            r.push_back(std::move(*i++));
        else if (c < 0)
            r.push_back(*j++);
        else {
            GaussRational s = i->second + j->second;
            if (!s.is_zero())
                r.emplace_back(std::move(i->first), std::move(s));
            ++i;
            ++j;
        }
    }
    t_ = std::move(r);
    return *this;
}

ParamPoly &ParamPoly::operator-=(const ParamPoly &o) { return *this += -o; }

ParamPoly ParamPoly::operator-() const
{
    ParamPoly r = *this;
    for (auto &[m, c] : r.t_)
        c = -c;
    return r;
}

ParamPoly &ParamPoly::operator*=(const GaussRational &c)
{
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto &t : t_)
        t.second *= c;
    return *this;
}

ParamPoly operator*(const ParamPoly &a, const ParamPoly &b)
{
    if (a.t_.empty() || b.t_.empty())
        return ParamPoly();
    if (a.is_constant()) {
        ParamPoly r = b;
        r *= a.t_[0].second;
        return r;
    }
    if (b.is_constant()) {
        ParamPoly r = a;
        r *= b.t_[0].second;
        return r;
    }
    std::vector<ParamPoly::term> ts;
    ts.reserve(a.t_.size() * b.t_.size());
    for (auto &x : a.t_)
        for (auto &y : b.t_)
            ts.emplace_back(x.first * y.first, x.second * y.second);
    return ParamPoly::from_terms(std::move(ts));
}

bool operator==(const ParamPoly &a, const ParamPoly &b)
{
    if (a.t_.size() != b.t_.size())
        return false;
    for (std::size_t k = 0; k < a.t_.size(); ++k)
        if (a.t_[k].first != b.t_[k].first || a.t_[k].second != b.t_[k].second)
            return false;
    return true;
}

ParamPoly ParamPoly::conj() const
{
    ParamPoly r = *this;
    for (auto &[m, c] : r.t_)
        c.im = -c.im;
    return r;
}

ParamPoly ParamPoly::pow(unsigned n) const
{
    ParamPoly r(1), b = *this;
    while (n) {
        if (n & 1)
            r = r * b;
        n >>= 1;
        if (n)
            b = b * b;
    }
    return r;
}

ParamPoly ParamPoly::mul_monomial(const ParamMonomial &m, const GaussRational &c) const
{
    ParamPoly r;
    if (c.is_zero())
        return r;
    r.t_.reserve(t_.size());
    for (auto &[mm, cc] : t_)
        r.t_.emplace_back(mm * m, cc * c);
    return r;
}

std::optional<ParamPoly> ParamPoly::divide_exact(const ParamPoly &d) const
{
    if (d.is_zero())
        throw error(errc::division_by_zero, "polynomial division by zero");
    if (t_.empty())
        return ParamPoly();
    if (d.is_constant()) {
        ParamPoly r = *this;
        r *= GaussRational(1) / d.t_[0].second;
        return r;
    }
    if (d.total_degree() > total_degree())
        return std::nullopt;
    const auto &[ld, lc] = d.leading();
    GaussRational inv = GaussRational(1) / lc;
    ParamPoly r = *this;
    std::vector<term> q;
    while (!r.t_.empty()) {
        const auto &[lm, c] = r.leading();
        if (!ld.divides(lm))
            return std::nullopt;
        ParamMonomial qm = lm / ld;
        GaussRational qc = c * inv;
        r -= d.mul_monomial(qm, qc);
        q.emplace_back(std::move(qm), std::move(qc));
    }
    return from_terms(std::move(q));
}

ParamPoly ParamPoly::substitute(const std::map<std::uint32_t, GaussRational> &b) const
{
    if (b.empty())
        return *this;
    std::vector<term> ts;
    ts.reserve(t_.size());
    for (auto &[m, c] : t_) {
        GaussRational cc = c;
        ParamMonomial rest;
        for (auto &[i, e] : m.entries()) {
            auto it = b.find(i);
            if (it == b.end()) {
                rest = rest * ParamMonomial::var(i, e);
                continue;
            }
            GaussRational p(1);
            for (std::uint32_t k = 0; k < e; ++k)
                p *= it->second;
            cc *= p;
        }
        if (!cc.is_zero())
            ts.emplace_back(std::move(rest), std::move(cc));
    }
    return from_terms(std::move(ts));
}

ParamPoly ParamPoly::compose(const std::map<std::uint32_t, ParamPoly> &b) const
{
    if (b.empty())
        return *this;
    ParamPoly r;
    std::map<std::pair<std::uint32_t, std::uint32_t>, ParamPoly> cache;
    for (auto &[m, c] : t_) {
        ParamPoly t = ParamPoly::monomial(ParamMonomial(), c);
        ParamMonomial rest;
        for (auto &[i, e] : m.entries()) {
            auto it = b.find(i);
            if (it == b.end()) {
                rest = rest * ParamMonomial::var(i, e);
                continue;
            }
            auto key = std::make_pair(i, e);
            auto ci = cache.find(key);
            if (ci == cache.end())
                ci = cache.emplace(key, it->second.pow(e)).first;
            t = t * ci->second;
        }
        r += t.mul_monomial(rest, GaussRational(1));
    }
    return r;
}

std::map<ParamMonomial, ParamPoly, MonomialLess> ParamPoly::split(const std::vector<std::uint32_t> &vars) const
{
    std::map<ParamMonomial, std::vector<term>, MonomialLess> acc;
    for (auto &[m, c] : t_) {
        ParamMonomial in, out;
        for (auto &[i, e] : m.entries()) {
            if (std::find(vars.begin(), vars.end(), i) != vars.end())
                in = in * ParamMonomial::var(i, e);
            else
                out = out * ParamMonomial::var(i, e);
        }
        acc[in].emplace_back(std::move(out), c);
    }
    std::map<ParamMonomial, ParamPoly, MonomialLess> r;
    for (auto &[m, ts] : acc) {
        ParamPoly p = from_terms(std::move(ts));
        if (!p.is_zero())
            r.emplace(m, std::move(p));
    }
    return r;
}

ParamMonomial ParamPoly::monomial_content() const
{
    if (t_.empty())
        return ParamMonomial();
    ParamMonomial g = t_[0].first;
    for (auto &[m, c] : t_) {
        g = gcd(g, m);
        if (g.is_one())
            break;
    }
    return g;
}

namespace {

void append_term(std::string &s, const GaussRational &c, const ParamMonomial &m)
{
    std::string ms = m.str();
    bool first = s.empty();
    auto sep = [&](bool neg) {
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
    };
    auto coef = [&](const mpq_class &q, const char *unit) {
        // q > 0
        std::string body;
        if (q != 1)
            body = q.get_str();
        if (*unit) {
            if (!body.empty())
                body += "*";
            body += unit;
        }
        if (body.empty())
            return ms.empty() ? std::string("1") : ms;
        return ms.empty() ? body : body + "*" + ms;
    };
    if (sgn(c.im) == 0) {
        sep(sgn(c.re) < 0);
        s += coef(abs(c.re), "");
    } else if (sgn(c.re) == 0) {
        sep(sgn(c.im) < 0);
        s += coef(abs(c.im), "i");
    } else {
        sep(false);
        s += "(" + c.str() + ")";
        if (!ms.empty())
            s += "*" + ms;
    }
}

} // namespace

std::string ParamPoly::str() const
{
    if (t_.empty())
        return "0";
    std::string s;
    for (auto &[m, c] : t_)
        append_term(s, c, m);
    return s;
}

int compare(const ParamPoly &a, const ParamPoly &b)
{
    auto &x = a.terms();
    auto &y = b.terms();
    for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
        int c = compare(x[k].first, y[k].first);
        if (c != 0)
            return c;
        c = compare(x[k].second, y[k].second);
        if (c != 0)
            return c;
    }
    if (x.size() != y.size())
        return x.size() < y.size() ? -1 : 1;
    return 0;
}

// ---------------------------------------------------------------- Scalar

namespace {

using atom_list = std::vector<Scalar::atom>;

bool atom_less(const Scalar::atom &x, const Scalar::atom &y) { return compare(x.first, y.first) < 0; }

// Dense univariate polynomials over Q(i), lowest degree first.
using upoly = std::vector<GaussRational>;

void trim(upoly &a)
{
    while (!a.empty() && a.back().is_zero())
        a.pop_back();
}

upoly to_upoly(const ParamPoly &P, std::uint32_t var)
{
    upoly a;
    for (auto &[m, c] : P.terms()) {
        std::size_t e = m.exponent(var);
        if (a.size() <= e)
            a.resize(e + 1);
        a[e] = c;
    }
    return a;
}

ParamPoly from_upoly(const upoly &a, std::uint32_t var)
{
    std::vector<ParamPoly::term> ts;
    for (std::size_t e = 0; e < a.size(); ++e)
        if (!a[e].is_zero())
            ts.emplace_back(e ? ParamMonomial::var(var, static_cast<std::uint32_t>(e)) : ParamMonomial(), a[e]);
    return ParamPoly::from_terms(std::move(ts));
}

void make_monic(upoly &a)
{
    trim(a);
    if (a.empty())
        return;
    GaussRational inv = GaussRational(1) / a.back();
    for (auto &c : a)
        c *= inv;
}

upoly derivative(const upoly &a)
{
    upoly d;
    for (std::size_t e = 1; e < a.size(); ++e)
        d.push_back(a[e] * GaussRational(static_cast<long>(e)));
    trim(d);
    return d;
}

// quotient and remainder of a by b (b nonzero)
std::pair<upoly, upoly> divmod(upoly a, const upoly &b)
{
    trim(a);
    upoly q;
    if (a.size() < b.size())
        return {q, a};
    q.resize(a.size() - b.size() + 1);
    GaussRational inv = GaussRational(1) / b.back();
    for (std::size_t k = a.size() - 1;; --k) {
        std::size_t shift = k - (b.size() - 1);
        GaussRational c = a[k] * inv;
        q[shift] = c;
        if (!c.is_zero())
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] -= c * b[j];
        if (shift == 0)
            break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

upoly ugcd(upoly a, upoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        upoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    make_monic(a);
    return a;
}

// Yun's square-free decomposition of a monic polynomial: factors with multiplicities
std::vector<std::pair<upoly, int>> square_free(const upoly &f)
{
    std::vector<std::pair<upoly, int>> out;
    upoly a = ugcd(f, derivative(f));
    upoly b = divmod(f, a).first, c = divmod(derivative(f), a).first;
    upoly d = c;
    {
        upoly db = derivative(b);
        d.resize(std::max(d.size(), db.size()));
        for (std::size_t k = 0; k < db.size(); ++k)
            d[k] -= db[k];
        trim(d);
    }
    for (int i = 1; b.size() > 1; ++i) {
        upoly g = ugcd(b, d);
        if (g.size() > 1)
            out.emplace_back(g, i);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        upoly db = derivative(b);
        d = c;
        d.resize(std::max(d.size(), db.size()));
        for (std::size_t k = 0; k < db.size(); ++k)
            d[k] -= db[k];
        trim(d);
    }
    for (auto &[g, i] : out)
        make_monic(g);
    return out;
}

std::vector<mpz_class> small_divisors(mpz_class n)
{
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0 || n > mpz_class("10000000000"))
        return out;
    for (mpz_class k = 1; k * k <= n; ++k)
        if (n % k == 0) {
            out.push_back(k);
            if (k * k != n)
                out.push_back(n / k);
        }
    return out;
}

// Rational roots of a square-free polynomial with rational coefficients.
std::vector<mpq_class> rational_roots(const upoly &f)
{
    std::vector<mpq_class> roots;
    for (auto &c : f)
        if (!c.is_real())
            return roots;
    mpz_class l = 1;
    for (auto &c : f)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re.get_den_mpz_t());
    std::vector<mpz_class> z;
    for (auto &c : f)
        z.push_back(mpz_class(c.re * l));
    if (z.front() == 0)
        return roots;
    auto ps = small_divisors(z.front()), qs = small_divisors(z.back());
    std::vector<mpq_class> cand;
    for (auto &p : ps)
        for (auto &q : qs)
            for (int sg : {1, -1}) {
                mpq_class r(sg * p, q);
                r.canonicalize();
                cand.push_back(r);
            }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (auto &r : cand) {
        mpq_class v = 0;
        for (std::size_t k = f.size(); k-- > 0;)
            v = v * r + f[k].re;
        if (v == 0)
            roots.push_back(r);
    }
    return roots;
}

// Splits a monic univariate atom into square-free parts and rational linear factors,
// so the atom list does not depend on how the denominator was assembled.
std::vector<std::pair<ParamPoly, int>> split_atom(const ParamPoly &P)
{
    auto vars = P.variables();
    if (vars.size() != 1)
        return {{P, 1}};
    std::uint32_t var = vars.front();
    upoly f = to_upoly(P, var);
    if (f.size() <= 2)
        return {{P, 1}};
    make_monic(f);
    std::vector<std::pair<ParamPoly, int>> out;
    for (auto &[g, i] : square_free(f)) {
        upoly rest = g;
        for (auto &r : rational_roots(g)) {
            upoly lin = {GaussRational(-r), GaussRational(1)};
            rest = divmod(rest, lin).first;
            out.emplace_back(from_upoly(lin, var), i);
        }
        if (rest.size() > 1)
            out.emplace_back(from_upoly(rest, var), i);
    }
    return out;
}

void add_atom(atom_list &den, ParamPoly P, int mult)
{
    for (auto &a : den)
        if (a.first == P) {
            a.second += mult;
            return;
        }
    den.emplace_back(std::move(P), mult);
    std::sort(den.begin(), den.end(), atom_less);
}

// Multiply `num` by 1/P^mult, recording new atoms in `den`.
void divide_into(ParamPoly &num, atom_list &den, ParamPoly P, int mult)
{
    if (P.is_zero())
        throw error(errc::division_by_zero, "division by zero");
    ParamMonomial mc = P.monomial_content();
    if (!mc.is_one()) {
        for (auto &[i, e] : mc.entries())
            add_atom(den, ParamPoly::var(i), static_cast<int>(e) * mult);
        P = *P.divide_exact(ParamPoly::monomial(mc, GaussRational(1)));
    }
    GaussRational lc = P.leading().second;
    GaussRational inv(1);
    for (int k = 0; k < mult; ++k)
        inv /= lc;
    num *= inv;
    P *= GaussRational(1) / lc;
    if (P.is_constant())
        return;
    for (auto &[f, k] : split_atom(P))
        add_atom(den, std::move(f), k * mult);
}

ParamPoly atom_product(const atom_list &den)
{
    ParamPoly r(1);
    for (auto &[f, k] : den)
        r = r * f.pow(static_cast<unsigned>(k));
    return r;
}

} // namespace

void Scalar::normalize()
{
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto &[f, k] : den_) {
        while (k > 0) {
            auto q = num_.divide_exact(f);
            if (!q)
                break;
            num_ = std::move(*q);
            --k;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](const atom &a) { return a.second == 0; }), den_.end());
}

Scalar Scalar::rational(long p, long q)
{
    if (q == 0)
        throw error(errc::division_by_zero, "zero denominator");
    mpq_class r(p, q);
    r.canonicalize();
    return Scalar(GaussRational(r));
}

Scalar Scalar::i() { return Scalar(GaussRational::imag_unit()); }

Scalar Scalar::param(const std::string &name) { return Scalar(ParamPoly::var(crnf::param(name))); }

Scalar Scalar::fraction(ParamPoly num, const ParamPoly &den)
{
    Scalar s(std::move(num));
    divide_into(s.num_, s.den_, den, 1);
    s.normalize();
    return s;
}

ParamPoly Scalar::den() const { return atom_product(den_); }

bool Scalar::is_one() const { return den_.empty() && num_.is_constant() && !num_.is_zero() && num_.constant_value().is_one(); }

GaussRational Scalar::number() const
{
    if (!is_number())
        throw error(errc::bad_input, "scalar is not a pure number: " + str());
    return num_.is_zero() ? GaussRational(0) : num_.constant_value();
}

bool Scalar::is_real() const
{
    if (!num_.is_real())
        return false;
    for (auto &[f, k] : den_)
        if (!f.is_real())
            return false;
    return true;
}

std::vector<std::uint32_t> Scalar::variables() const
{
    auto v = num_.variables();
    for (auto &[f, k] : den_) {
        auto w = f.variables();
        v.insert(v.end(), w.begin(), w.end());
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Scalar &Scalar::operator+=(const Scalar &o)
{
    if (o.is_zero())
        return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (den_.empty() && o.den_.empty()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
        normalize();
        return *this;
    }
    atom_list lcm = den_;
    for (auto &a : o.den_) {
        bool found = false;
        for (auto &b : lcm)
            if (b.first == a.first) {
                b.second = std::max(b.second, a.second);
                found = true;
            }
        if (!found)
            lcm.push_back(a);
    }
    std::sort(lcm.begin(), lcm.end(), atom_less);
    auto cofactor = [&](const atom_list &d) {
        atom_list rest;
        for (auto &b : lcm) {
            int k = b.second;
            for (auto &a : d)
                if (a.first == b.first)
                    k -= a.second;
            if (k > 0)
                rest.emplace_back(b.first, k);
        }
        return atom_product(rest);
    };
    num_ = num_ * cofactor(den_) + o.num_ * cofactor(o.den_);
    den_ = std::move(lcm);
    normalize();
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) { return *this += -o; }

Scalar &Scalar::operator*=(const Scalar &o)
{
    if (is_zero())
        return *this;
    if (o.is_zero()) {
        *this = Scalar();
        return *this;
    }
    num_ = num_ * o.num_;
    if (o.den_.empty()) {
        if (!den_.empty())
            normalize();
        return *this;
    }
    for (auto &a : o.den_) {
        bool found = false;
        for (auto &b : den_)
            if (b.first == a.first) {
                b.second += a.second;
                found = true;
            }
        if (!found)
            den_.push_back(a);
    }
    std::sort(den_.begin(), den_.end(), atom_less);
    normalize();
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &o)
{
    if (o.is_zero())
        throw error(errc::division_by_zero, "scalar division by zero");
    if (is_zero())
        return *this;
    if (o.num_.is_constant() && o.den_.empty()) {
        num_ *= GaussRational(1) / o.num_.constant_value();
        return *this;
    }
    num_ = num_ * atom_product(o.den_);
    divide_into(num_, den_, o.num_, 1);
    normalize();
    return *this;
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

bool operator==(const Scalar &a, const Scalar &b)
{
    if (a.den_ == b.den_)
        return a.num_ == b.num_;
    return a.num_ * atom_product(b.den_) == b.num_ * atom_product(a.den_);
}

Scalar Scalar::conj() const
{
    Scalar r(num_.conj());
    for (auto &[f, k] : den_)
        divide_into(r.num_, r.den_, f.conj(), k);
    r.normalize();
    return r;
}

Scalar Scalar::re() const { return (*this + conj()) * Scalar::rational(1, 2); }

Scalar Scalar::im() const { return (*this - conj()) * Scalar(GaussRational(mpq_class(0), mpq_class(-1, 2))); }

Scalar Scalar::pow(int n) const
{
    if (n < 0)
        return Scalar(1) / pow(-n);
    Scalar r(1), b = *this;
    while (n) {
        if (n & 1)
            r *= b;
        n >>= 1;
        if (n)
            b *= b;
    }
    return r;
}

Scalar Scalar::substitute(const std::map<std::uint32_t, GaussRational> &b) const
{
    Scalar r(num_.substitute(b));
    for (auto &[f, k] : den_) {
        ParamPoly g = f.substitute(b);
        if (g.is_zero())
            throw error(errc::division_by_zero, "binding zeroes a denominator factor " + f.str());
        divide_into(r.num_, r.den_, std::move(g), k);
    }
    r.normalize();
    return r;
}

Scalar Scalar::compose(const std::map<std::uint32_t, Scalar> &b) const
{
    auto eval = [&](const ParamPoly &p) {
        Scalar r;
        std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar> cache;
        for (auto &[m, c] : p.terms()) {
            Scalar t(c);
            ParamMonomial rest;
            for (auto &[i, e] : m.entries()) {
                auto it = b.find(i);
                if (it == b.end()) {
                    rest = rest * ParamMonomial::var(i, e);
                    continue;
                }
                auto key = std::make_pair(i, e);
                auto ci = cache.find(key);
                if (ci == cache.end())
                    ci = cache.emplace(key, it->second.pow(static_cast<int>(e))).first;
                t *= ci->second;
            }
            if (!rest.is_one())
                t *= Scalar(ParamPoly::monomial(rest, GaussRational(1)));
            r += t;
        }
        return r;
    };
    Scalar r = eval(num_);
    for (auto &[f, k] : den_) {
        Scalar g = eval(f);
        if (g.is_zero())
            throw error(errc::division_by_zero, "substitution zeroes a denominator factor " + f.str());
        r /= g.pow(k);
    }
    return r;
}

std::string Scalar::str() const
{
    if (den_.empty())
        return num_.str();
    std::string d;
    for (auto &[f, k] : den_) {
        if (!d.empty())
            d += "*";
        d += "(" + f.str() + ")";
        if (k > 1)
            d += "^" + std::to_string(k);
    }
    return "(" + num_.str() + ")/(" + d + ")";
}

} // namespace crnf
