#include "crnf/expr.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace crnf {

ChartPtr scalar_chart()
{
    static ChartPtr c = make_chart("scalar", {}, {}, std::vector<int>{});
    return c;
}

namespace {

class Parser {
public:
    Parser(const std::string &text, ChartPtr chart, int order, const Bindings &b)
        : s_(text), chart_(std::move(chart)), order_(order), bind_(b)
    {
    }

    Series run()
    {
        Series r = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r.order() > order_ ? r.truncate(order_) : r;
    }

private:
    const std::string &s_;
    ChartPtr chart_;
    int order_;
    const Bindings &bind_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw error(errc::parse_error, msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Series constant(const Scalar &c) const { return Series::constant(chart_, c); }

    Series expr()
    {
        Series r = term();
        for (;;) {
            if (accept('+'))
                r = r + term();
            else if (accept('-'))
                r = r - term();
            else
                return r;
        }
    }

    Series term()
    {
        Series r = unary();
        for (;;) {
            if (accept('*'))
                r = mul(r, unary(), order_);
            else if (accept('/')) {
                auto fs = divisor_factors();
                if (fs.empty())
                    r = divide(r, unary());
                for (auto &[b, e] : fs)
                    for (long k = 0; k < e; ++k)
                        r = divide(r, b);
            }
            else
                return r;
        }
    }

    Series unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    // after '^': an integer, optionally negative and parenthesized
    long exponent()
    {
        bool paren = accept('(');
        bool neg = accept('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected integer exponent");
        long e = std::stol(s_.substr(start, pos_ - start));
        if (paren && !accept(')'))
            fail("expected ')'");
        return neg ? -e : e;
    }

    Series power()
    {
        Series base = atom();
        if (!accept('^'))
            return base;
        long e = exponent();
        Series p = pow(base, static_cast<unsigned>(e < 0 ? -e : e), order_);
        return e < 0 ? divide(constant(Scalar(1)), p) : p;
    }

    // A divisor written "((f1)*(f2)^k*...)" is divided out factor by factor, so
    // printed denominators read back with the same factors. Empty otherwise.
    std::vector<std::pair<Series, long>> divisor_factors()
    {
        std::size_t save = pos_;
        std::vector<std::pair<Series, long>> fs;
        try {
            if (!accept('('))
                return {};
            for (;;) {
                skip();
                if (pos_ >= s_.size() || s_[pos_] != '(')
                    break;
                Series b = atom();
                long e = accept('^') ? exponent() : 1;
                if (e <= 0)
                    break;
                fs.emplace_back(std::move(b), e);
                if (accept('*'))
                    continue;
                if (accept(')')) {
                    skip();
                    if (pos_ < s_.size() && s_[pos_] == '^')
                        break;
                    return fs;
                }
                break;
            }
        } catch (const error &) {
        }
        pos_ = save;
        return {};
    }

    Series divide(const Series &a, const Series &b)
    {
        if (b.is_zero())
            throw error(errc::division_by_zero, "division by zero in \"" + s_ + "\"");
        if (b.terms().size() == 1 && b.terms()[0].exp == 0 && b.order() >= kExact)
            return a.scale(Scalar(1) / b.terms()[0].coeff);
        Series bb = b.order() >= kExact ? b.truncate(order_) : b;
        return mul(a, invert_unit(bb), order_);
    }

    Series function(const std::string &name, const Series &arg)
    {
        if (!arg.is_zero() && arg.terms().front().exp == 0)
            fail(name + "() of a series with a constant term");
        if (arg.is_zero())
            return constant(Scalar(name == "sin" ? 0 : 1));
        // sum_k c_k arg^k through the order
        int v = arg.valuation();
        int K = order_ / v;
        SeriesAccumulator acc(chart_, order_);
        Series pk = constant(Scalar(1));
        mpq_class fact = 1;
        for (int k = 0; k <= K; ++k) {
            if (k > 0) {
                pk = mul(pk, arg, order_);
                fact *= k;
            }
            mpq_class c = 0;
            if (name == "exp")
                c = 1 / fact;
            else if (name == "sin" && k % 2 == 1)
                c = ((k / 2) % 2 ? -1 : 1) / fact;
            else if (name == "cos" && k % 2 == 0)
                c = ((k / 2) % 2 ? -1 : 1) / fact;
            if (sgn(c) != 0)
                acc.add(pk, Scalar(GaussRational(c)));
        }
        acc.lower_order(arg.order() >= kExact ? order_ : arg.order());
        return acc.finish();
    }

    Series identifier(const std::string &id)
    {
        if (auto it = bind_.find(id); it != bind_.end())
            return constant(it->second);
        int idx = chart_->index(id);
        if (idx >= 0)
            return Series::variable(chart_, static_cast<std::size_t>(idx));
        if (id == "i")
            return constant(Scalar::i());
        static const char *complex_names[] = {"A004", "B103", "lambda", "alpha"};
        for (const char *base : complex_names) {
            std::string b = base;
            if (id == b || id == b + "b") {
                Scalar re = Scalar::param(b + "_re");
                Scalar im = Scalar::param(b + "_im");
                return constant(id == b ? re + Scalar::i() * im : re - Scalar::i() * im);
            }
        }
        auto p = ParamRegistry::instance().find(id);
        if (!p)
            throw error(errc::unknown_parameter, "unknown name '" + id + "' in \"" + s_ + "\"");
        return constant(Scalar(ParamPoly::var(*p)));
    }

    Series atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Series r = expr();
            if (!accept(')'))
                fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            mpz_class n(s_.substr(start, pos_ - start));
            return constant(Scalar(GaussRational(mpq_class(n))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if ((id == "exp" || id == "sin" || id == "cos") && accept('(')) {
                Series arg = expr();
                if (!accept(')'))
                    fail("expected ')'");
                return function(id, arg);
            }
            return identifier(id);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

} // namespace

Series parse_series(const std::string &text, const ChartPtr &chart, int order, const Bindings &bindings)
{
    return Parser(text, chart, order, bindings).run();
}

Scalar parse_scalar(const std::string &text)
{
    Series s = parse_series(text, scalar_chart());
    return s.is_zero() ? Scalar() : s.terms().front().coeff;
}

} // namespace crnf
