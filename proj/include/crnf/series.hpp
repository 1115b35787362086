#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crnf/scalar.hpp"

namespace crnf {

// Order of a series known exactly in all weights; saturates under addition.
constexpr int kExact = 1 << 28;

inline int sat_add(int a, int b)
{
    long s = static_cast<long>(a) + b;
    return s >= kExact ? kExact : static_cast<int>(s);
}

struct Chart {
    std::string name;
    std::vector<std::string> vars;
    std::vector<int> weights;
    // involution on variable indices; absent for charts without conjugation
    std::optional<std::vector<int>> pairing;

    std::size_t size() const { return vars.size(); }
    int index(const std::string &v) const;
    int at(const std::string &v) const;

    friend bool operator==(const Chart &a, const Chart &b)
    {
        return a.vars == b.vars && a.weights == b.weights && a.pairing == b.pairing;
    }
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::string name, std::vector<std::string> vars, std::vector<int> weights,
                    std::optional<std::vector<int>> pairing);
// (z, zeta, zb, zetab, v), weights (1,1,1,1,2)
ChartPtr cr_chart();
// (z, zeta, w), weights (1,1,2), no pairing
ChartPtr holo_chart();
// (x, y), real
ChartPtr affine_chart();
// (x, y, u), real
ChartPtr affine_field_chart();

bool same_chart(const ChartPtr &a, const ChartPtr &b);

// Up to eight exponents, one byte each, variable 0 in the most significant
// byte so that integer order is lexicographic order.
using Exp = std::uint64_t;

inline unsigned exp_get(Exp e, std::size_t i) { return static_cast<unsigned>((e >> (8 * (7 - i))) & 0xff); }
Exp exp_set(Exp e, std::size_t i, unsigned v);
inline Exp exp_unit(std::size_t i) { return Exp(1) << (8 * (7 - i)); }
Exp exp_from(const std::vector<int> &v);
std::vector<int> exp_to(Exp e, std::size_t n);
int exp_weight(Exp e, const Chart &c);

struct Term {
    Exp exp;
    Scalar coeff;
};

class Series {
public:
    Series() = default;
    Series(ChartPtr chart, int order);

    static Series constant(ChartPtr chart, Scalar c, int order = kExact);
    static Series variable(ChartPtr chart, std::size_t idx, int order = kExact);
    static Series variable(ChartPtr chart, const std::string &name, int order = kExact);
    static Series monomial(ChartPtr chart, Exp e, Scalar c, int order = kExact);
    // terms in any order; duplicates summed, zeros and overweight terms dropped
    static Series from_terms(ChartPtr chart, int order, std::vector<Term> terms);

    const Chart &chart() const { return *chart_; }
    const ChartPtr &chart_ptr() const { return chart_; }
    int order() const { return order_; }
    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int weight(Exp e) const { return exp_weight(e, *chart_); }
    // lowest weighted degree present; order+1 for the zero series
    int valuation() const;
    Scalar coeff(Exp e) const;
    Scalar coeff(const std::vector<int> &e) const { return coeff(exp_from(e)); }
    Scalar constant_term() const { return coeff(Exp(0)); }

    Series truncate(int n) const;
    // same terms, order lowered to n (n <= order)
    Series with_order(int n) const;
    Series weighted_component(int k) const;
    Series derivative(std::size_t var) const;
    Series derivative(const std::string &var) const { return derivative(chart_->at(var)); }
    Series conj() const;
    Series scale(const Scalar &c) const;
    Series map_coeffs(const std::function<Scalar(const Scalar &)> &f) const;
    Series substitute_params(const std::map<std::uint32_t, GaussRational> &b) const;
    Series compose_params(const std::map<std::uint32_t, Scalar> &b) const;

    Series operator-() const;
    friend Series operator+(const Series &a, const Series &b);
    friend Series operator-(const Series &a, const Series &b);
    friend Series operator*(const Series &a, const Series &b);
    Series &operator+=(const Series &o) { return *this = *this + o; }
    Series &operator-=(const Series &o) { return *this = *this - o; }
    Series &operator*=(const Series &o) { return *this = *this * o; }
    friend bool operator==(const Series &a, const Series &b);
    friend bool operator!=(const Series &a, const Series &b) { return !(a == b); }

    std::string str() const;

private:
    friend class SeriesAccumulator;
    ChartPtr chart_;
    int order_ = kExact;
    std::vector<Term> terms_;
};

// Product truncated at min(natural order, cap).
Series mul(const Series &a, const Series &b, int cap = kExact);
Series pow(const Series &a, unsigned n, int cap = kExact);

// Sum of scaled series with a hash accumulator.
class SeriesAccumulator {
public:
    SeriesAccumulator(ChartPtr chart, int order);
    void add(const Series &s, const Scalar &c = Scalar(1));
    void add_term(Exp e, const Scalar &c);
    void lower_order(int n);
    Series finish();

private:
    ChartPtr chart_;
    int order_;
    std::unordered_map<Exp, Scalar> acc_;
};

// s(x_i -> assignment[i]); unassigned variables map to the same-named
// variable of the target chart. Result order accounts for truncation of s and
// of every assigned series.
Series substitute(const Series &s, const std::map<std::size_t, Series> &assignment, const ChartPtr &target,
                  int cap = kExact);
// lowest order at which substitute() is exact, without computing it
int substitution_order(const Series &s, const std::map<std::size_t, Series> &assignment, const ChartPtr &target);

Series invert_unit(const Series &s);

// Components in source-chart variables, one per target variable.
struct MapGerm {
    ChartPtr source, target;
    std::vector<Series> comps;

    int order() const;
};

MapGerm identity_germ(const ChartPtr &c, int order = kExact);
// second after first
MapGerm compose(const MapGerm &first, const MapGerm &second);
MapGerm invert_map_germ(const MapGerm &m);

} // namespace crnf
