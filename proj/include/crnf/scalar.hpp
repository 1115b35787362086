#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace crnf {

enum class errc {
    division_by_zero,
    degenerate_constant,
    chart_mismatch,
    order_underflow,
    constant_term,
    singular_linear_part,
    no_paper_data,
    not_normal_form,
    parse_error,
    unknown_parameter,
    exponent_length,
    table_checksum,
    not_transverse,
    not_applicable,
    nonlinear_system,
    bad_input,
};

const char *errc_name(errc e);

class error : public std::runtime_error {
public:
    error(errc code, const std::string &what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// re + i*im with exact rationals.
struct GaussRational {
    mpq_class re, im;

    GaussRational() = default;
    GaussRational(long n) : re(n), im(0) {}
    // mpq_class(p, q) is not reduced by GMP; reduce here
    GaussRational(mpq_class r) : re(std::move(r)), im(0) { re.canonicalize(); }
    GaussRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i))
    {
        re.canonicalize();
        im.canonicalize();
    }

    static GaussRational imag_unit() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussRational conj() const { return {re, -im}; }
    mpq_class norm() const { return re * re + im * im; }

    GaussRational &operator+=(const GaussRational &o);
    GaussRational &operator-=(const GaussRational &o);
    GaussRational &operator*=(const GaussRational &o);
    GaussRational &operator/=(const GaussRational &o);
    GaussRational operator-() const { return {-re, -im}; }

    friend GaussRational operator+(GaussRational a, const GaussRational &b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational &b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational &b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational &b) { return a /= b; }
    friend bool operator==(const GaussRational &a, const GaussRational &b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRational &a, const GaussRational &b) { return !(a == b); }

    std::string str() const;
};

int compare(const GaussRational &a, const GaussRational &b);

// Global interned registry of real formal parameters. Indices are stable for
// the lifetime of the process; the standard names are registered first.
class ParamRegistry {
public:
    static ParamRegistry &instance();

    std::uint32_t intern(const std::string &name);
    std::optional<std::uint32_t> find(const std::string &name) const;
    const std::string &name(std::uint32_t idx) const;
    std::size_t size() const;

private:
    ParamRegistry();
    struct impl;
    impl *p_;
};

std::uint32_t param(const std::string &name);

// Exponents of formal parameters, sorted by registry index.
class ParamMonomial {
public:
    using entry = std::pair<std::uint32_t, std::uint32_t>;
    using storage = boost::container::small_vector<entry, 3>;

    ParamMonomial() = default;
    static ParamMonomial var(std::uint32_t idx, std::uint32_t e = 1);

    const storage &entries() const { return e_; }
    bool is_one() const { return e_.empty(); }
    std::uint32_t degree() const;
    std::uint32_t exponent(std::uint32_t idx) const;
    bool divides(const ParamMonomial &o) const;

    friend ParamMonomial operator*(const ParamMonomial &a, const ParamMonomial &b);
    // requires b | a
    friend ParamMonomial operator/(const ParamMonomial &a, const ParamMonomial &b);
    friend bool operator==(const ParamMonomial &a, const ParamMonomial &b) { return a.e_ == b.e_; }
    friend bool operator!=(const ParamMonomial &a, const ParamMonomial &b) { return !(a == b); }

    std::string str() const;

private:
    storage e_;
};

// Graded order; lower registry index is more significant.
int compare(const ParamMonomial &a, const ParamMonomial &b);
ParamMonomial gcd(const ParamMonomial &a, const ParamMonomial &b);

struct MonomialLess {
    bool operator()(const ParamMonomial &a, const ParamMonomial &b) const { return compare(a, b) < 0; }
};

class ParamPoly {
public:
    using term = std::pair<ParamMonomial, GaussRational>;

    ParamPoly() = default;
    ParamPoly(long n);
    ParamPoly(GaussRational c);
    static ParamPoly var(std::uint32_t idx);
    static ParamPoly monomial(ParamMonomial m, GaussRational c);
    // terms in any order, duplicates merged
    static ParamPoly from_terms(std::vector<term> ts);

    // leading term first
    const std::vector<term> &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
    GaussRational constant_value() const;
    GaussRational constant_term() const;
    const term &leading() const { return t_.front(); }
    std::uint32_t total_degree() const;
    std::vector<std::uint32_t> variables() const;
    bool is_real() const;

    ParamPoly &operator+=(const ParamPoly &o);
    ParamPoly &operator-=(const ParamPoly &o);
    ParamPoly operator-() const;
    ParamPoly &operator*=(const GaussRational &c);
    friend ParamPoly operator+(ParamPoly a, const ParamPoly &b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly &b) { return a -= b; }
    friend ParamPoly operator*(const ParamPoly &a, const ParamPoly &b);
    friend bool operator==(const ParamPoly &a, const ParamPoly &b);
    friend bool operator!=(const ParamPoly &a, const ParamPoly &b) { return !(a == b); }

    ParamPoly conj() const;
    ParamPoly pow(unsigned n) const;
    ParamPoly mul_monomial(const ParamMonomial &m, const GaussRational &c) const;

    // exact division; nullopt if d does not divide *this
    std::optional<ParamPoly> divide_exact(const ParamPoly &d) const;
    ParamPoly substitute(const std::map<std::uint32_t, GaussRational> &b) const;
    // substitute polynomials for parameters
    ParamPoly compose(const std::map<std::uint32_t, ParamPoly> &b) const;

    // Decompose as sum over monomials m in `vars` of m * coefficient(m), the
    // coefficients being free of `vars`.
    std::map<ParamMonomial, ParamPoly, MonomialLess> split(const std::vector<std::uint32_t> &vars) const;

    // gcd of the monomial supports and the leading coefficient
    ParamMonomial monomial_content() const;

    std::string str() const;

private:
    std::vector<term> t_;
};

int compare(const ParamPoly &a, const ParamPoly &b);

// Fraction of parameter polynomials. The denominator is kept as a product of
// monic, pairwise distinct atoms with multiplicities; an empty atom list means
// the scalar is a polynomial.
class Scalar {
public:
    using atom = std::pair<ParamPoly, int>;

    Scalar() = default;
    Scalar(long n) : num_(n) {}
    Scalar(GaussRational c) : num_(std::move(c)) {}
    Scalar(ParamPoly p) : num_(std::move(p)) {}
    static Scalar rational(long p, long q);
    static Scalar i();
    static Scalar param(const std::string &name);
    static Scalar fraction(ParamPoly num, const ParamPoly &den);

    const ParamPoly &num() const { return num_; }
    const std::vector<atom> &den_atoms() const { return den_; }
    ParamPoly den() const;
    bool is_polynomial() const { return den_.empty(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    // no formal parameters
    bool is_number() const { return den_.empty() && num_.is_constant(); }
    GaussRational number() const;
    bool is_real() const;
    std::vector<std::uint32_t> variables() const;

    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    Scalar &operator/=(const Scalar &o);
    Scalar operator-() const;
    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    friend bool operator==(const Scalar &a, const Scalar &b);
    friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

    Scalar conj() const;
    Scalar re() const;
    Scalar im() const;
    Scalar pow(int n) const;
    Scalar substitute(const std::map<std::uint32_t, GaussRational> &b) const;
    Scalar compose(const std::map<std::uint32_t, Scalar> &b) const;

    std::string str() const;

private:
    void normalize();
    ParamPoly num_;
    std::vector<atom> den_;
};

Scalar parse_scalar(const std::string &text);

} // namespace crnf
