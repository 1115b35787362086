#include <gtest/gtest.h>

#include "crnf/scalar.hpp"
#include "rand.hpp"

using namespace crnf;
using crnf::testing::Gen;

namespace {

Scalar th() { return Scalar::param("theta"); }
Scalar q(long p, long r) { return Scalar::rational(p, r); }

} // namespace

TEST(Scalar, Examples)
{
    EXPECT_EQ(q(1, 2) + q(1, 2), Scalar(1));
    // oracle: the rational product computed with plain mpq
    mpq_class c = mpq_class(2, 5) * mpq_class(6, 5);
    EXPECT_EQ((q(2, 5) * th()) * (q(6, 5) * th()), Scalar(GaussRational(c)) * th().pow(2));
    EXPECT_EQ(c, mpq_class(12, 25));
    Scalar a = Scalar::param("a"), b = Scalar::param("b"), i = Scalar::i();
    EXPECT_EQ((a + i * b) * (a - i * b), a * a + b * b);
}

TEST(Scalar, Conjugate)
{
    Scalar e = Scalar::param("e"), a = Scalar::param("a"), b = Scalar::param("b"), i = Scalar::i();
    EXPECT_EQ((i * e).conj(), -(i * e));
    EXPECT_EQ((Scalar(2) * a - Scalar(2) * i * b).conj(), Scalar(2) * a + Scalar(2) * i * b);
    EXPECT_EQ(th().conj(), th());
}

TEST(Scalar, SubstituteParams)
{
    std::map<std::uint32_t, GaussRational> five{{param("theta"), GaussRational(5)}};
    EXPECT_EQ((q(2, 5) * th()).substitute(five), Scalar(2));
    EXPECT_EQ((q(-6, 25) * th().pow(2)).substitute(five), Scalar(-6));
    Scalar a = Scalar::param("a"), b = Scalar::param("b"), i = Scalar::i();
    std::map<std::uint32_t, GaussRational> one{{param("a"), GaussRational(1)}};
    EXPECT_EQ((a + i * b).substitute(one), Scalar(1) + i * b);
}

TEST(Scalar, Errors)
{
    try {
        (void)(Scalar(1) / Scalar(0));
        FAIL();
    } catch (const error &e) {
        EXPECT_EQ(e.code(), errc::division_by_zero);
    }
    Scalar f = Scalar(1) / (th() - Scalar(5));
    std::map<std::uint32_t, GaussRational> five{{param("theta"), GaussRational(5)}};
    EXPECT_THROW(f.substitute(five), error);
    EXPECT_THROW(parse_scalar("phi_unknown_name"), error);
}

TEST(Scalar, TextRoundTrip)
{
    Gen g(11);
    for (int k = 0; k < 200; ++k) {
        Scalar s = g.scalar() + g.scalar() / g.nonzero_scalar();
        EXPECT_EQ(parse_scalar(s.str()), s) << s.str();
        EXPECT_EQ(parse_scalar(s.str()).str(), s.str());
    }
    EXPECT_EQ(parse_scalar("-6/25*theta^2"), q(-6, 25) * th().pow(2));
}

TEST(Scalar, DenominatorsDoNotDependOnConstruction)
{
    Scalar a = Scalar(1) / ((th() + q(1, 2)) * (th() + Scalar(5)));
    Scalar b = Scalar(1) / (th() + q(1, 2)) / (th() + Scalar(5));
    Scalar c = parse_scalar("1/(theta^2 + 11/2*theta + 5/2)");
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(a.str(), c.str());
    EXPECT_EQ(a.den_atoms().size(), 2u);

    Scalar sq = (Scalar(1) / (th().pow(2) + Scalar(1))).pow(2);
    Scalar parsed = parse_scalar("1/(theta^4 + 2*theta^2 + 1)");
    EXPECT_EQ(sq.str(), parsed.str());
    ASSERT_EQ(parsed.den_atoms().size(), 1u);
    EXPECT_EQ(parsed.den_atoms()[0].second, 2);

    // (theta - 1)^2 (theta^2 + 2)
    Scalar mixed = parse_scalar("theta/(theta^4 - 2*theta^3 + 3*theta^2 - 4*theta + 2)");
    EXPECT_EQ(mixed.str(), (th() / ((th() - Scalar(1)).pow(2) * (th().pow(2) + Scalar(2)))).str());
}

TEST(ScalarProperty, FieldAxioms)
{
    Gen g(1);
    for (int k = 0; k < 150; ++k) {
        Scalar x = g.scalar(), y = g.scalar(), z = g.scalar();
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x + Scalar(0), x);
        EXPECT_EQ(x * Scalar(1), x);
        EXPECT_TRUE((x - x).is_zero());
        if (!y.is_zero()) {
            EXPECT_EQ((x / y) * y, x);
            EXPECT_TRUE((y / y).is_one());
        }
    }
}

TEST(ScalarProperty, ConjugationIsARingInvolution)
{
    Gen g(2);
    for (int k = 0; k < 150; ++k) {
        Scalar x = g.scalar(), y = g.scalar();
        EXPECT_EQ(x.conj().conj(), x);
        EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
        EXPECT_EQ((x + y).conj(), x.conj() + y.conj());
        EXPECT_EQ(x.re() + Scalar::i() * x.im(), x);
        EXPECT_TRUE(x.re().is_real());
    }
}

TEST(ScalarProperty, SubstitutionCommutesWithArithmetic)
{
    Gen g(3);
    for (int k = 0; k < 150; ++k) {
        Scalar x = g.scalar(), y = g.scalar();
        // denominators are theta + q with q > 0
        std::map<std::uint32_t, GaussRational> b{{param("theta"), GaussRational(mpq_class(g.num(0, 7)))}};
        EXPECT_EQ((x + y).substitute(b), x.substitute(b) + y.substitute(b));
        EXPECT_EQ((x * y).substitute(b), x.substitute(b) * y.substitute(b));
        std::map<std::uint32_t, GaussRational> ba{{param("a"), GaussRational(mpq_class(g.num(-4, 4)))}};
        EXPECT_EQ((x * y).substitute(ba), x.substitute(ba) * y.substitute(ba));
    }
}
