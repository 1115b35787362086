#include <gtest/gtest.h>

#include "crnf/cr.hpp"
#include "crnf/expr.hpp"
#include "crnf/transform.hpp"
#include "rand.hpp"

using namespace crnf;

namespace {

Scalar cplx(const std::string &name) { return Scalar::param(name + "_re") + Scalar::i() * Scalar::param(name + "_im"); }

ResidualParams rp(Scalar l, Scalar a = Scalar(0), Scalar r = Scalar(0))
{
    ResidualParams p;
    p.lambda = l;
    p.alpha = a;
    p.rho = r;
    return p;
}

void expect_same_through(const HypersurfaceGraph &a, const HypersurfaceGraph &b, int need)
{
    int n = std::min(a.order(), b.order());
    EXPECT_GE(n, need);
    EXPECT_EQ(a.F.truncate(n), b.F.truncate(n));
}

} // namespace

TEST(Automorphism, ScalingAndIdentity)
{
    auto h = holo_chart();
    Scalar lam = cplx("lambda");
    MapGerm M = flat_automorphism(rp(lam), 6);
    EXPECT_EQ(M.comps[0].truncate(6), Series::variable(h, 0, 6).scale(lam));
    EXPECT_EQ(M.comps[1].truncate(6), Series::variable(h, 1, 6).scale(lam / lam.conj()));
    EXPECT_EQ(M.comps[2].truncate(6), Series::variable(h, 2, 6).scale(lam * lam.conj()));

    MapGerm I = flat_automorphism(rp(Scalar(1)), 6);
    auto id = identity_germ(h, 6);
    for (int k = 0; k < 3; ++k)
        EXPECT_EQ(I.comps[k].truncate(6), id.comps[k].truncate(6));

    EXPECT_THROW(flat_automorphism(rp(Scalar(0)), 4), error);
}

TEST(Automorphism, QuotientOracle)
{
    auto h = holo_chart();
    Scalar a = cplx("alpha");
    Scalar ab = a.conj();
    Series z = Series::variable(h, "z"), zeta = Series::variable(h, "zeta"), w = Series::variable(h, "w");
    int N = 6;
    MapGerm M = flat_automorphism(rp(Scalar(1), a), N);
    // low weights by hand: z' = z - i alpha z^2 - i conj(alpha) w + O(3)
    Series want = z - (z * z).scale(Scalar::i() * a) - w.scale(Scalar::i() * ab);
    EXPECT_EQ(M.comps[0].truncate(2), want.truncate(2));

    // z' D = lambda N etc., multiplied out instead of inverted
    for (auto &p : flat_sample_params()) {
        MapGerm G = flat_automorphism(p, N);
        Scalar l = p.lambda, al = p.alpha, alb = p.alpha.conj(), r = p.rho, I = Scalar::i();
        Series D = Series::constant(h, Scalar(1)) + z.scale(Scalar(2) * I * al) - (z * z).scale(al * al) -
                   (zeta.scale(al * al) + Series::constant(h, -al * alb + I * r)) * w;
        Series n0 = z + (z * z).scale(I * al) + (zeta.scale(I * al) - Series::constant(h, I * alb)) * w;
        Series n1 = zeta + z.scale(Scalar(2) * I * alb) - (z * z).scale(al * alb + I * r) +
                    (Series::constant(h, alb * alb) - zeta.scale(I * r + al * alb)) * w;
        Series n2 = w;
        std::array<Series, 3> nums = {n0.scale(l), n1.scale(l / l.conj()), n2.scale(l * l.conj())};
        for (int k = 0; k < 3; ++k) {
            Series lhs = (G.comps[k] * D).truncate(N);
            EXPECT_EQ(lhs, nums[k].truncate(N)) << p.str() << " component " << k;
        }
    }
}

TEST(Pushforward, FlatInvariance)
{
    auto g = gm_flat_model(8);
    for (auto &p : flat_sample_params()) {
        auto h = pushforward_graph(g, flat_automorphism(p, 8));
        expect_same_through(h, g, 6);
    }
    auto h = pushforward_graph(gm_flat_model(6), flat_automorphism(rp(Scalar(1), Scalar::i()), 6));
    expect_same_through(h, gm_flat_model(6), 6);
}

TEST(Pushforward, Identity)
{
    for (auto g : {thm31_model(8), thm33_model(8), gm_flat_model(7)}) {
        auto h = pushforward_graph(g, identity_germ(holo_chart(), g.order() + 2));
        expect_same_through(h, g, g.order());
    }
}

TEST(Pushforward, Functoriality)
{
    auto g = thm31_model(6);
    auto s = flat_sample_params();
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        MapGerm M1 = flat_automorphism(s[k], 6), M2 = flat_automorphism(s[k + 1], 6);
        auto twice = pushforward_graph(pushforward_graph(g, M1), M2);
        auto once = pushforward_graph(g, compose(M1, M2));
        int n = std::min(twice.order(), once.order());
        EXPECT_GE(n, 6);
        EXPECT_EQ(twice.F.truncate(n), once.F.truncate(n)) << k;
    }
}

TEST(Pushforward, SingularLinearPart)
{
    auto h = holo_chart();
    MapGerm M{h, h, {Series::variable(h, 0, 6), Series::variable(h, 0, 6), Series::variable(h, 2, 6)}};
    EXPECT_THROW(pushforward_graph(gm_flat_model(6), M), error);
}

TEST(Rescaling, WeightOracle)
{
    // u' = |lambda|^2 u and z'^h zeta'^i zb'^j zetab'^k carries lambda^(h+i-k) conj(lambda)^(j+k-i)
    Scalar lam = Scalar(2) + Scalar::i();
    auto f31 = invariant_rescaling(thm31_model(6), rp(lam));
    ASSERT_TRUE(f31.first.factor.has_value());
    EXPECT_EQ(*f31.first.factor, Scalar(1) / lam.conj());
    EXPECT_FALSE(f31.second.factor.has_value());

    auto f33 = invariant_rescaling(thm33_model(6), rp(lam));
    EXPECT_FALSE(f33.first.factor.has_value());
    ASSERT_TRUE(f33.second.factor.has_value());
    EXPECT_EQ(*f33.second.factor, Scalar(1) / lam.pow(3));

    Scalar formal = cplx("lambda");
    auto ff = invariant_rescaling(thm31_model(6), rp(formal));
    ASSERT_TRUE(ff.first.factor.has_value());
    EXPECT_EQ(*ff.first.factor, Scalar(1) / formal.conj());

    auto one = invariant_rescaling(thm33_model(6), rp(Scalar(1)));
    EXPECT_EQ(*one.second.factor, Scalar(1));
}

TEST(Rescaling, FactorsAreUnitsOverSamples)
{
    for (auto &p : flat_sample_params()) {
        auto f = invariant_rescaling(thm31_model(6), p);
        ASSERT_TRUE(f.first.factor.has_value());
        EXPECT_FALSE(f.first.factor->is_zero()) << p.str();
        auto g = invariant_rescaling(thm33_model(6), p);
        ASSERT_TRUE(g.second.factor.has_value());
        EXPECT_FALSE(g.second.factor->is_zero()) << p.str();
    }
}

TEST(Normalize, RoundTrips)
{
    auto g = thm31_model(7);
    auto scaled = pushforward_graph(g, flat_automorphism(rp(Scalar(2)), 7));
    EXPECT_EQ(cr_coeff(scaled.F, 3, 0, 0, 2, 0), Scalar::rational(1, 2));
    auto n = normalize_residuals(scaled);
    EXPECT_EQ(n.branch.kind, Branch::BRANCH_F30020);
    EXPECT_EQ(cr_coeff(n.graph.F, 3, 0, 0, 2, 0), Scalar(1));
    expect_same_through(n.graph, g, 6);

    auto t = thm33_model(7, TableVariant::corrected);
    auto fixed = normalize_residuals(t);
    EXPECT_EQ(fixed.params.lambda, Scalar(1));
    EXPECT_TRUE(fixed.params.alpha.is_zero());
    EXPECT_TRUE(fixed.params.rho.is_zero());
    expect_same_through(fixed.graph, t, 7);

    auto pushed = pushforward_graph(t, flat_automorphism(rp(Scalar(1), Scalar(1) + Scalar::i()), 7));
    EXPECT_FALSE(cr_coeff(pushed.F, 6, 0, 0, 1, 0).is_zero());
    auto back = normalize_residuals(pushed);
    EXPECT_EQ(back.branch.kind, Branch::BRANCH_THETA);
    EXPECT_TRUE(cr_coeff(back.graph.F, 6, 0, 0, 1, 0).is_zero());
    EXPECT_EQ(cr_coeff(back.graph.F, 5, 0, 0, 1, 0), Scalar(1));
    EXPECT_TRUE(cr_coeff(back.graph.F, 4, 0, 3, 0, 0).im().is_zero());

    auto flat = normalize_residuals(gm_flat_model(7));
    EXPECT_EQ(flat.params.lambda, Scalar(1));
    EXPECT_EQ(flat.graph.F, gm_flat_model(7).F);
}

TEST(Normalize, BranchStability)
{
    std::vector<std::pair<HypersurfaceGraph, Branch>> models = {
        {gm_flat_model(7), Branch::FLAT},
        {thm31_model(7), Branch::BRANCH_F30020},
        {thm33_model(7), Branch::BRANCH_THETA}};
    for (auto &[g, b] : models) {
        EXPECT_EQ(classify_by_invariants(g).kind, b);
        for (auto &p : flat_sample_params()) {
            auto h = pushforward_graph(g, flat_automorphism(p, 7));
            EXPECT_EQ(classify_by_invariants(h).kind, b) << g.label << " " << p.str();
        }
    }
}
