#include <gtest/gtest.h>

#include <set>

#include "crnf/expr.hpp"
#include "crnf/solver.hpp"
#include "crnf/tables.hpp"
#include "rand.hpp"

using namespace crnf;

namespace {

Pins pins_of(const std::string &model) { return load_table(model + ".json")["pins"].get<Pins>(); }

std::set<std::string> diff_names(const std::vector<CoefficientDiff> &d)
{
    std::set<std::string> out;
    for (auto &x : d)
        out.insert(x.name);
    return out;
}

bool carries_theta_squared(const Scalar &s)
{
    for (auto &t : s.num().terms())
        if (t.first.exponent(param("theta")) == 2)
            return true;
    return false;
}

} // namespace

TEST(Solver, Thm31LowOrders)
{
    auto fam = model_symmetry_family("thm31", FamilyParams::formal());
    auto sol = solve_graph_from_symmetry(fam, pins_of("thm31"), 5);
    EXPECT_TRUE(sol.consistent());
    EXPECT_EQ(sol.F.weighted_component(5),
              parse_series("z^3*zetab^2 + zeta^2*zb^3 + 1/2*z^2*zeta*zetab^2 + 1/2*zeta^2*zb^2*zetab", cr_chart()));
}

TEST(Solver, Thm31ReproducesTables)
{
    auto fam = model_symmetry_family("thm31", FamilyParams::formal());
    auto sol = solve_graph_from_symmetry(fam, pins_of("thm31"), 8);
    EXPECT_TRUE(sol.consistent());
    EXPECT_TRUE(sol.free_unknowns.empty());
    EXPECT_GE(sol.solved_order, 8);
    EXPECT_TRUE(table_diff(sol.F, thm31_model(8).F, 5, 8).empty());
    EXPECT_EQ(sol.F.truncate(8), thm31_model(8).F);
}

TEST(Solver, Thm33Order6)
{
    auto fam = model_symmetry_family("thm33", FamilyParams::formal());
    auto sol = solve_graph_from_symmetry(fam, pins_of("thm33"), 6);
    EXPECT_TRUE(sol.consistent());
    EXPECT_EQ(cr_coeff(sol.F, 3, 0, 2, 1, 0), Scalar(-15));
    EXPECT_EQ(cr_coeff(sol.F, 5, 0, 0, 1, 0), Scalar(1));
}

TEST(Solver, Thm33PrintedDiff)
{
    auto j = solve_graph_and_top_blocks("thm33", pins_of("thm33"), 10);
    EXPECT_TRUE(j.solution.consistent());
    EXPECT_TRUE(j.constant_conflicts.empty());
    auto d = table_diff(j.solution.F, thm33_model(10).F, 5, 10);
    std::set<std::string> want = {"F21320", "F60011", "F32400", "F32040", "F22500", "F22320", "F22050",
                                  "F02700", "F02070", "F72100", "F70120", "F62200", "F60220", "F60021",
                                  "F52300", "F52030", "F50320", "F42400", "F40420", "F33220", "F32500",
                                  "F30520", "F30250", "F21700", "F21070"};
    EXPECT_EQ(diff_names(d), want);
    for (auto &x : d)
        if (x.name == "F22320") {
            EXPECT_EQ(x.solved, Scalar(-165));
            EXPECT_EQ(x.printed, Scalar(-185));
        }
    ASSERT_EQ(j.typos.size(), 2u);
    for (auto &t : j.typos) {
        EXPECT_EQ(t.component, "B");
        EXPECT_EQ(t.block, 7);
        EXPECT_EQ(t.derived, t.printed * Scalar(5));
    }
    EXPECT_EQ(cr_coeff(j.solution.F, 3, 0, 2, 1, 0), Scalar(-15));
}

TEST(Solver, Thm33CorrectedVariant)
{
    auto j = solve_graph_and_top_blocks("thm33", pins_of("thm33"), 10, TableVariant::corrected);
    EXPECT_TRUE(j.pass());
    auto printed = thm33_model(10, TableVariant::corrected);
    EXPECT_TRUE(table_diff(j.solution.F, printed.F, 5, 10).empty());
    // theta^2 enters from F^9 on, at the same coefficients as in the tables
    std::set<std::string> solved_sq, printed_sq;
    for (const Term &t : j.solution.F.terms())
        if (carries_theta_squared(t.coeff))
            solved_sq.insert(cr_name(t.exp));
    for (const Term &t : printed.F.terms())
        if (carries_theta_squared(t.coeff)) {
            printed_sq.insert(cr_name(t.exp));
            EXPECT_GE(printed.F.weight(t.exp), 9);
        }
    EXPECT_FALSE(printed_sq.empty());
    EXPECT_EQ(solved_sq, printed_sq);

    // F50500 is left open at this order
    Scalar f = cr_coeff(j.solution.F, 5, 0, 5, 0, 0);
    EXPECT_FALSE(f.is_number());
}

TEST(Solver, IndependentTopConstantsAreInconsistent)
{
    auto fam = model_symmetry_family("thm33", FamilyParams::formal());
    auto sol = solve_graph_from_symmetry(fam, pins_of("thm33"), 10);
    EXPECT_FALSE(sol.consistent());
    ASSERT_FALSE(sol.inconsistencies.empty());
    EXPECT_EQ(sol.inconsistencies.front().weight, 9);
}

TEST(Solver, TableDiffOracle)
{
    auto c = cr_chart();
    Series a = parse_series("z*zb + 2*z^3*zetab^2 + zeta^2*zb^3", c, 6);
    Series b = parse_series("z*zb + 3*z^3*zetab^2 + zeta^2*zb^3 + z^6*zetab", c, 8);
    auto d = table_diff(a, b, 2, 6);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].name, "F30020");
    EXPECT_EQ(d[0].solved, Scalar(2));
    EXPECT_EQ(d[0].printed, Scalar(3));
}
