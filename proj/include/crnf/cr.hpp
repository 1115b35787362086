#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnf/expr.hpp"
#include "crnf/series.hpp"

namespace crnf {

// u = F(z, zeta, zb, zetab, v)
struct HypersurfaceGraph {
    Series F;
    std::string label;

    int order() const { return F.order(); }
};

Exp cr_exp(int h, int i, int j, int k, int l);
Scalar cr_coeff(const Series &F, int h, int i, int j, int k, int l);
// "F30020" style name of an exponent in the CR chart
std::string cr_name(Exp e);

// Which printed tables to use. `corrected` applies resources/tables/errata.json
// on top of the printed blocks.
enum class TableVariant { printed, corrected };

// Applies the errata entries for (model, section, block) when v is corrected;
// entries are parsed with the same bindings as the block.
Series apply_errata(Series s, const std::string &model, const std::string &section, const std::string &block,
                    const ChartPtr &chart, TableVariant v, const Bindings &bindings = {});

HypersurfaceGraph gm_flat_model(int order);
HypersurfaceGraph thm31_model(int order = 8, TableVariant v = TableVariant::printed);
HypersurfaceGraph thm33_model(int order = 10, TableVariant v = TableVariant::printed);
// printed weighted blocks F^k, parsed as exact series
std::map<int, Series> model_blocks(const std::string &model, TableVariant v = TableVariant::printed);

struct BlockWeightIssue {
    int block;
    Exp exp;
    int weight;
};
// terms of a printed block F^k whose weight is not k
std::vector<BlockWeightIssue> block_weight_issues(const std::string &model, TableVariant v = TableVariant::printed);

struct RealityViolation {
    Exp exp, mirror;
    Scalar coeff, mirror_coeff;
};
struct RealityReport {
    std::vector<RealityViolation> violations;
    bool pass() const { return violations.empty(); }
};
RealityReport reality_check(const HypersurfaceGraph &g);

struct NormalFormFailure {
    std::string condition;
    Exp exp;
    Scalar expected, found;
};
struct NormalFormReport {
    std::vector<NormalFormFailure> failures;
    bool pass() const { return failures.empty(); }
};
NormalFormReport normal_form_check(const HypersurfaceGraph &g);
// value forced on the coefficient of e by the normal form, if any
std::optional<Scalar> normal_form_value(Exp e);

struct InvariantProfile {
    static constexpr std::array<const char *, 6> names = {"F30020", "F50010", "F30210", "F40300", "F40020", "F60010"};
    // absent when the graph's order is too low
    std::array<std::optional<Scalar>, 6> values;

    const std::optional<Scalar> &get(const std::string &name) const;
};
InvariantProfile extract_invariants(const HypersurfaceGraph &g);

enum class Branch { FLAT, BRANCH_F30020, BRANCH_THETA, UNKNOWN };
const char *branch_name(Branch b);

struct BranchLabel {
    Branch kind = Branch::UNKNOWN;
    std::string reason;
    std::optional<Scalar> witness;
};
// Requires normal form.
BranchLabel classify_branch(const HypersurfaceGraph &g);
// Same decision from the zero pattern of F30020 and F50010 only.
BranchLabel classify_by_invariants(const HypersurfaceGraph &g);

} // namespace crnf
