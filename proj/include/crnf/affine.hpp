#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "crnf/linsolve.hpp"
#include "crnf/series.hpp"
#include "crnf/solver.hpp"
#include "crnf/symmetry.hpp"

namespace crnf {

// u = F(x, y)
struct AffineGraph {
    Series F;
    std::string label;

    int order() const { return F.order(); }
};

// F_{j,k} in u = sum F_{j,k} x^j y^k / (j! k!)
Scalar affine_coeff(const Series &F, int j, int k);

// X -> linear * X + translation on (x, y, u)
struct AffineMap {
    Matrix linear;
    Vec translation;

    static AffineMap identity();
    static AffineMap from_rows(const std::array<std::array<Scalar, 3>, 3> &rows);
    // this after `first`
    AffineMap after(const AffineMap &first) const;
    std::optional<AffineMap> inverse() const;
    std::string str() const;
};

struct ParabolicReport {
    int order = 0;
    Scalar fxx;         // F_xx(0)
    Series hessian;     // F_xx F_yy - F_xy^2
    Scalar cylindrical; // F_xxy F_xx - F_xxx F_xy at 0
    bool fxx_nonzero = false, hessian_vanishes = false, noncylindrical = false;
    bool partial = false; // order below 3

    bool pass() const { return !partial && fxx_nonzero && hessian_vanishes && noncylindrical; }
};
ParabolicReport parabolic_noncylindrical_check(const AffineGraph &g);

// Five origin-fixing maps whose image stays a graph over (x, y) for the models.
std::vector<AffineMap> affine_sample_maps();

// Graph of the image surface over (x, y). The map must fix the origin.
AffineGraph affine_pushforward(const AffineGraph &g, const AffineMap &m);

struct Prenormalization {
    AffineMap map; // total map applied
    AffineGraph graph;
    std::vector<std::string> log;
};
// u = 1/2 x^2 + 1/2 x^2 y + 1/6 F31 x^3 y + 1/2 x^2 y^2 + O(5)
Prenormalization affine_prenormalize(const AffineGraph &g);

enum class AffineBranchKind { BRANCH3, FLAT, THETA, UNKNOWN };
const char *affine_branch_name(AffineBranchKind k);

struct AffineBranch {
    AffineBranchKind kind = AffineBranchKind::UNKNOWN;
    std::optional<Scalar> theta;
    std::string reason;
};

struct AffineClassification {
    AffineBranch branch;
    AffineMap map;
    AffineGraph normalized;
    std::vector<std::string> log;
};
AffineClassification affine_classify_full(const AffineGraph &g);
inline AffineBranch affine_classify(const AffineGraph &g) { return affine_classify_full(g).branch; }

// "BRANCH3" (order <= 8), "FLAT" (any order), "THETA" (order <= 7, formal theta)
AffineGraph affine_model(const std::string &label, int order);
std::vector<VectorField> affine_model_fields(const std::string &label);
StructureConstants affine_model_table(const std::string &label);
Pins affine_model_pins(const std::string &label);
std::map<std::string, std::string> affine_model_implied(const std::string &label);
int affine_model_order(const std::string &label); // kExact for FLAT

// P d_x + Q d_y + R d_u from component expressions in (x, y, u)
VectorField affine_field(const std::string &P, const std::string &Q, const std::string &R);

// R - P F_x - Q F_y restricted to u = F
Series affine_tangency_residual(const VectorField &X, const AffineGraph &g);

StructureConstants affine_structure(const std::vector<VectorField> &basis);

// (r, t), weights (1, 1)
ChartPtr surface_chart();

struct TubeLift {
    AffineGraph graph;
    AffineMap map;    // ambient change of coordinates used
    int axis = 0;     // ambient coordinate graphed as u
    bool swapped = false; // x and y exchanged so that F_xx(0) != 0
    std::string note;
};
// Components are series in surface_chart() centred at the base point.
TubeLift parametrized_to_graph(const std::array<Series, 3> &comps, int order);
// Expressions in r, t; expanded at (r0, t0). Transcendental functions need t0 = 0.
TubeLift parametrized_to_graph(const std::array<std::string, 3> &comps, const Scalar &r0, const Scalar &t0,
                               int order);

} // namespace crnf
