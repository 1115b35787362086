#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "crnf/symmetry.hpp"

namespace crnf {

// Pins: "F30020" -> value fixes the coefficient, "Im F30210" / "Re F40300"
// fix one real part. Affine pins name F_{jk} of u = sum F_jk x^j y^k/(j! k!).
using Pins = std::map<std::string, std::string>;

struct SolverInconsistency {
    int weight;
    std::vector<std::string> equations;
};

struct GraphSolution {
    // Solved graph; coefficients that stayed free are formal parameters named
    // after their monomial ("F50500_re", ...).
    Series F;
    // every coefficient of weight <= solved_order is a determined constant
    // (free unknowns excepted, see below)
    int solved_order = 0;
    std::vector<int> residual_weights;
    // unresolved real unknowns by weight of their monomial
    std::map<int, std::vector<std::string>> free_unknowns;
    std::vector<SolverInconsistency> inconsistencies;
    // non-numeric pivots met during elimination
    std::vector<Scalar> pivot_conditions;
    std::vector<std::string> log;
    // unknowns outside the graph left undetermined
    std::vector<std::string> free_extra;
    // final values of all determined unknowns
    std::map<std::uint32_t, Scalar> values;

    bool consistent() const { return inconsistencies.empty(); }
};

// Imposes tangency_residual(family, F) = 0 identically in a..e and the top
// block constants, weight by weight, on a normal-form template with unknown
// coefficients from `first_unknown_weight` through max_order.
GraphSolution solve_graph_from_symmetry(const HoloVectorField &family, const Pins &pins, int max_order,
                                        int first_unknown_weight = 3);

struct TopBlockDiff {
    std::string component; // "A", "B" or "C"
    int block;
    std::string param;
    Exp exp; // in (z, zeta, w)
    Scalar derived, printed;
};

struct FieldBlockRederivation {
    GraphSolution solution;
    // re-derived top blocks, one field per family parameter
    std::map<std::string, HoloVectorField> blocks;
    // against the printed top blocks with A004 = B103 = 0
    std::vector<TopBlockDiff> diffs;
    // diffs at coefficients that carry neither A004, B103 nor a free unknown
    std::vector<TopBlockDiff> typos;
    // per direction, the (A004, B103) making the printed blocks match the rest;
    // may contain undetermined field unknowns
    std::map<std::string, std::pair<Scalar, Scalar>> top_constants;
    // equations no choice of A004, B103 satisfies
    std::vector<std::string> constant_conflicts;

    bool pass() const { return solution.consistent() && typos.empty() && constant_conflicts.empty(); }
};

// Same as solve_graph_from_symmetry, but the top printed block of each field
// component (the ones carrying A004, B103) is replaced by unknowns linear in
// a..e and solved together with the graph.
FieldBlockRederivation solve_graph_and_top_blocks(const std::string &model, const Pins &pins, int max_order,
                                                  TableVariant v = TableVariant::printed,
                                                  int first_unknown_weight = 3);

// Affine analogue: every field of `fields` tangent to u = F(x,y); template is
// the preliminary normal form through order 4 with F31 taken from the pins.
GraphSolution solve_affine_graph(const std::vector<VectorField> &fields, const Pins &pins, int max_order);

struct CoefficientDiff {
    Exp exp;
    std::string name;
    Scalar solved, printed;
};
// coefficients of weight lo..hi where a determined solved value differs from
// the printed one
std::vector<CoefficientDiff> table_diff(const Series &solved, const Series &printed, int lo, int hi);

} // namespace crnf
