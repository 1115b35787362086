#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnf/cr.hpp"
#include "crnf/linsolve.hpp"
#include "crnf/series.hpp"

namespace crnf {

// sum_m comps[m] d/d(var m), components over one chart
struct VectorField {
    std::vector<Series> comps;

    const ChartPtr &chart() const { return comps.at(0).chart_ptr(); }
    std::size_t size() const { return comps.size(); }
    const Series &operator[](std::size_t m) const { return comps[m]; }
    // min over components
    int order() const;
    bool is_zero() const;
    VectorField scale(const Scalar &c) const;
    VectorField map_coeffs(const std::function<Scalar(const Scalar &)> &f) const;
    VectorField truncate(int n) const;
    std::string str() const;

    friend VectorField operator+(const VectorField &a, const VectorField &b);
    friend VectorField operator-(const VectorField &a, const VectorField &b);
    friend bool operator==(const VectorField &a, const VectorField &b);
};

// A d_z + B d_zeta + C d_w over holo_chart()
using HoloVectorField = VectorField;

struct FamilyParams {
    Scalar a, b, c, d, e;
    // values for the top-block constants; formal when absent
    std::optional<Scalar> A004, B103;

    static FamilyParams formal();
    static FamilyParams unit(int k);
};

// Printed A/B/C blocks of "thm31" or "thm33", each component truncated at
// `order` (default: everything printed).
HoloVectorField model_symmetry_family(const std::string &model, const FamilyParams &p, int order = kExact,
                                      TableVariant v = TableVariant::printed);

// L applied to -u + F, realified and restricted to u = F.
Series tangency_residual(const HoloVectorField &L, const HypersurfaceGraph &g);

VectorField lie_bracket(const VectorField &X, const VectorField &Y);
// X(f)
Series apply_field(const VectorField &X, const Series &f);

struct LieBasis {
    std::vector<VectorField> fields;
    std::vector<std::string> provenance;
};

// e_k = family at the k-th of (a,..,e) set to 1, the others 0. Each component
// stops below its first block carrying A004 or B103: those constants depend on
// a..e in a way the tables leave open, so e_k is not defined there.
LieBasis model_basis(const std::string &model, TableVariant v = TableVariant::printed);
// last block of component `comp` free of A004/B103 (kExact if none carries them)
int open_block_cut(const std::string &model, std::size_t comp);

struct BracketExpansion {
    int i, j;
    VectorField residual;
    // order through which the expansion was checked
    int checked_order;
    bool in_span;
    std::string note;
};

struct StructureConstants {
    int n = 0;
    // [e_i, e_j] = sum_k c[i][j][k] e_k
    std::vector<std::vector<Vec>> c;
    std::vector<BracketExpansion> expansions;
    // non-numeric pivots met while solving
    std::vector<Scalar> pivot_conditions;

    bool ok() const;
    Vec bracket(const Vec &u, const Vec &v) const;
    std::string entry_str(int i, int j) const;
};

StructureConstants structure_constants(const LieBasis &basis);
// from a printed table {"i,j": "expr in e1..en"}
StructureConstants structure_constants_from_table(int n, const std::map<std::string, std::string> &table);
// Linear combination in e1..en.
Vec parse_combination(const std::string &text, int n);
std::string combination_str(const Vec &v);

struct JacobiReport {
    std::vector<std::string> failures;
    bool antisymmetric = true;
    bool pass() const { return antisymmetric && failures.empty(); }
};
JacobiReport jacobi_check(const StructureConstants &sc);

struct DerivedSeries {
    std::vector<int> dims;
    std::vector<Scalar> pivot_conditions;
};
DerivedSeries derived_series(const StructureConstants &sc);
inline std::vector<int> derived_series_dims(const StructureConstants &sc) { return derived_series(sc).dims; }

struct IdealReport {
    int dim = 0;
    bool abelian = false, ideal = false;
    std::vector<std::string> failures;
    bool pass(int expected_dim) const { return abelian && ideal && dim == expected_dim; }
};
IdealReport abelian_ideal_check(const std::vector<Vec> &candidate, const StructureConstants &sc);

struct RealSpanReport {
    std::vector<Vec> vectors; // (Re c_0, Im c_0, Re c_1, ...)
    int rank = 0;
    int rank_with_i = 0;
    bool pass = false;
};
RealSpanReport maximally_real_check(const std::vector<VectorField> &fields);

struct TubeReport {
    IdealReport ideal;
    RealSpanReport real_span;
    bool pass = false;
};
TubeReport tube_criterion(const LieBasis &basis, const StructureConstants &sc, const std::vector<Vec> &candidate);

VectorField combine(const LieBasis &basis, const Vec &coeffs);

} // namespace crnf
