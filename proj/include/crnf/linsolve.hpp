#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnf/scalar.hpp"

namespace crnf {

using Vec = std::vector<Scalar>;
using Matrix = std::vector<Vec>;

struct RowEchelon {
    Matrix rows;             // reduced rows, pivot entries equal to 1
    std::vector<int> pivots; // pivot column of each row
    // pivots that are not pure numbers, i.e. polynomials in the parameters
    std::vector<Scalar> pivot_conditions;
};

// Reduced row echelon form over the Scalar field. Pivots prefer pure numbers,
// then the smallest polynomial.
RowEchelon row_reduce(Matrix m);
int rank(const Matrix &m);
std::optional<Matrix> inverse(const Matrix &m);
Matrix transpose(const Matrix &m);
// basis of {x : m x = 0}
Matrix nullspace(const Matrix &m);
// is v in the row span of basis?
bool in_span(const Matrix &basis, const Vec &v);

// Sparse affine-linear system sum_j a_ij x_j + b_i = 0.
struct LinearEquation {
    std::map<int, Scalar> coeffs;
    Scalar constant;
    std::string label;
};

struct LinearSolution {
    // unknown -> value in terms of free unknowns (affine combination)
    std::map<int, std::pair<std::map<int, Scalar>, Scalar>> determined;
    std::vector<int> free;
    std::vector<LinearEquation> inconsistent;
    std::vector<Scalar> pivot_conditions;
};

LinearSolution solve_linear(std::vector<LinearEquation> eqs, int nunknowns);

} // namespace crnf
