#pragma once

#include <map>
#include <string>

#include "crnf/scalar.hpp"
#include "crnf/series.hpp"

namespace crnf {

// Parses arithmetic expressions over a chart:
//   numbers, chart variables, i, registered parameter names,
//   + - * / ^ (integer exponents, negative allowed for units), parentheses,
//   exp(.) sin(.) cos(.) of series without constant term.
// Complex shorthands expand to real parameter pairs:
//   A004 = A004_re + i*A004_im, A004b its conjugate; likewise B103, lambda,
//   alpha.
// Division by a non-constant series goes through invert_unit. The result is
// truncated at `order`. Names found in `bindings` take the bound value before
// any other interpretation.
using Bindings = std::map<std::string, Scalar>;
Series parse_series(const std::string &text, const ChartPtr &chart, int order = kExact,
                    const Bindings &bindings = {});

// Chart with no variables, used for scalar parsing.
ChartPtr scalar_chart();

} // namespace crnf
