#include "crnf/linsolve.hpp"

#include <algorithm>

namespace crnf {

namespace {

// smaller is a better pivot
std::pair<int, std::size_t> pivot_cost(const Scalar &s)
{
    if (s.is_number())
        return {0, 0};
    std::size_t size = s.num().terms().size();
    for (auto &[f, k] : s.den_atoms())
        size += f.terms().size();
    return {1, size};
}

} // namespace

RowEchelon row_reduce(Matrix m)
{
    RowEchelon r;
    if (m.empty())
        return r;
    std::size_t ncols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::optional<std::size_t> best;
        for (std::size_t i = row; i < m.size(); ++i) {
            if (m[i][col].is_zero())
                continue;
            if (!best || pivot_cost(m[i][col]) < pivot_cost(m[*best][col]))
                best = i;
        }
        if (!best)
            continue;
        std::swap(m[row], m[*best]);
        Scalar p = m[row][col];
        if (!p.is_number())
            r.pivot_conditions.push_back(p);
        for (std::size_t j = col; j < ncols; ++j)
            if (!m[row][j].is_zero())
                m[row][j] /= p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col].is_zero())
                continue;
            Scalar f = m[i][col];
            for (std::size_t j = col; j < ncols; ++j)
                if (!m[row][j].is_zero())
                    m[i][j] -= f * m[row][j];
        }
        r.pivots.push_back(static_cast<int>(col));
        ++row;
    }
    m.resize(row);
    r.rows = std::move(m);
    return r;
}

int rank(const Matrix &m) { return static_cast<int>(row_reduce(m).pivots.size()); }

std::optional<Matrix> inverse(const Matrix &m)
{
    std::size_t n = m.size();
    Matrix a(n, Vec(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n)
            throw error(errc::bad_input, "inverse of a non-square matrix");
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = m[i][j];
        a[i][n + i] = Scalar(1);
    }
    auto r = row_reduce(std::move(a));
    if (r.pivots.size() != n || (n > 0 && r.pivots.back() != static_cast<int>(n) - 1))
        return std::nullopt;
    Matrix inv(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = r.rows[i][n + j];
    return inv;
}

Matrix transpose(const Matrix &m)
{
    if (m.empty())
        return {};
    Matrix t(m[0].size(), Vec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

Matrix nullspace(const Matrix &m)
{
    if (m.empty())
        return {};
    std::size_t ncols = m[0].size();
    auto r = row_reduce(m);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : r.pivots)
        is_pivot[static_cast<std::size_t>(p)] = true;
    Matrix basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f])
            continue;
        Vec v(ncols);
        v[f] = Scalar(1);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            v[static_cast<std::size_t>(r.pivots[i])] = -r.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_span(const Matrix &basis, const Vec &v)
{
    int r0 = rank(basis);
    Matrix ext = basis;
    ext.push_back(v);
    return rank(ext) == r0;
}

LinearSolution solve_linear(std::vector<LinearEquation> eqs, int nunknowns)
{
    LinearSolution sol;
    // Gauss-Jordan on sparse rows.
    std::vector<LinearEquation> pivots_rows;
    std::vector<int> pivot_col;
    for (auto &eq : eqs) {
        // reduce against existing pivots
        for (std::size_t k = 0; k < pivots_rows.size(); ++k) {
            auto it = eq.coeffs.find(pivot_col[k]);
            if (it == eq.coeffs.end())
                continue;
            Scalar f = it->second;
            for (auto &[j, c] : pivots_rows[k].coeffs) {
                Scalar v = eq.coeffs[j] - f * c;
                if (v.is_zero())
                    eq.coeffs.erase(j);
                else
                    eq.coeffs[j] = std::move(v);
            }
            eq.constant -= f * pivots_rows[k].constant;
        }
        if (eq.coeffs.empty()) {
            if (!eq.constant.is_zero())
                sol.inconsistent.push_back(eq);
            continue;
        }
        // choose pivot column
        int best = -1;
        std::pair<int, std::size_t> best_cost{2, 0};
        for (auto &[j, c] : eq.coeffs) {
            auto cost = pivot_cost(c);
            if (best < 0 || cost < best_cost) {
                best = j;
                best_cost = cost;
            }
        }
        Scalar p = eq.coeffs[best];
        if (!p.is_number())
            sol.pivot_conditions.push_back(p);
        for (auto &[j, c] : eq.coeffs)
            c /= p;
        eq.constant /= p;
        // eliminate from previous pivot rows
        for (std::size_t k = 0; k < pivots_rows.size(); ++k) {
            auto it = pivots_rows[k].coeffs.find(best);
            if (it == pivots_rows[k].coeffs.end())
                continue;
            Scalar f = it->second;
            for (auto &[j, c] : eq.coeffs) {
                Scalar v = pivots_rows[k].coeffs[j] - f * c;
                if (v.is_zero())
                    pivots_rows[k].coeffs.erase(j);
                else
                    pivots_rows[k].coeffs[j] = std::move(v);
            }
            pivots_rows[k].constant -= f * eq.constant;
        }
        pivots_rows.push_back(std::move(eq));
        pivot_col.push_back(best);
    }
    std::vector<bool> is_pivot(static_cast<std::size_t>(nunknowns), false);
    for (int c : pivot_col)
        is_pivot[static_cast<std::size_t>(c)] = true;
    for (int j = 0; j < nunknowns; ++j)
        if (!is_pivot[static_cast<std::size_t>(j)])
            sol.free.push_back(j);
    for (std::size_t k = 0; k < pivots_rows.size(); ++k) {
        std::map<int, Scalar> rest;
        for (auto &[j, c] : pivots_rows[k].coeffs)
            if (j != pivot_col[k])
                rest[j] = -c;
        sol.determined[pivot_col[k]] = {std::move(rest), -pivots_rows[k].constant};
    }
    return sol;
}

} // namespace crnf
