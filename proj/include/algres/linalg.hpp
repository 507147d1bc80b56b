#pragma once
#include "algres/rational.hpp"

#include <cstddef>
#include <vector>

namespace algres {

using Vec = std::vector<Q>;
using Mat = std::vector<Vec>;

// Reduced row echelon form: pivot entries are 1 and pivot columns are
// otherwise zero.
struct Echelon {
    std::size_t ncols = 0;
    Mat rows;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return pivots.size(); }
    // v minus its row-space part along the pivots; zero on pivot columns.
    Vec reduce(const Vec& v) const;
    bool contains(const Vec& v) const;
    // Columns that carry no pivot, ascending.
    std::vector<std::size_t> free_columns() const;
};

// Pivot columns are tried in col_order (default: ascending).
Echelon rref_serial(Mat m, std::size_t ncols, const std::vector<std::size_t>& col_order = {});
// Same result as rref_serial; row eliminations run under OpenMP.
Echelon rref_parallel(Mat m, std::size_t ncols, const std::vector<std::size_t>& col_order = {});
Echelon rref(Mat m, std::size_t ncols, const std::vector<std::size_t>& col_order = {});

std::size_t rank(const Mat& m, std::size_t ncols);
Mat kernel_basis(const Mat& a, std::size_t ncols);

struct LinearSolution {
    bool feasible = false;
    Vec particular;
    Mat kernel;
};
LinearSolution solve_linear(const Mat& a, const Vec& b);

Vec mat_vec(const Mat& a, const Vec& x);
bool is_zero(const Vec& v);
Mat transpose(const Mat& a, std::size_t ncols);
// Inverse of a square matrix; throws CheckError when singular.
Mat inverse(const Mat& a);

} // namespace algres
