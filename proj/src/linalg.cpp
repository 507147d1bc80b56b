#include "algres/linalg.hpp"
#include "algres/error.hpp"

#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace algres {

Vec Echelon::reduce(const Vec& v) const {
    Vec r = v;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        Q f = r[pivots[i]];
        if (f == 0) continue;
        const Vec& row = rows[i];
        for (std::size_t c = 0; c < ncols; ++c)
            if (row[c] != 0) r[c] -= f * row[c];
    }
    return r;
}

bool Echelon::contains(const Vec& v) const { return is_zero(reduce(v)); }

std::vector<std::size_t> Echelon::free_columns() const {
    std::vector<bool> piv(ncols, false);
    for (auto p : pivots) piv[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < ncols; ++c)
        if (!piv[c]) out.push_back(c);
    return out;
}

namespace {

std::size_t cost(const Q& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

std::vector<std::size_t> order_or_default(const std::vector<std::size_t>& col_order, std::size_t n) {
    if (!col_order.empty()) return col_order;
    std::vector<std::size_t> o(n);
    std::iota(o.begin(), o.end(), 0);
    return o;
}

// Cheapest nonzero entry in column c among rows [from, m.size()).
long pick_pivot(const Mat& m, std::size_t from, std::size_t c) {
    long best = -1;
    std::size_t best_cost = 0;
    for (std::size_t r = from; r < m.size(); ++r) {
        if (m[r][c] == 0) continue;
        std::size_t k = cost(m[r][c]);
        if (best < 0 || k < best_cost) {
            best = static_cast<long>(r);
            best_cost = k;
        }
    }
    return best;
}

void normalize_pivot_row(Vec& row, std::size_t c, std::size_t ncols) {
    Q inv = 1 / row[c];
    for (std::size_t k = 0; k < ncols; ++k)
        if (row[k] != 0) row[k] *= inv;
}

void eliminate_row(Vec& row, const Vec& prow, std::size_t c, std::size_t ncols) {
    Q f = row[c];
    if (f == 0) return;
    for (std::size_t k = 0; k < ncols; ++k)
        if (prow[k] != 0) row[k] -= f * prow[k];
}

Echelon finish(Mat& m, std::size_t rank, std::size_t ncols, std::vector<std::size_t>& pivots) {
    Echelon e;
    e.ncols = ncols;
    m.resize(rank);
    e.rows = std::move(m);
    e.pivots = std::move(pivots);
    return e;
}

} // namespace

Echelon rref_serial(Mat m, std::size_t ncols, const std::vector<std::size_t>& col_order) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c : order_or_default(col_order, ncols)) {
        if (r == m.size()) break;
        long p = pick_pivot(m, r, c);
        if (p < 0) continue;
        std::swap(m[r], m[static_cast<std::size_t>(p)]);
        normalize_pivot_row(m[r], c, ncols);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r) eliminate_row(m[i], m[r], c, ncols);
        pivots.push_back(c);
        ++r;
    }
    return finish(m, r, ncols, pivots);
}

Echelon rref_parallel(Mat m, std::size_t ncols, const std::vector<std::size_t>& col_order) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const long nrows = static_cast<long>(m.size());
    const bool big = m.size() * ncols > 2048;
    for (std::size_t c : order_or_default(col_order, ncols)) {
        if (r == m.size()) break;
        long p = pick_pivot(m, r, c);
        if (p < 0) continue;
        std::swap(m[r], m[static_cast<std::size_t>(p)]);
        normalize_pivot_row(m[r], c, ncols);
        const Vec& prow = m[r];
        const long pr = static_cast<long>(r);
#pragma omp parallel for schedule(static) if (big)
        for (long i = 0; i < nrows; ++i)
            if (i != pr) eliminate_row(m[static_cast<std::size_t>(i)], prow, c, ncols);
        pivots.push_back(c);
        ++r;
    }
    return finish(m, r, ncols, pivots);
}

Echelon rref(Mat m, std::size_t ncols, const std::vector<std::size_t>& col_order) {
    return rref_parallel(std::move(m), ncols, col_order);
}

std::size_t rank(const Mat& m, std::size_t ncols) { return rref(m, ncols).rank(); }

Mat kernel_basis(const Mat& a, std::size_t ncols) {
    Echelon e = rref(a, ncols);
    Mat out;
    for (std::size_t f : e.free_columns()) {
        Vec v(ncols, Q(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

LinearSolution solve_linear(const Mat& a, const Vec& b) {
    std::size_t n = a.empty() ? 0 : a[0].size();
    if (a.size() != b.size()) throw CheckError("solve_linear: row count mismatch");
    Mat aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Vec row = a[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // The augmented column goes last so it is pivoted only when infeasible.
    order.push_back(n);
    Echelon e = rref(aug, n + 1, order);
    LinearSolution s;
    for (std::size_t p : e.pivots)
        if (p == n) return s;
    s.feasible = true;
    s.particular.assign(n, Q(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) s.particular[e.pivots[i]] = e.rows[i][n];
    std::vector<bool> piv(n, false);
    for (auto p : e.pivots) piv[p] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (piv[f]) continue;
        Vec v(n, Q(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
        s.kernel.push_back(std::move(v));
    }
    return s;
}

Vec mat_vec(const Mat& a, const Vec& x) {
    Vec out(a.size(), Q(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (a[i][j] != 0 && x[j] != 0) out[i] += a[i][j] * x[j];
    return out;
}

bool is_zero(const Vec& v) {
    for (const auto& q : v)
        if (q != 0) return false;
    return true;
}

Mat transpose(const Mat& a, std::size_t ncols) {
    Mat t(ncols, Vec(a.size(), Q(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < ncols; ++j) t[j][i] = a[i][j];
    return t;
}

Mat inverse(const Mat& a) {
    std::size_t n = a.size();
    Mat aug(n, Vec(2 * n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Echelon e = rref(aug, 2 * n, order);
    if (e.rank() < n || e.pivots.back() >= n) throw CheckError("inverse: singular matrix");
    Mat inv(n, Vec(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[e.pivots[i]][j] = e.rows[i][n + j];
    return inv;
}

} // namespace algres
