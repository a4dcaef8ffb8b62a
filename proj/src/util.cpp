#include "toric/util.hpp"

#include <cmath>

namespace toric {

double Rot::angle() const {
    return 2.0 * 3.14159265358979323846 * rot_to_double(*this);
}

namespace {

using Mat = std::vector<std::vector<Int>>;

Mat identity(std::size_t n) {
    Mat m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void row_op(Mat& a, Mat& u, std::size_t i, std::size_t j, const Int& k) {
    // row_i += k * row_j
    for (std::size_t c = 0; c < a[i].size(); ++c) a[i][c] += k * a[j][c];
    for (std::size_t c = 0; c < u[i].size(); ++c) u[i][c] += k * u[j][c];
}

void col_op(Mat& a, Mat& v, std::size_t i, std::size_t j, const Int& k) {
    // col_i += k * col_j
    for (auto& row : a) row[i] += k * row[j];
    for (auto& row : v) row[i] += k * row[j];
}

void row_swap(Mat& a, Mat& u, std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
}

void col_swap(Mat& a, Mat& v, std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
}

}  // namespace

Snf smith_normal_form(Mat a) {
    std::size_t r = a.size();
    std::size_t c = r ? a[0].size() : 0;
    Mat u = identity(r), v = identity(c);
    std::size_t t = 0;
    while (t < r && t < c) {
        // find a nonzero pivot of minimal absolute value in the trailing block
        std::size_t pi = t, pj = t;
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (a[i][j] != 0 && (!found || boost::multiprecision::abs(a[i][j]) < best)) {
                    best = boost::multiprecision::abs(a[i][j]);
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        row_swap(a, u, t, pi);
        col_swap(a, v, t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < r; ++i)
                if (a[i][t] != 0) {
                    Int q = a[i][t] / a[t][t];
                    row_op(a, u, i, t, -q);
                    if (a[i][t] != 0) {
                        row_swap(a, u, t, i);
                        clean = false;
                    }
                }
            for (std::size_t j = t + 1; j < c; ++j)
                if (a[t][j] != 0) {
                    Int q = a[t][j] / a[t][t];
                    col_op(a, v, j, t, -q);
                    if (a[t][j] != 0) {
                        col_swap(a, v, t, j);
                        clean = false;
                    }
                }
        }
        // enforce divisibility d_t | trailing entries
        bool redo = false;
        for (std::size_t i = t + 1; i < r && !redo; ++i)
            for (std::size_t j = t + 1; j < c && !redo; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_op(a, u, t, i, 1);
                    redo = true;
                }
        if (redo) continue;
        if (a[t][t] < 0) {
            for (std::size_t j = 0; j < c; ++j) a[t][j] = -a[t][j];
            for (std::size_t j = 0; j < r; ++j) u[t][j] = -u[t][j];
        }
        ++t;
    }
    return Snf{a, u, v};
}

bool solve_linear_mod(const Mat& m, const std::vector<Int>& c, const Int& n,
                      std::vector<Int>& y) {
    // Solve m * y = c (mod n) for y.  m is k x r.
    std::size_t k = m.size();
    std::size_t r = k ? m[0].size() : 0;
    if (r == 0) {
        for (const auto& ci : c)
            if (mod_floor(ci, n) != 0) return false;
        y.clear();
        return true;
    }
    Snf s = smith_normal_form(m);
    // m = u^{-1} d v^{-1};  m y = c  <=>  d (v^{-1} y) = u c.
    std::vector<Int> uc(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) uc[i] += s.u[i][j] * c[j];
    std::vector<Int> z(r, 0);
    for (std::size_t i = 0; i < std::min(k, r); ++i) {
        Int d = s.d[i][i];
        Int rhs = mod_floor(uc[i], n);
        if (d == 0) {
            if (rhs != 0) return false;
            z[i] = 0;
            continue;
        }
        Int g = boost::multiprecision::gcd(d, n);
        if (rhs % g != 0) return false;
        // d z = rhs (mod n): z = (rhs/g) * inv(d/g) mod n/g
        Int n2 = n / g;
        z[i] = n2 == 1 ? 0 : mod_floor((rhs / g) * inv_mod(d / g, n2), n2);
    }
    for (std::size_t i = std::min(k, r); i < k; ++i)
        if (mod_floor(uc[i], n) != 0) return false;
    y.assign(r, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) y[i] += s.v[i][j] * z[j];
    for (auto& yi : y) yi = mod_floor(yi, n);
    return true;
}

}  // namespace toric
