#pragma once

// Small dense linear algebra for n <= 10: cyclic Jacobi eigen-solver for
// symmetric matrices, Gauss-Jordan inverse, and elimination over jets
// (pivoting on jet values) for the normal-space solve.

#include "conforma/errors.hpp"
#include "conforma/jet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace conforma {

struct DMatrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    DMatrix() = default;
    DMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    static DMatrix identity(int n) {
        DMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

inline DMatrix dmat_mul(const DMatrix& x, const DMatrix& y) {
    DMatrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const double v = x(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
        }
    return r;
}

inline DMatrix dmat_transpose(const DMatrix& x) {
    DMatrix r(x.cols, x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
    return r;
}

struct EigenSym {
    std::vector<double> values; // ascending
    DMatrix vectors;            // column k pairs with values[k]
};

// Cyclic Jacobi with fixed sweep order; deterministic for a given input.
inline EigenSym sym_eigen(const DMatrix& s) {
    const int n = s.rows;
    DMatrix a = s;
    DMatrix v = DMatrix::identity(n);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x) < a(y, y); });
    EigenSym out;
    out.values.resize(n);
    out.vectors = DMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

inline DMatrix dmat_inverse(const DMatrix& m) {
    const int n = m.rows;
    DMatrix a = m;
    DMatrix inv = DMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) < 1e-300)
            throw std::runtime_error("singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const double d = 1.0 / a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) *= d;
            inv(col, j) *= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = a(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

template <int O>
struct JetMatrix {
    int rows = 0, cols = 0;
    std::vector<Jet<O>> a;

    JetMatrix() = default;
    JetMatrix(int r, int c, int nvars)
        : rows(r), cols(c),
          a(static_cast<size_t>(r) * c, Jet<O>::constant(nvars, 0.0)) {}

    Jet<O>& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Jet<O>& operator()(int i, int j) const {
        return a[static_cast<size_t>(i) * cols + j];
    }

    DMatrix values() const {
        DMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).value();
        return m;
    }
};

// Gauss-Jordan inverse over jet arithmetic, pivoting on values.
template <int O>
JetMatrix<O> jet_inverse(const JetMatrix<O>& m, int nvars) {
    const int n = m.rows;
    JetMatrix<O> a = m;
    JetMatrix<O> inv(n, n, nvars);
    for (int i = 0; i < n; ++i) inv(i, i) = Jet<O>::constant(nvars, 1.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a(i, col).value()) > std::abs(a(piv, col).value()))
                piv = i;
        if (std::abs(a(piv, col).value()) < 1e-300)
            throw std::runtime_error("singular jet matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const Jet<O> d = a(col, col).reciprocal();
        for (int j = 0; j < n; ++j) {
            a(col, j) = a(col, j) * d;
            inv(col, j) = inv(col, j) * d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const Jet<O> f = a(i, col);
            if (f.value() == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(i, j) = a(i, j) - f * a(col, j);
                inv(i, j) = inv(i, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

// One-dimensional nullspace of a (cols-1) x cols jet matrix, full pivoting
// on values.  The free coordinate is set to 1; throws DegenerateNormal when
// the system is rank-deficient.
template <int O>
std::vector<Jet<O>> jet_nullspace(JetMatrix<O> m, int nvars) {
    const int rows = m.rows, cols = m.cols;
    double scale = 0.0;
    for (const auto& e : m.a) scale = std::max(scale, std::abs(e.value()));
    std::vector<bool> used(cols, false);
    std::vector<int> pivot_col(rows, -1);
    for (int step = 0; step < rows; ++step) {
        int bi = -1, bj = -1;
        double best = -1.0;
        for (int i = step; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                if (used[j]) continue;
                const double v = std::abs(m(i, j).value());
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (best <= 1e-12 * std::max(scale, 1.0))
            throw DegenerateNormal("tangent system is rank-deficient");
        if (bi != step)
            for (int j = 0; j < cols; ++j) std::swap(m(bi, j), m(step, j));
        used[bj] = true;
        pivot_col[step] = bj;
        const Jet<O> d = m(step, bj).reciprocal();
        for (int j = 0; j < cols; ++j) m(step, j) = m(step, j) * d;
        for (int i = 0; i < rows; ++i) {
            if (i == step) continue;
            const Jet<O> f = m(i, bj);
            if (f.value() == 0.0) continue;
            for (int j = 0; j < cols; ++j) m(i, j) = m(i, j) - f * m(step, j);
        }
    }
    int free_col = -1;
    for (int j = 0; j < cols; ++j)
        if (!used[j]) free_col = j;
    std::vector<Jet<O>> x(cols, Jet<O>::constant(nvars, 0.0));
    x[free_col] = Jet<O>::constant(nvars, 1.0);
    for (int step = 0; step < rows; ++step)
        x[pivot_col[step]] = -m(step, free_col);
    return x;
}

} // namespace conforma
