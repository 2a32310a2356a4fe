#pragma once

// Truncated multivariate Taylor arithmetic up to order 4 over m <= 8
// variables.  A Jet<K> carries the value and all partial derivatives of a
// scalar expression through order K at one point; arithmetic propagates them
// by the Leibniz rule and composition by the Faa di Bruno expansion.
//
// Symmetric derivative arrays are stored canonically: one entry per
// non-decreasing multi-index, so d3[i][j][k] is structurally identical for
// all orderings of (i,j,k).

#include "conforma/errors.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

namespace conforma {

inline constexpr int kMaxJetVars = 8;
inline constexpr int kMaxJetOrder = 4;

namespace jet_detail {

inline int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    static const auto table = [] {
        std::array<std::array<int, 16>, 16> c{};
        for (int i = 0; i < 16; ++i) {
            c[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
        }
        return c;
    }();
    return table[n][k];
}

// Number of canonical multi-indices of the given order over m variables.
inline int sym_size(int m, int order) { return binom(m + order - 1, order); }

// Rank of a non-decreasing multi-index in the canonical enumeration.
inline int sym_rank(std::span<const int> idx) {
    int r = 0;
    for (size_t t = 0; t < idx.size(); ++t)
        r += binom(idx[t] + static_cast<int>(t), static_cast<int>(t) + 1);
    return r;
}

// Calls fn(idx) for every non-decreasing multi-index of the given order,
// in canonical (rank) order.
template <class Fn>
void for_each_index(int m, int order, Fn&& fn) {
    std::array<int, kMaxJetOrder> idx{};
    switch (order) {
    case 1:
        for (idx[0] = 0; idx[0] < m; ++idx[0])
            fn(std::span<const int>(idx.data(), 1));
        break;
    case 2:
        for (idx[1] = 0; idx[1] < m; ++idx[1])
            for (idx[0] = 0; idx[0] <= idx[1]; ++idx[0])
                fn(std::span<const int>(idx.data(), 2));
        break;
    case 3:
        for (idx[2] = 0; idx[2] < m; ++idx[2])
            for (idx[1] = 0; idx[1] <= idx[2]; ++idx[1])
                for (idx[0] = 0; idx[0] <= idx[1]; ++idx[0])
                    fn(std::span<const int>(idx.data(), 3));
        break;
    case 4:
        for (idx[3] = 0; idx[3] < m; ++idx[3])
            for (idx[2] = 0; idx[2] <= idx[3]; ++idx[2])
                for (idx[1] = 0; idx[1] <= idx[2]; ++idx[1])
                    for (idx[0] = 0; idx[0] <= idx[1]; ++idx[0])
                        fn(std::span<const int>(idx.data(), 4));
        break;
    default:
        assert(order >= 1 && order <= kMaxJetOrder);
    }
}

// The iteration above fills ranks 0,1,2,... consecutively; checked in tests.

} // namespace jet_detail

template <int Order>
class Jet {
    static_assert(Order >= 0 && Order <= kMaxJetOrder);

public:
    Jet() = default;

    static Jet constant(int nvars, double value) {
        Jet j;
        j.init(nvars);
        j.val_ = value;
        return j;
    }

    // Jet of the coordinate function u_index at the point.
    static Jet seed(std::span<const double> point, int index) {
        const int m = static_cast<int>(point.size());
        if (index < 0 || index >= m)
            throw std::out_of_range("jet seed index " + std::to_string(index) +
                                    " out of range for " + std::to_string(m) +
                                    " variables");
        Jet j;
        j.init(m);
        j.val_ = point[index];
        if constexpr (Order >= 1) j.d_[0][index] = 1.0;
        return j;
    }

    int vars() const { return nvars_; }
    double value() const { return val_; }

    // Partial derivative for an arbitrary multi-index (any argument order).
    double deriv(std::span<const int> idx) const {
        const int k = static_cast<int>(idx.size());
        if (k == 0) return val_;
        assert(k <= Order);
        std::array<int, kMaxJetOrder> s{};
        for (int t = 0; t < k; ++t) s[t] = idx[t];
        std::sort(s.begin(), s.begin() + k);
        return d_[k - 1][jet_detail::sym_rank(std::span<const int>(s.data(), k))];
    }

    double d1(int i) const { return at({i}); }
    double d2(int i, int j) const { return at({i, j}); }
    double d3(int i, int j, int k) const { return at({i, j, k}); }
    double d4(int i, int j, int k, int l) const { return at({i, j, k, l}); }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r = a;
        r.val_ += b.val_;
        for (int k = 0; k < Order; ++k)
            for (size_t t = 0; t < r.d_[k].size(); ++t) r.d_[k][t] += b.d_[k][t];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r = a;
        r.val_ -= b.val_;
        for (int k = 0; k < Order; ++k)
            for (size_t t = 0; t < r.d_[k].size(); ++t) r.d_[k][t] -= b.d_[k][t];
        return r;
    }

    friend Jet operator-(const Jet& a) { return a * -1.0; }

    friend Jet operator*(const Jet& a, double c) {
        Jet r = a;
        r.val_ *= c;
        for (int k = 0; k < Order; ++k)
            for (double& v : r.d_[k]) v *= c;
        return r;
    }
    friend Jet operator*(double c, const Jet& a) { return a * c; }

    friend Jet operator+(const Jet& a, double c) {
        Jet r = a;
        r.val_ += c;
        return r;
    }
    friend Jet operator+(double c, const Jet& a) { return a + c; }
    friend Jet operator-(const Jet& a, double c) { return a + (-c); }
    friend Jet operator-(double c, const Jet& a) { return (a * -1.0) + c; }
    friend Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }

    // Leibniz product: d^I(ab) = sum over position subsets S of I of
    // d^S(a) d^{I\S}(b).  A subsequence of a sorted tuple stays sorted, so
    // every lookup is a direct rank access.
    friend Jet operator*(const Jet& a, const Jet& b) {
        assert(a.nvars_ == b.nvars_);
        Jet r;
        r.init(a.nvars_);
        r.val_ = a.val_ * b.val_;
        for (int k = 1; k <= Order; ++k) {
            auto& out = r.d_[k - 1];
            int rank = 0;
            jet_detail::for_each_index(a.nvars_, k, [&](std::span<const int> idx) {
                double acc = 0.0;
                std::array<int, kMaxJetOrder> ia{}, ib{};
                for (unsigned mask = 0; mask < (1u << k); ++mask) {
                    int na = 0, nb = 0;
                    for (int t = 0; t < k; ++t) {
                        if (mask & (1u << t)) ia[na++] = idx[t];
                        else ib[nb++] = idx[t];
                    }
                    acc += a.deriv_sorted(ia.data(), na) *
                           b.deriv_sorted(ib.data(), nb);
                }
                out[rank++] = acc;
            });
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.val_ == 0.0) throw DegenerateEvaluation("div", 0.0);
        return a * b.reciprocal();
    }

    friend Jet operator/(double c, const Jet& b) {
        if (b.val_ == 0.0) throw DegenerateEvaluation("div", 0.0);
        return b.reciprocal() * c;
    }

    // Composition f(a) from the derivative tower f, f', ..., f^(Order) at
    // a.value().  Terms follow the set partitions of the target multi-index:
    // one f^(#blocks) per partition, times the block derivatives of a.
    Jet compose(std::span<const double> tower) const {
        assert(static_cast<int>(tower.size()) >= Order + 1);
        Jet r;
        r.init(nvars_);
        r.val_ = tower[0];
        if constexpr (Order >= 1) {
            int rank = 0;
            jet_detail::for_each_index(nvars_, 1, [&](std::span<const int> idx) {
                r.d_[0][rank++] = tower[1] * deriv(idx);
            });
        }
        if constexpr (Order >= 2) {
            int rank = 0;
            jet_detail::for_each_index(nvars_, 2, [&](std::span<const int> idx) {
                const int i = idx[0], j = idx[1];
                r.d_[1][rank++] = tower[2] * at({i}) * at({j}) + tower[1] * at({i, j});
            });
        }
        if constexpr (Order >= 3) {
            int rank = 0;
            jet_detail::for_each_index(nvars_, 3, [&](std::span<const int> idx) {
                const int i = idx[0], j = idx[1], k = idx[2];
                const double ai = at({i}), aj = at({j}), ak = at({k});
                double v = tower[3] * ai * aj * ak;
                v += tower[2] *
                     (at({i, j}) * ak + at({i, k}) * aj + at({j, k}) * ai);
                v += tower[1] * at({i, j, k});
                r.d_[2][rank++] = v;
            });
        }
        if constexpr (Order >= 4) {
            int rank = 0;
            jet_detail::for_each_index(nvars_, 4, [&](std::span<const int> idx) {
                const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
                const double ai = at({i}), aj = at({j}), ak = at({k}), al = at({l});
                const double aij = at({i, j}), aik = at({i, k}), ail = at({i, l});
                const double ajk = at({j, k}), ajl = at({j, l}), akl = at({k, l});
                double v = tower[4] * ai * aj * ak * al;
                v += tower[3] * (aij * ak * al + aik * aj * al + ail * aj * ak +
                                 ajk * ai * al + ajl * ai * ak + akl * ai * aj);
                v += tower[2] * (aij * akl + aik * ajl + ail * ajk +
                                 at({i, j, k}) * al + at({i, j, l}) * ak +
                                 at({i, k, l}) * aj + at({j, k, l}) * ai);
                v += tower[1] * at({i, j, k, l});
                r.d_[3][rank++] = v;
            });
        }
        return r;
    }

    Jet reciprocal() const {
        if (val_ == 0.0) throw DegenerateEvaluation("reciprocal", 0.0);
        const double x = val_;
        const std::array<double, 5> tower = {1.0 / x, -1.0 / (x * x),
                                             2.0 / (x * x * x),
                                             -6.0 / (x * x * x * x),
                                             24.0 / (x * x * x * x * x)};
        return compose(tower);
    }

private:
    friend class JetAccess;
    template <int O> friend class Jet;

    void init(int nvars) {
        assert(nvars >= 1 && nvars <= kMaxJetVars);
        nvars_ = nvars;
        for (int k = 1; k <= Order; ++k)
            d_[k - 1].assign(jet_detail::sym_size(nvars, k), 0.0);
    }

    double at(std::initializer_list<int> idx) const {
        return deriv(std::span<const int>(idx.begin(), idx.size()));
    }

    double deriv_sorted(const int* idx, int k) const {
        if (k == 0) return val_;
        return d_[k - 1][jet_detail::sym_rank(std::span<const int>(idx, static_cast<size_t>(k)))];
    }

    int nvars_ = 0;
    double val_ = 0.0;
    std::array<std::vector<double>, static_cast<size_t>(Order)> d_{};

    template <int To, int From>
    friend Jet<To> truncate(const Jet<From>& a);
    template <int From>
    friend Jet<From - 1> derivative(const Jet<From>& a, int i);
};

using Jet4 = Jet<4>;
using Jet3 = Jet<3>;
using Jet2 = Jet<2>;

template <int To, int From>
Jet<To> truncate(const Jet<From>& a) {
    static_assert(To <= From);
    Jet<To> r;
    r.init(a.vars());
    r.val_ = a.value();
    for (int k = 1; k <= To; ++k) r.d_[k - 1] = a.d_[k - 1];
    return r;
}

// The jet of the partial derivative d_i(a), one order lower.
template <int From>
Jet<From - 1> derivative(const Jet<From>& a, int i) {
    static_assert(From >= 1);
    Jet<From - 1> r;
    r.init(a.vars());
    std::array<int, kMaxJetOrder> buf{};
    buf[0] = i;
    r.val_ = a.deriv(std::span<const int>(buf.data(), 1));
    for (int k = 1; k <= From - 1; ++k) {
        int rank = 0;
        jet_detail::for_each_index(a.vars(), k, [&](std::span<const int> idx) {
            for (int t = 0; t < k; ++t) buf[t] = idx[t];
            buf[k] = i;
            r.d_[k - 1][rank++] =
                a.deriv(std::span<const int>(buf.data(), static_cast<size_t>(k) + 1));
        });
    }
    return r;
}

// Integer powers by repeated multiplication: exact for polynomials and safe
// for non-positive bases.
template <int O>
Jet<O> ipow(const Jet<O>& a, int e) {
    if (e < 0) return ipow(a.reciprocal(), -e);
    Jet<O> r = Jet<O>::constant(a.vars(), 1.0);
    Jet<O> base = a;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

template <int O> Jet<O> sin(const Jet<O>& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    return a.compose(std::array<double, 5>{s, c, -s, -c, s});
}

template <int O> Jet<O> cos(const Jet<O>& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    return a.compose(std::array<double, 5>{c, -s, -c, s, c});
}

template <int O> Jet<O> sinh(const Jet<O>& a) {
    const double s = std::sinh(a.value()), c = std::cosh(a.value());
    return a.compose(std::array<double, 5>{s, c, s, c, s});
}

template <int O> Jet<O> cosh(const Jet<O>& a) {
    const double s = std::sinh(a.value()), c = std::cosh(a.value());
    return a.compose(std::array<double, 5>{c, s, c, s, c});
}

template <int O> Jet<O> exp(const Jet<O>& a) {
    const double e = std::exp(a.value());
    return a.compose(std::array<double, 5>{e, e, e, e, e});
}

template <int O> Jet<O> log(const Jet<O>& a) {
    const double x = a.value();
    if (x <= 0.0) throw DegenerateEvaluation("log", x);
    return a.compose(std::array<double, 5>{std::log(x), 1.0 / x,
                                           -1.0 / (x * x), 2.0 / (x * x * x),
                                           -6.0 / (x * x * x * x)});
}

template <int O> Jet<O> sqrt(const Jet<O>& a) {
    const double x = a.value();
    if (x <= 0.0) throw DegenerateEvaluation("sqrt", x);
    const double r = std::sqrt(x);
    return a.compose(std::array<double, 5>{
        r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x),
        -0.9375 / (r * x * x * x)});
}

// x^p for real constant p via the derivative tower; requires x > 0 unless p
// is a non-negative integer (that case is routed through ipow).
template <int O> Jet<O> pow_const(const Jet<O>& a, double p) {
    const double rp = std::round(p);
    if (rp == p && std::abs(p) < 64.0) return ipow(a, static_cast<int>(rp));
    const double x = a.value();
    if (x <= 0.0) throw DegenerateEvaluation("pow", x);
    std::array<double, 5> tower{};
    double coef = 1.0;
    for (int k = 0; k <= 4; ++k) {
        tower[k] = coef * std::pow(x, p - k);
        coef *= (p - k);
    }
    return a.compose(tower);
}

} // namespace conforma
