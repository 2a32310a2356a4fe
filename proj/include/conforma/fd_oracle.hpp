#pragma once

// Finite-difference oracle for the jet evaluator: central differences with
// one Richardson extrapolation step, composed across variables for mixed
// partials.  Step 1e-2 balances truncation against cancellation at order 4
// in double precision.

#include "conforma/chart.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

namespace conforma {

namespace fd_detail {

struct Stencil {
    std::vector<std::pair<int, double>> taps; // (offset multiple of h, coeff)
    int hpow = 0;
};

inline const Stencil& stencil(int mu) {
    static const std::array<Stencil, 5> table = {
        Stencil{{{0, 1.0}}, 0},
        Stencil{{{-1, -0.5}, {1, 0.5}}, 1},
        Stencil{{{-1, 1.0}, {0, -2.0}, {1, 1.0}}, 2},
        Stencil{{{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}}, 3},
        Stencil{{{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}}, 4},
    };
    return table[mu];
}

template <class Fn>
double central_difference(Fn&& f, std::span<const double> point,
                          std::span<const int> multiplicity, double h) {
    const int m = static_cast<int>(point.size());
    std::vector<int> active;
    for (int v = 0; v < m; ++v)
        if (multiplicity[v] > 0) active.push_back(v);
    std::vector<double> p(point.begin(), point.end());
    double denom = 1.0;
    for (int v : active)
        for (int t = 0; t < multiplicity[v]; ++t) denom *= h;

    std::function<double(size_t)> rec = [&](size_t level) -> double {
        if (level == active.size()) return f(p);
        const int v = active[level];
        const Stencil& st = stencil(multiplicity[v]);
        const double saved = p[v];
        double acc = 0.0;
        for (const auto& [off, coef] : st.taps) {
            p[v] = saved + off * h;
            acc += coef * rec(level + 1);
        }
        p[v] = saved;
        return acc;
    };
    return rec(0) / denom;
}

// One Richardson step on the O(h^2) central differences.
template <class Fn>
double richardson(Fn&& f, std::span<const double> point,
                  std::span<const int> multiplicity, double h) {
    const double coarse = central_difference(f, point, multiplicity, h);
    const double fine = central_difference(f, point, multiplicity, h / 2);
    return (4.0 * fine - coarse) / 3.0;
}

template <class Visit>
void for_each_multiindex(int m, int order, Visit&& visit) {
    std::array<int, 4> idx{};
    std::vector<int> mult(m, 0);
    auto emit = [&](int k) {
        std::fill(mult.begin(), mult.end(), 0);
        for (int t = 0; t < k; ++t) ++mult[idx[t]];
        visit(std::span<const int>(idx.data(), static_cast<size_t>(k)),
              std::span<const int>(mult));
    };
    jet_detail::for_each_index(m, order, [&](std::span<const int> span_idx) {
        for (size_t t = 0; t < span_idx.size(); ++t) idx[t] = span_idx[t];
        emit(static_cast<int>(span_idx.size()));
    });
}

} // namespace fd_detail

// Max over all order-`order` partials of
// |jet - central difference| / (1 + |central difference|).
inline double fd_check(const ExprPtr& expr, std::span<const double> point,
                       std::span<const double> params, int order,
                       double h = 1e-2) {
    const int m = static_cast<int>(point.size());
    const Jet4 jet = eval_jet<4>(expr, point, params);
    auto f = [&](std::span<const double> p) {
        return eval_scalar(expr, p, params);
    };
    double worst = 0.0;
    fd_detail::for_each_multiindex(m, order, [&](std::span<const int> idx,
                                                 std::span<const int> mult) {
        const double fd = fd_detail::richardson(f, point, mult, h);
        const double jv = jet.deriv(idx);
        worst = std::max(worst, std::abs(jv - fd) / (1.0 + std::abs(fd)));
    });
    return worst;
}

// Worst relative error over all components of a chart.
inline double fd_check_chart(const ChartImmersion& chart,
                             std::span<const double> point, int order,
                             double h = 1e-2) {
    double worst = 0.0;
    for (const auto& comp : chart.components)
        worst = std::max(worst,
                         fd_check(comp, point, chart.param_values, order, h));
    return worst;
}

} // namespace conforma
