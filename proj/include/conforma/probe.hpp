#pragma once

// Numerical invariance probe for flat-ambient charts: rebuild the chart with
// x replaced by rho O x + b for a conformal transformation of R^{n+1}_1
// (dilation, Lorentz rotation, translation) and report the worst eigenvalue
// drift of A, B and D over sample points.

#include "conforma/invariants.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace conforma {

struct ProbeTransform {
    enum class Kind { Dilation, LorentzRotation, Translation, Identity };
    Kind kind = Kind::Identity;
    double rho = 1.0;    // dilation factor
    int plane_i = 0;     // rotation plane; index 0 is the timelike direction,
    int plane_j = 1;     // so planes containing 0 give boosts
    double angle = 0.0;
    std::vector<double> offset; // translation
};

inline ChartImmersion transform_chart(const ChartImmersion& chart,
                                      const ProbeTransform& t) {
    if (chart.ambient.form != SpaceForm::Flat)
        throw std::invalid_argument(
            "invariance probe requires a flat-ambient chart");
    const int N = chart.ambient.embedding_dim();
    DMatrix M = DMatrix::identity(N);
    std::vector<double> b(N, 0.0);
    switch (t.kind) {
    case ProbeTransform::Kind::Identity:
        break;
    case ProbeTransform::Kind::Dilation:
        for (int a = 0; a < N; ++a) M(a, a) = t.rho;
        break;
    case ProbeTransform::Kind::LorentzRotation: {
        const int i = t.plane_i, j = t.plane_j;
        if (i == j || i < 0 || j < 0 || i >= N || j >= N)
            throw std::invalid_argument("invalid rotation plane");
        if (i == 0 || j == 0) { // boost in a timelike plane
            M(i, i) = std::cosh(t.angle);
            M(j, j) = std::cosh(t.angle);
            M(i, j) = std::sinh(t.angle);
            M(j, i) = std::sinh(t.angle);
        } else {
            M(i, i) = std::cos(t.angle);
            M(j, j) = std::cos(t.angle);
            M(i, j) = -std::sin(t.angle);
            M(j, i) = std::sin(t.angle);
        }
        break;
    }
    case ProbeTransform::Kind::Translation:
        if (static_cast<int>(t.offset.size()) != N)
            throw std::invalid_argument("translation offset length mismatch");
        b = t.offset;
        break;
    }

    ChartImmersion out = chart;
    out.name = chart.name + "_probe";
    out.components.clear();
    for (int a = 0; a < N; ++a) {
        ExprPtr e;
        for (int c = 0; c < N; ++c) {
            if (M(a, c) == 0.0) continue;
            ExprPtr term = M(a, c) == 1.0
                               ? chart.components[c]
                               : make_binary(BinaryOp::Mul,
                                             make_constant(M(a, c)),
                                             chart.components[c]);
            e = e ? make_binary(BinaryOp::Add, e, term) : term;
        }
        if (!e) e = make_constant(0.0);
        if (b[a] != 0.0)
            e = make_binary(BinaryOp::Add, e, make_constant(b[a]));
        out.components.push_back(e);
    }
    return out;
}

namespace probe_detail {

inline double slot_diff(const std::vector<double>& a,
                        const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::vector<double> negate_sorted(const std::vector<double>& a) {
    std::vector<double> r(a.rbegin(), a.rend());
    for (double& v : r) v = -v;
    return r;
}

} // namespace probe_detail

// Max drift of (eig_A, eig_B, eig_D) between the chart and its transform,
// over the given points.  B and D are compared up to a simultaneous sign
// flip of (B, lambda).
inline double invariance_probe(const ChartImmersion& chart,
                               const ProbeTransform& t, double lambda,
                               std::span<const std::vector<double>> points) {
    using namespace probe_detail;
    const ChartImmersion moved = transform_chart(chart, t);
    double drift = 0.0;
    for (const auto& p : points) {
        const ConformalData d0 = invariants_at(chart, p, lambda);
        const ConformalData d1 = invariants_at(moved, p, lambda);
        const ConformalData d1f = invariants_at(moved, p, -lambda);
        drift = std::max(drift, slot_diff(d0.eig_A, d1.eig_A));
        const double same = std::max(slot_diff(d0.eig_B, d1.eig_B),
                                     slot_diff(d0.eig_D, d1.eig_D));
        const double flip =
            std::max(slot_diff(d0.eig_B, negate_sorted(d1.eig_B)),
                     slot_diff(d0.eig_D, d1f.eig_D));
        drift = std::max(drift, std::min(same, flip));
    }
    return drift;
}

} // namespace conforma
