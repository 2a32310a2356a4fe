#pragma once

// Structure-equation residuals at a point.  Trace/norm identities, the trace
// of A against the normalized scalar curvature of g, the Gauss equation, and
// the Codazzi equations for B and A.  Covariant derivatives of B and A get
// one finite-difference layer (the tensor fields re-evaluated along chart
// directions) corrected with the numerically computed connection forms of g.

#include "conforma/invariants.hpp"

#include <vector>

namespace conforma {

struct IdentityReport {
    double trace_b = 0.0;    // |tr B|
    double norm_b = 0.0;     // |sum B_ij^2 - (n-1)/n|
    double trace_a = 0.0;    // |tr A - (n^2 kappa - 1)/(2n)|
    double gauss = 0.0;      // max over index tuples of the Gauss residual
    double codazzi = 0.0;    // B_ij,k - B_ik,j - delta_ij C_k + delta_ik C_j
    double stru1 = 0.0;      // A_ij,k - A_ik,j - B_ij C_k + B_ik C_j
    double stru3_commutator = 0.0; // max |[B,A]|, meaningful when C = 0
    double c_max = 0.0;      // |C|_inf at the point
    double kappa = 0.0;
    double metric_consistency = 0.0; // max |g_jet - e^{2tau} I|
};

namespace identities_detail {

struct FrameSample {
    DMatrix B;
    DMatrix A;
    std::vector<double> C;
    DMatrix Eg; // g-orthonormal frame, coordinate components
};

inline FrameSample frame_sample(const ChartImmersion& chart,
                                std::span<const double> point) {
    const ShapeContext ctx = compute_shape(chart, point);
    const ConformalData d = invariants_from_shape(ctx, 0.0);
    return FrameSample{d.B, d.A, d.C, d.g_frame};
}

} // namespace identities_detail

inline IdentityReport identity_suite(const ChartImmersion& chart,
                                     std::span<const double> point,
                                     const ConformalData& data,
                                     double fd_step = 1e-4) {
    using namespace identities_detail;
    const int n = chart.dim();
    IdentityReport rep;
    rep.kappa = data.kappa;

    double trb = 0.0, tra = 0.0, nrm = 0.0;
    for (int i = 0; i < n; ++i) {
        trb += data.B(i, i);
        tra += data.A(i, i);
        for (int j = 0; j < n; ++j) nrm += data.B(i, j) * data.B(i, j);
    }
    rep.trace_b = std::abs(trb);
    rep.norm_b = std::abs(nrm - static_cast<double>(n - 1) / n);
    rep.trace_a =
        std::abs(tra - (static_cast<double>(n) * n * data.kappa - 1.0) / (2 * n));
    for (int i = 0; i < n; ++i) rep.c_max = std::max(rep.c_max, std::abs(data.C[i]));

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += data.B(i, k) * data.A(k, j) - data.A(i, k) * data.B(k, j);
            rep.stru3_commutator = std::max(rep.stru3_commutator, std::abs(acc));
        }

    // Curvature of g in the g-orthonormal frame against the Gauss equation.
    const ShapeContext ctx = compute_shape(chart, point);
    const Jet2 e2tau_jet = (ctx.norm2II - static_cast<double>(n) * ctx.H * ctx.H) *
                           (static_cast<double>(n) / (n - 1));
    JetMatrix<2> g(n, n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g(a, b) = e2tau_jet * ctx.I(a, b);
    const DMatrix g0 = g.values();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            rep.metric_consistency =
                std::max(rep.metric_consistency,
                         std::abs(g0(a, b) - data.e2tau * ctx.I(a, b).value()));
    const auto R = invariants_detail::riemann_lowered(g);
    auto R_at = [&](int a, int b, int cc, int d) {
        return R[((static_cast<size_t>(a) * n + b) * n + cc) * n + d];
    };
    const DMatrix& E = data.g_frame;
    auto kron = [](int i, int j) { return i == j ? 1.0 : 0.0; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double r = 0.0;
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            for (int cc = 0; cc < n; ++cc)
                                for (int d = 0; d < n; ++d)
                                    r += R_at(a, b, cc, d) * E(a, i) * E(b, j) *
                                         E(cc, k) * E(d, l);
                    const double rhs = data.B(i, l) * data.B(j, k) -
                                       data.B(i, k) * data.B(j, l) +
                                       data.A(i, k) * kron(j, l) +
                                       data.A(j, l) * kron(i, k) -
                                       data.A(i, l) * kron(j, k) -
                                       data.A(j, k) * kron(i, l);
                    rep.gauss = std::max(rep.gauss, std::abs(r - rhs));
                }

    // Connection coefficients of g at the point (values from exact jets).
    const DMatrix ginv = dmat_inverse(g0);
    std::vector<double> gammag(static_cast<size_t>(n) * n * n, 0.0);
    auto gam_at = [&](int r, int m, int v) -> double& {
        return gammag[(static_cast<size_t>(r) * n + m) * n + v];
    };
    for (int r = 0; r < n; ++r)
        for (int m = 0; m < n; ++m)
            for (int v = m; v < n; ++v) {
                double acc = 0.0;
                for (int l = 0; l < n; ++l)
                    acc += 0.5 * ginv(r, l) *
                           (g(l, m).d1(v) + g(l, v).d1(m) - g(m, v).d1(l));
                gam_at(r, m, v) = acc;
                gam_at(r, v, m) = acc;
            }

    // One finite-difference layer for the B, A and frame fields.
    const FrameSample here{data.B, data.A, data.C, data.g_frame};
    std::vector<FrameSample> plus(n), minus(n);
    for (int k = 0; k < n; ++k) {
        std::vector<double> p(point.begin(), point.end());
        p[k] += fd_step;
        plus[k] = frame_sample(chart, p);
        p[k] -= 2 * fd_step;
        minus[k] = frame_sample(chart, p);
    }
    auto dB = [&](int i, int j, int a) {
        return (plus[a].B(i, j) - minus[a].B(i, j)) / (2 * fd_step);
    };
    auto dA = [&](int i, int j, int a) {
        return (plus[a].A(i, j) - minus[a].A(i, j)) / (2 * fd_step);
    };
    auto dE = [&](int cc, int i, int a) {
        return (plus[a].Eg(cc, i) - minus[a].Eg(cc, i)) / (2 * fd_step);
    };

    // omega_ij(E_k) = g(nabla_{E_k} E_i, E_j)
    std::vector<double> omega(static_cast<size_t>(n) * n * n, 0.0);
    auto om_at = [&](int k, int i, int j) -> double& {
        return omega[(static_cast<size_t>(k) * n + i) * n + j];
    };
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            std::vector<double> w(n, 0.0);
            for (int cc = 0; cc < n; ++cc)
                for (int b = 0; b < n; ++b) {
                    double cov = dE(cc, i, b);
                    for (int d = 0; d < n; ++d)
                        cov += gam_at(cc, b, d) * E(d, i);
                    w[cc] += E(b, k) * cov;
                }
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int cc = 0; cc < n; ++cc)
                    for (int d = 0; d < n; ++d) acc += g0(cc, d) * w[cc] * E(d, j);
                om_at(k, i, j) = acc;
            }
        }

    // Covariant derivatives in the g-orthonormal frame.
    auto cov_deriv = [&](auto&& dT, const DMatrix& T, int i, int j, int k) {
        double acc = 0.0;
        for (int a = 0; a < n; ++a) acc += E(a, k) * dT(i, j, a);
        for (int l = 0; l < n; ++l)
            acc += T(i, l) * om_at(k, l, j) + T(l, j) * om_at(k, l, i);
        return acc;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double bres = cov_deriv(dB, data.B, i, j, k) -
                                    cov_deriv(dB, data.B, i, k, j) -
                                    (kron(i, j) * data.C[k] - kron(i, k) * data.C[j]);
                rep.codazzi = std::max(rep.codazzi, std::abs(bres));
                const double ares = cov_deriv(dA, data.A, i, j, k) -
                                    cov_deriv(dA, data.A, i, k, j) -
                                    (data.B(i, j) * data.C[k] -
                                     data.B(i, k) * data.C[j]);
                rep.stru1 = std::max(rep.stru1, std::abs(ares));
            }
    return rep;
}

} // namespace conforma
