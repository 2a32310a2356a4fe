#pragma once

// Isometric layer at a point: induced metric, I-orthonormal frame, timelike
// unit normal, second fundamental form, mean and principal curvatures, and
// the Christoffel symbols of the induced metric.
//
// Everything needed by the conformal layer is carried as order-2 jets in the
// chart variables, so that tau and its Hessian (and the curvature of the
// conformal metric) come out of exact derivative data rather than
// differencing.

#include "conforma/chart.hpp"
#include "conforma/linalg.hpp"

#include <vector>

namespace conforma {

struct FundamentalForms {
    DMatrix I_coord;                 // induced metric, coordinate basis
    DMatrix frame;                   // column i = coordinates of e_i
    std::vector<double> normal;      // ambient components, <e,e>_s = -1
    DMatrix h_onb;                   // second form in the orthonormal frame
    double H = 0.0;                  // mean curvature
    std::vector<double> principal;   // eigenvalues of h_onb, ascending
    std::vector<double> christoffel; // Gamma^k_{ij}, index (k*n+i)*n+j
    double norm2_II = 0.0;

    double gamma(int k, int i, int j) const {
        const int n = I_coord.rows;
        return christoffel[(static_cast<size_t>(k) * n + i) * n + j];
    }
};

// Jet-valued state shared by the shape and conformal layers.
struct ShapeContext {
    const ChartImmersion* chart = nullptr;
    std::vector<double> point;
    int n = 0; // intrinsic dimension
    int N = 0; // embedding dimension
    int s = 1; // signature index
    int c = 0; // ambient curvature

    std::vector<Jet2> x;             // chart components
    std::vector<std::vector<Jet2>> dx;  // dx[i][a] = d(x_a)/du_i
    std::vector<std::vector<std::vector<Jet2>>> ddx; // ddx[i][j][a]
    JetMatrix<2> I;                  // induced metric
    JetMatrix<2> Iinv;
    std::vector<Jet2> normal;        // unit timelike normal, oriented
    JetMatrix<2> h;                  // second form, coordinate basis
    Jet2 H;                          // mean curvature
    Jet2 norm2II;                    // |II|^2 = I^{ac} I^{bd} h_ab h_cd

    FundamentalForms forms;          // value-level summary
};

namespace shape_detail {

inline double sgn_s(int a, int s) { return a < s ? -1.0 : 1.0; }

// Gram-Schmidt of the coordinate basis under the metric I0, in variable
// order; column i of the result holds the coordinates of e_i.
inline DMatrix orthonormal_frame(const DMatrix& I0) {
    const int n = I0.rows;
    DMatrix F(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> v(n, 0.0);
        v[i] = 1.0;
        for (int j = 0; j < i; ++j) {
            double proj = 0.0; // <v, e_j>_I
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) proj += v[a] * I0(a, b) * F(b, j);
            for (int a = 0; a < n; ++a) v[a] -= proj * F(a, j);
        }
        double nrm = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) nrm += v[a] * I0(a, b) * v[b];
        nrm = std::sqrt(nrm);
        for (int a = 0; a < n; ++a) F(a, i) = v[a] / nrm;
    }
    return F;
}

} // namespace shape_detail

inline DMatrix induced_metric(const ChartImmersion& chart,
                              std::span<const double> point) {
    const int n = chart.dim();
    const int s = chart.ambient.signature_index();
    const auto xj = eval_chart<2>(chart, point);
    DMatrix I0(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double acc = 0.0;
            for (size_t a = 0; a < xj.size(); ++a)
                acc += shape_detail::sgn_s(static_cast<int>(a), s) *
                       xj[a].d1(i) * xj[a].d1(j);
            I0(i, j) = I0(j, i) = acc;
        }
    const auto eig = sym_eigen(I0);
    if (eig.values.front() <= 1e-12) throw NotSpacelike(eig.values.front());
    return I0;
}

// Full jet-level shape computation.  flip_normal overrides the orientation
// rule (used by the sign-covariance checks).
inline ShapeContext compute_shape(const ChartImmersion& chart,
                                  std::span<const double> point,
                                  bool flip_normal = false) {
    ShapeContext ctx;
    ctx.chart = &chart;
    ctx.point.assign(point.begin(), point.end());
    ctx.n = chart.dim();
    ctx.N = chart.ambient.embedding_dim();
    ctx.s = chart.ambient.signature_index();
    ctx.c = chart.ambient.curvature();
    const int n = ctx.n, N = ctx.N, s = ctx.s;

    const auto x4 = eval_chart<4>(chart, point);
    ctx.x.reserve(N);
    for (const auto& xa : x4) ctx.x.push_back(truncate<2>(xa));

    std::vector<std::vector<Jet3>> dx3(n);
    ctx.dx.assign(n, {});
    ctx.ddx.assign(n, std::vector<std::vector<Jet2>>(n));
    for (int i = 0; i < n; ++i) {
        dx3[i].reserve(N);
        for (int a = 0; a < N; ++a) dx3[i].push_back(derivative(x4[a], i));
        ctx.dx[i].reserve(N);
        for (int a = 0; a < N; ++a) ctx.dx[i].push_back(truncate<2>(dx3[i][a]));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<Jet2> row;
            row.reserve(N);
            for (int a = 0; a < N; ++a) row.push_back(derivative(dx3[i][a], j));
            ctx.ddx[i][j] = row;
            if (i != j) ctx.ddx[j][i] = std::move(row);
        }

    // Induced metric as order-2 jets; positive-definiteness checked on values.
    ctx.I = JetMatrix<2>(n, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Jet2 acc = inner_s<2>(ctx.dx[i], ctx.dx[j], s);
            ctx.I(i, j) = acc;
            ctx.I(j, i) = acc;
        }
    const DMatrix I0 = ctx.I.values();
    const auto eigI = sym_eigen(I0);
    if (eigI.values.front() <= 1e-12) throw NotSpacelike(eigI.values.front());
    ctx.Iinv = jet_inverse(ctx.I, n);

    // Normal: nullspace of the tangency constraints (plus <e,x>_s = 0 on a
    // curved ambient), normalized to <e,e>_s = -1.
    const int rows = (ctx.c == 0) ? n : n + 1;
    if (rows != N - 1)
        throw DegenerateNormal("normal space is not 1-dimensional");
    JetMatrix<2> M(rows, N, n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < N; ++a)
            M(i, a) = ctx.dx[i][a] * shape_detail::sgn_s(a, s);
    if (ctx.c != 0)
        for (int a = 0; a < N; ++a)
            M(n, a) = ctx.x[a] * shape_detail::sgn_s(a, s);
    std::vector<Jet2> e = jet_nullspace(M, n);
    Jet2 q = inner_s<2>(std::span<const Jet2>(e), std::span<const Jet2>(e), s);
    if (q.value() >= -1e-12)
        throw DegenerateNormal("normal direction is not timelike");
    const Jet2 inv_len = sqrt(-q).reciprocal();
    for (auto& ea : e) ea = ea * inv_len;
    // Orientation rule: first component over threshold is made positive.
    double lead = 0.0;
    for (const auto& ea : e) {
        if (std::abs(ea.value()) > 1e-10) {
            lead = ea.value();
            break;
        }
    }
    if ((lead < 0.0) != flip_normal)
        for (auto& ea : e) ea = -ea;
    ctx.normal = std::move(e);

    // Second fundamental form h_ij = <d2x/du_i du_j, e>_s.
    ctx.h = JetMatrix<2>(n, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Jet2 acc = inner_s<2>(ctx.ddx[i][j], ctx.normal, s);
            ctx.h(i, j) = acc;
            ctx.h(j, i) = acc;
        }

    // H = tr(I^{-1} h)/n and |II|^2 = tr((I^{-1} h)^2).
    JetMatrix<2> mixed(n, n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Jet2 acc = Jet2::constant(n, 0.0);
            for (int cidx = 0; cidx < n; ++cidx)
                acc = acc + ctx.Iinv(a, cidx) * ctx.h(cidx, b);
            mixed(a, b) = acc;
        }
    Jet2 trace = Jet2::constant(n, 0.0);
    Jet2 n2 = Jet2::constant(n, 0.0);
    for (int a = 0; a < n; ++a) {
        trace = trace + mixed(a, a);
        for (int b = 0; b < n; ++b) n2 = n2 + mixed(a, b) * mixed(b, a);
    }
    ctx.H = trace * (1.0 / n);
    ctx.norm2II = n2;

    // Value-level summary.
    FundamentalForms& f = ctx.forms;
    f.I_coord = I0;
    f.frame = shape_detail::orthonormal_frame(I0);
    f.normal.resize(N);
    for (int a = 0; a < N; ++a) f.normal[a] = ctx.normal[a].value();
    DMatrix h0 = ctx.h.values();
    DMatrix tmp = dmat_mul(dmat_transpose(f.frame), dmat_mul(h0, f.frame));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            const double sym = 0.5 * (tmp(i, j) + tmp(j, i));
            tmp(i, j) = tmp(j, i) = sym;
        }
    f.h_onb = tmp;
    f.H = ctx.H.value();
    f.principal = sym_eigen(f.h_onb).values;
    f.norm2_II = ctx.norm2II.value();
    f.christoffel.assign(static_cast<size_t>(n) * n * n, 0.0);
    const DMatrix I0inv = dmat_inverse(I0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double acc = 0.0;
                for (int l = 0; l < n; ++l)
                    acc += 0.5 * I0inv(k, l) *
                           (ctx.I(j, l).d1(i) + ctx.I(i, l).d1(j) -
                            ctx.I(i, j).d1(l));
                f.christoffel[(static_cast<size_t>(k) * n + i) * n + j] = acc;
                f.christoffel[(static_cast<size_t>(k) * n + j) * n + i] = acc;
            }
    return ctx;
}

inline std::vector<double> unit_normal(const ChartImmersion& chart,
                                       std::span<const double> point) {
    return compute_shape(chart, point).forms.normal;
}

inline FundamentalForms fundamental_forms(const ChartImmersion& chart,
                                          std::span<const double> point) {
    return compute_shape(chart, point).forms;
}

} // namespace conforma
