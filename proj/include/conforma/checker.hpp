#pragma once

// Sampling-based verdicts: does a chart have vanishing conformal 1-form and
// constant para-Blaschke / conformal-second-form eigenvalues, and which
// family of the classification does it match?
//
// Eigenvalues are compared up to a simultaneous sign flip of (B, lambda).
// A reference point fixes the canonical orientation (the B eigenvalue of
// largest magnitude made positive, ties broken on the D spectrum) and every
// other sample picks the orientation closest to the reference, so symmetric
// spectra cannot flip inconsistently across points.

#include "conforma/catalog.hpp"
#include "conforma/invariants.hpp"
#include "conforma/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace conforma {

struct CheckTolerances {
    double c_tol = 1e-9;
    double spread_tol = 1e-6;
    double cluster_gap = 1e-6;
    double identity_tol = 1e-6;
    double codazzi_tol = 1e-4;
    double classify_tol = 1e-5;
};

// Deterministic low-discrepancy points in the domain box shrunk 5% per side.
inline std::vector<std::vector<double>>
sample_points(const ChartImmersion& chart, int count, unsigned seed) {
    static constexpr int primes[kMaxJetVars] = {2, 3, 5, 7, 11, 13, 17, 19};
    const int n = chart.dim();
    for (int i = 0; i < n; ++i)
        if (!(chart.domain_lo[i] < chart.domain_hi[i])) throw EmptyDomain();
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::vector<double> p(n);
        for (int d = 0; d < n; ++d) {
            unsigned long long idx = static_cast<unsigned long long>(seed) + i + 1;
            double f = 1.0, rad = 0.0;
            while (idx) {
                f /= primes[d];
                rad += f * static_cast<double>(idx % primes[d]);
                idx /= primes[d];
            }
            const double w = chart.domain_hi[d] - chart.domain_lo[d];
            p[d] = chart.domain_lo[d] + w * (0.05 + 0.9 * rad);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

struct FamilyMatch {
    int case_id = 0; // 1..7 per the classification; 0 = unclassified
    std::string label = "unclassified";
    int k = 0, p = 0, q = 0;
    double a = 0.0, r = 0.0, lambda = 0.0;
    double residual = 0.0;
};

struct Verdict {
    double lambda = 0.0;
    int samples = 0; // surviving points
    int dropped = 0;
    double c_max = 0.0;
    double b_spread = 0.0;
    double d_spread = 0.0;
    int r_B = 0;
    int r_D = 0;
    bool para_blaschke_isoparametric = false;
    bool conformal_isoparametric = false;
    std::optional<FamilyMatch> family_match;

    std::vector<double> eig_A_mean, eig_B_mean, eig_D_mean;
    DMatrix rep_A, rep_B; // representative point, canonical orientation
};

namespace checker_detail {

inline std::vector<double> negate_sorted(const std::vector<double>& a) {
    std::vector<double> r(a.rbegin(), a.rend());
    for (double& v : r) v = -v;
    return r;
}

inline double linf(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::vector<double> eig_of(const DMatrix& m) { return sym_eigen(m).values; }

// Slot-wise spread across sample rows.
inline double spread(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return 0.0;
    double worst = 0.0;
    for (size_t s = 0; s < rows[0].size(); ++s) {
        double lo = rows[0][s], hi = rows[0][s];
        for (const auto& r : rows) {
            lo = std::min(lo, r[s]);
            hi = std::max(hi, r[s]);
        }
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

// Cluster count with gaps at or below the tolerance merged.
inline int cluster_count(const std::vector<double>& sorted_vals, double gap) {
    if (sorted_vals.empty()) return 0;
    int r = 1;
    for (size_t i = 1; i < sorted_vals.size(); ++i)
        if (sorted_vals[i] - sorted_vals[i - 1] > gap) ++r;
    return r;
}

struct Cluster {
    double d_value = 0.0;
    int mult = 0;
    std::vector<double> b_values; // eigenvalues of B restricted to the cluster
    double a_mean = 0.0;
};

// Joint structure at one point: cluster the D spectrum, then diagonalize B
// restricted to each cluster's eigenspace.
inline std::vector<Cluster> joint_clusters(const DMatrix& A, const DMatrix& B,
                                           double lambda, double gap) {
    const int n = A.rows;
    DMatrix D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = A(i, j) + lambda * B(i, j);
    const EigenSym ed = sym_eigen(D);
    std::vector<Cluster> out;
    int start = 0;
    for (int i = 1; i <= n; ++i) {
        if (i < n && ed.values[i] - ed.values[i - 1] <= gap) continue;
        Cluster cl;
        cl.mult = i - start;
        double dsum = 0.0;
        for (int t = start; t < i; ++t) dsum += ed.values[t];
        cl.d_value = dsum / cl.mult;
        DMatrix Bc(cl.mult, cl.mult), Ac(cl.mult, cl.mult);
        for (int r = 0; r < cl.mult; ++r)
            for (int c = 0; c < cl.mult; ++c) {
                double accB = 0.0, accA = 0.0;
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y) {
                        accB += ed.vectors(x, start + r) * B(x, y) *
                                ed.vectors(y, start + c);
                        accA += ed.vectors(x, start + r) * A(x, y) *
                                ed.vectors(y, start + c);
                    }
                Bc(r, c) = accB;
                Ac(r, c) = accA;
            }
        cl.b_values = eig_of(Bc);
        for (int r = 0; r < cl.mult; ++r) cl.a_mean += Ac(r, r);
        cl.a_mean /= cl.mult;
        out.push_back(std::move(cl));
        start = i;
    }
    return out;
}

} // namespace checker_detail

inline Verdict check(const ChartImmersion& chart, double lambda, int count,
                     const CheckTolerances& tol, unsigned seed) {
    using namespace checker_detail;
    const auto pts = sample_points(chart, count, seed);

    struct PointData {
        bool ok = false;
        std::vector<double> eigA, eigB_raw, eigD_plus, eigD_minus;
        double c_max = 0.0;
        DMatrix A, B;
    };
    std::vector<PointData> data(pts.size());
    parallel_for(static_cast<int>(pts.size()), [&](int i) {
        try {
            const ConformalData d = invariants_at(chart, pts[i], lambda);
            PointData& pd = data[i];
            pd.eigA = d.eig_A;
            pd.eigB_raw = d.eig_B;
            pd.eigD_plus = d.eig_D;
            DMatrix Dm(d.A.rows, d.A.cols);
            for (int r = 0; r < d.A.rows; ++r)
                for (int c = 0; c < d.A.cols; ++c)
                    Dm(r, c) = d.A(r, c) - lambda * d.B(r, c);
            pd.eigD_minus = eig_of(Dm);
            for (double ci : d.C) pd.c_max = std::max(pd.c_max, std::abs(ci));
            pd.A = d.A;
            pd.B = d.B;
            pd.ok = true;
        } catch (const UmbilicPoint&) {
        } catch (const NotSpacelike&) {
        } catch (const DegenerateNormal&) {
        } catch (const DegenerateEvaluation&) {
        }
    });

    Verdict v;
    v.lambda = lambda;
    std::vector<const PointData*> alive;
    for (const auto& pd : data)
        if (pd.ok) alive.push_back(&pd);
    v.samples = static_cast<int>(alive.size());
    v.dropped = static_cast<int>(pts.size()) - v.samples;
    if (alive.empty() || 4 * v.dropped > static_cast<int>(pts.size()))
        throw TooManyDegeneratePoints(v.dropped, static_cast<int>(pts.size()));

    // Canonical orientation at the reference point.
    const PointData& ref = *alive.front();
    bool ref_flip = false;
    {
        const auto& e = ref.eigB_raw;
        const double lo = std::abs(e.front()), hi = std::abs(e.back());
        if (std::abs(hi - lo) > 1e-12 * std::max(1.0, hi)) {
            ref_flip = lo > hi; // most negative dominates: flip to positive
        } else {
            // Symmetric spectrum: prefer the orientation with the
            // lexicographically larger D spectrum.
            ref_flip = std::lexicographical_compare(ref.eigD_plus.begin(),
                                                    ref.eigD_plus.end(),
                                                    ref.eigD_minus.begin(),
                                                    ref.eigD_minus.end());
        }
    }
    const std::vector<double> refB =
        ref_flip ? negate_sorted(ref.eigB_raw) : ref.eigB_raw;
    const std::vector<double> refD = ref_flip ? ref.eigD_minus : ref.eigD_plus;

    std::vector<std::vector<double>> rowsA, rowsB, rowsD, rowsDalt;
    double c_max = 0.0;
    for (const PointData* pd : alive) {
        const auto bPlus = pd->eigB_raw;
        const auto bMinus = negate_sorted(pd->eigB_raw);
        const double dp = linf(bPlus, refB), dm = linf(bMinus, refB);
        bool flip = dm < dp;
        if (std::abs(dm - dp) <= 1e-14)
            flip = linf(pd->eigD_minus, refD) < linf(pd->eigD_plus, refD);
        rowsA.push_back(pd->eigA);
        rowsB.push_back(flip ? bMinus : bPlus);
        rowsD.push_back(flip ? pd->eigD_minus : pd->eigD_plus);
        rowsDalt.push_back(flip ? pd->eigD_plus : pd->eigD_minus);
        c_max = std::max(c_max, pd->c_max);
    }
    v.c_max = c_max;
    v.b_spread = spread(rowsB);

    // Only one sign pairing of (B, lambda) can make D block-constant; keep
    // the orientation with the smaller spread, ties to the canonical one.
    const double spread_plus = spread(rowsD), spread_minus = spread(rowsDalt);
    const bool d_flipped = spread_minus < spread_plus;
    v.d_spread = std::min(spread_plus, spread_minus);
    const auto& rowsDbest = d_flipped ? rowsDalt : rowsD;

    const int n = chart.dim();
    v.eig_A_mean.assign(n, 0.0);
    v.eig_B_mean.assign(n, 0.0);
    v.eig_D_mean.assign(n, 0.0);
    for (size_t r = 0; r < rowsB.size(); ++r)
        for (int s = 0; s < n; ++s) {
            v.eig_A_mean[s] += rowsA[r][s] / rowsB.size();
            v.eig_B_mean[s] += rowsB[r][s] / rowsB.size();
            v.eig_D_mean[s] += rowsDbest[r][s] / rowsB.size();
        }
    v.r_B = cluster_count(v.eig_B_mean, tol.cluster_gap);
    v.r_D = cluster_count(v.eig_D_mean, tol.cluster_gap);
    v.para_blaschke_isoparametric =
        c_max < tol.c_tol && v.d_spread < tol.spread_tol;
    v.conformal_isoparametric =
        c_max < tol.c_tol && v.b_spread < tol.spread_tol;

    // Representative matrices in the D-consistent orientation.
    v.rep_A = ref.A;
    v.rep_B = ref.B;
    if (ref_flip != d_flipped)
        for (int i = 0; i < v.rep_B.rows; ++i)
            for (int j = 0; j < v.rep_B.cols; ++j) v.rep_B(i, j) *= -1.0;
    return v;
}

namespace checker_detail {

inline double spectrum_residual(const Spectrum& oracle,
                                const std::vector<double>& measured) {
    return linf(expand_sorted(oracle), measured);
}

// Best fit of the two-eigenvalue product families (classification cases 2,
// 3 and 4).  The flat-cylinder family carries no recoverable continuous
// parameter: dilations wash it out, so only k is reported for case 4.
inline std::optional<FamilyMatch> fit_two_block(int n, double lambda,
                                                const Verdict& v,
                                                double fit_tol) {
    std::optional<FamilyMatch> best;
    for (bool flip : {false, true}) {
        const double sgn = flip ? -1.0 : 1.0;
        DMatrix Bo(n, n), D(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Bo(i, j) = sgn * v.rep_B(i, j);
                D(i, j) = v.rep_A(i, j) + lambda * Bo(i, j);
            }
        const std::vector<double> eb = eig_of(Bo);
        const std::vector<double> ed = eig_of(D);
        // positive block = candidate k (the tabulated b_1 > 0 carries mult k)
        int kpos = 0;
        for (double b : eb)
            if (b > 0) ++kpos;
        const int k = kpos;
        if (k < 1 || k > n - 1) continue;

        auto try_family = [&](int case_id, const char* label, double a,
                              double a1, double a2) {
            Spectrum oB = {{product_b1(n, k), k}, {product_b2(n, k), n - k}};
            Spectrum oA = {{a1, k}, {a2, n - k}};
            Spectrum oD = {{a1 + lambda * product_b1(n, k), k},
                           {a2 + lambda * product_b2(n, k), n - k}};
            const double resid = std::max({spectrum_residual(oB, eb),
                                           spectrum_residual(oA, v.eig_A_mean),
                                           spectrum_residual(oD, ed)});
            if (resid < fit_tol && (!best || resid < best->residual)) {
                FamilyMatch m;
                m.case_id = case_id;
                m.label = label;
                m.k = k;
                m.a = a;
                m.residual = resid;
                best = m;
            }
        };

        // a_1 lives at one end of the sorted A spectrum; try both ends and
        // let the full-spectrum residual arbitrate.
        const double denom = 2.0 * n * n;
        for (bool a1_at_front : {false, true}) {
            // candidate a_1 read off either end of the sorted A spectrum
            const double a1m = a1_at_front ? v.eig_A_mean.front()
                                           : v.eig_A_mean.back();
            // case 4: no continuous parameter
            try_family(4, "ex1", 0.0, ex1_a1(n, k), ex1_a2(n, k));
            // case 2: a^2 from a_1 = (n-1)((n-k)^2 + n^2 a^2)/(2 n^2 k(n-k))
            const double s2 =
                (a1m * denom * k * (n - k) / (n - 1) -
                 static_cast<double>(n - k) * (n - k)) /
                (static_cast<double>(n) * n);
            if (s2 > 1e-12)
                try_family(2, "ex2", std::sqrt(s2), ex2_a1(n, k, std::sqrt(s2)),
                           ex2_a2(n, k, std::sqrt(s2)));
            // case 3: a^2 from a_1 = (n-1)((n-k)^2 - n^2 a^2)/(2 n^2 k(n-k))
            const double s3 =
                (static_cast<double>(n - k) * (n - k) -
                 a1m * denom * k * (n - k) / (n - 1)) /
                (static_cast<double>(n) * n);
            if (s3 > 1e-12 && s3 < 1.0)
                try_family(3, "ex3", std::sqrt(s3), ex3_a1(n, k, std::sqrt(s3)),
                           ex3_a2(n, k, std::sqrt(s3)));
        }
    }
    return best;
}

inline std::optional<FamilyMatch> fit_cone(int n, double lambda,
                                           const Verdict& v, double gap,
                                           double fit_tol) {
    std::optional<FamilyMatch> best;
    for (bool flip : {false, true}) {
        const double sgn = flip ? -1.0 : 1.0;
        DMatrix Bo(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) Bo(i, j) = sgn * v.rep_B(i, j);
        const std::vector<double> eb = eig_of(Bo);
        // three ascending clusters with multiplicities (q, p, n - p - q)
        std::vector<std::pair<double, int>> cl;
        for (double b : eb) {
            if (!cl.empty() && b - cl.back().first <= gap * (1 + std::abs(b)))
                ++cl.back().second;
            else
                cl.emplace_back(b, 1);
        }
        if (cl.size() != 3) continue;
        const double b1 = cl[0].first, b2 = cl[1].first, b3 = cl[2].first;
        const int q = cl[0].second, p = cl[1].second;
        if (p + q >= n) continue;
        if (b2 - b1 < 1e-12) continue;
        const double ratio = (b3 - b2) / (b2 - b1); // equals a^2 - 1
        if (ratio <= 1e-12) continue;
        const double a = std::sqrt(1.0 + ratio);
        const Ex4Closed cf = ex4_closed(n, p, q, a);
        Spectrum oB = {{cf.b1, q}, {cf.b2, p}, {cf.b3, n - p - q}};
        Spectrum oA = {{cf.a1, q}, {cf.a2, p}, {cf.a3, n - p - q}};
        DMatrix D(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                D(i, j) = v.rep_A(i, j) + lambda * Bo(i, j);
        const std::vector<double> ed = eig_of(D);
        Spectrum oD = {{cf.a1 + lambda * cf.b1, q},
                       {cf.a2 + lambda * cf.b2, p},
                       {cf.a3 + lambda * cf.b3, n - p - q}};
        const double resid = std::max({spectrum_residual(oB, eb),
                                       spectrum_residual(oA, v.eig_A_mean),
                                       spectrum_residual(oD, ed)});
        if (resid < fit_tol && (!best || resid < best->residual)) {
            FamilyMatch m;
            m.case_id = 5;
            m.label = "ex4";
            m.p = p;
            m.q = q;
            m.a = a;
            m.residual = resid;
            best = m;
        }
    }
    return best;
}

inline std::optional<FamilyMatch> fit_sphere_bundle(int n, double lambda,
                                                    const Verdict& v,
                                                    double gap,
                                                    double fit_tol) {
    // Two D blocks, at least three distinct B values: the block whose B
    // restriction is a single value is the outer factor with B = -lambda.
    const auto clusters =
        joint_clusters(v.rep_A, v.rep_B, lambda, std::max(gap, 1e-8));
    if (clusters.size() != 2) return std::nullopt;
    auto b_spread_of = [](const Cluster& c) {
        return c.b_values.back() - c.b_values.front();
    };
    int outer = -1;
    if (b_spread_of(clusters[0]) < 1e-7 && b_spread_of(clusters[1]) > 1e-7)
        outer = 0;
    else if (b_spread_of(clusters[1]) < 1e-7 && b_spread_of(clusters[0]) > 1e-7)
        outer = 1;
    if (outer < 0) return std::nullopt;
    const Cluster& out_cl = clusters[outer];
    const Cluster& in_cl = clusters[1 - outer];
    const int k = in_cl.mult;
    if (k < 2 || k > n - 1) return std::nullopt;

    const double d_in = in_cl.d_value, d_out = out_cl.d_value;
    const double lam2 = -(d_in + d_out);
    if (lam2 < -fit_tol) return std::nullopt;
    const double lam = std::sqrt(std::max(lam2, 0.0));
    const double diff = d_in - d_out;
    if (std::abs(diff) < 1e-12) return std::nullopt;
    const double r = 1.0 / std::sqrt(std::abs(diff));

    const double b_out = out_cl.b_values.front();
    const double resid = std::max(std::abs(std::abs(b_out) - lam),
                                  std::abs(lam - std::abs(lambda)));
    if (resid >= fit_tol) return std::nullopt;
    FamilyMatch m;
    m.case_id = diff > 0 ? 6 : 7;
    m.label = diff > 0 ? "ex5" : "ex6";
    m.k = k;
    m.r = r;
    m.lambda = lam;
    m.residual = resid;
    return m;
}

} // namespace checker_detail

inline FamilyMatch classify(const Verdict& v, int n,
                            const CheckTolerances& tol = {}) {
    using namespace checker_detail;
    FamilyMatch unclassified;
    if (!v.para_blaschke_isoparametric) return unclassified;
    if (v.r_D == 1) {
        FamilyMatch m;
        m.case_id = 1;
        m.label = "cmc"; // constant mean and scalar curvature, by elimination
        m.residual = 0.0;
        return m;
    }
    if (v.r_D == 2 && v.r_B == 2) {
        if (auto m = fit_two_block(n, v.lambda, v, tol.classify_tol)) return *m;
        return unclassified;
    }
    if (v.r_D == 2 && v.r_B >= 3) {
        if (auto m = fit_sphere_bundle(n, v.lambda, v, tol.cluster_gap,
                                       std::max(tol.classify_tol, 1e-5)))
            return *m;
        return unclassified;
    }
    if (v.r_D == 3) {
        if (auto m = fit_cone(n, v.lambda, v, tol.cluster_gap, tol.classify_tol))
            return *m;
        return unclassified;
    }
    return unclassified;
}

struct Theorem1Row {
    double lambda = 0.0;
    int r_D = 0;
    double b_spread = 0.0;
    double d_spread = 0.0;
    bool collapsed = false;      // r_D below the grid's generic value
    bool implication_ok = true;  // r_D > 2 implies conformal isoparametric
};

struct Theorem1Report {
    std::vector<Theorem1Row> rows;
    int generic_r_D = 0;
    bool all_implications_hold = true;
};

inline Theorem1Report theorem1_crosscheck(const ChartImmersion& chart,
                                          std::span<const double> lambda_grid,
                                          int count, const CheckTolerances& tol,
                                          unsigned seed) {
    Theorem1Report rep;
    for (double lam : lambda_grid) {
        const Verdict v = check(chart, lam, count, tol, seed);
        Theorem1Row row;
        row.lambda = lam;
        row.r_D = v.r_D;
        row.b_spread = v.b_spread;
        row.d_spread = v.d_spread;
        if (v.r_D > 2) {
            row.implication_ok = v.conformal_isoparametric;
            rep.all_implications_hold &= row.implication_ok;
        }
        rep.generic_r_D = std::max(rep.generic_r_D, v.r_D);
        rep.rows.push_back(row);
    }
    for (auto& row : rep.rows) row.collapsed = row.r_D < rep.generic_r_D;
    return rep;
}

} // namespace conforma
