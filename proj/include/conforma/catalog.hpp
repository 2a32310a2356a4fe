#pragma once

// Executable encodings of the model families: chart generators built from
// nested hyperbolic/polar angles, closed-form eigenvalue oracles, and the
// root-finder that realizes the constrained inner hypersurfaces of the two
// sphere-bundle families (ex5/ex6) as two-factor products.

#include "conforma/chart.hpp"
#include "conforma/errors.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace conforma {

enum class Family { Ex1, Ex2, Ex3, Ex4, Ex5, Ex6 };

inline const char* family_name(Family f) {
    switch (f) {
    case Family::Ex1: return "ex1";
    case Family::Ex2: return "ex2";
    case Family::Ex3: return "ex3";
    case Family::Ex4: return "ex4";
    case Family::Ex5: return "ex5";
    case Family::Ex6: return "ex6";
    }
    return "?";
}

inline std::optional<Family> family_by_name(const std::string& s) {
    if (s == "ex1") return Family::Ex1;
    if (s == "ex2") return Family::Ex2;
    if (s == "ex3") return Family::Ex3;
    if (s == "ex4") return Family::Ex4;
    if (s == "ex5") return Family::Ex5;
    if (s == "ex6") return Family::Ex6;
    return std::nullopt;
}

struct CatalogParams {
    int n = 3;
    int k = 1;          // ex1-ex3, ex5, ex6
    int p = 1, q = 1;   // ex4
    double a = 1.5;     // ex1-ex4
    double r = 1.0;     // ex5, ex6
    double lambda0 = 0.0; // ex5, ex6 family parameter
};

struct EigBlock {
    double value = 0.0;
    int mult = 0;
};
using Spectrum = std::vector<EigBlock>;

inline std::vector<double> expand_sorted(const Spectrum& s) {
    std::vector<double> out;
    for (const auto& b : s)
        for (int i = 0; i < b.mult; ++i) out.push_back(b.value);
    std::sort(out.begin(), out.end());
    return out;
}

struct OracleEigen {
    Spectrum B, A, D;
};

// Realized two-factor product inside S^{k+1}_1(r) or H^{k+1}_1(-r).
struct InnerRealization {
    int p = 0;          // dimension of the first factor
    double c1 = 0.0;    // S^p(c1) (ex5) / H^p(-c1) (ex6)
    double c2 = 0.0;    // H^{k-p}(-c2) (ex5) / H^{k-p}(-c2) (ex6)
    double sign = 1.0;  // normal orientation of the inner hypersurface
    double resid_H = 0.0;
    double resid_R = 0.0;
    double kappa_first = 0.0;  // principal curvature on the first factor
    double kappa_second = 0.0; // and on the second
};

struct LandscapePoint {
    int p = 0;
    double c2 = 0.0;
    double resid = 0.0;
};

class NoRealization : public std::runtime_error {
public:
    NoRealization(double best, std::vector<LandscapePoint> land)
        : std::runtime_error("no product realization meets the curvature "
                             "targets (best residual " +
                             std::to_string(best) + ")"),
          best_residual(best), landscape(std::move(land)) {}

    double best_residual = 0.0;
    std::vector<LandscapePoint> landscape;
};

struct CatalogEntry {
    Family family = Family::Ex1;
    CatalogParams params;
    ChartImmersion chart;
    std::optional<InnerRealization> realization;
};

namespace catalog_detail {

inline constexpr double kHypLo = 0.25, kHypHi = 1.25;
inline constexpr double kAngLo = 0.35, kAngHi = 2.75;
inline constexpr double kFlatLo = -1.0, kFlatHi = 1.0;
inline constexpr double kTLo = 0.5, kTHi = 3.0;

inline ExprPtr mul(ExprPtr a, ExprPtr b) {
    return make_binary(BinaryOp::Mul, std::move(a), std::move(b));
}
inline ExprPtr div(ExprPtr a, ExprPtr b) {
    return make_binary(BinaryOp::Div, std::move(a), std::move(b));
}

// Unit sphere S^d via d polar angles starting at variable index v0:
// (cos t1, sin t1 cos t2, ..., sin t1 ... sin td).
inline std::vector<ExprPtr> unit_sphere(const ChartImmersion& c, int v0, int d) {
    std::vector<ExprPtr> out;
    if (d == 0) {
        out.push_back(make_constant(1.0));
        return out;
    }
    auto var = [&](int i) { return make_variable(v0 + i, c.variables[v0 + i]); };
    for (int i = 0; i <= d; ++i) {
        ExprPtr e;
        for (int j = 0; j < std::min(i, d); ++j) {
            ExprPtr s = make_unary(UnaryFn::Sin, var(j));
            e = e ? mul(e, s) : s;
        }
        if (i < d) {
            ExprPtr cc = make_unary(UnaryFn::Cos, var(i));
            e = e ? mul(e, cc) : cc;
        }
        out.push_back(e);
    }
    return out;
}

// Unit hyperbolic space H^d: (cosh t1, sinh t1 * S^{d-1}).
inline std::vector<ExprPtr> unit_hyperbolic(const ChartImmersion& c, int v0,
                                            int d) {
    std::vector<ExprPtr> out;
    auto var0 = make_variable(v0, c.variables[v0]);
    out.push_back(make_unary(UnaryFn::Cosh, var0));
    const auto sphere = unit_sphere(c, v0 + 1, d - 1);
    for (const auto& s : sphere)
        out.push_back(mul(make_unary(UnaryFn::Sinh, var0), s));
    return out;
}

inline void add_vars(ChartImmersion& c, int count, double lo, double hi) {
    for (int i = 0; i < count; ++i) {
        c.variables.push_back("u" + std::to_string(c.variables.size() + 1));
        c.domain_lo.push_back(lo);
        c.domain_hi.push_back(hi);
    }
}

// Angle block for S^d or H^d: first angle radial-like, the rest polar.
inline void add_sphere_vars(ChartImmersion& c, int d) {
    add_vars(c, d, kAngLo, kAngHi);
}
inline void add_hyperbolic_vars(ChartImmersion& c, int d) {
    if (d >= 1) add_vars(c, 1, kHypLo, kHypHi);
    if (d >= 2) add_vars(c, d - 1, kAngLo, kAngHi);
}

inline void require(bool ok, const char* param, const char* bound) {
    if (!ok) throw ConstraintViolation(param, bound);
}

} // namespace catalog_detail

// ---------------------------------------------------------------------------
// Closed-form eigenvalue tables.

// Shared B eigenvalues of the three two-block product families.
inline double product_b1(int n, int k) {
    return std::sqrt(static_cast<double>(n - 1) * (n - k) / k) / n;
}
inline double product_b2(int n, int k) {
    return -std::sqrt(static_cast<double>(n - 1) * k / (n - k)) / n;
}

inline double ex1_a1(int n, int k) {
    return static_cast<double>(n - 1) * (k - 2 * n) /
           (2.0 * n * n * (n - k));
}
inline double ex1_a2(int n, int k) {
    return static_cast<double>(n - 1) * k / (2.0 * n * n * (n - k));
}
inline double ex2_a1(int n, int k, double a) {
    return static_cast<double>(n - 1) / (k * (n - k)) *
           ((n - k) * (n - k) + n * n * a * a) / (2.0 * n * n);
}
inline double ex2_a2(int n, int k, double a) {
    return static_cast<double>(n - 1) / (k * (n - k)) *
           (static_cast<double>(k) * k - n * n * a * a - n * n) / (2.0 * n * n);
}
inline double ex3_a1(int n, int k, double a) {
    return static_cast<double>(n - 1) / (k * (n - k)) *
           ((n - k) * (n - k) - n * n * a * a) / (2.0 * n * n);
}
inline double ex3_a2(int n, int k, double a) {
    return static_cast<double>(n - 1) / (k * (n - k)) *
           (n * n * a * a - n * n + static_cast<double>(k) * k) / (2.0 * n * n);
}

// Normalization constant of the cone family.  The tabulated alpha^2 misses a
// 1/(a^2 b^2): with it, sum B^2 = (n-1)/n holds; without it the sum comes out
// scaled by a^2 b^2.  Both variants are exposed so the discrepancy can be
// demonstrated; computations use the corrected one.
inline double ex4_alpha2_corrected(int n, int p, int q, double a) {
    const double b2 = a * a - 1.0;
    const double a2 = a * a;
    const double num = q * (n - q) * a2 * a2 + p * (n - p) * b2 * b2 -
                       2.0 * p * q * a2 * b2;
    return num / ((n - 1) * a2 * b2);
}
inline double ex4_alpha2_printed(int n, int p, int q, double a) {
    const double b2 = a * a - 1.0;
    return ex4_alpha2_corrected(n, p, q, a) * a * a * b2;
}

struct Ex4Closed {
    double b1, b2, b3; // multiplicities q, p, n-p-q
    double a1, a2, a3;
};

// Closed forms for the cone family.  The a3 numerator carries -n^2 a^2 b^2
// (the tabulated +n^2 a^2 b^2 fails both the trace identity against kappa
// and the Gauss equation; see the flat p = q = 1, n = 3 case where the
// conformal metric is flat and tr A must equal -1/(2n)).
inline Ex4Closed ex4_closed(int n, int p, int q, double a) {
    const double alpha = std::sqrt(ex4_alpha2_corrected(n, p, q, a));
    const double b = std::sqrt(a * a - 1.0);
    const double a2 = a * a, b2 = b * b;
    const double X = p * b2 + q * a2;
    Ex4Closed out;
    out.b1 = (p * b2 - (n - q) * a2) / (n * a * b * alpha);
    out.b2 = (q * a2 - (n - p) * b2) / (n * a * b * alpha);
    out.b3 = (p * b2 + q * a2) / (n * a * b * alpha);
    const double den = 2.0 * n * n * a2 * b2 * alpha * alpha;
    out.a1 = (X * X - 2.0 * n * a2 * X + n * n * a2 * b2) / den;
    out.a2 = (X * X - 2.0 * n * b2 * X + n * n * a2 * b2) / den;
    out.a3 = (X * X - n * n * a2 * b2) / den;
    return out;
}

// ---------------------------------------------------------------------------
// Inner-hypersurface realization (the constrained CMC factor of ex5/ex6).

enum class InnerAmbient { DeSitter, AntiDeSitter };

struct InnerTargets {
    int n = 0; // ambient family dimension (for reporting only)
    int k = 0;
    double r = 1.0;
    double H1 = 0.0;
    double R1 = 0.0; // scalar curvature (sum of sectional curvatures)
};

inline InnerTargets ex5_targets(int n, int k, double r, double lambda) {
    InnerTargets t;
    t.n = n;
    t.k = k;
    t.r = r;
    t.H1 = static_cast<double>(n) / k * lambda;
    t.R1 = static_cast<double>(k) * (k - 1) / (r * r) +
           static_cast<double>(n - 1) / n - n * (n - 1) * lambda * lambda;
    return t;
}

inline InnerTargets ex6_targets(int n, int k, double r, double lambda) {
    InnerTargets t = ex5_targets(n, k, r, lambda);
    t.R1 = -static_cast<double>(k) * (k - 1) / (r * r) +
           static_cast<double>(n - 1) / n - n * (n - 1) * lambda * lambda;
    return t;
}

struct InnerResult {
    std::optional<InnerRealization> realization;
    double best_residual = 0.0;
    std::vector<LandscapePoint> landscape;
};

namespace catalog_detail {

struct ProductCurvature {
    double kappa1 = 0.0; // first factor (mult p)
    double kappa2 = 0.0; // second factor (mult k - p)
    double H = 0.0;
    double S = 0.0; // scalar curvature
};

// S^p(c1) x H^{k-p}(-c2) in S^{k+1}_1(r), c1^2 - c2^2 = r^2 (de Sitter), or
// H^p(-c1) x H^{k-p}(-c2) in H^{k+1}_1(-r), c1^2 + c2^2 = r^2 (anti-de
// Sitter), with unit normal orientation sigma.
inline ProductCurvature product_curvature(InnerAmbient amb, int k, int p,
                                          double r, double c1, double c2,
                                          double sigma) {
    ProductCurvature out;
    if (amb == InnerAmbient::DeSitter) {
        out.kappa1 = -sigma * c2 / (r * c1); // S^p(c1) block
        out.kappa2 = -sigma * c1 / (r * c2); // H^{k-p}(-c2) block
        out.H = (p * out.kappa1 + (k - p) * out.kappa2) / k;
        const double sumk2 =
            p * out.kappa1 * out.kappa1 + (k - p) * out.kappa2 * out.kappa2;
        out.S = static_cast<double>(k) * (k - 1) / (r * r) -
                (static_cast<double>(k) * k * out.H * out.H - sumk2);
    } else {
        out.kappa1 = sigma * c2 / (r * c1);  // H^p(-c1) block
        out.kappa2 = -sigma * c1 / (r * c2); // H^{k-p}(-c2) block
        out.H = (p * out.kappa1 + (k - p) * out.kappa2) / k;
        const double sumk2 =
            p * out.kappa1 * out.kappa1 + (k - p) * out.kappa2 * out.kappa2;
        out.S = -static_cast<double>(k) * (k - 1) / (r * r) -
                (static_cast<double>(k) * k * out.H * out.H - sumk2);
    }
    return out;
}

inline double containment_residual(InnerAmbient amb, double r, double c1,
                                   double c2) {
    return amb == InnerAmbient::DeSitter ? c1 * c1 - c2 * c2 - r * r
                                         : c1 * c1 + c2 * c2 - r * r;
}

} // namespace catalog_detail

// Damped Newton on (containment, scalar-curvature target) over (c1, c2) with
// a bisection fallback along the containment-reduced 1-d slice; the mean
// curvature target is then an acceptance check (the product family traces a
// curve in (H, R) space, so both targets can only be met on that curve).
inline InnerResult solve_inner_hypersurface(const InnerTargets& t,
                                            InnerAmbient amb,
                                            double tol = 1e-9) {
    using namespace catalog_detail;
    InnerResult res;
    res.best_residual = std::numeric_limits<double>::infinity();
    const int k = t.k;
    if (k < 2) throw ConstraintViolation("k", ">= 2");

    auto c1_of = [&](double c2) {
        return amb == InnerAmbient::DeSitter
                   ? std::sqrt(t.r * t.r + c2 * c2)
                   : std::sqrt(std::max(t.r * t.r - c2 * c2, 1e-300));
    };
    auto full_resid = [&](int p, double c1, double c2) {
        double best = std::numeric_limits<double>::infinity();
        for (double sigma : {1.0, -1.0}) {
            const auto pc = product_curvature(amb, k, p, t.r, c1, c2, sigma);
            const double rr = std::max(
                {std::abs(pc.H - t.H1), std::abs(pc.S - t.R1),
                 std::abs(containment_residual(amb, t.r, c1, c2))});
            best = std::min(best, rr);
        }
        return best;
    };

    const int grid = 240;
    for (int p = 1; p <= k - 1; ++p) {
        auto slice = [&](double c2) {
            const auto pc =
                product_curvature(amb, k, p, t.r, c1_of(c2), c2, 1.0);
            return pc.S - t.R1; // sigma-independent
        };
        const double lo = amb == InnerAmbient::DeSitter ? 0.02 * t.r
                                                        : 0.02 * t.r;
        const double hi = amb == InnerAmbient::DeSitter ? 25.0 * t.r
                                                        : 0.9998 * t.r;
        double prev_c2 = lo, prev_g = slice(lo);
        double best_here = full_resid(p, c1_of(lo), lo);
        double best_c2 = lo;
        std::vector<std::pair<double, double>> brackets;
        for (int i = 1; i <= grid; ++i) {
            const double c2 = lo + (hi - lo) * i / grid;
            const double g = slice(c2);
            if (std::isfinite(prev_g) && std::isfinite(g) &&
                ((prev_g < 0) != (g < 0)))
                brackets.emplace_back(prev_c2, c2);
            const double rr = full_resid(p, c1_of(c2), c2);
            if (rr < best_here) {
                best_here = rr;
                best_c2 = c2;
            }
            prev_c2 = c2;
            prev_g = g;
        }

        // Newton refinement on (containment, R) from each bracket midpoint,
        // then bisection if Newton wanders.
        auto try_candidate = [&](double c2) {
            double x1 = c1_of(c2), x2 = c2;
            for (int it = 0; it < 60; ++it) {
                const double f1 = containment_residual(amb, t.r, x1, x2);
                const double f2 =
                    product_curvature(amb, k, p, t.r, x1, x2, 1.0).S - t.R1;
                const double f0 = std::abs(f1) + std::abs(f2);
                if (f0 < 1e-14) break;
                const double h1 = std::max(1e-8, 1e-8 * std::abs(x1));
                const double h2 = std::max(1e-8, 1e-8 * std::abs(x2));
                const double j11 =
                    (containment_residual(amb, t.r, x1 + h1, x2) - f1) / h1;
                const double j12 =
                    (containment_residual(amb, t.r, x1, x2 + h2) - f1) / h2;
                const double j21 =
                    (product_curvature(amb, k, p, t.r, x1 + h1, x2, 1.0).S -
                     t.R1 - f2) / h1;
                const double j22 =
                    (product_curvature(amb, k, p, t.r, x1, x2 + h2, 1.0).S -
                     t.R1 - f2) / h2;
                const double det = j11 * j22 - j12 * j21;
                if (std::abs(det) < 1e-300) break;
                double dx1 = -(j22 * f1 - j12 * f2) / det;
                double dx2 = -(-j21 * f1 + j11 * f2) / det;
                double step = 1.0;
                for (int damp = 0; damp < 30; ++damp) {
                    const double y1 = x1 + step * dx1, y2 = x2 + step * dx2;
                    if (y1 > 0 && y2 > 0 &&
                        std::abs(containment_residual(amb, t.r, y1, y2)) +
                                std::abs(product_curvature(amb, k, p, t.r, y1,
                                                           y2, 1.0)
                                             .S -
                                         t.R1) <
                            f0) {
                        x1 = y1;
                        x2 = y2;
                        break;
                    }
                    step *= 0.5;
                    if (damp == 29) it = 60;
                }
            }
            return std::pair{x1, x2};
        };

        std::vector<double> seeds;
        for (auto [bl, bh] : brackets) {
            // Bisection on the reduced slice as the robust fallback.
            double a = bl, b = bh, ga = slice(a);
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                const double gm = slice(m);
                if ((ga < 0) == (gm < 0)) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            seeds.push_back(0.5 * (a + b));
        }
        seeds.push_back(best_c2);

        for (double c2seed : seeds) {
            const auto [x1, x2] = try_candidate(c2seed);
            for (double sigma : {1.0, -1.0}) {
                const auto pc = product_curvature(amb, k, p, t.r, x1, x2, sigma);
                const double rh = std::abs(pc.H - t.H1);
                const double rs = std::abs(pc.S - t.R1);
                const double rc =
                    std::abs(containment_residual(amb, t.r, x1, x2));
                const double rr = std::max({rh, rs, rc});
                if (rr < res.best_residual) res.best_residual = rr;
                if (rr < tol &&
                    std::abs(pc.kappa1 - pc.kappa2) > 1e-9) {
                    InnerRealization real;
                    real.p = p;
                    real.c1 = x1;
                    real.c2 = x2;
                    real.sign = sigma;
                    real.resid_H = rh;
                    real.resid_R = rs;
                    real.kappa_first = pc.kappa1;
                    real.kappa_second = pc.kappa2;
                    res.realization = real;
                    return res;
                }
            }
        }
        res.landscape.push_back(LandscapePoint{p, best_c2, best_here});
    }
    return res;
}

// ---------------------------------------------------------------------------
// Chart generators.

inline CatalogEntry build_entry(Family family, const CatalogParams& prm) {
    using namespace catalog_detail;
    const int n = prm.n;
    require(n >= 2 && n <= kMaxJetVars, "n", "2 <= n <= 8");

    CatalogEntry entry;
    entry.family = family;
    entry.params = prm;
    ChartImmersion& c = entry.chart;

    auto param_a = [&]() { return make_parameter(0, "a"); };

    switch (family) {
    case Family::Ex1: {
        require(prm.k >= 1 && prm.k <= n - 1, "k", "1 <= k <= n-1");
        require(prm.a > 0, "a", "> 0");
        c.name = "ex1_n" + std::to_string(n) + "_k" + std::to_string(prm.k);
        c.ambient = {SpaceForm::Flat, n};
        add_hyperbolic_vars(c, prm.k);
        add_vars(c, n - prm.k, kFlatLo, kFlatHi);
        c.param_names = {"a"};
        c.param_values = {prm.a};
        for (const auto& e : unit_hyperbolic(c, 0, prm.k))
            c.components.push_back(mul(param_a(), e));
        for (int i = prm.k; i < n; ++i)
            c.components.push_back(make_variable(i, c.variables[i]));
        break;
    }
    case Family::Ex2: {
        require(prm.k >= 1 && prm.k <= n - 1, "k", "1 <= k <= n-1");
        require(prm.a > 0, "a", "> 0");
        c.name = "ex2_n" + std::to_string(n) + "_k" + std::to_string(prm.k);
        c.ambient = {SpaceForm::DeSitter, n};
        add_sphere_vars(c, prm.k);
        add_hyperbolic_vars(c, n - prm.k);
        c.param_names = {"a"};
        c.param_values = {prm.a};
        ExprPtr scale_s =
            make_unary(UnaryFn::Sqrt,
                       make_binary(BinaryOp::Add, make_constant(1.0),
                                   mul(param_a(), param_a())));
        const auto hyp = unit_hyperbolic(c, prm.k, n - prm.k);
        c.components.push_back(mul(param_a(), hyp[0])); // timelike first
        for (const auto& e : unit_sphere(c, 0, prm.k))
            c.components.push_back(mul(scale_s, e));
        for (size_t i = 1; i < hyp.size(); ++i)
            c.components.push_back(mul(param_a(), hyp[i]));
        break;
    }
    case Family::Ex3: {
        require(prm.k >= 1 && prm.k <= n - 1, "k", "1 <= k <= n-1");
        require(prm.a > 0 && prm.a < 1, "a", "0 < a < 1");
        c.name = "ex3_n" + std::to_string(n) + "_k" + std::to_string(prm.k);
        c.ambient = {SpaceForm::AntiDeSitter, n};
        add_hyperbolic_vars(c, prm.k);
        add_hyperbolic_vars(c, n - prm.k);
        c.param_names = {"a"};
        c.param_values = {prm.a};
        ExprPtr scale1 =
            make_unary(UnaryFn::Sqrt,
                       make_binary(BinaryOp::Sub, make_constant(1.0),
                                   mul(param_a(), param_a())));
        const auto h1 = unit_hyperbolic(c, 0, prm.k);
        const auto h2 = unit_hyperbolic(c, prm.k, n - prm.k);
        c.components.push_back(mul(scale1, h1[0]));
        c.components.push_back(mul(param_a(), h2[0]));
        for (size_t i = 1; i < h1.size(); ++i)
            c.components.push_back(mul(scale1, h1[i]));
        for (size_t i = 1; i < h2.size(); ++i)
            c.components.push_back(mul(param_a(), h2[i]));
        break;
    }
    case Family::Ex4: {
        require(prm.p >= 1, "p", ">= 1");
        require(prm.q >= 1, "q", ">= 1");
        require(prm.p + prm.q < n, "p+q", "< n");
        require(prm.a > 1, "a", "> 1");
        c.name = "ex4_n" + std::to_string(n) + "_p" + std::to_string(prm.p) +
                 "_q" + std::to_string(prm.q);
        c.ambient = {SpaceForm::Flat, n};
        add_hyperbolic_vars(c, prm.q);
        add_sphere_vars(c, prm.p);
        add_vars(c, 1, kTLo, kTHi); // the cone parameter t
        add_vars(c, n - prm.p - prm.q - 1, kFlatLo, kFlatHi);
        c.param_names = {"a"};
        c.param_values = {prm.a};
        const int tvar = prm.p + prm.q;
        ExprPtr tv = make_variable(tvar, c.variables[tvar]);
        ExprPtr bexpr =
            make_unary(UnaryFn::Sqrt,
                       make_binary(BinaryOp::Sub, mul(param_a(), param_a()),
                                   make_constant(1.0)));
        for (const auto& e : unit_hyperbolic(c, 0, prm.q))
            c.components.push_back(mul(mul(tv, bexpr), e));
        for (const auto& e : unit_sphere(c, prm.q, prm.p))
            c.components.push_back(mul(mul(tv, param_a()), e));
        for (int i = prm.p + prm.q + 1; i < n; ++i)
            c.components.push_back(make_variable(i, c.variables[i]));
        break;
    }
    case Family::Ex5: {
        require(prm.k >= 2 && prm.k <= n - 1, "k", "2 <= k <= n-1");
        require(prm.r > 0, "r", "> 0");
        const InnerResult sol = solve_inner_hypersurface(
            ex5_targets(n, prm.k, prm.r, prm.lambda0), InnerAmbient::DeSitter);
        if (!sol.realization)
            throw NoRealization(sol.best_residual, sol.landscape);
        const InnerRealization& real = *sol.realization;
        entry.realization = real;
        c.name = "ex5_n" + std::to_string(n) + "_k" + std::to_string(prm.k);
        c.ambient = {SpaceForm::DeSitter, n};
        const int k = prm.k, p = real.p;
        add_hyperbolic_vars(c, k - p); // y_1's H factor
        add_sphere_vars(c, p);         // y_1's S factor
        add_hyperbolic_vars(c, n - k); // outer H^{n-k}(-r)
        c.param_names = {"c1", "c2", "r"};
        c.param_values = {real.c1, real.c2, prm.r};
        auto pc1 = make_parameter(0, "c1");
        auto pc2 = make_parameter(1, "c2");
        auto pr = make_parameter(2, "r");
        const auto xh = unit_hyperbolic(c, 0, k - p);
        const auto xs = unit_sphere(c, k - p, p);
        const auto outer = unit_hyperbolic(c, k, n - k);
        ExprPtr y0 = mul(pr, outer[0]);
        for (const auto& e : xh)
            c.components.push_back(div(mul(pc2, e), y0));
        for (const auto& e : xs)
            c.components.push_back(div(mul(pc1, e), y0));
        for (size_t i = 1; i < outer.size(); ++i)
            c.components.push_back(div(mul(pr, outer[i]), y0));
        break;
    }
    case Family::Ex6: {
        require(prm.k >= 2 && prm.k <= n - 1, "k", "2 <= k <= n-1");
        require(prm.r > 0, "r", "> 0");
        const InnerResult sol = solve_inner_hypersurface(
            ex6_targets(n, prm.k, prm.r, prm.lambda0),
            InnerAmbient::AntiDeSitter);
        if (!sol.realization)
            throw NoRealization(sol.best_residual, sol.landscape);
        const InnerRealization& real = *sol.realization;
        entry.realization = real;
        c.name = "ex6_n" + std::to_string(n) + "_k" + std::to_string(prm.k);
        c.ambient = {SpaceForm::DeSitter, n};
        const int k = prm.k, p = real.p;
        add_hyperbolic_vars(c, p);     // H^p(-c1), carries y_0
        add_hyperbolic_vars(c, k - p); // H^{k-p}(-c2), carries the tilde head
        add_sphere_vars(c, n - k);     // outer S^{n-k}(r)
        c.param_names = {"c1", "c2", "r"};
        c.param_values = {real.c1, real.c2, prm.r};
        auto pc1 = make_parameter(0, "c1");
        auto pc2 = make_parameter(1, "c2");
        auto pr = make_parameter(2, "r");
        const auto x1 = unit_hyperbolic(c, 0, p);
        const auto x2 = unit_hyperbolic(c, p, k - p);
        const auto sph = unit_sphere(c, k, n - k);
        ExprPtr y0 = mul(pc1, x1[0]);
        c.components.push_back(div(mul(pc2, x2[0]), y0)); // tilde y_0 first
        for (size_t i = 1; i < x1.size(); ++i)
            c.components.push_back(div(mul(pc1, x1[i]), y0));
        for (size_t i = 1; i < x2.size(); ++i)
            c.components.push_back(div(mul(pc2, x2[i]), y0));
        for (const auto& e : sph)
            c.components.push_back(div(mul(pr, e), y0));
        break;
    }
    }
    return entry;
}

// ---------------------------------------------------------------------------
// Oracles.

inline OracleEigen oracle_eigenvalues(const CatalogEntry& entry,
                                      double lambda) {
    const int n = entry.params.n;
    OracleEigen out;
    auto two_block = [&](int k, double a1, double a2) {
        const double b1 = product_b1(n, k), b2 = product_b2(n, k);
        out.B = {{b1, k}, {b2, n - k}};
        out.A = {{a1, k}, {a2, n - k}};
        out.D = {{a1 + lambda * b1, k}, {a2 + lambda * b2, n - k}};
    };
    switch (entry.family) {
    case Family::Ex1:
        two_block(entry.params.k, ex1_a1(n, entry.params.k),
                  ex1_a2(n, entry.params.k));
        break;
    case Family::Ex2:
        two_block(entry.params.k, ex2_a1(n, entry.params.k, entry.params.a),
                  ex2_a2(n, entry.params.k, entry.params.a));
        break;
    case Family::Ex3:
        two_block(entry.params.k, ex3_a1(n, entry.params.k, entry.params.a),
                  ex3_a2(n, entry.params.k, entry.params.a));
        break;
    case Family::Ex4: {
        const int p = entry.params.p, q = entry.params.q;
        const Ex4Closed cf = ex4_closed(n, p, q, entry.params.a);
        out.B = {{cf.b1, q}, {cf.b2, p}, {cf.b3, n - p - q}};
        out.A = {{cf.a1, q}, {cf.a2, p}, {cf.a3, n - p - q}};
        out.D = {{cf.a1 + lambda * cf.b1, q},
                 {cf.a2 + lambda * cf.b2, p},
                 {cf.a3 + lambda * cf.b3, n - p - q}};
        break;
    }
    case Family::Ex5: {
        const InnerRealization& real = *entry.realization;
        const int k = entry.params.k, p = real.p;
        const double r = entry.params.r, l0 = entry.params.lambda0;
        const double lr2 = l0 * l0 * r * r;
        // kappa_first sits on the S^p block, kappa_second on H^{k-p}.
        out.B = {{real.kappa_second - l0, k - p},
                 {real.kappa_first - l0, p},
                 {-l0, n - k}};
        out.A = {{(1 + lr2) / (2 * r * r) - l0 * real.kappa_second, k - p},
                 {(1 + lr2) / (2 * r * r) - l0 * real.kappa_first, p},
                 {(lr2 - 1) / (2 * r * r), n - k}};
        out.D = {{(1 - lr2) / (2 * r * r), k},
                 {-(1 + lr2) / (2 * r * r), n - k}};
        // D above is exact at lambda = lambda0; at other lambda fall back to
        // A + lambda B blockwise.
        if (lambda != l0) {
            out.D.clear();
            for (size_t i = 0; i < out.A.size(); ++i)
                out.D.push_back({out.A[i].value + lambda * out.B[i].value,
                                 out.A[i].mult});
        }
        break;
    }
    case Family::Ex6: {
        const InnerRealization& real = *entry.realization;
        const int k = entry.params.k, p = real.p;
        const double r = entry.params.r, l0 = entry.params.lambda0;
        const double lr2 = l0 * l0 * r * r;
        out.B = {{real.kappa_first - l0, p},
                 {real.kappa_second - l0, k - p},
                 {-l0, n - k}};
        out.A = {{(lr2 - 1) / (2 * r * r) - l0 * real.kappa_first, p},
                 {(lr2 - 1) / (2 * r * r) - l0 * real.kappa_second, k - p},
                 {(lr2 + 1) / (2 * r * r), n - k}};
        out.D = {{-(1 + lr2) / (2 * r * r), k},
                 {(1 - lr2) / (2 * r * r), n - k}};
        if (lambda != l0) {
            out.D.clear();
            for (size_t i = 0; i < out.A.size(); ++i)
                out.D.push_back({out.A[i].value + lambda * out.B[i].value,
                                 out.A[i].mult});
        }
        break;
    }
    }
    return out;
}

} // namespace conforma
