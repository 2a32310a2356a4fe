#include "conforma/catalog.hpp"
#include "conforma/checker.hpp"
#include "conforma/invariants.hpp"
#include "conforma/parser.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace conforma;

namespace {

double linf(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> negate_sorted(const std::vector<double>& a) {
    std::vector<double> r(a.rbegin(), a.rend());
    for (double& v : r) v = -v;
    return r;
}

// Sign-insensitive spectrum distance for B-like quantities.
double dist_pm(const Spectrum& oracle, const std::vector<double>& got) {
    const auto want = expand_sorted(oracle);
    return std::min(linf(want, got), linf(want, negate_sorted(got)));
}

} // namespace

TEST_CASE("constraint checks reject inadmissible parameters") {
    CatalogParams prm;
    prm.n = 3;
    prm.k = 1;
    prm.a = 1.2;
    CHECK_THROWS_AS(build_entry(Family::Ex3, prm), ConstraintViolation);
    prm.a = 0.5;
    prm.k = 3;
    CHECK_THROWS_AS(build_entry(Family::Ex3, prm), ConstraintViolation);
    prm.k = 1;
    prm.a = -1.0;
    CHECK_THROWS_AS(build_entry(Family::Ex1, prm), ConstraintViolation);
    prm = CatalogParams{};
    prm.n = 4;
    prm.p = 2;
    prm.q = 2;
    prm.a = 1.5;
    CHECK_THROWS_AS(build_entry(Family::Ex4, prm), ConstraintViolation);
}

TEST_CASE("catalog charts satisfy the space-form constraint") {
    CatalogParams prm;
    prm.n = 4;
    prm.k = 2;
    prm.a = 0.8;
    for (Family f : {Family::Ex2, Family::Ex3}) {
        const CatalogEntry entry = build_entry(f, prm);
        for (const auto& p : sample_points(entry.chart, 12, 7))
            CHECK(space_form_residual(entry.chart, p) < 1e-12);
    }
    // A deliberately mis-scaled chart sits off the quadric by |1.1^2 - 1|.
    CatalogEntry ex2 = build_entry(Family::Ex2, prm);
    ChartImmersion scaled = ex2.chart;
    for (auto& comp : scaled.components)
        comp = make_binary(BinaryOp::Mul, make_constant(1.1), comp);
    const auto pts = sample_points(scaled, 3, 1);
    CHECK(space_form_residual(scaled, pts[0]) ==
          Catch::Approx(0.21).margin(1e-9));
}

TEST_CASE("generated charts reproduce the closed-form eigenvalues") {
    struct Case {
        Family f;
        CatalogParams prm;
    };
    std::vector<Case> cases;
    for (int n : {3, 4, 5}) {
        for (int k = 1; k <= n - 1; ++k) {
            for (double a : {0.5, 1.0, 1.5}) {
                CatalogParams prm;
                prm.n = n;
                prm.k = k;
                prm.a = a;
                cases.push_back({Family::Ex1, prm});
                cases.push_back({Family::Ex2, prm});
                if (a < 1.0) cases.push_back({Family::Ex3, prm});
            }
        }
    }
    {
        CatalogParams prm;
        prm.n = 4;
        prm.p = 1;
        prm.q = 2;
        prm.a = 1.6;
        cases.push_back({Family::Ex4, prm});
        prm.n = 5;
        prm.p = 2;
        prm.q = 1;
        prm.a = 1.3;
        cases.push_back({Family::Ex4, prm});
    }
    const double lambda = 0.4;
    for (const auto& cs : cases) {
        const CatalogEntry entry = build_entry(cs.f, cs.prm);
        const OracleEigen oracle = oracle_eigenvalues(entry, lambda);
        const auto pts = sample_points(entry.chart, 3, 11);
        for (const auto& p : pts) {
            const ConformalData d = invariants_at(entry.chart, p, lambda);
            CHECK(linf(expand_sorted(oracle.A), d.eig_A) < 1e-8);
            CHECK(dist_pm(oracle.B, d.eig_B) < 1e-8);
            // D up to the simultaneous (B, lambda) flip
            const ConformalData dflip =
                invariants_at(entry.chart, p, -lambda);
            const double dd =
                std::min(linf(expand_sorted(oracle.D), d.eig_D),
                         linf(expand_sorted(oracle.D), dflip.eig_D));
            CHECK(dd < 1e-8);
            for (double ci : d.C) CHECK(std::abs(ci) < 1e-9);
        }
    }
}

TEST_CASE("oracle spectra satisfy the trace and norm identities") {
    for (int n : {3, 4, 5}) {
        for (int k = 1; k <= n - 1; ++k) {
            for (double a : {0.5, 1.0, 1.5}) {
                CatalogParams prm;
                prm.n = n;
                prm.k = k;
                prm.a = a;
                for (Family f : {Family::Ex1, Family::Ex2, Family::Ex3}) {
                    if (f == Family::Ex3 && a >= 1.0) continue;
                    const auto oracle =
                        oracle_eigenvalues(build_entry(f, prm), 0.0);
                    double tr = 0.0, nrm = 0.0;
                    for (const auto& blk : oracle.B) {
                        tr += blk.mult * blk.value;
                        nrm += blk.mult * blk.value * blk.value;
                    }
                    CHECK(std::abs(tr) < 1e-12);
                    CHECK(nrm == Catch::Approx((n - 1.0) / n).margin(1e-12));
                }
            }
        }
    }
    // Cone family: corrected normalization passes, tabulated one fails by
    // a^2 b^2 (for p = q = 1, n = 3, a = sqrt(2): 1/3 instead of 2/3).
    CatalogParams prm;
    prm.n = 3;
    prm.p = 1;
    prm.q = 1;
    prm.a = std::sqrt(2.0);
    const auto oracle = oracle_eigenvalues(build_entry(Family::Ex4, prm), 0.0);
    double nrm = 0.0;
    for (const auto& blk : oracle.B) nrm += blk.mult * blk.value * blk.value;
    CHECK(nrm == Catch::Approx(2.0 / 3).margin(1e-9));
    const double ratio = ex4_alpha2_printed(3, 1, 1, prm.a) /
                         ex4_alpha2_corrected(3, 1, 1, prm.a);
    CHECK(nrm / ratio == Catch::Approx(1.0 / 3).margin(1e-9));
}

TEST_CASE("emitted chart sources reproduce the entry") {
    CatalogParams prm;
    prm.n = 3;
    prm.p = 1;
    prm.q = 1;
    prm.a = std::sqrt(2.0);
    const CatalogEntry entry = build_entry(Family::Ex4, prm);
    const std::string src = chart_to_source(entry.chart);
    const ChartImmersion parsed = parse_chart(src);
    CHECK(chart_to_source(parsed) == src);
    const std::vector<double> p{0.5, 1.0, 1.5};
    const ConformalData d0 = invariants_at(entry.chart, p, 0.25);
    const ConformalData d1 = invariants_at(parsed, p, 0.25);
    CHECK(linf(d0.eig_A, d1.eig_A) < 1e-14);
    CHECK(linf(d0.eig_B, d1.eig_B) < 1e-14);
}

TEST_CASE("inner hypersurface solver: realizable anti-de Sitter instance") {
    // lambda = 0 forces a minimal product; that pins r^2 = k n / (n - 1).
    const int n = 4, k = 3;
    const double r = 2.0;
    const InnerTargets t = ex6_targets(n, k, r, 0.0);
    CHECK(t.H1 == 0.0);
    const InnerResult res =
        solve_inner_hypersurface(t, InnerAmbient::AntiDeSitter);
    REQUIRE(res.realization.has_value());
    const InnerRealization& real = *res.realization;
    CHECK(real.resid_H < 1e-9);
    CHECK(real.resid_R < 1e-9);
    CHECK(real.c1 * real.c1 + real.c2 * real.c2 ==
          Catch::Approx(r * r).margin(1e-9));
    CHECK(std::abs(real.kappa_first - real.kappa_second) > 1e-9);
}

TEST_CASE("inner hypersurface solver: de Sitter curve instance") {
    // Pick a point on the realizable curve: s = c2/c1 = 0.6, p = 1, k = 3.
    const int n = 4, k = 3, p = 1;
    const double s = 0.6;
    const double phi = p * s * s + (k - p) / (s * s);
    const double f = p * s + (k - p) / s;
    const double r2 = (n * phi - f * f) / (n - 1);
    REQUIRE(r2 > 0.0);
    const double r = std::sqrt(r2);
    const double lambda = f / (n * r);
    const InnerTargets t = ex5_targets(n, k, r, lambda);
    const InnerResult res =
        solve_inner_hypersurface(t, InnerAmbient::DeSitter);
    REQUIRE(res.realization.has_value());
    CHECK(res.realization->resid_H < 1e-9);
    CHECK(res.realization->resid_R < 1e-9);
    CHECK(res.realization->c2 / res.realization->c1 ==
          Catch::Approx(s).margin(1e-7));
}

TEST_CASE("inner hypersurface solver: unreachable targets report a landscape") {
    // H = 0 is unattainable for these products in the de Sitter case: both
    // curvature blocks share a sign, so |H| is bounded away from zero.
    const InnerTargets t = ex5_targets(4, 3, 1.0, 0.0);
    const InnerResult res =
        solve_inner_hypersurface(t, InnerAmbient::DeSitter);
    CHECK_FALSE(res.realization.has_value());
    CHECK(res.best_residual > 1e-9);
    CHECK_FALSE(res.landscape.empty());

    CatalogParams prm;
    prm.n = 4;
    prm.k = 3;
    prm.r = 1.0;
    prm.lambda0 = 0.0;
    CHECK_THROWS_AS(build_entry(Family::Ex5, prm), NoRealization);
}

TEST_CASE("sphere-bundle entries match the block eigenvalue tables") {
    // ex6 instance with lambda = 0, r = 2
    {
        CatalogParams prm;
        prm.n = 4;
        prm.k = 3;
        prm.r = 2.0;
        prm.lambda0 = 0.0;
        const CatalogEntry entry = build_entry(Family::Ex6, prm);
        const auto pts = sample_points(entry.chart, 4, 3);
        for (const auto& p : pts)
            CHECK(space_form_residual(entry.chart, p) < 1e-11);
        const OracleEigen oracle = oracle_eigenvalues(entry, 0.0);
        // D blocks: -(1 + l^2 r^2)/(2 r^2) x k, (1 - l^2 r^2)/(2 r^2) x (n-k)
        CHECK(expand_sorted(oracle.D).front() ==
              Catch::Approx(-1.0 / 8).margin(1e-12));
        CHECK(expand_sorted(oracle.D).back() ==
              Catch::Approx(1.0 / 8).margin(1e-12));
        for (const auto& p : pts) {
            const ConformalData d = invariants_at(entry.chart, p, 0.0);
            CHECK(linf(expand_sorted(oracle.D), d.eig_D) < 1e-7);
            CHECK(dist_pm(oracle.B, d.eig_B) < 1e-7);
            CHECK(linf(expand_sorted(oracle.A), d.eig_A) < 1e-7);
            for (double ci : d.C) CHECK(std::abs(ci) < 1e-9);
            // at least three distinct B eigenvalues
            std::vector<double> eb = d.eig_B;
            int distinct = 1;
            for (size_t i = 1; i < eb.size(); ++i)
                if (eb[i] - eb[i - 1] > 1e-6) ++distinct;
            CHECK(distinct >= 3);
        }
    }
    // ex5 instance on the realizable curve
    {
        const int n = 4, k = 3, p = 1;
        const double s = 0.6;
        const double phi = p * s * s + (k - p) / (s * s);
        const double f = p * s + (k - p) / s;
        const double r = std::sqrt((n * phi - f * f) / (n - 1));
        const double lambda = f / (n * r);
        CatalogParams prm;
        prm.n = n;
        prm.k = k;
        prm.r = r;
        prm.lambda0 = lambda;
        const CatalogEntry entry = build_entry(Family::Ex5, prm);
        const OracleEigen oracle = oracle_eigenvalues(entry, lambda);
        const auto pts = sample_points(entry.chart, 4, 5);
        for (const auto& p2 : pts) {
            CHECK(space_form_residual(entry.chart, p2) < 1e-11);
            const ConformalData d = invariants_at(entry.chart, p2, lambda);
            const ConformalData dflip = invariants_at(entry.chart, p2, -lambda);
            const double dd =
                std::min(linf(expand_sorted(oracle.D), d.eig_D),
                         linf(expand_sorted(oracle.D), dflip.eig_D));
            CHECK(dd < 1e-7);
            CHECK(dist_pm(oracle.B, d.eig_B) < 1e-7);
            CHECK(linf(expand_sorted(oracle.A), d.eig_A) < 1e-7);
            for (double ci : d.C) CHECK(std::abs(ci) < 1e-9);
        }
    }
}
