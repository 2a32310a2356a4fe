#include "conforma/shape.hpp"

#include "test_charts.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace conforma;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

}

TEST_CASE("induced metric of the hyperbolic cylinder is diag(a^2, 1, 1)") {
    auto chart = test_charts::get(test_charts::kEx1K1);
    const std::vector<double> p{0.7, 0.1, -0.3};
    const DMatrix I = induced_metric(chart, p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double want = (i == j) ? (i == 0 ? 2.25 : 1.0) : 0.0;
            CHECK(I(i, j) == Catch::Approx(want).margin(1e-12));
        }
}

TEST_CASE("timelike tangent directions are rejected") {
    auto chart = test_charts::get(test_charts::kTimelike);
    const std::vector<double> p{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(induced_metric(chart, p), NotSpacelike);
    CHECK_THROWS_AS(compute_shape(chart, p), NotSpacelike);
}

TEST_CASE("cone chart metric blocks scale with t^2") {
    auto chart = test_charts::get(test_charts::kEx4PQ1);
    const std::vector<double> p{0.4, 1.0, 2.0};
    const DMatrix I = induced_metric(chart, p);
    CHECK(I(0, 0) == Catch::Approx(4.0).margin(1e-12));  // t^2 (a^2 - 1)
    CHECK(I(1, 1) == Catch::Approx(8.0).margin(1e-12));  // t^2 a^2
    CHECK(I(2, 2) == Catch::Approx(1.0).margin(1e-12));
    CHECK(I(0, 1) == Catch::Approx(0.0).margin(1e-12));
    CHECK(I(0, 2) == Catch::Approx(0.0).margin(1e-12));
    CHECK(I(1, 2) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("unit normal of the hyperbolic cylinder") {
    auto chart = test_charts::get(test_charts::kEx1K1);
    const std::vector<double> p{0.7, 0.1, -0.3};
    const auto e = unit_normal(chart, p);
    CHECK(e[0] == Catch::Approx(std::cosh(0.7)).margin(1e-12));
    CHECK(e[1] == Catch::Approx(std::sinh(0.7)).margin(1e-12));
    CHECK(e[2] == Catch::Approx(0.0).margin(1e-12));
    CHECK(e[3] == Catch::Approx(0.0).margin(1e-12));
    CHECK(inner_s(e, e, 1) == Catch::Approx(-1.0).margin(1e-12));

    const std::vector<double> origin{0.0, 0.1, -0.3};
    const auto e0 = unit_normal(chart, origin);
    CHECK(e0[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(e0[1] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("cone chart normal is ((a/b) u', (b/a) u'', 0)") {
    auto chart = test_charts::get(test_charts::kEx4PQ1);
    const std::vector<double> p{0.8, 1.3, 1.7};
    const double a = kSqrt2, b = 1.0;
    const auto e = unit_normal(chart, p);
    CHECK(e[0] == Catch::Approx(a / b * b * std::cosh(0.8)).margin(1e-12));
    CHECK(e[1] == Catch::Approx(a / b * b * std::sinh(0.8)).margin(1e-12));
    CHECK(e[2] == Catch::Approx(b / a * a * std::cos(1.3)).margin(1e-12));
    CHECK(e[3] == Catch::Approx(b / a * a * std::sin(1.3)).margin(1e-12));
    CHECK(inner_s(e, e, 1) == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("spacelike normal direction raises DegenerateNormal") {
    auto chart = test_charts::get(test_charts::kSpacelikeNormal);
    const std::vector<double> p{0.5, 0.2};
    CHECK_THROWS_AS(unit_normal(chart, p), DegenerateNormal);
}

TEST_CASE("second fundamental form of the hyperbolic cylinder") {
    auto chart = test_charts::get(test_charts::kEx1K1);
    const std::vector<double> p{0.9, -0.2, 0.4};
    const FundamentalForms f = fundamental_forms(chart, p);
    const double a = 1.5;
    CHECK(f.h_onb(0, 0) == Catch::Approx(-1.0 / a).margin(1e-12));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i || j)
                CHECK(f.h_onb(i, j) == Catch::Approx(0.0).margin(1e-12));
    CHECK(f.H == Catch::Approx(-1.0 / (3 * a)).margin(1e-12));
    CHECK(f.principal.front() == Catch::Approx(-1.0 / a).margin(1e-12));
    CHECK(f.principal[1] == Catch::Approx(0.0).margin(1e-12));
    CHECK(f.norm2_II == Catch::Approx(1.0 / (a * a)).margin(1e-12));
}

TEST_CASE("second fundamental form of the de Sitter product") {
    auto chart = test_charts::get(test_charts::kEx2K1);
    const std::vector<double> p{0.8, 0.6, 1.1};
    const FundamentalForms f = fundamental_forms(chart, p);
    // a = 1: h_onb = -diag(1/sqrt(2), sqrt(2), sqrt(2)), H = -5/(3 sqrt(2))
    CHECK(f.h_onb(0, 0) == Catch::Approx(-1.0 / kSqrt2).margin(1e-11));
    CHECK(f.h_onb(1, 1) == Catch::Approx(-kSqrt2).margin(1e-11));
    CHECK(f.h_onb(2, 2) == Catch::Approx(-kSqrt2).margin(1e-11));
    CHECK(f.H == Catch::Approx(-5.0 / (3 * kSqrt2)).margin(1e-11));
    CHECK(f.h_onb(0, 1) == Catch::Approx(0.0).margin(1e-11));
}

TEST_CASE("cone chart principal curvatures with multiplicities") {
    auto chart = test_charts::get(test_charts::kEx4PQ1);
    const double a = kSqrt2, b = 1.0;
    for (double t : {0.7, 1.0, 2.5}) {
        const std::vector<double> p{0.5, 0.9, t};
        const FundamentalForms f = fundamental_forms(chart, p);
        // ascending: -a/(bt) < -b/(at) < 0
        CHECK(f.principal[0] == Catch::Approx(-a / (b * t)).margin(1e-11));
        CHECK(f.principal[1] == Catch::Approx(-b / (a * t)).margin(1e-11));
        CHECK(f.principal[2] == Catch::Approx(0.0).margin(1e-11));
    }
}

TEST_CASE("two routes to the second fundamental form agree") {
    // <d2x, e> versus -<dx, de> with de from differencing the normal field.
    const double h = 1e-4;
    for (const char* src : {test_charts::kEx1K1, test_charts::kEx2K1}) {
        auto chart = test_charts::get(src);
        const int n = chart.dim();
        const int s = chart.ambient.signature_index();
        std::vector<double> p(n);
        for (int i = 0; i < n; ++i)
            p[i] = 0.5 * (chart.domain_lo[i] + chart.domain_hi[i]);
        const ShapeContext ctx = compute_shape(chart, p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<double> pp = p, pm = p;
                pp[j] += h;
                pm[j] -= h;
                const auto ep = unit_normal(chart, pp);
                const auto em = unit_normal(chart, pm);
                double alt = 0.0;
                for (int aa = 0; aa < ctx.N; ++aa) {
                    const double de = (ep[aa] - em[aa]) / (2 * h);
                    const double sg = aa < s ? -1.0 : 1.0;
                    alt -= sg * ctx.dx[i][aa].value() * de;
                }
                CHECK(ctx.h(i, j).value() == Catch::Approx(alt).margin(1e-5));
            }
    }
}

TEST_CASE("Christoffel symbols: flat chart vanishes, symmetry in general") {
    auto flat = test_charts::get(test_charts::kPlane);
    const std::vector<double> p{0.2, -0.1, 0.4};
    const FundamentalForms f = fundamental_forms(flat, p);
    for (double g : f.christoffel) CHECK(g == Catch::Approx(0.0).margin(1e-14));

    auto curved = test_charts::get(test_charts::kEx2K1);
    const std::vector<double> q{0.8, 0.6, 1.1};
    const FundamentalForms fc = fundamental_forms(curved, q);
    const int n = 3;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(fc.gamma(k, i, j) == fc.gamma(k, j, i));
    // H^2(-1) factor in polar coordinates: Gamma^u2_{u3 u3} = -sinh cosh
    CHECK(fc.gamma(1, 2, 2) ==
          Catch::Approx(-std::sinh(0.6) * std::cosh(0.6)).margin(1e-10));
}

TEST_CASE("geodesic plane has vanishing second fundamental form") {
    auto chart = test_charts::get(test_charts::kPlane);
    const std::vector<double> p{0.3, 0.3, -0.6};
    const FundamentalForms f = fundamental_forms(chart, p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(f.h_onb(i, j) == Catch::Approx(0.0).margin(1e-13));
    CHECK(f.norm2_II == Catch::Approx(0.0).margin(1e-13));
}
