#include "conforma/ast.hpp"
#include "conforma/fd_oracle.hpp"
#include "conforma/jet.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace conforma;

namespace {

Jet4 var(std::span<const double> p, int i) { return Jet4::seed(p, i); }

} // namespace

TEST_CASE("seed jets are coordinate functions") {
    const double p1[] = {2.0};
    Jet4 u = var(p1, 0);
    CHECK(u.value() == 2.0);
    CHECK(u.d1(0) == 1.0);
    CHECK(u.d2(0, 0) == 0.0);

    const double p2[] = {1.0, 3.0};
    Jet4 v = var(p2, 1);
    CHECK(v.value() == 3.0);
    CHECK(v.d1(0) == 0.0);
    CHECK(v.d1(1) == 1.0);
    CHECK(v.d3(0, 1, 1) == 0.0);

    const double p0[] = {0.0};
    Jet4 sq = var(p0, 0) * var(p0, 0);
    CHECK(sq.value() == 0.0);
    CHECK(sq.d1(0) == 0.0);
    CHECK(sq.d2(0, 0) == 2.0);

    CHECK_THROWS_AS(Jet4::seed(p2, 2), std::out_of_range);
    CHECK_THROWS_AS(Jet4::seed(p2, -1), std::out_of_range);
}

TEST_CASE("products follow the Leibniz rule to order 4") {
    const double p[] = {2.0};
    Jet4 u = var(p, 0);
    Jet4 uu = u * u;
    CHECK(uu.value() == 4.0);
    CHECK(uu.d1(0) == 4.0);
    CHECK(uu.d2(0, 0) == 2.0);
    CHECK(uu.d3(0, 0, 0) == 0.0);
    CHECK(uu.d4(0, 0, 0, 0) == 0.0);

    const double q[] = {1.0};
    Jet4 w = var(q, 0);
    Jet4 w4 = (w * w) * (w * w);
    CHECK(w4.value() == 1.0);
    CHECK(w4.d1(0) == 4.0);
    CHECK(w4.d2(0, 0) == 12.0);
    CHECK(w4.d3(0, 0, 0) == 24.0);
    CHECK(w4.d4(0, 0, 0, 0) == Catch::Approx(24.0).margin(1e-12));
}

TEST_CASE("reciprocal jet matches the analytic tower") {
    const double p[] = {2.0};
    Jet4 r = 1.0 / var(p, 0);
    CHECK(r.value() == Catch::Approx(0.5).margin(1e-15));
    CHECK(r.d1(0) == Catch::Approx(-0.25).margin(1e-15));
    CHECK(r.d2(0, 0) == Catch::Approx(0.25).margin(1e-15));
    CHECK(r.d3(0, 0, 0) == Catch::Approx(-0.375).margin(1e-14));
    CHECK(r.d4(0, 0, 0, 0) == Catch::Approx(0.75).margin(1e-14));

    // Same values through the finite-difference oracle.
    ExprPtr expr = make_binary(BinaryOp::Div, make_constant(1.0),
                               make_variable(0, "u"));
    for (int order = 1; order <= 4; ++order)
        CHECK(fd_check(expr, p, {}, order) < 1e-6);

    const double z[] = {0.0};
    CHECK_THROWS_AS(1.0 / var(z, 0), DegenerateEvaluation);
}

TEST_CASE("unary composition via the derivative tower") {
    const double p0[] = {0.0};
    Jet4 e = exp(var(p0, 0));
    CHECK(e.value() == 1.0);
    CHECK(e.d1(0) == 1.0);
    CHECK(e.d2(0, 0) == 1.0);
    CHECK(e.d3(0, 0, 0) == 1.0);
    CHECK(e.d4(0, 0, 0, 0) == 1.0);

    Jet4 ch = cosh(var(p0, 0));
    CHECK(ch.value() == 1.0);
    CHECK(ch.d1(0) == 0.0);
    CHECK(ch.d2(0, 0) == 1.0);
    CHECK(ch.d3(0, 0, 0) == 0.0);
    CHECK(ch.d4(0, 0, 0, 0) == 1.0);

    // sin(u^2) at 0.7 against the finite-difference oracle.
    ExprPtr expr = make_unary(UnaryFn::Sin,
                              make_power(make_variable(0, "u"), 2));
    const double p[] = {0.7};
    for (int order = 1; order <= 4; ++order)
        CHECK(fd_check(expr, p, {}, order) < 1e-5);

    const double neg[] = {-1.0};
    CHECK_THROWS_AS(log(var(neg, 0)), DegenerateEvaluation);
    CHECK_THROWS_AS(sqrt(var(neg, 0)), DegenerateEvaluation);
}

TEST_CASE("finite-difference oracle on polynomials and mixed partials") {
    // u^3 v: the stencils have zero truncation error on cubics, so orders
    // 1-3 sit at rounding level.  Order 4 divides rounding noise by h^4 and
    // floors near 1e-7; it gets the pipeline-wide tolerance.
    ExprPtr expr = make_binary(BinaryOp::Mul,
                               make_power(make_variable(0, "u"), 3),
                               make_variable(1, "v"));
    const double p[] = {0.6, 0.5};
    for (int order = 1; order <= 3; ++order)
        CHECK(fd_check(expr, p, {}, order) < 1e-9);
    CHECK(fd_check(expr, p, {}, 4) < 1e-5);

    ExprPtr trig = make_binary(BinaryOp::Mul,
                               make_unary(UnaryFn::Cosh, make_variable(0, "u")),
                               make_unary(UnaryFn::Sin, make_variable(1, "v")));
    CHECK(fd_check(trig, p, {}, 3) < 1e-5);

    // Near-singular input: either a domain error or a poor match; both are
    // acceptable outcomes, the point is it cannot silently look exact.
    ExprPtr lg = make_unary(UnaryFn::Log, make_variable(0, "u"));
    const double tiny[] = {1e-8};
    bool degenerate = false;
    double err = 0.0;
    try {
        err = fd_check(lg, tiny, {}, 2);
    } catch (const DegenerateEvaluation&) {
        degenerate = true;
    }
    CHECK((degenerate || err > 1e-5));
}

TEST_CASE("derivative arrays are symmetric by construction") {
    const double p[] = {0.3, 0.8, -0.5};
    Jet4 f = sin(var(p, 0) * var(p, 1)) * cosh(var(p, 2)) +
             ipow(var(p, 1), 3) * var(p, 2);
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const double ref = f.d3(0, 1, 2);
    for (const auto& pr : perms)
        CHECK(f.d3(pr[0], pr[1], pr[2]) == ref);
    CHECK(f.d4(2, 0, 1, 0) == f.d4(0, 0, 1, 2));
    CHECK(f.d2(1, 0) == f.d2(0, 1));
}

TEST_CASE("jet arithmetic is exact on low-degree polynomials") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        const double p[] = {dist(rng), dist(rng)};
        Jet4 u = var(p, 0), v = var(p, 1);
        // f = u^4 + u^2 v^2 - 3 u v + 7
        Jet4 f = ipow(u, 4) + ipow(u, 2) * ipow(v, 2) - 3.0 * (u * v) + 7.0;
        CHECK(f.d4(0, 0, 0, 0) == Catch::Approx(24.0).margin(1e-12));
        CHECK(f.d4(0, 0, 1, 1) == Catch::Approx(4.0).margin(1e-12));
        CHECK(f.d2(0, 1) ==
              Catch::Approx(4.0 * p[0] * p[1] - 3.0).margin(1e-12));
        CHECK(f.d3(0, 0, 1) == Catch::Approx(4.0 * p[1]).margin(1e-12));
    }
}

TEST_CASE("truncate and derivative shift jet data consistently") {
    const double p[] = {0.4, 1.1};
    Jet4 f = exp(var(p, 0)) * sin(var(p, 1));
    Jet3 df = derivative(f, 0);
    CHECK(df.value() == f.d1(0));
    CHECK(df.d1(1) == f.d2(0, 1));
    CHECK(df.d2(1, 1) == f.d3(0, 1, 1));
    CHECK(df.d3(1, 1, 1) == f.d4(0, 1, 1, 1));
    Jet2 t = truncate<2>(f);
    CHECK(t.value() == f.value());
    CHECK(t.d2(0, 1) == f.d2(0, 1));
}
