#include "conforma/chart.hpp"
#include "conforma/parser.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace conforma;

namespace {

const char* kHyperbolicCylinder = R"(# standard product chart
chart hk_cylinder
ambient flat1 dim 4
vars u1 in [0.2, 1.3], u2 in [-1, 1], u3 in [-1, 1]
params a = 1
x1 = a*cosh(u1)
x2 = a*sinh(u1)
x3 = u2
x4 = u3
)";

ChartImmersion parse_ok(const std::string& src) {
    return parse_chart(src);
}

} // namespace

TEST_CASE("chart header and expressions parse") {
    ChartImmersion chart = parse_ok(kHyperbolicCylinder);
    CHECK(chart.name == "hk_cylinder");
    CHECK(chart.ambient.form == SpaceForm::Flat);
    CHECK(chart.ambient.n == 3);
    CHECK(chart.ambient.embedding_dim() == 4);
    CHECK(chart.variables == std::vector<std::string>{"u1", "u2", "u3"});
    CHECK(chart.param_names == std::vector<std::string>{"a"});
    REQUIRE(chart.components.size() == 4);

    // x1 = a*cosh(u1): mul of a parameter and a cosh node.
    const auto& e = chart.components[0]->node;
    REQUIRE(std::holds_alternative<Binary>(e));
    const auto& b = std::get<Binary>(e);
    CHECK(b.op == BinaryOp::Mul);
    CHECK(std::holds_alternative<Parameter>(b.lhs->node));
    REQUIRE(std::holds_alternative<Unary>(b.rhs->node));
    CHECK(std::get<Unary>(b.rhs->node).fn == UnaryFn::Cosh);
}

TEST_CASE("parse errors carry location and kind") {
    CHECK_THROWS_AS(parse_ok("chart t\nambient flat1 dim 4\n"
                             "vars u1 in [0,1], u2 in [0,1], u3 in [0,1]\n"
                             "x1 = cosh(u1, u2)\nx2 = u1\nx3 = u2\nx4 = u3\n"),
                    ArityError);
    CHECK_THROWS_AS(parse_ok("chart t\nambient flat1 dim 4\n"
                             "vars u1 in [0,1], u2 in [0,1], u3 in [0,1]\n"
                             "x1 = cosh(w)\nx2 = u1\nx3 = u2\nx4 = u3\n"),
                    UnboundName);
    CHECK_THROWS_AS(parse_ok("chart t\nambient flat1 dim 4\n"
                             "vars u1 in [0,1], u2 in [0,1], u3 in [0,1]\n"
                             "x1 = (u1\nx2 = u1\nx3 = u2\nx4 = u3\n"),
                    SyntaxError);
    // Variable count must match the ambient dimension.
    CHECK_THROWS_AS(parse_ok("chart t\nambient flat1 dim 4\n"
                             "vars u1 in [0,1]\nx1 = u1\nx2 = u1\nx3 = u1\nx4 = u1\n"),
                    SyntaxError);
    try {
        parse_ok("chart t\nambient flat1 dim 4\n"
                 "vars u1 in [0,1], u2 in [0,1], u3 in [0,1]\n"
                 "x1 = cosh(u1, u2)\nx2 = u1\nx3 = u2\nx4 = u3\n");
        FAIL("expected ArityError");
    } catch (const ArityError& e) {
        CHECK(e.fn == "cosh");
        CHECK(e.line == 4);
    }
}

TEST_CASE("pretty-print round trip is idempotent") {
    ChartImmersion chart = parse_ok(kHyperbolicCylinder);
    const std::string printed = chart_to_source(chart);
    ChartImmersion again = parse_ok(printed);
    REQUIRE(again.components.size() == chart.components.size());
    for (size_t i = 0; i < chart.components.size(); ++i)
        CHECK(expr_equal(chart.components[i], again.components[i]));
    CHECK(chart_to_source(again) == printed);
}

TEST_CASE("fuzzed expressions survive the print/parse round trip") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> num(-3.0, 3.0);
    std::uniform_int_distribution<int> pick(0, 9);

    const std::map<std::string, int> vars{{"u1", 0}, {"u2", 1}};
    const std::map<std::string, int> params{{"a", 0}};

    std::function<ExprPtr(int)> gen = [&](int depth) -> ExprPtr {
        if (depth <= 0) {
            switch (pick(rng) % 3) {
            case 0: return make_constant(num(rng));
            case 1: {
                const int i = pick(rng) % 2;
                return make_variable(i, i == 0 ? "u1" : "u2");
            }
            default: return make_parameter(0, "a");
            }
        }
        switch (pick(rng)) {
        case 0: return make_unary(UnaryFn::Sin, gen(depth - 1));
        case 1: return make_unary(UnaryFn::Cosh, gen(depth - 1));
        case 2: return make_unary(UnaryFn::Neg, gen(depth - 1));
        case 3: return make_power(gen(depth - 1), 1 + pick(rng) % 4);
        case 4:
            return make_binary(BinaryOp::Add, gen(depth - 1), gen(depth - 1));
        case 5:
            return make_binary(BinaryOp::Sub, gen(depth - 1), gen(depth - 1));
        case 6:
            return make_binary(BinaryOp::Mul, gen(depth - 1), gen(depth - 1));
        case 7:
            return make_binary(BinaryOp::Div, gen(depth - 1), gen(depth - 1));
        default: return make_constant(num(rng));
        }
    };

    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        ExprPtr e = gen(3);
        const std::string src = pretty_print(e);
        parser_detail::TokenStream ts(src);
        parser_detail::ExprParser p1(ts, vars, params);
        ExprPtr once = p1.parse();
        const std::string printed = pretty_print(once);
        parser_detail::TokenStream ts2(printed);
        parser_detail::ExprParser p2(ts2, vars, params);
        ExprPtr twice = p2.parse();
        CHECK(expr_equal(once, twice));
        CHECK(pretty_print(twice) == printed);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("jet evaluation agrees with the scalar evaluator at order 0") {
    ChartImmersion chart = parse_ok(kHyperbolicCylinder);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> in01(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<double> p(3);
        for (int i = 0; i < 3; ++i)
            p[i] = chart.domain_lo[i] +
                   in01(rng) * (chart.domain_hi[i] - chart.domain_lo[i]);
        const auto vals = eval_chart_values(chart, p);
        const auto jets = eval_chart<2>(chart, p);
        for (size_t a = 0; a < vals.size(); ++a)
            CHECK(jets[a].value() == Catch::Approx(vals[a]).margin(1e-14));
    }
}

TEST_CASE("chart evaluation: hyperbolic cylinder jets") {
    ChartImmersion chart = parse_ok(kHyperbolicCylinder);
    const std::vector<double> p{0.0, 0.3, -0.2};
    const auto jets = eval_chart<4>(chart, p);
    CHECK(jets[0].value() == Catch::Approx(1.0));
    CHECK(jets[1].value() == Catch::Approx(0.0).margin(1e-15));
    CHECK(jets[2].value() == Catch::Approx(0.3));
    CHECK(jets[3].value() == Catch::Approx(-0.2));
    // d x / d u1 = (sinh u1, cosh u1, 0, 0) = (0, 1, 0, 0) at u1 = 0
    CHECK(jets[0].d1(0) == Catch::Approx(0.0).margin(1e-15));
    CHECK(jets[1].d1(0) == Catch::Approx(1.0));
    CHECK(jets[2].d1(0) == 0.0);
    CHECK(jets[3].d1(0) == 0.0);
}

TEST_CASE("identity chart has identity first derivatives and zero higher jets") {
    ChartImmersion chart = parse_ok(
        "chart ident\nambient flat1 dim 3\nvars u1 in [-1,1], u2 in [-1,1]\n"
        "x1 = u1\nx2 = u2\nx3 = 0\n");
    const std::vector<double> p{0.25, -0.75};
    const auto jets = eval_chart<4>(chart, p);
    CHECK(jets[0].d1(0) == 1.0);
    CHECK(jets[0].d1(1) == 0.0);
    CHECK(jets[1].d1(1) == 1.0);
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(jets[a].d2(i, j) == 0.0);
}
