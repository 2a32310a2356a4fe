#pragma once

// Hand-written chart sources used as fixtures.  These are deliberately
// independent of the catalog generator so that generator bugs cannot mask
// pipeline bugs (and vice versa).

#include "conforma/parser.hpp"

namespace test_charts {

// H^1(-a) x R^2 in R^4_1
inline const char* kEx1K1 = R"(chart ex1_k1
ambient flat1 dim 4
vars u1 in [0.2, 1.3], u2 in [-1, 1], u3 in [-1, 1]
params a = 1.5
x1 = a*cosh(u1)
x2 = a*sinh(u1)
x3 = u2
x4 = u3
)";

// S^1(sqrt(1+a^2)) x H^2(-a) in S^4_1(1), a = 1
inline const char* kEx2K1 = R"(chart ex2_k1
ambient desitter dim 4
vars u1 in [0.15, 2.9], u2 in [0.2, 1.3], u3 in [0.15, 2.9]
params a = 1
x1 = a*cosh(u2)
x2 = sqrt(1 + a*a)*cos(u1)
x3 = sqrt(1 + a*a)*sin(u1)
x4 = a*sinh(u2)*cos(u3)
x5 = a*sinh(u2)*sin(u3)
)";

// H^1(-a) x H^2(-sqrt(1-a^2)) in H^4_1(-1), a = 0.6
inline const char* kEx3K1 = R"(chart ex3_k1
ambient antidesitter dim 4
vars u1 in [0.2, 1.3], u2 in [0.2, 1.3], u3 in [0.15, 2.9]
params a = 0.6
x1 = sqrt(1 - a*a)*cosh(u1)
x2 = a*cosh(u2)
x3 = sqrt(1 - a*a)*sinh(u1)
x4 = a*sinh(u2)*cos(u3)
x5 = a*sinh(u2)*sin(u3)
)";

// cone over H^1(-b) x S^1(a), a = sqrt(2), in R^4_1
inline const char* kEx4PQ1 = R"(chart ex4_pq1
ambient flat1 dim 4
vars u1 in [0.2, 1.3], u2 in [0.15, 2.9], t in [0.5, 3]
params a = 1.4142135623730951
x1 = t*sqrt(a*a - 1)*cosh(u1)
x2 = t*sqrt(a*a - 1)*sinh(u1)
x3 = t*a*cos(u2)
x4 = t*a*sin(u2)
)";

// graph over a spacelike hyperplane; generic, not isoparametric
inline const char* kGraph = R"(chart graph
ambient flat1 dim 4
vars u1 in [-0.5, 0.5], u2 in [-0.5, 0.5], u3 in [-0.5, 0.5]
x1 = u1^2 + 0.3*u2^3
x2 = u1
x3 = u2
x4 = u3
)";

// small perturbation of a flat graph
inline const char* kGraphEps = R"(chart grapheps
ambient flat1 dim 4
vars u1 in [-0.5, 0.5], u2 in [-0.5, 0.5], u3 in [-0.5, 0.5]
params eps = 0.1
x1 = eps*u1^2
x2 = u1
x3 = u2
x4 = u3
)";

// totally geodesic spacelike hyperplane (umbilic, h = 0)
inline const char* kPlane = R"(chart plane
ambient flat1 dim 4
vars u1 in [-1, 1], u2 in [-1, 1], u3 in [-1, 1]
x1 = 0
x2 = u1
x3 = u2
x4 = u3
)";

// standard H^3(-1): totally umbilic in R^4_1
inline const char* kHyperbolicSpace = R"(chart h3
ambient flat1 dim 4
vars u1 in [0.2, 1.3], u2 in [0.15, 2.9], u3 in [0.15, 2.9]
x1 = cosh(u1)
x2 = sinh(u1)*cos(u2)
x3 = sinh(u1)*sin(u2)*cos(u3)
x4 = sinh(u1)*sin(u2)*sin(u3)
)";

// timelike direction in the tangent plane
inline const char* kTimelike = R"(chart timelike
ambient flat1 dim 4
vars u1 in [-1, 1], u2 in [-1, 1], u3 in [-1, 1]
x1 = u1
x2 = u2
x3 = u3
x4 = 0
)";

// declared on de Sitter but off the quadric with a spacelike normal direction
inline const char* kSpacelikeNormal = R"(chart degen
ambient desitter dim 3
vars u1 in [0.2, 1.3], u2 in [-1, 1]
x1 = 2
x2 = cos(u1)
x3 = sin(u1)
x4 = u2
)";

inline conforma::ChartImmersion get(const char* src) {
    return conforma::parse_chart(src);
}

} // namespace test_charts
