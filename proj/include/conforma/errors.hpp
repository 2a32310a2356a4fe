#pragma once

#include <stdexcept>
#include <string>

namespace conforma {

// Evaluation hit a domain violation (log of a non-positive value, division
// by a zero-value jet, ...). Carries the offending function and argument.
class DegenerateEvaluation : public std::runtime_error {
public:
    DegenerateEvaluation(std::string fn, double value)
        : std::runtime_error("degenerate evaluation: " + fn + " at value " +
                             std::to_string(value)),
          function(std::move(fn)), argument(value) {}

    std::string function;
    double argument = 0.0;
};

class NotSpacelike : public std::runtime_error {
public:
    explicit NotSpacelike(double min_eigenvalue)
        : std::runtime_error("induced metric not positive definite "
                             "(smallest eigenvalue " +
                             std::to_string(min_eigenvalue) + ")"),
          min_eigenvalue(min_eigenvalue) {}

    double min_eigenvalue = 0.0;
};

class DegenerateNormal : public std::runtime_error {
public:
    explicit DegenerateNormal(const std::string& what)
        : std::runtime_error("degenerate normal: " + what) {}
};

// The point violates the standing umbilic-free hypothesis: the conformal
// factor e^{2 tau} is not positive there.
class UmbilicPoint : public std::runtime_error {
public:
    explicit UmbilicPoint(double e2tau)
        : std::runtime_error("umbilic point: conformal factor " +
                             std::to_string(e2tau)),
          e2tau(e2tau) {}

    double e2tau = 0.0;
};

class SpaceFormViolation : public std::runtime_error {
public:
    explicit SpaceFormViolation(double residual)
        : std::runtime_error("chart leaves the ambient space form "
                             "(constraint residual " +
                             std::to_string(residual) + ")"),
          residual(residual) {}

    double residual = 0.0;
};

class EmptyDomain : public std::runtime_error {
public:
    EmptyDomain() : std::runtime_error("empty sampling domain") {}
};

class TooManyDegeneratePoints : public std::runtime_error {
public:
    TooManyDegeneratePoints(int dropped, int total)
        : std::runtime_error("too many degenerate sample points (" +
                             std::to_string(dropped) + " of " +
                             std::to_string(total) + " dropped)"),
          dropped(dropped), total(total) {}

    int dropped = 0;
    int total = 0;
};

class ConstraintViolation : public std::runtime_error {
public:
    ConstraintViolation(std::string param, std::string bound)
        : std::runtime_error("parameter constraint violated: " + param +
                             " must satisfy " + bound),
          parameter(std::move(param)), bound(std::move(bound)) {}

    std::string parameter;
    std::string bound;
};

} // namespace conforma
