#pragma once

// ChartImmersion: a parsed chart u -> x(u) in R^N_s together with its
// ambient space form, variable list, bound parameters and sampling box.

#include "conforma/ambient.hpp"
#include "conforma/ast.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace conforma {

struct ChartImmersion {
    std::string name;
    AmbientForm ambient;
    std::vector<std::string> variables;
    std::vector<double> domain_lo;
    std::vector<double> domain_hi;
    std::vector<std::string> param_names;
    std::vector<double> param_values;
    std::vector<ExprPtr> components;

    int dim() const { return static_cast<int>(variables.size()); }
};

template <int O>
std::vector<Jet<O>> eval_chart(const ChartImmersion& chart,
                               std::span<const double> point) {
    std::vector<Jet<O>> out;
    out.reserve(chart.components.size());
    for (size_t a = 0; a < chart.components.size(); ++a) {
        try {
            out.push_back(eval_jet<O>(chart.components[a], point,
                                      chart.param_values));
        } catch (const DegenerateEvaluation& e) {
            throw DegenerateEvaluation(
                e.function + " in component x" + std::to_string(a + 1),
                e.argument);
        }
    }
    return out;
}

inline std::vector<double> eval_chart_values(const ChartImmersion& chart,
                                             std::span<const double> point) {
    std::vector<double> out;
    out.reserve(chart.components.size());
    for (const auto& c : chart.components)
        out.push_back(eval_scalar(c, point, chart.param_values));
    return out;
}

// |<x,x>_s - c| for curved ambients; 0 by convention for c = 0.
inline double space_form_residual(const ChartImmersion& chart,
                                  std::span<const double> point) {
    if (chart.ambient.form == SpaceForm::Flat) return 0.0;
    const std::vector<double> x = eval_chart_values(chart, point);
    const double q = inner_s(x, x, chart.ambient.signature_index());
    return std::abs(q - chart.ambient.curvature());
}

// Canonical chart file text; parsing this back yields an equal chart.
inline std::string chart_to_source(const ChartImmersion& chart) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::string out = "chart " + chart.name + "\n";
    out += "ambient ";
    out += space_form_keyword(chart.ambient.form);
    out += " dim " + std::to_string(chart.ambient.n + 1) + "\n";
    out += "vars ";
    for (size_t i = 0; i < chart.variables.size(); ++i) {
        if (i) out += ", ";
        out += chart.variables[i] + " in [" + num(chart.domain_lo[i]) + ", " +
               num(chart.domain_hi[i]) + "]";
    }
    out += "\n";
    if (!chart.param_names.empty()) {
        out += "params ";
        for (size_t i = 0; i < chart.param_names.size(); ++i) {
            if (i) out += ", ";
            out += chart.param_names[i] + " = " + num(chart.param_values[i]);
        }
        out += "\n";
    }
    for (size_t a = 0; a < chart.components.size(); ++a)
        out += "x" + std::to_string(a + 1) + " = " +
               pretty_print(chart.components[a]) + "\n";
    return out;
}

} // namespace conforma
