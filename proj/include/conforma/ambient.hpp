#pragma once

// The three Lorentzian space forms and their signature-aware products.
// c = 0:  R^{n+1}_1 itself (embedding dim n+1, one timelike direction).
// c = +1: de Sitter S^{n+1}_1(1) inside R^{n+2}_1.
// c = -1: anti-de Sitter H^{n+1}_1(-1) inside R^{n+2}_2.

#include "conforma/jet.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conforma {

enum class SpaceForm { Flat, DeSitter, AntiDeSitter };

inline const char* space_form_keyword(SpaceForm f) {
    switch (f) {
    case SpaceForm::Flat: return "flat1";
    case SpaceForm::DeSitter: return "desitter";
    case SpaceForm::AntiDeSitter: return "antidesitter";
    }
    return "?";
}

struct AmbientForm {
    SpaceForm form = SpaceForm::Flat;
    int n = 0; // hypersurface dimension

    int curvature() const {
        switch (form) {
        case SpaceForm::Flat: return 0;
        case SpaceForm::DeSitter: return 1;
        case SpaceForm::AntiDeSitter: return -1;
        }
        return 0;
    }

    int embedding_dim() const {
        return form == SpaceForm::Flat ? n + 1 : n + 2;
    }

    // Index s of <,>_s: the first s coordinates carry the minus sign.
    int signature_index() const {
        return form == SpaceForm::AntiDeSitter ? 2 : 1;
    }
};

// <X,Y>_s = -sum_{i<=s} x_i y_i + sum_{i>s} x_i y_i
inline double inner_s(std::span<const double> x, std::span<const double> y,
                      int s) {
    if (x.size() != y.size())
        throw std::invalid_argument("inner_s: length mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double term = x[i] * y[i];
        acc += (static_cast<int>(i) < s) ? -term : term;
    }
    return acc;
}

template <int O>
Jet<O> inner_s(std::span<const Jet<O>> x, std::span<const Jet<O>> y, int s) {
    if (x.size() != y.size())
        throw std::invalid_argument("inner_s: length mismatch");
    Jet<O> acc = Jet<O>::constant(x[0].vars(), 0.0);
    for (size_t i = 0; i < x.size(); ++i) {
        Jet<O> term = x[i] * y[i];
        acc = (static_cast<int>(i) < s) ? acc - term : acc + term;
    }
    return acc;
}

} // namespace conforma
