#pragma once
#include <array>

#include "rfi/polyforms.hpp"

namespace rfi {

using Local = MPoly<2>;
using Exp2 = Exponent<2>;

// Affine chart at a normalized root: the pivot coordinate is set to 1 and the
// other two, in index order, become x + x0 and y + y0.
struct RootChart {
    int pivot = 2;
    int xi = 0, yi = 1;
    FieldElement x0, y0;
};

// (x + a)^n as coefficients of x^0..x^n
std::vector<FieldElement> binomial_expansion(const NumberField* k, const FieldElement& a, int n);

RootChart root_chart(const std::array<FieldElement, 3>& p);
Local dehomogenize(const Form& f, const RootChart& r);

// f(x, x(y + c)) for chart 1, f(xy, x) for chart 2
Local chart_pullback(const Local& f, int chart, const FieldElement& c);
// f * x^(-k); exact division when k > 0
Local shift_x(const Local& f, int k);
// x-adic order: least power of x among the terms
int x_order(const Local& f);

} // namespace rfi
