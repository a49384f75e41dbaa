#pragma once
#include <utility>
#include <vector>

#include "rfi/numfield.hpp"

// Dense univariate polynomials over Q, coefficients low to high.
namespace rfi::qpoly {

using QPoly = std::vector<Rational>;

void trim(QPoly& f);
int degree(const QPoly& f);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& f);
QPoly gcd(QPoly a, QPoly b);
// returns (g, s) with s*a = g mod b
std::pair<QPoly, QPoly> half_gcdex(QPoly a, QPoly b);
QPoly derivative(const QPoly& f);
Rational eval(const QPoly& f, const Rational& x);
QPoly squarefree_part(const QPoly& f);
// distinct rational roots in increasing order
std::vector<Rational> rational_roots(const QPoly& f);

} // namespace rfi::qpoly
