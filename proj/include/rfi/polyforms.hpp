#pragma once
#include <string>

#include "rfi/mpoly.hpp"

namespace rfi {

// homogeneous polynomial in X, Y, Z
using Form = MPoly<3>;
using Exp3 = Exponent<3>;

inline const std::array<std::string, 3>& xyz_names() {
    static const std::array<std::string, 3> names{"X", "Y", "Z"};
    return names;
}

inline std::string to_string(const Form& f) { return f.to_string(xyz_names()); }

// Omega = A dX + B dY + C dZ with X A + Y B + Z C = 0 and gcd(A, B, C) = 1
class OneForm {
public:
    OneForm() = default;
    OneForm(Form a, Form b, Form c, bool validate = true);

    const Form& A() const { return a_; }
    const Form& B() const { return b_; }
    const Form& C() const { return c_; }
    const Form& component(int i) const { return i == 0 ? a_ : i == 1 ? b_ : c_; }
    const NumberField* field() const { return field_; }
    // degree of the foliation, one less than the degree of the components
    int degree() const { return degree_ - 1; }
    int component_degree() const { return degree_; }

private:
    Form a_, b_, c_;
    const NumberField* field_ = nullptr;
    int degree_ = 0;
};

// coefficients of dY^dZ, dZ^dX, dX^dY
struct TwoForm {
    Form P, Q, R;
    bool is_zero() const { return P.is_zero() && Q.is_zero() && R.is_zero(); }
};

std::array<Form, 3> gradient(const Form& g);
TwoForm wedge(const std::array<Form, 3>& u, const std::array<Form, 3>& v);
// dG ^ Omega
TwoForm wedge_d(const Form& g, const OneForm& omega);
bool is_invariant_curve(const Form& g, const OneForm& omega);
// (G dF - F dG) ^ Omega == 0 for F, G of equal degree, not proportional
bool is_first_integral(const Form& f, const Form& g, const OneForm& omega);
Form gcd3(const Form& a, const Form& b, const Form& c);

// all monomials of degree d in grlex order, largest first
std::vector<Exp3> monomials_of_degree(int d);

} // namespace rfi
