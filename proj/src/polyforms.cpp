#include "rfi/polyforms.hpp"

namespace rfi {

OneForm::OneForm(Form a, Form b, Form c, bool validate)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    field_ = common_field(common_field(a_.field(), b_.field()), c_.field());
    if (field_ == nullptr)
        field_ = NumberField::rationals();
    a_.set_field(field_);
    b_.set_field(field_);
    c_.set_field(field_);
    degree_ = std::max({a_.total_degree(), b_.total_degree(), c_.total_degree()});
    if (!validate)
        return;
    if (degree_ < 1)
        throw PreconditionError("1-form components must have positive degree");
    for (const Form* f : {&a_, &b_, &c_})
        if (!f->is_zero() && (!f->is_homogeneous() || f->total_degree() != degree_))
            throw PreconditionError("1-form components must be homogeneous of equal degree");
    Form euler = Form::variable(field_, 0) * a_ + Form::variable(field_, 1) * b_ +
                 Form::variable(field_, 2) * c_;
    if (!euler.is_zero())
        throw PreconditionError("1-form violates X*A + Y*B + Z*C = 0");
    if (!gcd3(a_, b_, c_).is_constant())
        throw PreconditionError("1-form components have a common factor");
}

std::array<Form, 3> gradient(const Form& g) { return {g.derivative(0), g.derivative(1), g.derivative(2)}; }

TwoForm wedge(const std::array<Form, 3>& u, const std::array<Form, 3>& v) {
    return TwoForm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

TwoForm wedge_d(const Form& g, const OneForm& omega) {
    return wedge(gradient(g), {omega.A(), omega.B(), omega.C()});
}

bool is_invariant_curve(const Form& g, const OneForm& omega) {
    if (g.is_constant())
        throw PreconditionError("invariant curve test needs a non-constant polynomial");
    if (!g.is_homogeneous())
        throw PreconditionError("curve equation must be homogeneous");
    TwoForm w = wedge_d(g, omega);
    for (const Form* f : {&w.P, &w.Q, &w.R})
        if (!f->exact_divide(g))
            return false;
    return true;
}

bool is_first_integral(const Form& f, const Form& g, const OneForm& omega) {
    if (f.is_constant() || g.is_constant() || !f.is_homogeneous() || !g.is_homogeneous())
        throw PreconditionError("first integral needs non-constant homogeneous polynomials");
    if (f.total_degree() != g.total_degree())
        throw PreconditionError("first integral needs polynomials of equal degree");
    Form c = f.monic();
    if (c == g.monic())
        throw PreconditionError("first integral needs independent polynomials");
    auto df = gradient(f), dg = gradient(g);
    std::array<Form, 3> u;
    for (int i = 0; i < 3; ++i)
        u[i] = g * df[i] - f * dg[i];
    return wedge(u, {omega.A(), omega.B(), omega.C()}).is_zero();
}

Form gcd3(const Form& a, const Form& b, const Form& c) { return gcd(gcd(a, b), c); }

std::vector<Exp3> monomials_of_degree(int d) {
    std::vector<Exp3> out;
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j)
            out.push_back({i, j, d - i - j});
    return out;
}

} // namespace rfi
