#pragma once
#include <string>
#include <utility>
#include <vector>

#include "rfi/numfield.hpp"

namespace rfi {

// Dense univariate polynomial over a number field, coefficients low to high.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(const NumberField* field) : field_(field) {}
    UPoly(const NumberField* field, std::vector<FieldElement> coeffs);
    static UPoly constant(const FieldElement& c);
    static UPoly monomial(const FieldElement& c, int degree);
    static UPoly variable(const NumberField* field);

    const NumberField* field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<FieldElement>& coefficients() const { return c_; }
    FieldElement coeff(int i) const;
    FieldElement leading() const;
    bool has_rational_coefficients() const;

    UPoly& operator+=(const UPoly& o);
    UPoly& operator-=(const UPoly& o);
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend UPoly operator*(UPoly a, const FieldElement& c);
    UPoly operator-() const;
    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    FieldElement eval(const FieldElement& x) const;
    UPoly derivative() const;
    UPoly monic() const;
    // f(t + s)
    UPoly shift(const FieldElement& s) const;
    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    const NumberField* field_ = nullptr;
    std::vector<FieldElement> c_;
};

std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& f);
// Sylvester resultant with the formal degrees given by the coefficient vectors
FieldElement resultant(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b,
                       const NumberField* field);
FieldElement resultant(const UPoly& a, const UPoly& b);

struct RootsResult {
    std::vector<FieldElement> roots;
    int remaining_degree = 0;
    UPoly cofactor;
};

// Roots lying in the coefficient field. Degree-2 fields are handled completely;
// for higher degree only rational roots are searched and the rest is reported
// through remaining_degree.
RootsResult find_roots_in_field(const UPoly& f);

} // namespace rfi
