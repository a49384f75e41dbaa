#pragma once
#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "rfi/error.hpp"

namespace rfi {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);

// Q(alpha) for a monic minimal polynomial; instances are interned and live
// for the whole program, so elements hold a plain pointer.
class NumberField {
public:
    static const NumberField* rationals();
    // coefficients low to high, must be monic of degree >= 1
    static const NumberField* from_minimal_polynomial(const std::vector<Rational>& coeffs);

    int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
    const std::vector<Rational>& minimal_polynomial() const { return minpoly_; }
    bool irreducibility_verified() const { return verified_; }
    bool is_rationals() const { return degree() == 1; }
    std::string to_string(const std::string& var = "t") const;

    void reduce(std::vector<Rational>& c) const;

private:
    explicit NumberField(std::vector<Rational> minpoly);
    std::vector<Rational> minpoly_;
    bool verified_ = false;
};

class FieldElement {
public:
    // an element without a field is zero and adopts the field of the other operand
    FieldElement() = default;
    FieldElement(const NumberField* field, const Rational& value);
    FieldElement(const NumberField* field, long value) : FieldElement(field, Rational(value)) {}
    FieldElement(const NumberField* field, std::vector<Rational> coeffs);

    static FieldElement generator(const NumberField* field);

    const NumberField* field() const { return field_; }
    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_rational() const { return c_.size() <= 1; }
    Rational rational_value() const;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    FieldElement& operator*=(const Rational& q);

    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(unsigned long n) const;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend FieldElement operator*(FieldElement a, const Rational& q) { return a *= q; }
    friend FieldElement operator*(const Rational& q, FieldElement a) { return a *= q; }

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator==(const Rational& q) const;

    // "-3/2*a+7"; parenthesized when it has more than one term and wrap is set
    std::string to_string(bool wrap = false, const std::string& gen = "a") const;

    // total order on representatives, used only for deterministic sorting
    static bool less(const FieldElement& x, const FieldElement& y);

private:
    void trim();
    const NumberField* common(const FieldElement& o) const;

    const NumberField* field_ = nullptr;
    std::vector<Rational> c_;
};

const NumberField* common_field(const NumberField* a, const NumberField* b);

} // namespace rfi
