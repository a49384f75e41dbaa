#include "rfi/numfield.hpp"

#include <map>
#include <mutex>

#include "rfi/qpoly.hpp"

namespace rfi {

std::string to_string(const Rational& q) { return q.get_str(); }

NumberField::NumberField(std::vector<Rational> minpoly) : minpoly_(std::move(minpoly)) {
    int n = degree();
    if (n <= 3)
        verified_ = qpoly::rational_roots(minpoly_).empty() || n == 1;
}

const NumberField* NumberField::rationals() {
    static const NumberField* q = from_minimal_polynomial({Rational(0), Rational(1)});
    return q;
}

const NumberField* NumberField::from_minimal_polynomial(const std::vector<Rational>& coeffs) {
    std::vector<Rational> m = coeffs;
    qpoly::trim(m);
    if (m.size() < 2)
        throw PreconditionError("minimal polynomial must have degree >= 1");
    if (m.back() != 1)
        throw PreconditionError("minimal polynomial must be monic");
    static std::mutex mu;
    static std::map<std::vector<Rational>, std::unique_ptr<NumberField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(m);
    if (it == registry.end())
        it = registry.emplace(m, std::unique_ptr<NumberField>(new NumberField(m))).first;
    return it->second.get();
}

std::string NumberField::to_string(const std::string& var) const {
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = minpoly_[i];
        if (c == 0)
            continue;
        Rational a = abs(c);
        if (!out.empty())
            out += c < 0 ? "-" : "+";
        else if (c < 0)
            out += "-";
        bool unit = a == 1 && i > 0;
        if (!unit)
            out += a.get_str();
        if (i > 0) {
            if (!unit)
                out += "*";
            out += var;
            if (i > 1)
                out += "^" + std::to_string(i);
        }
    }
    return out;
}

void NumberField::reduce(std::vector<Rational>& c) const {
    int n = degree();
    for (int i = static_cast<int>(c.size()) - 1; i >= n; --i) {
        if (c[i] == 0)
            continue;
        Rational lead = c[i];
        for (int j = 0; j <= n; ++j)
            c[i - n + j] -= lead * minpoly_[j];
    }
    if (static_cast<int>(c.size()) > n)
        c.resize(n);
    qpoly::trim(c);
}

FieldElement::FieldElement(const NumberField* field, const Rational& value) : field_(field) {
    if (value != 0)
        c_.push_back(value);
}

FieldElement::FieldElement(const NumberField* field, std::vector<Rational> coeffs)
    : field_(field), c_(std::move(coeffs)) {
    field_->reduce(c_);
}

FieldElement FieldElement::generator(const NumberField* field) {
    return FieldElement(field, std::vector<Rational>{Rational(0), Rational(1)});
}

bool FieldElement::is_one() const { return c_.size() == 1 && c_[0] == 1; }

Rational FieldElement::rational_value() const {
    if (!is_rational())
        throw PreconditionError("element is not rational");
    return c_.empty() ? Rational(0) : c_[0];
}

void FieldElement::trim() { qpoly::trim(c_); }

const NumberField* common_field(const NumberField* a, const NumberField* b) {
    if (a == nullptr)
        return b;
    if (b == nullptr || a == b)
        return a;
    throw FieldMismatch();
}

const NumberField* FieldElement::common(const FieldElement& o) const {
    return common_field(field_, o.field_);
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    field_ = common(o);
    if (c_.size() < o.c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    field_ = common(o);
    if (c_.size() < o.c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    FieldElement r;
    r.field_ = a.common(b);
    if (a.c_.empty() || b.c_.empty())
        return r;
    if (a.c_.size() == 1) {
        r.c_ = b.c_;
        for (auto& c : r.c_)
            c *= a.c_[0];
        return r;
    }
    if (b.c_.size() == 1) {
        r.c_ = a.c_;
        for (auto& c : r.c_)
            c *= b.c_[0];
        return r;
    }
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] += a.c_[i] * b.c_[j];
    r.field_->reduce(r.c_);
    return r;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) { return *this = *this * o; }

FieldElement& FieldElement::operator*=(const Rational& q) {
    if (q == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_)
        c *= q;
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this = *this * o.inverse(); }

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

FieldElement FieldElement::inverse() const {
    if (c_.empty())
        throw DivisionByZero();
    if (c_.size() == 1)
        return FieldElement(field_, Rational(1 / c_[0]));
    auto [g, s] = qpoly::half_gcdex(c_, field_->minimal_polynomial());
    if (g.size() != 1)
        throw DivisionByZero();
    return FieldElement(field_, s);
}

FieldElement FieldElement::pow(unsigned long n) const {
    FieldElement result(field_, Rational(1));
    FieldElement base = *this;
    while (n > 0) {
        if (n & 1)
            result *= base;
        n >>= 1;
        if (n > 0)
            base *= base;
    }
    return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
    common(o);
    return c_ == o.c_;
}

bool FieldElement::operator==(const Rational& q) const {
    if (q == 0)
        return c_.empty();
    return c_.size() == 1 && c_[0] == q;
}

std::string FieldElement::to_string(bool wrap, const std::string& gen) const {
    if (c_.empty())
        return "0";
    std::string out;
    int terms = 0;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
        const Rational& c = c_[i];
        if (c == 0)
            continue;
        ++terms;
        Rational a = abs(c);
        if (!out.empty())
            out += c < 0 ? "-" : "+";
        else if (c < 0)
            out += "-";
        if (i == 0) {
            out += a.get_str();
            continue;
        }
        if (a != 1)
            out += a.get_str() + "*";
        out += gen;
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    if (wrap && terms > 1)
        return "(" + out + ")";
    return out;
}

bool FieldElement::less(const FieldElement& x, const FieldElement& y) {
    size_t n = std::max(x.c_.size(), y.c_.size());
    for (size_t i = 0; i < n; ++i) {
        Rational a = i < x.c_.size() ? x.c_[i] : Rational(0);
        Rational b = i < y.c_.size() ? y.c_[i] : Rational(0);
        if (a != b)
            return a < b;
    }
    return false;
}

} // namespace rfi
