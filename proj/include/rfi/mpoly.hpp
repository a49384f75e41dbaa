#pragma once
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfi/numfield.hpp"

namespace rfi {

template <int N>
using Exponent = std::array<int, N>;

template <int N>
int total_degree(const Exponent<N>& e) {
    int s = 0;
    for (int x : e)
        s += x;
    return s;
}

// graded lexicographic with the first variable largest
template <int N>
struct GrlexLess {
    bool operator()(const Exponent<N>& a, const Exponent<N>& b) const {
        int da = total_degree<N>(a), db = total_degree<N>(b);
        if (da != db)
            return da < db;
        return a < b;
    }
};

// Sparse polynomial in N variables over a number field.
template <int N>
class MPoly {
public:
    using Exp = Exponent<N>;
    using Terms = std::map<Exp, FieldElement, GrlexLess<N>>;

    MPoly() = default;
    explicit MPoly(const NumberField* field) : field_(field) {}

    static MPoly constant(const FieldElement& c) {
        MPoly p(c.field());
        if (!c.is_zero())
            p.terms_[Exp{}] = c;
        return p;
    }
    static MPoly constant(const NumberField* field, const Rational& c) {
        return constant(FieldElement(field, c));
    }
    static MPoly monomial(const FieldElement& c, const Exp& e) {
        MPoly p(c.field());
        if (!c.is_zero())
            p.terms_[e] = c;
        return p;
    }
    static MPoly variable(const NumberField* field, int i) {
        Exp e{};
        e[i] = 1;
        return monomial(FieldElement(field, 1), e);
    }

    const NumberField* field() const { return field_; }
    void set_field(const NumberField* f) { field_ = common_field(field_, f); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    FieldElement coeff(const Exp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? FieldElement(field_, 0) : it->second;
    }
    void add_term(const Exp& e, const FieldElement& c) {
        if (c.is_zero())
            return;
        field_ = common_field(field_, c.field());
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    int total_degree() const { return terms_.empty() ? -1 : rfi::total_degree<N>(terms_.rbegin()->first); }
    // lowest total degree of a term, -1 for zero
    int order() const { return terms_.empty() ? -1 : rfi::total_degree<N>(terms_.begin()->first); }
    int degree_in(int i) const {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e[i]);
        return d;
    }
    bool is_homogeneous() const { return terms_.empty() || order() == total_degree(); }
    bool is_constant() const { return terms_.empty() || total_degree() == 0; }

    const Exp& leading_exponent() const { return terms_.rbegin()->first; }
    const FieldElement& leading_coefficient() const { return terms_.rbegin()->second; }

    MPoly& operator+=(const MPoly& o) {
        field_ = common_field(field_, o.field_);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        field_ = common_field(field_, o.field_);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_)
            c = -c;
        return r;
    }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(common_field(a.field_, b.field_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exp e;
                for (int i = 0; i < N; ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend MPoly operator*(MPoly a, const FieldElement& c) {
        if (c.is_zero())
            return MPoly(common_field(a.field_, c.field()));
        for (auto& [e, x] : a.terms_)
            x *= c;
        a.field_ = common_field(a.field_, c.field());
        return a;
    }
    friend MPoly operator*(const FieldElement& c, MPoly a) { return std::move(a) * c; }
    friend MPoly operator*(MPoly a, const Rational& q) {
        if (q == 0)
            return MPoly(a.field_);
        for (auto& [e, x] : a.terms_)
            x *= q;
        return a;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly pow(int n) const {
        MPoly r = constant(field_, 1);
        MPoly base = *this;
        while (n > 0) {
            if (n & 1)
                r *= base;
            n >>= 1;
            if (n > 0)
                base *= base;
        }
        return r;
    }

    MPoly derivative(int i) const {
        MPoly r(field_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0)
                continue;
            Exp f = e;
            f[i] -= 1;
            r.add_term(f, c * Rational(e[i]));
        }
        return r;
    }

    FieldElement eval(const std::array<FieldElement, N>& x) const {
        FieldElement r(field_, 0);
        for (const auto& [e, c] : terms_) {
            FieldElement t = c;
            for (int i = 0; i < N; ++i)
                if (e[i] > 0)
                    t *= x[i].pow(e[i]);
            r += t;
        }
        return r;
    }

    // terms of total degree < k
    MPoly truncated(int k) const {
        MPoly r(field_);
        for (const auto& [e, c] : terms_) {
            if (rfi::total_degree<N>(e) >= k)
                break;
            r.terms_.emplace(e, c);
        }
        return r;
    }
    MPoly homogeneous_part(int k) const {
        MPoly r(field_);
        for (const auto& [e, c] : terms_)
            if (rfi::total_degree<N>(e) == k)
                r.terms_.emplace(e, c);
        return r;
    }

    // exact quotient, nullopt when the divisor does not divide
    std::optional<MPoly> exact_divide(const MPoly& b) const {
        if (b.is_zero())
            throw DivisionByZero();
        MPoly rem = *this;
        MPoly q(common_field(field_, b.field_));
        const Exp& lb = b.leading_exponent();
        FieldElement inv = b.leading_coefficient().inverse();
        while (!rem.is_zero()) {
            Exp la = rem.leading_exponent();
            Exp s;
            for (int i = 0; i < N; ++i) {
                s[i] = la[i] - lb[i];
                if (s[i] < 0)
                    return std::nullopt;
            }
            FieldElement c = rem.leading_coefficient() * inv;
            MPoly t = monomial(c, s);
            q.add_term(s, c);
            rem -= t * b;
        }
        return q;
    }

    MPoly monic() const {
        if (terms_.empty())
            return *this;
        return *this * leading_coefficient().inverse();
    }

    std::string to_string(const std::array<std::string, N>& vars) const {
        if (terms_.empty())
            return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string cs = c.to_string(true);
            bool neg = cs[0] == '-';
            if (neg)
                cs = cs.substr(1);
            if (!out.empty())
                out += neg ? "-" : "+";
            else if (neg)
                out += "-";
            std::string mono;
            for (int i = 0; i < N; ++i) {
                if (e[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += "*";
                mono += vars[i];
                if (e[i] > 1)
                    mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                out += cs;
            else if (cs == "1")
                out += mono;
            else
                out += cs + "*" + mono;
        }
        return out;
    }

private:
    const NumberField* field_ = nullptr;
    Terms terms_;
};

namespace detail {

template <int N>
std::map<int, MPoly<N>> by_variable(const MPoly<N>& p, int v) {
    std::map<int, MPoly<N>> out;
    for (const auto& [e, c] : p.terms()) {
        Exponent<N> f = e;
        f[v] = 0;
        auto it = out.try_emplace(e[v], MPoly<N>(p.field())).first;
        it->second.add_term(f, c);
    }
    return out;
}

template <int N>
MPoly<N> gcd_from(const MPoly<N>& a, const MPoly<N>& b, int v);

template <int N>
MPoly<N> content_in(const MPoly<N>& p, int v) {
    MPoly<N> g(p.field());
    for (const auto& [d, c] : by_variable<N>(p, v)) {
        g = gcd_from<N>(g, c, v + 1);
        if (g.is_constant() && !g.is_zero())
            break;
    }
    return g;
}

template <int N>
MPoly<N> primitive_in(const MPoly<N>& p, int v) {
    if (p.is_zero())
        return p;
    return *p.exact_divide(content_in<N>(p, v));
}

template <int N>
MPoly<N> pseudo_remainder(MPoly<N> a, const MPoly<N>& b, int v) {
    int db = b.degree_in(v);
    MPoly<N> lb = by_variable<N>(b, v).rbegin()->second;
    while (!a.is_zero() && a.degree_in(v) >= db) {
        int da = a.degree_in(v);
        MPoly<N> la = by_variable<N>(a, v).rbegin()->second;
        Exponent<N> s{};
        s[v] = da - db;
        a = lb * a - la * MPoly<N>::monomial(FieldElement(a.field(), 1), s) * b;
    }
    return a;
}

template <int N>
MPoly<N> gcd_from(const MPoly<N>& a, const MPoly<N>& b, int v) {
    const NumberField* k = common_field(a.field(), b.field());
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    if (v >= N || a.is_constant() || b.is_constant())
        return MPoly<N>::constant(k, 1);
    if (a.degree_in(v) <= 0 && b.degree_in(v) <= 0)
        return gcd_from<N>(a, b, v + 1);
    MPoly<N> ca = content_in<N>(a, v), cb = content_in<N>(b, v);
    MPoly<N> g = gcd_from<N>(ca, cb, v + 1);
    MPoly<N> pa = *a.exact_divide(ca), pb = *b.exact_divide(cb);
    if (pa.degree_in(v) < pb.degree_in(v))
        std::swap(pa, pb);
    while (!pb.is_zero() && pb.degree_in(v) > 0) {
        MPoly<N> r = pseudo_remainder<N>(pa, pb, v);
        pa = std::move(pb);
        pb = primitive_in<N>(r, v);
    }
    if (pb.is_zero())
        return (g * primitive_in<N>(pa, v)).monic();
    return g.monic();
}

} // namespace detail

template <int N>
MPoly<N> gcd(const MPoly<N>& a, const MPoly<N>& b) {
    return detail::gcd_from<N>(a, b, 0);
}

} // namespace rfi
