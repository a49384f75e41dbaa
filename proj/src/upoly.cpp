#include "rfi/upoly.hpp"

#include <algorithm>

#include "rfi/qpoly.hpp"

namespace rfi {

UPoly::UPoly(const NumberField* field, std::vector<FieldElement> coeffs)
    : field_(field), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        field_ = common_field(field_, c.field());
    trim();
}

UPoly UPoly::constant(const FieldElement& c) { return UPoly(c.field(), {c}); }

UPoly UPoly::monomial(const FieldElement& c, int degree) {
    std::vector<FieldElement> v(degree + 1);
    v[degree] = c;
    return UPoly(c.field(), std::move(v));
}

UPoly UPoly::variable(const NumberField* field) {
    return monomial(FieldElement(field, 1), 1);
}

void UPoly::trim() {
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

FieldElement UPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return FieldElement(field_, 0);
    return c_[i];
}

FieldElement UPoly::leading() const { return c_.empty() ? FieldElement(field_, 0) : c_.back(); }

bool UPoly::has_rational_coefficients() const {
    return std::all_of(c_.begin(), c_.end(), [](const FieldElement& c) { return c.is_rational(); });
}

UPoly& UPoly::operator+=(const UPoly& o) {
    field_ = common_field(field_, o.field_);
    if (c_.size() < o.c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
    field_ = common_field(field_, o.field_);
    if (c_.size() < o.c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    const NumberField* k = common_field(a.field_, b.field_);
    if (a.c_.empty() || b.c_.empty())
        return UPoly(k);
    std::vector<FieldElement> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero())
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(k, std::move(r));
}

UPoly operator*(UPoly a, const FieldElement& c) {
    for (auto& x : a.c_)
        x *= c;
    a.field_ = common_field(a.field_, c.field());
    a.trim();
    return a;
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& x : r.c_)
        x = -x;
    return r;
}

FieldElement UPoly::eval(const FieldElement& x) const {
    FieldElement r(common_field(field_, x.field()), 0);
    for (size_t i = c_.size(); i-- > 0;)
        r = r * x + c_[i];
    return r;
}

UPoly UPoly::derivative() const {
    std::vector<FieldElement> r;
    for (size_t i = 1; i < c_.size(); ++i)
        r.push_back(c_[i] * Rational(static_cast<long>(i)));
    return UPoly(field_, std::move(r));
}

UPoly UPoly::monic() const {
    if (c_.empty())
        return *this;
    return *this * c_.back().inverse();
}

UPoly UPoly::shift(const FieldElement& s) const {
    // Horner in t + s
    UPoly lin(field_, {s, FieldElement(field_, 1)});
    UPoly r(common_field(field_, s.field()));
    for (size_t i = c_.size(); i-- > 0;)
        r = r * lin + UPoly::constant(c_[i]);
    return r;
}

std::string UPoly::to_string(const std::string& var) const {
    if (c_.empty())
        return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i].is_zero())
            continue;
        std::string cs = c_[i].to_string(true);
        bool neg = cs[0] == '-';
        if (neg)
            cs = cs.substr(1);
        if (!out.empty())
            out += neg ? "-" : "+";
        else if (neg)
            out += "-";
        if (i == 0) {
            out += cs;
            continue;
        }
        if (cs != "1")
            out += cs + "*";
        out += var;
        if (i > 1)
            out += "^" + std::to_string(i);
    }
    return out;
}

std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
    if (b.is_zero())
        throw DivisionByZero();
    const NumberField* k = common_field(a.field(), b.field());
    std::vector<FieldElement> r = a.coefficients();
    int db = b.degree();
    if (a.degree() < db)
        return {UPoly(k), a};
    std::vector<FieldElement> q(a.degree() - db + 1);
    FieldElement inv = b.leading().inverse();
    const auto& bc = b.coefficients();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i].is_zero())
            continue;
        FieldElement c = r[i] * inv;
        int s = i - db;
        q[s] = c;
        for (int j = 0; j <= db; ++j)
            r[s + j] -= c * bc[j];
    }
    r.resize(db);
    return {UPoly(k, std::move(q)), UPoly(k, std::move(r))};
}

UPoly gcd(const UPoly& a0, const UPoly& b0) {
    UPoly a = a0, b = b0;
    while (!b.is_zero()) {
        UPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UPoly squarefree_part(const UPoly& f) {
    if (f.degree() <= 0)
        return f.monic();
    UPoly g = gcd(f, f.derivative());
    return divrem(f, g).first.monic();
}

FieldElement resultant(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b,
                       const NumberField* field) {
    int m = static_cast<int>(a.size()) - 1;
    int n = static_cast<int>(b.size()) - 1;
    if (m < 0 || n < 0)
        return FieldElement(field, 0);
    int size = m + n;
    if (size == 0)
        return FieldElement(field, 1);
    std::vector<std::vector<FieldElement>> s(size, std::vector<FieldElement>(size, FieldElement(field, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            s[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            s[n + i][i + j] = b[n - j];
    FieldElement det(field, 1);
    for (int col = 0; col < size; ++col) {
        int piv = -1;
        for (int r = col; r < size; ++r)
            if (!s[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0)
            return FieldElement(field, 0);
        if (piv != col) {
            std::swap(s[piv], s[col]);
            det = -det;
        }
        det *= s[col][col];
        FieldElement inv = s[col][col].inverse();
        for (int r = col + 1; r < size; ++r) {
            if (s[r][col].is_zero())
                continue;
            FieldElement f = s[r][col] * inv;
            for (int c = col; c < size; ++c)
                s[r][c] -= f * s[col][c];
        }
    }
    return det;
}

FieldElement resultant(const UPoly& a, const UPoly& b) {
    return resultant(a.coefficients(), b.coefficients(), common_field(a.field(), b.field()));
}

namespace {

using Dense2 = std::vector<std::vector<Rational>>; // [u exponent][v exponent]

void add_to(Dense2& d, int i, int j, const Rational& c) {
    if (static_cast<int>(d.size()) <= i)
        d.resize(i + 1);
    if (static_cast<int>(d[i].size()) <= j)
        d[i].resize(j + 1);
    d[i][j] += c;
}

int v_degree(const Dense2& d) {
    int deg = -1;
    for (const auto& row : d)
        for (int j = 0; j < static_cast<int>(row.size()); ++j)
            if (row[j] != 0)
                deg = std::max(deg, j);
    return deg;
}

int u_degree(const Dense2& d) {
    int deg = -1;
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
        for (const auto& c : d[i])
            if (c != 0)
                deg = std::max(deg, i);
    return deg;
}

int total_degree(const Dense2& d) {
    int deg = -1;
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
        for (int j = 0; j < static_cast<int>(d[i].size()); ++j)
            if (d[i][j] != 0)
                deg = std::max(deg, i + j);
    return deg;
}

std::vector<Rational> at_u(const Dense2& d, const Rational& u, int vdeg) {
    std::vector<Rational> r(vdeg + 1);
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) {
        for (auto& x : r)
            x *= u;
        for (int j = 0; j < static_cast<int>(d[i].size()) && j <= vdeg; ++j)
            r[j] += d[i][j];
    }
    return r;
}

std::vector<FieldElement> lift(const std::vector<Rational>& v) {
    const NumberField* q = NumberField::rationals();
    std::vector<FieldElement> r;
    r.reserve(v.size());
    for (const auto& x : v)
        r.emplace_back(q, x);
    return r;
}

qpoly::QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    size_t n = xs.size();
    std::vector<Rational> dd = ys;
    for (size_t k = 1; k < n; ++k)
        for (size_t i = n - 1; i >= k; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
    qpoly::QPoly p{dd[n - 1]};
    for (size_t i = n - 1; i-- > 0;) {
        p = qpoly::mul(p, {-xs[i], Rational(1)});
        p = qpoly::add(p, {dd[i]});
    }
    return p;
}

// Res_v(P, Q) as a polynomial in u
qpoly::QPoly resultant_v(const Dense2& p, const Dense2& q) {
    int dp = v_degree(p), dq = v_degree(q);
    int bound = std::min(dp * u_degree(q) + dq * u_degree(p), total_degree(p) * total_degree(q));
    std::vector<Rational> xs, ys;
    const NumberField* field = NumberField::rationals();
    for (int s = 0; s <= bound; ++s) {
        Rational u(s);
        xs.push_back(u);
        ys.push_back(resultant(lift(at_u(p, u, dp)), lift(at_u(q, u, dq)), field).rational_value());
    }
    return interpolate(xs, ys);
}

std::vector<Rational> common_rational_roots(const std::vector<qpoly::QPoly>& polys) {
    qpoly::QPoly g;
    for (const auto& p : polys)
        g = qpoly::gcd(g, p);
    if (g.empty())
        return {};
    return qpoly::rational_roots(g);
}

// roots u + v*alpha of f over a quadratic field, by elimination over Q
std::vector<FieldElement> quadratic_field_roots(const UPoly& f) {
    const NumberField* k = f.field();
    FieldElement alpha = FieldElement::generator(k);
    // powers of (u + v*alpha) as 2D arrays of field elements
    using DenseK = std::vector<std::vector<FieldElement>>;
    DenseK power{{FieldElement(k, 1)}};
    Dense2 P, Q;
    auto accumulate = [&](const DenseK& pw, const FieldElement& c) {
        for (int i = 0; i < static_cast<int>(pw.size()); ++i)
            for (int j = 0; j < static_cast<int>(pw[i].size()); ++j) {
                FieldElement t = pw[i][j] * c;
                const auto& cc = t.coefficients();
                if (!cc.empty())
                    add_to(P, i, j, cc[0]);
                if (cc.size() > 1)
                    add_to(Q, i, j, cc[1]);
            }
    };
    for (int d = 0; d <= f.degree(); ++d) {
        if (d > 0) {
            DenseK next(power.size() + 1);
            for (auto& row : next)
                row.assign(power.size() + 1, FieldElement(k, 0));
            for (int i = 0; i < static_cast<int>(power.size()); ++i)
                for (int j = 0; j < static_cast<int>(power[i].size()); ++j) {
                    if (power[i][j].is_zero())
                        continue;
                    next[i + 1][j] += power[i][j];
                    next[i][j + 1] += power[i][j] * alpha;
                }
            power = std::move(next);
        }
        if (!f.coeff(d).is_zero())
            accumulate(power, f.coeff(d));
    }
    std::vector<FieldElement> roots;
    if (v_degree(Q) < 0 || v_degree(P) < 0)
        return roots;
    if (v_degree(P) == 0 && v_degree(Q) == 0)
        return roots;
    qpoly::QPoly r = resultant_v(P, Q);
    qpoly::trim(r);
    if (r.empty())
        return roots;
    for (const auto& u0 : qpoly::rational_roots(r)) {
        std::vector<Rational> pu = at_u(P, u0, v_degree(P));
        std::vector<Rational> qu = at_u(Q, u0, v_degree(Q));
        qpoly::trim(pu);
        qpoly::trim(qu);
        for (const auto& v0 : common_rational_roots({pu, qu})) {
            FieldElement beta = FieldElement(k, u0) + alpha * FieldElement(k, v0);
            if (f.eval(beta).is_zero())
                roots.push_back(beta);
        }
    }
    return roots;
}

} // namespace

RootsResult find_roots_in_field(const UPoly& f) {
    if (f.is_zero())
        throw PreconditionError("root search on the zero polynomial");
    const NumberField* k = f.field() ? f.field() : NumberField::rationals();
    RootsResult out;
    UPoly g = squarefree_part(f);
    std::vector<FieldElement> roots;
    if (g.degree() >= 1) {
        // rational roots are common roots of the coordinate polynomials
        int n = k->degree();
        std::vector<qpoly::QPoly> parts(n);
        for (int i = 0; i <= g.degree(); ++i) {
            FieldElement gi = g.coeff(i);
            const auto& cc = gi.coefficients();
            for (int j = 0; j < n; ++j) {
                parts[j].resize(g.degree() + 1);
                if (j < static_cast<int>(cc.size()))
                    parts[j][i] = cc[j];
            }
        }
        for (auto& p : parts)
            qpoly::trim(p);
        for (const auto& r : common_rational_roots(parts))
            roots.emplace_back(k, r);
        UPoly h = g;
        for (const auto& r : roots)
            h = divrem(h, UPoly(k, {-r, FieldElement(k, 1)})).first;
        if (h.degree() == 1) {
            roots.push_back(-h.coeff(0) / h.coeff(1));
        } else if (k->degree() == 2 && h.degree() >= 2) {
            auto extra = quadratic_field_roots(h);
            std::sort(extra.begin(), extra.end(), FieldElement::less);
            for (auto& e : extra)
                roots.push_back(e);
        }
    }
    UPoly cof = f;
    for (const auto& r : roots) {
        UPoly lin(k, {-r, FieldElement(k, 1)});
        while (true) {
            auto [q, rem] = divrem(cof, lin);
            if (!rem.is_zero())
                break;
            cof = std::move(q);
        }
    }
    out.roots = std::move(roots);
    out.remaining_degree = cof.degree();
    out.cofactor = std::move(cof);
    return out;
}

} // namespace rfi
