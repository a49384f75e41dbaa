#include "rfi/resolve.hpp"

#include <climits>
#include <functional>

namespace rfi {

namespace {

const NumberField* field_of(const NumberField* k) { return k ? k : NumberField::rationals(); }

FieldElement at_origin(const Local& f) { return f.coeff({0, 0}); }

// f with the other variable set to v, as a polynomial in variable var
UPoly restrict_to(const Local& f, int var, const FieldElement& v, const NumberField* k) {
    std::vector<FieldElement> c;
    for (const auto& [e, a] : f.terms()) {
        int deg = e[var];
        int other = e[1 - var];
        if (static_cast<int>(c.size()) <= deg)
            c.resize(deg + 1, FieldElement(k, 0));
        c[deg] += other == 0 ? a : a * v.pow(other);
    }
    return UPoly(k, c);
}

// coefficients in y of f, each a polynomial in x
std::vector<UPoly> y_coefficients(const Local& f, const NumberField* k) {
    std::vector<std::vector<FieldElement>> c;
    for (const auto& [e, a] : f.terms()) {
        if (static_cast<int>(c.size()) <= e[1])
            c.resize(e[1] + 1);
        auto& row = c[e[1]];
        if (static_cast<int>(row.size()) <= e[0])
            row.resize(e[0] + 1, FieldElement(k, 0));
        row[e[0]] = a;
    }
    std::vector<UPoly> out;
    for (auto& row : c)
        out.emplace_back(k, row);
    return out;
}

// Res_y(p, q) by evaluation at integer points and interpolation
UPoly resultant_y(const Local& p, const Local& q, const NumberField* k) {
    auto pc = y_coefficients(p, k), qc = y_coefficients(q, k);
    int m = static_cast<int>(pc.size()) - 1, n = static_cast<int>(qc.size()) - 1;
    int dx = 0;
    for (const auto& c : pc)
        dx = std::max(dx, std::max(0, c.degree()));
    int ex = 0;
    for (const auto& c : qc)
        ex = std::max(ex, std::max(0, c.degree()));
    int bound = dx * n + ex * m;
    std::vector<FieldElement> xs, ys;
    for (int i = 0; i <= bound; ++i) {
        FieldElement x(k, i);
        std::vector<FieldElement> a, b;
        for (const auto& c : pc)
            a.push_back(c.eval(x));
        for (const auto& c : qc)
            b.push_back(c.eval(x));
        xs.push_back(x);
        ys.push_back(resultant(a, b, k));
    }
    // Newton divided differences
    int N = static_cast<int>(xs.size());
    std::vector<FieldElement> dd = ys;
    for (int j = 1; j < N; ++j)
        for (int i = N - 1; i >= j; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    UPoly r(k, {dd[N - 1]});
    for (int i = N - 2; i >= 0; --i)
        r = r * UPoly(k, {-xs[i], FieldElement(k, 1)}) + UPoly::constant(dd[i]);
    return r;
}

Local affine(const Form& f, int pivot, const NumberField* k) {
    std::array<FieldElement, 3> p{FieldElement(k, 0), FieldElement(k, 0), FieldElement(k, 0)};
    p[pivot] = FieldElement(k, 1);
    return dehomogenize(f, root_chart(p));
}

} // namespace

FieldElement Extension::embed(const FieldElement& x) const {
    FieldElement r(field, 0), pw(field, 1);
    for (const auto& c : x.coefficients()) {
        r += pw * c;
        pw *= generator_image;
    }
    return r;
}

Local Extension::embed(const Local& f) const {
    Local out(field);
    for (const auto& [e, c] : f.terms())
        out.add_term(e, embed(c));
    return out;
}

Form Extension::embed(const Form& f) const {
    Form out(field);
    for (const auto& [e, c] : f.terms())
        out.add_term(e, embed(c));
    return out;
}

std::optional<Extension> adjoin_root(const UPoly& f0) {
    const NumberField* k = field_of(f0.field());
    UPoly f = f0.monic();
    if (f.degree() < 2 || !find_roots_in_field(f).roots.empty())
        return std::nullopt;
    Extension ext;
    if (k->is_rationals()) {
        if (f.degree() > 3)
            return std::nullopt;
        std::vector<Rational> m;
        for (const auto& c : f.coefficients())
            m.push_back(c.rational_value());
        ext.field = NumberField::from_minimal_polynomial(m);
        ext.theta = FieldElement::generator(ext.field);
        ext.generator_image = FieldElement(ext.field, 1);
        return ext;
    }
    if (k->degree() != 2 || f.degree() != 2)
        return std::nullopt;
    const NumberField* q = NumberField::rationals();
    const auto& mk = k->minimal_polynomial();
    // primitive element gamma = theta + s a; its minimal polynomial is the norm of f(x - s t)
    for (long s = 1; s <= 12; ++s) {
        Local P(q), Q(q);
        Local x = Local::variable(q, 0), y = Local::variable(q, 1);
        for (size_t i = 0; i < mk.size(); ++i)
            P += y.pow(static_cast<int>(i)) * mk[i];
        Local shifted = x - y * Rational(s);
        for (int i = 0; i <= f.degree(); ++i) {
            FieldElement fi = f.coeff(i);
            const auto& cc = fi.coefficients();
            Local ci(q);
            for (size_t j = 0; j < cc.size(); ++j)
                ci += y.pow(static_cast<int>(j)) * cc[j];
            Q += ci * shifted.pow(i);
        }
        UPoly n = resultant_y(P, Q, q);
        if (n.degree() != 4 || gcd(n, n.derivative()).degree() > 0)
            continue;
        n = n.monic();
        std::vector<Rational> m;
        for (const auto& c : n.coefficients())
            m.push_back(c.rational_value());
        const NumberField* L = NumberField::from_minimal_polynomial(m);
        FieldElement g = FieldElement::generator(L);
        // a is the common root of mk(t) and f(gamma - s t)
        std::vector<FieldElement> mc;
        for (const auto& c : mk)
            mc.emplace_back(L, c);
        UPoly mt(L, mc), ft(L);
        UPoly lin(L, {g, FieldElement(L, -s)});
        UPoly pw = UPoly::constant(FieldElement(L, 1));
        for (int i = 0; i <= f.degree(); ++i) {
            FieldElement fi = f.coeff(i);
            const auto& cc = fi.coefficients();
            std::vector<FieldElement> ci;
            for (const auto& c : cc)
                ci.emplace_back(L, c);
            ft += UPoly(L, ci) * pw;
            pw = pw * lin;
        }
        UPoly h = gcd(mt, ft);
        if (h.degree() != 1)
            continue;
        ext.field = L;
        ext.generator_image = -h.coeff(0) / h.coeff(1);
        ext.theta = g - ext.generator_image * Rational(s);
        FieldElement check(L, 0), p(L, 1);
        for (int i = 0; i <= f.degree(); ++i) {
            check += ext.embed(f.coeff(i)) * p;
            p *= ext.theta;
        }
        if (!check.is_zero())
            continue;
        return ext;
    }
    return std::nullopt;
}

bool LocalFoliation::singular() const { return at_origin(a).is_zero() && at_origin(b).is_zero(); }

SingularPoints singular_points(const OneForm& omega) {
    const NumberField* k = field_of(omega.field());
    SingularPoints out;
    Local A = affine(omega.A(), 2, k), B = affine(omega.B(), 2, k);
    UPoly r = resultant_y(A, B, k);
    if (r.is_zero())
        throw PreconditionError("singular locus is not finite");
    if (r.degree() > 0) {
        RootsResult xr = find_roots_in_field(r);
        if (xr.remaining_degree > 0) {
            out.complete = false;
            out.open.push_back({xr.cofactor, 0, FieldElement(k, 0)});
        }
        for (const auto& x0 : xr.roots) {
            UPoly g = gcd(restrict_to(A, 1, x0, k), restrict_to(B, 1, x0, k));
            if (g.degree() <= 0)
                continue;
            RootsResult yr = find_roots_in_field(g);
            if (yr.remaining_degree > 0) {
                out.complete = false;
                out.open.push_back({yr.cofactor, 1, x0});
            }
            for (const auto& y0 : yr.roots)
                out.points.push_back({x0, y0, FieldElement(k, 1)});
        }
    }
    // the line Z = 0
    std::array<UPoly, 3> inf;
    for (int i = 0; i < 3; ++i) {
        std::vector<FieldElement> c;
        for (const auto& [e, a] : omega.component(i).terms()) {
            if (e[2] != 0)
                continue;
            if (static_cast<int>(c.size()) <= e[0])
                c.resize(e[0] + 1, FieldElement(k, 0));
            c[e[0]] = a;
        }
        inf[i] = UPoly(k, c);
    }
    UPoly g = gcd(gcd(inf[0], inf[1]), inf[2]);
    if (g.degree() > 0) {
        RootsResult xr = find_roots_in_field(g);
        if (xr.remaining_degree > 0) {
            out.complete = false;
            out.open.push_back({xr.cofactor, 2, FieldElement(k, 0)});
        }
        for (const auto& x0 : xr.roots)
            out.points.push_back({x0, FieldElement(k, 1), FieldElement(k, 0)});
    }
    std::array<FieldElement, 3> u{FieldElement(k, 1), FieldElement(k, 0), FieldElement(k, 0)};
    bool at_u = true;
    for (int i = 0; i < 3; ++i)
        if (!omega.component(i).eval(u).is_zero())
            at_u = false;
    if (at_u)
        out.points.push_back(u);
    return out;
}

LocalFoliation localize(const OneForm& omega, const std::array<FieldElement, 3>& p) {
    RootChart r = root_chart(p);
    return {dehomogenize(omega.component(r.xi), r), dehomogenize(omega.component(r.yi), r)};
}

LocalFoliation transform(const LocalFoliation& w, int chart, const FieldElement& c) {
    const NumberField* k = field_of(common_field(w.a.field(), common_field(w.b.field(), c.field())));
    Local x = Local::variable(k, 0), y = Local::variable(k, 1);
    Local pa = chart_pullback(w.a, chart, c), pb = chart_pullback(w.b, chart, c);
    Local a, b;
    if (chart == 1) {
        // v = u (w + c): dv = (w + c) du + u dw
        a = pa + (y + Local::constant(c)) * pb;
        b = x * pb;
    } else {
        // u = x y, v = x: du = y dx + x dy
        a = y * pa + pb;
        b = x * pa;
    }
    int ka = a.is_zero() ? INT_MAX : x_order(a), kb = b.is_zero() ? INT_MAX : x_order(b);
    int s = std::min(ka, kb);
    return {shift_x(a, s), shift_x(b, s)};
}

BlowUp blow_up_local(const LocalFoliation& w) {
    if (!w.singular())
        throw PreconditionError("blow-up needs a singular point at the origin");
    const NumberField* k = field_of(common_field(w.a.field(), w.b.field()));
    BlowUp out;
    FieldElement zero(k, 0);
    LocalFoliation t = transform(w, 1, zero);
    UPoly ea = restrict_to(t.a, 1, zero, k), eb = restrict_to(t.b, 1, zero, k);
    out.dicritical = !eb.is_zero();
    UPoly g = gcd(ea, eb);
    if (g.is_zero())
        throw PreconditionError("transformed foliation vanishes on the exceptional divisor");
    if (g.degree() > 0) {
        RootsResult r = find_roots_in_field(g);
        if (r.remaining_degree > 0) {
            out.complete = false;
            out.cofactor = r.cofactor;
        }
        for (const auto& c : r.roots)
            out.chart1.emplace_back(c, transform(w, 1, c));
    }
    out.chart2 = transform(w, 2, zero);
    return out;
}

bool is_simple(const LocalFoliation& w) {
    FieldElement ax = w.a.coeff({1, 0}), ay = w.a.coeff({0, 1});
    FieldElement bx = w.b.coeff({1, 0}), by = w.b.coeff({0, 1});
    // dual vector field (b, -a)
    FieldElement t = bx - ay;
    FieldElement det = bx * (-ay) - by * (-ax);
    if (det.is_zero())
        return !t.is_zero();
    FieldElement c = (t * t - det * Rational(2)) / det;
    if (!c.is_rational())
        return true;
    Rational cq = c.rational_value();
    if (cq <= 0)
        return true;
    // r^2 - c r + 1 has a rational root iff c^2 - 4 is a rational square
    Rational disc = cq * cq - 4;
    if (disc < 0)
        return true;
    Integer num = disc.get_num(), den = disc.get_den();
    return !(mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t()));
}

namespace {

LocalFoliation embed(const LocalFoliation& w, const Extension& e) { return {e.embed(w.a), e.embed(w.b)}; }

void require_simple(const LocalFoliation& w, const std::string& where, const UPoly& f) {
    if (w.singular() && !is_simple(w))
        throw FieldExtensionRequired(where, f.to_string("t"));
}

void certify(const OneForm& omega, const OpenFactor& of) {
    auto ext = adjoin_root(of.f);
    if (!ext)
        throw FieldExtensionRequired("singular points of the foliation", of.f.to_string("t"));
    const NumberField* L = ext->field;
    OneForm w(ext->embed(omega.A()), ext->embed(omega.B()), ext->embed(omega.C()), false);
    std::vector<std::array<FieldElement, 3>> pts;
    if (of.kind == 0) {
        Local A = affine(w.A(), 2, L), B = affine(w.B(), 2, L);
        UPoly g = gcd(restrict_to(A, 1, ext->theta, L), restrict_to(B, 1, ext->theta, L));
        if (g.degree() <= 0)
            return;
        RootsResult r = find_roots_in_field(g);
        if (r.remaining_degree > 0)
            throw FieldExtensionRequired("singular points of the foliation", of.f.to_string("t"));
        for (const auto& y0 : r.roots)
            pts.push_back({ext->theta, y0, FieldElement(L, 1)});
    } else if (of.kind == 1) {
        pts.push_back({ext->embed(of.x0), ext->theta, FieldElement(L, 1)});
    } else {
        pts.push_back({ext->theta, FieldElement(L, 1), FieldElement(L, 0)});
    }
    for (const auto& p : pts)
        require_simple(localize(w, p), "a singular point outside K", of.f);
}

} // namespace

Configuration build_configuration(const OneForm& omega, int depth_cap) {
    const NumberField* k = field_of(omega.field());
    SingularPoints sp = singular_points(omega);
    for (const auto& of : sp.open)
        certify(omega, of);
    Configuration all(k);
    int counter = 0;
    std::function<void(const LocalFoliation&, int, int, const FieldElement&, const std::array<FieldElement, 3>*,
                       int)>
        visit = [&](const LocalFoliation& w, int parent, int chart, const FieldElement& c,
                    const std::array<FieldElement, 3>* root, int depth) {
            if (!w.singular() || is_simple(w))
                return;
            if (depth >= depth_cap)
                throw PreconditionError("resolution depth cap " + std::to_string(depth_cap) + " exceeded");
            std::string id = "p" + std::to_string(++counter);
            int idx = root ? all.add_root(id, *root) : all.add_child(id, parent, chart, c);
            BlowUp bu = blow_up_local(w);
            if (!bu.complete) {
                auto ext = adjoin_root(bu.cofactor);
                if (!ext)
                    throw FieldExtensionRequired("exceptional divisor of " + id, bu.cofactor.to_string("t"));
                require_simple(transform(embed(w, *ext), 1, ext->theta), "exceptional divisor of " + id,
                               bu.cofactor);
            }
            all.set_dicritical(idx, bu.dicritical);
            for (const auto& [c1, w1] : bu.chart1)
                visit(w1, idx, 1, c1, nullptr, depth + 1);
            visit(bu.chart2, idx, 2, FieldElement(k, 0), nullptr, depth + 1);
        };
    for (const auto& p : sp.points)
        visit(localize(omega, p), -1, 0, FieldElement(k, 0), &p, 0);
    Configuration closure = all.dicritical_closure();
    Configuration out(k);
    for (int i = 0; i < closure.size(); ++i) {
        const auto& p = closure.point(i);
        std::string id = "q" + std::to_string(i + 1);
        int j = p.parent < 0 ? out.add_root(id, p.coords) : out.add_child(id, p.parent, p.chart, p.c);
        out.set_dicritical(j, p.dicritical);
    }
    return out;
}

} // namespace rfi
