#include <random>

#include "doctest.h"
#include "rfi/linsys.hpp"
#include "rfi/parse.hpp"

using namespace rfi;

namespace {

Configuration config_fixture(const std::string& name) {
    return read_configuration(std::string(RFI_FIXTURE_DIR) + "/" + name + ".cfg");
}

Integer falling(int a, int i) {
    Integer r = 1;
    for (int k = 0; k < i; ++k)
        r *= a - k;
    return r;
}

Rational power(const Rational& x, int n) {
    Rational r = 1;
    for (int k = 0; k < n; ++k)
        r *= x;
    return r;
}

// h0 from vanishing of all partials of order e-1 at ordinary points
long taylor_h0(int d, const std::vector<std::array<Rational, 3>>& pts, const std::vector<long>& e) {
    auto monos = monomials_of_degree(d);
    int n = static_cast<int>(monos.size());
    Matrix<Rational> rows;
    for (size_t p = 0; p < pts.size(); ++p) {
        // order d partials are constants, so higher orders reduce to them
        int k = std::min(static_cast<int>(e[p]) - 1, d);
        if (k < 0)
            continue;
        for (const auto& a : monomials_of_degree(k)) {
            std::vector<Rational> row(n);
            for (int m = 0; m < n; ++m) {
                const auto& b = monos[m];
                if (b[0] < a[0] || b[1] < a[1] || b[2] < a[2])
                    continue;
                Rational v = Rational(falling(b[0], a[0]) * falling(b[1], a[1]) * falling(b[2], a[2]));
                for (int t = 0; t < 3; ++t)
                    v *= power(pts[p][t], b[t] - a[t]);
                row[m] = v;
            }
            rows.push_back(row);
        }
    }
    return n - rank(rows, n);
}

// coefficients on the strict exceptional classes of sum a_q E_q*
std::vector<long> in_strict_basis(const Configuration& c, const std::vector<long>& a) {
    std::vector<long> b(a.size());
    for (int r = 0; r < c.size(); ++r) {
        b[r] = a[r];
        for (int p = 0; p < r; ++p)
            if (c.proximate(r, p))
                b[r] += b[p];
    }
    return b;
}

Configuration random_tree(std::mt19937& rng, int m) {
    auto q = NumberField::rationals();
    Configuration c(q);
    std::uniform_int_distribution<int> small(-2, 2);
    while (c.size() < m) {
        std::string id = "p" + std::to_string(c.size() + 1);
        try {
            if (c.size() == 0 || rng() % 4 == 0) {
                std::array<FieldElement, 3> pt{FieldElement(q, small(rng)), FieldElement(q, small(rng)),
                                               FieldElement(q, rng() % 3 == 0 ? 0 : 1)};
                c.add_root(id, pt);
            } else {
                int parent = static_cast<int>(rng() % c.size());
                c.add_child(id, parent, rng() % 3 == 0 ? 2 : 1, FieldElement(q, rng() % 2 ? 0 : small(rng)));
            }
        } catch (const ConfigurationError&) {
        }
    }
    return c;
}

} // namespace

TEST_CASE("h0 without conditions") {
    auto q = NumberField::rationals();
    Configuration c(q);
    c.add_root("p", {FieldElement(q, 0), FieldElement(q, 0), FieldElement(q, 1)});
    for (int d = 0; d <= 8; ++d)
        CHECK(h0(DivisorClass(d, {0}), c) == (d + 1) * (d + 2) / 2);
    CHECK(h0(DivisorClass(1, {0}), c) == 3);
    CHECK(h0(DivisorClass(1, {1}), c) == 2);
    CHECK(h0(DivisorClass(-1, {0}), c) == 0);
}

TEST_CASE("example 1: the pencil spanned by F and (X-Z)^4") {
    auto c = config_fixture("example1");
    auto k = c.field();
    DivisorClass t(4, {2, 2, 1, 1, 1, 1, 1, 1, 1, 1});
    CHECK(h0(t, c) == 2);
    std::vector<Form> expected{parse_form("X^2Z^2-2X^3Z+X^4+XYZ^2-2X^2YZ+X^3Y+Y^4", k), parse_form("(X-Z)^4", k)};
    CHECK(same_span(basis(t, c), expected));
    Form line = parse_form("X-Z", k);
    CHECK(effective_multiplicities(line, c) == std::vector<long>{1, 1, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK(effective_multiplicities(line.pow(4), c) == std::vector<long>{4, 4, 0, 0, 0, 0, 0, 0, 0, 0});
    Form conic = parse_form("(8a-1)X^2+4aXY+8Y^2+(2-8a)XZ-4aYZ-Z^2", k);
    CHECK(strict_class(conic, c) == DivisorClass(2, {1, 1, 1, 1, 1, 1, 0, 0, 0, 0}));
    CHECK(intersect(t, strict_class(line, c)) == 0);
    CHECK(intersect(t, strict_class(conic, c)) == 0);
}

TEST_CASE("fig2: T from the lines Y and Z and its pencil") {
    auto c = config_fixture("fig2");
    auto k = c.field();
    DivisorClass cy = strict_class(parse_form("Y", k), c), cz = strict_class(parse_form("Z", k), c);
    DivisorClass t = t_from_system(c, {cy, cz});
    CHECK(intersect(t, cz) == 0);
    CHECK(self_intersection(t) == 0);
    CHECK(t.d == 10);
    CHECK(h0(t, c) == 2);
    std::vector<Form> expected{parse_form("Y^10-2XY^5Z^4+2Y^6Z^4+X^2Z^8-2XYZ^8+Y^2Z^8", k), parse_form("Y^3Z^7", k)};
    CHECK(same_span(basis(t, c), expected));
    // F1 is a square; a general member has class T
    CHECK(strict_class(expected[0] + expected[1], c) == t);
    CHECK(2 * strict_class(parse_form("Y^5-XZ^4+YZ^4", k), c) == strict_class(expected[0], c));
}

TEST_CASE("cusp multiplicities") {
    auto c = parse_configuration("point p origin=(0:0:1)\npoint q parent=p chart=1 c=0\n");
    auto k = c.field();
    CHECK(effective_multiplicities(parse_form("Y^2Z-X^3", k), c) == std::vector<long>{2, 1});
    CHECK(effective_multiplicities(parse_form("X", k), c) == std::vector<long>{1, 0});
    CHECK(effective_multiplicities(parse_form("Y", k), c) == std::vector<long>{1, 1});
    auto c2 = parse_configuration("point p origin=(0:0:1)\npoint q parent=p chart=2\n");
    CHECK(effective_multiplicities(parse_form("Y^2Z-X^3", c2.field()), c2) == std::vector<long>{2, 0});
    CHECK(effective_multiplicities(parse_form("X^2Z-Y^3", c2.field()), c2) == std::vector<long>{2, 1});
}

TEST_CASE("points at infinity use the last nonzero coordinate as pivot") {
    auto c = parse_configuration("point p origin=(1:0:0)\npoint q origin=(0:1:0)\n");
    auto k = c.field();
    CHECK(effective_multiplicities(parse_form("Z", k), c) == std::vector<long>{1, 1});
    CHECK(effective_multiplicities(parse_form("YZ", k), c) == std::vector<long>{2, 1});
    CHECK(h0(DivisorClass(1, {1, 1}), c) == 1);
}

TEST_CASE("h0 agrees with the Taylor oracle at ordinary points") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> coord(-3, 3);
    auto q = NumberField::rationals();
    int cases = 0;
    while (cases < 220) {
        int npts = 1 + rng() % 6;
        int d = 1 + rng() % 6;
        Configuration c(q);
        std::vector<std::array<Rational, 3>> pts;
        std::vector<long> e;
        try {
            while (c.size() < npts) {
                std::array<FieldElement, 3> p{FieldElement(q, coord(rng)), FieldElement(q, coord(rng)),
                                              FieldElement(q, rng() % 4 == 0 ? 0 : 1)};
                c.add_root("p" + std::to_string(c.size()), p);
                const auto& n = c.point(c.size() - 1).coords;
                pts.push_back({n[0].rational_value(), n[1].rational_value(), n[2].rational_value()});
                e.push_back(static_cast<long>(rng() % 4));
            }
        } catch (const ConfigurationError&) {
            continue;
        }
        ++cases;
        INFO(c.to_text(), " d=", d);
        CHECK(h0(DivisorClass(d, e), c) == taylor_h0(d, pts, e));
    }
}

TEST_CASE("monotonicity and membership of basis elements") {
    std::mt19937 rng(7);
    for (int n = 0; n < 60; ++n) {
        auto c = random_tree(rng, 2 + n % 5);
        DivisorClass D = DivisorClass::zero(c.size());
        D.d = 1 + rng() % 4;
        for (auto& x : D.e)
            x = static_cast<long>(rng() % 4) - 1;
        long h = h0(D, c);
        int q = static_cast<int>(rng() % c.size());
        DivisorClass D2 = D;
        D2.e[q] += 1;
        CHECK(h0(D2, c) <= h);
        auto b = basis(D, c);
        CHECK(static_cast<long>(b.size()) == h);
        for (const auto& f : b) {
            auto m = effective_multiplicities(f, c);
            std::vector<long> a(c.size());
            for (int i = 0; i < c.size(); ++i)
                a[i] = m[i] - D.e[i];
            for (long v : in_strict_basis(c, a))
                CHECK(v >= 0);
        }
    }
}

TEST_CASE("strict classes are additive") {
    std::mt19937 rng(13);
    auto q = NumberField::rationals();
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int n = 0; n < 40; ++n) {
        auto c = random_tree(rng, 2 + n % 6);
        // random members of systems with assigned points, so multiplicities are not all zero
        auto make = [&](int deg) {
            DivisorClass D = DivisorClass::zero(c.size());
            D.d = deg;
            for (auto& x : D.e)
                x = static_cast<long>(rng() % 2);
            Form f(q);
            for (const auto& b : basis(D, c))
                f += b * Rational(coef(rng));
            if (f.is_zero())
                f.add_term(monomials_of_degree(deg)[0], FieldElement(q, 1));
            return f;
        };
        Form g1 = make(1 + n % 3), g2 = make(1 + n % 2);
        CHECK(strict_class(g1 * g2, c) == strict_class(g1, c) + strict_class(g2, c));
    }
}
