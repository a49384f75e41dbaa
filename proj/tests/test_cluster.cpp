#include <functional>
#include <numeric>
#include <random>

#include "doctest.h"
#include "rfi/cluster.hpp"
#include "rfi/linalg.hpp"

using namespace rfi;

namespace {

Configuration fixture(const std::string& name) {
    return read_configuration(std::string(RFI_FIXTURE_DIR) + "/" + name + ".cfg");
}

DivisorClass cls(const Configuration& c, long d, std::vector<std::pair<std::string, long>> e) {
    DivisorClass r = DivisorClass::zero(c.size());
    r.d = d;
    for (auto& [id, v] : e)
        r.e[c.index_of(id)] = v;
    return r;
}

Configuration random_configuration(std::mt19937& rng, int m) {
    auto q = NumberField::rationals();
    Configuration c(q);
    std::uniform_int_distribution<int> small(-2, 2);
    while (c.size() < m) {
        std::string id = "p" + std::to_string(c.size() + 1);
        try {
            if (c.size() == 0 || rng() % 5 == 0) {
                c.add_root(id, {FieldElement(q, small(rng)), FieldElement(q, small(rng)), FieldElement(q, 1)});
            } else {
                int parent = static_cast<int>(rng() % c.size());
                int chart = rng() % 3 == 0 ? 2 : 1;
                c.add_child(id, parent, chart, FieldElement(q, rng() % 2 == 0 ? 0 : small(rng)));
            }
        } catch (const ConfigurationError&) {
        }
    }
    return c;
}

Configuration free_chain(int n) {
    auto q = NumberField::rationals();
    Configuration c(q);
    c.add_root("p1", {FieldElement(q, 0), FieldElement(q, 0), FieldElement(q, 1)});
    for (int i = 2; i <= n; ++i)
        c.add_child("p" + std::to_string(i), i - 2, 1, FieldElement(q, 1));
    return c;
}

} // namespace

TEST_CASE("fixtures load and proximity follows from charts") {
    auto f2 = fixture("fig2");
    CHECK(f2.size() == 13);
    CHECK(f2.proximate(f2.index_of("q3"), f2.index_of("q1")));
    CHECK(f2.proximate(f2.index_of("q8"), f2.index_of("q4")));
    CHECK_FALSE(f2.proximate(f2.index_of("q9"), f2.index_of("q4")));
    CHECK(f2.proximate(f2.index_of("q13"), f2.index_of("q11")));
    CHECK(f2.is_b_configuration());
    auto pen = fixture("penultimate");
    CHECK(pen.size() == 19);
    auto a861 = fixture("family_a861");
    for (int i = 5; i <= 13; ++i)
        CHECK(a861.proximate(a861.index_of("q" + std::to_string(i)), a861.index_of("q3")));
    for (const char* name : {"example1", "fig3", "family_a0", "family_a59", "family_a2", "nine"})
        CHECK(fixture(name).is_b_configuration());
}

TEST_CASE("wrong proximity assertions are rejected") {
    CHECK_THROWS_AS(parse_configuration("point p origin=(0:0:1)\npoint q parent=p chart=1 c=0\n"
                                        "point r parent=q chart=1 c=1\nproximate r p\n"),
                    ConfigurationError);
    CHECK_THROWS_AS(parse_configuration("point p origin=(0:0:1)\npoint q origin=(0:0:2)\n"), ConfigurationError);
    CHECK_THROWS_AS(parse_configuration("point q parent=p chart=1 c=0\n"), ConfigurationError);
}

TEST_CASE("configuration text round trip") {
    for (const char* name : {"example1", "fig2", "fig3", "penultimate", "family_a861", "nine"}) {
        auto c = fixture(name);
        auto d = parse_configuration(c.to_text());
        CHECK(d.to_text() == c.to_text());
        REQUIRE(d.size() == c.size());
        for (int i = 0; i < c.size(); ++i)
            for (int j = 0; j < c.size(); ++j)
                CHECK(c.proximate(i, j) == d.proximate(i, j));
    }
}

TEST_CASE("exceptional classes follow the proximity counts") {
    std::mt19937 rng(5);
    for (int n = 0; n < 50; ++n) {
        auto c = random_configuration(rng, 2 + n % 10);
        auto k = canonical_class(c);
        for (int q = 0; q < c.size(); ++q) {
            long prox = static_cast<long>(c.proximate_to(q).size());
            auto e = strict_exceptional(c, q);
            CHECK(self_intersection(e) == -1 - prox);
            CHECK(intersect(k, e) == -1 + prox);
        }
        CHECK(self_intersection(k) == 9 - c.size());
    }
}

TEST_CASE("simple ideal divisors") {
    auto f2 = fixture("fig2");
    CHECK(simple_ideal_divisor(f2, 0) == cls(f2, 0, {{"q1", -1}}));
    CHECK(simple_ideal_divisor(f2, 1) == cls(f2, 0, {{"q1", -1}, {"q2", -1}}));
    CHECK(simple_ideal_divisor(f2, 2) == cls(f2, 0, {{"q1", -2}, {"q2", -1}, {"q3", -1}}));
}

TEST_CASE("example 1: T from the line and the conic") {
    auto c = fixture("example1");
    DivisorClass c1 = cls(c, 1, {{"q1", 1}, {"q2", 1}});
    DivisorClass c2 = cls(c, 2, {{"q1", 1}, {"q2", 1}, {"q3", 1}, {"q4", 1}, {"q5", 1}, {"q6", 1}});
    DivisorClass t = t_from_system(c, {c1, c2});
    DivisorClass expected = cls(c, 4, {{"q1", 2}, {"q2", 2}});
    for (int i = 2; i < 10; ++i)
        expected.e[i] = 1;
    CHECK(t == expected);
    auto dec = decompose_in_as(c, {c1, c2}, t);
    CHECK(dec.alpha[0] == 4);
    CHECK(dec.alpha[1] == 0);
    CHECK_FALSE(dec.all_positive());
    std::vector<Rational> beta(dec.beta.begin(), dec.beta.end());
    CHECK(beta == std::vector<Rational>{2, 4, 3, 2, 1, 3, 2, 1});
}

TEST_CASE("family a = 0: T of the four lines") {
    auto c = fixture("family_a0");
    std::vector<DivisorClass> lines{cls(c, 1, {{"R", 1}, {"S", 1}}), cls(c, 1, {{"S", 1}, {"U", 1}}),
                                    cls(c, 1, {{"U", 1}, {"W", 1}}), cls(c, 1, {{"S", 1}, {"W", 1}})};
    CHECK(t_from_system(c, lines) == cls(c, 2, {{"R", 1}, {"S", 1}, {"U", 1}, {"W", 1}}));
    CHECK_THROWS_AS(t_from_system(c, {lines[0], lines[0], lines[1], lines[2]}), InconsistentSystem);
    CHECK_THROWS_AS(t_from_system(c, {lines[0]}), PreconditionError);
}

TEST_CASE("T is primitive, orthogonal to the system and decomposes back") {
    std::mt19937 rng(17);
    int checked = 0, decomposed = 0;
    for (int n = 0; n < 200 && checked < 60; ++n) {
        auto c = random_configuration(rng, 3 + n % 6);
        std::vector<int> dic;
        for (int i = 0; i < c.size(); ++i)
            if (c.children(i).empty() || rng() % 4 == 0) {
                c.set_dicritical(i);
                dic.push_back(i);
            }
        std::vector<DivisorClass> curves;
        std::uniform_int_distribution<int> e(0, 2);
        for (size_t s = 0; s < dic.size(); ++s) {
            DivisorClass d = DivisorClass::zero(c.size());
            d.d = 1 + rng() % 4;
            for (auto& x : d.e)
                x = e(rng);
            curves.push_back(d);
        }
        DivisorClass t;
        try {
            t = t_from_system(c, curves);
        } catch (const InconsistentSystem&) {
            continue;
        }
        ++checked;
        long g = std::labs(t.d);
        for (long x : t.e)
            g = std::gcd(g, std::labs(x));
        CHECK(g == 1);
        for (const auto& cv : curves)
            CHECK(intersect(t, cv) == 0);
        for (int q : c.non_dicritical_points())
            CHECK(intersect(t, strict_exceptional(c, q)) == 0);
        // random systems rarely contain T in their span; add it as an extra curve
        auto with_t = curves;
        with_t.back() = t;
        Decomposition dec;
        try {
            dec = decompose_in_as(c, with_t, t);
        } catch (const InconsistentSystem&) {
            continue;
        }
        ++decomposed;
        curves = with_t;
        std::vector<Rational> sum(c.size() + 1);
        for (size_t i = 0; i < curves.size(); ++i) {
            auto co = curves[i].coordinates();
            for (size_t j = 0; j < sum.size(); ++j)
                sum[j] += dec.alpha[i] * co[j];
        }
        for (size_t i = 0; i < dec.beta.size(); ++i) {
            auto co = strict_exceptional(c, dec.beta_points[i]).coordinates();
            for (size_t j = 0; j < sum.size(); ++j)
                sum[j] += dec.beta[i] * co[j];
        }
        CHECK(sum == t.coordinates());
    }
    CHECK(checked >= 30);
    CHECK(decomposed >= 10);
}

TEST_CASE("G_C diagonal and the chain criterion") {
    CHECK(gc_matrix(free_chain(1))[0][0] == 8);
    CHECK(gc_matrix(free_chain(2))[1][1] == 14);
    for (int n = 1; n <= 12; ++n) {
        auto c = free_chain(n);
        CHECK(gc_matrix(c)[n - 1][n - 1] == 9 * n - n * n);
        CHECK(chain_criterion(c) == (n < 9));
        if (chain_criterion(c))
            CHECK(is_p_sufficient(c));
    }
    CHECK_FALSE(is_p_sufficient(free_chain(9)));
    CHECK_THROWS_AS(chain_criterion(fixture("fig3")), PreconditionError);
}

TEST_CASE("P-sufficiency of the fixture configurations") {
    CHECK(is_p_sufficient(fixture("fig3")));
    CHECK(is_p_sufficient(fixture("family_a59")));
    CHECK(is_p_sufficient(fixture("family_a861")));
    CHECK(is_strictly_copositive(gc_matrix(fixture("fig3"))));
    CHECK(is_strictly_copositive(gc_matrix(fixture("family_a59"))));
}

TEST_CASE("small configurations are P-sufficient; both copositivity routes agree") {
    std::mt19937 rng(23);
    for (int n = 0; n < 120; ++n) {
        int m = 1 + n % 11;
        auto c = random_configuration(rng, m);
        bool fast = is_p_sufficient(c);
        CHECK(fast == is_strictly_copositive(gc_matrix(c)));
        if (m <= 8)
            CHECK(fast);
    }
    // chains of ten and eleven points cover the negative side
    CHECK_FALSE(is_strictly_copositive(gc_matrix(free_chain(10))));
}

TEST_CASE("strict copositivity against a grid search") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> entry(-6, 9);
    for (int n = 0; n < 200; ++n) {
        int m = 2 + n % 3;
        std::vector<std::vector<Integer>> g(m, std::vector<Integer>(m));
        for (int i = 0; i < m; ++i)
            for (int j = i; j < m; ++j)
                g[i][j] = g[j][i] = entry(rng);
        // x^T G x over a fine grid of the simplex
        bool grid_positive = true;
        const int steps = 24;
        std::vector<int> x(m, 0);
        std::function<void(int, int)> walk = [&](int i, int left) {
            if (!grid_positive)
                return;
            if (i == m - 1) {
                x[i] = left;
                Integer v = 0;
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b)
                        v += g[a][b] * x[a] * x[b];
                if (v <= 0)
                    grid_positive = false;
                return;
            }
            for (int k = 0; k <= left; ++k) {
                x[i] = k;
                walk(i + 1, left - k);
            }
        };
        walk(0, steps);
        bool exact = is_strictly_copositive(g);
        // a grid point with non-positive value refutes; the converse is only checked one way
        if (!grid_positive)
            CHECK_FALSE(exact);
    }
}
