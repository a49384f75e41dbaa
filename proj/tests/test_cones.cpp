#include <algorithm>
#include <random>

#include "doctest.h"
#include "rfi/cones.hpp"
#include "rfi/linalg.hpp"

using namespace rfi;

namespace {

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

std::vector<IntVec> sorted(std::vector<IntVec> v) {
    std::sort(v.begin(), v.end());
    return v;
}

IntVec random_vec(std::mt19937& rng, int dim, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntVec v(dim);
    for (auto& x : v)
        x = d(rng);
    return v;
}

} // namespace

TEST_CASE("dual of V1 for the family at a = 5/9") {
    auto c = read_configuration(std::string(RFI_FIXTURE_DIR) + "/family_a59.cfg");
    std::vector<IntVec> gens;
    for (int q = 0; q < c.size(); ++q)
        gens.push_back(to_vector(strict_exceptional(c, q)));
    gens.push_back(iv({1, -1, -1, -1, 0}));
    RationalCone v1(5, gens);
    RationalCone d = dual(v1);
    CHECK(d.lineality.empty());
    std::vector<IntVec> expected{iv({1, 0, 0, 0, 0}), iv({1, -1, 0, 0, 0}), iv({1, 0, -1, 0, 0}),
                                 iv({2, 0, -1, -1, 0}), iv({3, 0, -2, -1, -1})};
    CHECK(d.rays == sorted(expected));
    std::vector<long> squares;
    for (const auto& r : expected)
        squares.push_back(pairing(r, r).get_si());
    CHECK(squares == std::vector<long>{1, 0, 0, 2, 3});
    CHECK_FALSE(exists_negative_square(d));
    // V0 has no L* component, so the line class is outside it
    RationalCone v0(5, std::vector<IntVec>(gens.begin(), gens.end() - 1));
    CHECK_FALSE(contains(v0, gens.back()));
    CHECK(contains(v1, gens.back()));
}

TEST_CASE("dual of the orthant") {
    for (int n = 1; n <= 5; ++n) {
        std::vector<IntVec> gens;
        for (int i = 0; i < n; ++i) {
            IntVec e(n, 0);
            e[i] = 1;
            gens.push_back(e);
        }
        RationalCone d = dual(RationalCone(n, gens));
        // x.e_0 >= 0 and -x_i >= 0 for i > 0
        std::vector<IntVec> expected;
        for (int i = 0; i < n; ++i) {
            IntVec e(n, 0);
            e[i] = i == 0 ? 1 : -1;
            expected.push_back(e);
        }
        CHECK(d.rays == sorted(expected));
    }
}

TEST_CASE("lineality appears for lower-dimensional cones") {
    RationalCone c(3, {iv({1, 0, 0})});
    RationalCone d = dual(c);
    CHECK(d.lineality.size() == 2);
    CHECK(d.rays == std::vector<IntVec>{iv({1, 0, 0})});
    CHECK(same_cone(dual(d), c));
    RationalCone all = dual(RationalCone(3, {}));
    CHECK(all.lineality.size() == 3);
}

TEST_CASE("membership") {
    RationalCone c(3, {iv({1, 0, 0}), iv({1, 1, 0}), iv({1, 0, 1})});
    CHECK(contains(c, iv({3, 1, 1})));
    CHECK(contains(c, iv({0, 0, 0})));
    CHECK_FALSE(contains(c, iv({-1, 0, 0})));
    CHECK_FALSE(contains(c, iv({1, 1, 1})));
    std::mt19937 rng(3);
    for (int n = 0; n < 100; ++n) {
        int dim = 2 + n % 6;
        std::vector<IntVec> gens;
        for (int k = 0; k < 1 + n % 7; ++k)
            gens.push_back(random_vec(rng, dim, -3, 3));
        RationalCone cone(dim, gens);
        IntVec x(dim, 0);
        for (const auto& g : cone.rays) {
            int l = rng() % 4;
            for (int i = 0; i < dim; ++i)
                x[i] += l * g[i];
        }
        CHECK(contains(cone, x));
        for (const auto& g : cone.rays)
            CHECK(contains(cone, g));
    }
}

TEST_CASE("negative squares") {
    CHECK(exists_negative_square(RationalCone(3, {iv({0, 1, 0})})));
    CHECK(exists_negative_square(RationalCone(3, {iv({1, 1, 0}), iv({-1, 1, 0})})));
    CHECK_FALSE(exists_negative_square(RationalCone(3, {iv({1, 1, 0}), iv({1, 0, 1})})));
    RationalCone line(3, {});
    line.lineality.push_back(iv({1, 1, 0}));
    CHECK_FALSE(exists_negative_square(line));
}

TEST_CASE("rank of classes") {
    CHECK(rank_of_classes({iv({1, 0}), iv({0, 1})}) == 2);
    CHECK(rank_of_classes({iv({1, 2, 3}), iv({2, 4, 6})}) == 1);
    auto c = read_configuration(std::string(RFI_FIXTURE_DIR) + "/example1.cfg");
    std::vector<IntVec> as{to_vector(DivisorClass(1, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0})),
                           to_vector(DivisorClass(2, {1, 1, 1, 1, 1, 1, 0, 0, 0, 0}))};
    for (int q : c.non_dicritical_points())
        as.push_back(to_vector(strict_exceptional(c, q)));
    CHECK(rank_of_classes(as) == 10);
}

TEST_CASE("dual of the dual is the cone") {
    std::mt19937 rng(41);
    for (int n = 0; n < 120; ++n) {
        int dim = 2 + n % 7;
        std::vector<IntVec> gens;
        int k = 1 + static_cast<int>(rng() % (dim + 4));
        for (int i = 0; i < k; ++i)
            gens.push_back(random_vec(rng, dim, -3, 3));
        RationalCone c(dim, gens);
        RationalCone d = dual(c);
        RationalCone dd = dual(d);
        CHECK(same_cone(dd, c));
        if (dd.lineality.empty()) {
            // extremal rays are among the primitive input generators
            for (const auto& r : dd.rays)
                CHECK(std::find(c.rays.begin(), c.rays.end(), r) != c.rays.end());
            CHECK(dd.rays == sorted(dual(dual(dd)).rays));
        }
        // every ray of the dual is tight on dim - 1 - lineality independent generators
        auto gens_c = c.generators();
        for (const auto& r : d.rays) {
            std::vector<IntVec> tight;
            for (const auto& g : gens_c) {
                CHECK(pairing(g, r) >= 0);
                if (pairing(g, r) == 0)
                    tight.push_back(g);
            }
            CHECK(rank_of_classes(tight) == dim - 1 - static_cast<int>(d.lineality.size()));
        }
    }
}

TEST_CASE("negative square decision agrees with random search") {
    std::mt19937 rng(59);
    int witnesses = 0, total = 0;
    for (int n = 0; n < 220; ++n) {
        int dim = 3 + n % 4;
        std::vector<IntVec> gens;
        int k = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) {
            IntVec v = random_vec(rng, dim, -2, 2);
            std::uniform_int_distribution<int> lead(-4, 6);
            v[0] = lead(rng);
            gens.push_back(v);
        }
        RationalCone c(dim, gens);
        if (c.rays.empty())
            continue;
        ++total;
        bool found = false;
        for (int t = 0; t < 400 && !found; ++t) {
            IntVec x(dim, 0);
            for (const auto& g : c.rays) {
                int l = rng() % 6;
                for (int i = 0; i < dim; ++i)
                    x[i] += l * g[i];
            }
            if (pairing(x, x) < 0)
                found = true;
        }
        bool decided = exists_negative_square(c);
        if (found) {
            ++witnesses;
            CHECK(decided);
        }
        // the dual of the cone, as the algorithms use it
        RationalCone d = dual(c);
        if (!d.rays.empty() || !d.lineality.empty()) {
            bool dfound = false;
            auto dg = d.generators();
            for (int t = 0; t < 200 && !dfound; ++t) {
                IntVec x(dim, 0);
                for (const auto& g : dg) {
                    int l = rng() % 5;
                    for (int i = 0; i < dim; ++i)
                        x[i] += l * g[i];
                }
                if (pairing(x, x) < 0)
                    dfound = true;
            }
            if (dfound)
                CHECK(exists_negative_square(d));
        }
    }
    CHECK(total >= 200);
    CHECK(witnesses >= 50);
}
