#include "rfi/cones.hpp"

#include <algorithm>

#include "rfi/linalg.hpp"

namespace rfi {

Integer pairing(const IntVec& a, const IntVec& b) {
    Integer s = a[0] * b[0];
    for (size_t i = 1; i < a.size(); ++i)
        s -= a[i] * b[i];
    return s;
}

namespace {

Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

bool is_zero_vec(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

IntVec combine(const Integer& s, const IntVec& a, const Integer& t, const IntVec& b) {
    IntVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = s * a[i] + t * b[i];
    return primitive(std::move(r));
}

IntVec negated(IntVec v) {
    for (auto& x : v)
        x = -x;
    return v;
}

IntVec from_rationals(const std::vector<Rational>& v) {
    Integer den = 1;
    for (const auto& x : v)
        den = lcm(den, Integer(x.get_den()));
    IntVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        r[i] = Integer(v[i] * den);
    return primitive(std::move(r));
}

Matrix<Rational> to_rational(const std::vector<IntVec>& rows) {
    Matrix<Rational> m;
    for (const auto& r : rows)
        m.emplace_back(r.begin(), r.end());
    return m;
}

void sort_unique(std::vector<IntVec>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

IntVec primitive(IntVec v) {
    Integer g = 0;
    for (const auto& x : v)
        g = gcd(g, x);
    if (g > 1)
        for (auto& x : v)
            x /= g;
    return v;
}

IntVec to_vector(const DivisorClass& c) {
    IntVec v(c.e.size() + 1);
    v[0] = c.d;
    for (size_t i = 0; i < c.e.size(); ++i)
        v[i + 1] = -c.e[i];
    return v;
}

DivisorClass to_class(const IntVec& v) {
    DivisorClass c = DivisorClass::zero(static_cast<int>(v.size()) - 1);
    c.d = v[0].get_si();
    for (size_t i = 1; i < v.size(); ++i)
        c.e[i - 1] = -v[i].get_si();
    return c;
}

RationalCone::RationalCone(int dim, std::vector<IntVec> gens) : dim(dim) {
    for (auto& g : gens) {
        if (static_cast<int>(g.size()) != dim)
            throw PreconditionError("cone generator of wrong length");
        if (is_zero_vec(g))
            continue;
        IntVec p = primitive(std::move(g));
        if (std::find(rays.begin(), rays.end(), p) == rays.end())
            rays.push_back(std::move(p));
    }
}

std::vector<IntVec> RationalCone::generators() const {
    std::vector<IntVec> g = rays;
    for (const auto& l : lineality) {
        g.push_back(l);
        g.push_back(negated(l));
    }
    return g;
}

RationalCone cone_from_inequalities(int dim, const std::vector<IntVec>& rows) {
    std::vector<IntVec> lin;
    for (int i = 0; i < dim; ++i) {
        IntVec e(dim, 0);
        e[i] = 1;
        lin.push_back(e);
    }
    std::vector<IntVec> rays;
    std::vector<const IntVec*> done;
    for (const auto& a : rows) {
        if (is_zero_vec(a))
            continue;
        auto hit = std::find_if(lin.begin(), lin.end(), [&](const IntVec& l) { return dot(a, l) != 0; });
        if (hit != lin.end()) {
            IntVec l0 = *hit;
            lin.erase(hit);
            Integer s0 = dot(a, l0);
            if (s0 < 0) {
                l0 = negated(l0);
                s0 = -s0;
            }
            for (auto& l : lin)
                l = combine(s0, l, -dot(a, l), l0);
            for (auto& r : rays)
                r = combine(s0, r, -dot(a, r), l0);
            rays.push_back(l0);
            done.push_back(&a);
            continue;
        }
        std::vector<Integer> s(rays.size());
        for (size_t i = 0; i < rays.size(); ++i)
            s[i] = dot(a, rays[i]);
        // tight sets on the inequalities processed so far
        std::vector<std::vector<bool>> tight(rays.size(), std::vector<bool>(done.size()));
        for (size_t i = 0; i < rays.size(); ++i)
            for (size_t k = 0; k < done.size(); ++k)
                tight[i][k] = dot(*done[k], rays[i]) == 0;
        std::vector<IntVec> next;
        for (size_t i = 0; i < rays.size(); ++i)
            if (s[i] >= 0)
                next.push_back(rays[i]);
        for (size_t p = 0; p < rays.size(); ++p) {
            if (s[p] <= 0)
                continue;
            for (size_t n = 0; n < rays.size(); ++n) {
                if (s[n] >= 0)
                    continue;
                std::vector<bool> common(done.size());
                for (size_t k = 0; k < done.size(); ++k)
                    common[k] = tight[p][k] && tight[n][k];
                bool adjacent = true;
                for (size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == n)
                        continue;
                    bool covers = true;
                    for (size_t k = 0; k < done.size() && covers; ++k)
                        if (common[k] && !tight[r][k])
                            covers = false;
                    if (covers)
                        adjacent = false;
                }
                if (adjacent)
                    next.push_back(combine(s[p], rays[n], -s[n], rays[p]));
            }
        }
        rays = std::move(next);
        done.push_back(&a);
    }

    RationalCone out;
    out.dim = dim;
    if (!lin.empty()) {
        Echelon<Rational> e = row_reduce(to_rational(lin), dim);
        for (const auto& row : e.rref)
            out.lineality.push_back(from_rationals(row));
        // project rays onto the orthogonal complement of the lineality space
        Matrix<Rational> l = to_rational(out.lineality);
        int k = static_cast<int>(l.size());
        Matrix<Rational> gram(k, std::vector<Rational>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                for (int t = 0; t < dim; ++t)
                    gram[i][j] += l[i][t] * l[j][t];
        for (auto& r : rays) {
            std::vector<Rational> b(k);
            for (int i = 0; i < k; ++i)
                for (int t = 0; t < dim; ++t)
                    b[i] += l[i][t] * Rational(r[t]);
            auto c = solve(gram, b, k, Rational(0));
            std::vector<Rational> pr(r.begin(), r.end());
            for (int i = 0; i < k; ++i)
                for (int t = 0; t < dim; ++t)
                    pr[t] -= (*c)[i] * l[i][t];
            r = from_rationals(pr);
        }
    }
    for (auto& r : rays)
        if (!is_zero_vec(r))
            out.rays.push_back(primitive(r));
    sort_unique(out.rays);
    return out;
}

RationalCone dual(const RationalCone& c) {
    std::vector<IntVec> rows;
    for (auto g : c.generators()) {
        for (size_t i = 1; i < g.size(); ++i)
            g[i] = -g[i];
        rows.push_back(std::move(g));
    }
    return cone_from_inequalities(c.dim, rows);
}

bool contains(const RationalCone& c, const IntVec& x) {
    if (is_zero_vec(x))
        return true;
    auto gens = c.generators();
    int m = c.dim, k = static_cast<int>(gens.size());
    if (k == 0)
        return false;
    // phase one of the simplex method with Bland's rule
    int cols = k + m;
    Matrix<Rational> t(m, std::vector<Rational>(cols + 1));
    for (int i = 0; i < m; ++i) {
        int sign = x[i] < 0 ? -1 : 1;
        for (int j = 0; j < k; ++j)
            t[i][j] = Rational(gens[j][i] * sign);
        t[i][k + i] = 1;
        t[i][cols] = Rational(x[i] * sign);
    }
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i)
        basis[i] = k + i;
    std::vector<Rational> cost(cols + 1);
    for (int j = 0; j <= cols; ++j) {
        if (j >= k && j < cols)
            continue;
        for (int i = 0; i < m; ++i)
            cost[j] -= t[i][j];
    }
    for (;;) {
        int enter = -1;
        for (int j = 0; j < cols; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter < 0)
            break;
        int leave = -1;
        Rational best;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0)
                continue;
            Rational ratio = t[i][cols] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0)
            break;  // unbounded cannot happen for a phase-one objective
        Rational piv = t[leave][enter];
        for (auto& v : t[leave])
            v /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0)
                continue;
            Rational f = t[i][enter];
            for (int j = 0; j <= cols; ++j)
                t[i][j] -= f * t[leave][j];
        }
        Rational f = cost[enter];
        for (int j = 0; j <= cols; ++j)
            cost[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    return cost[cols] == 0;
}

bool same_cone(const RationalCone& a, const RationalCone& b) {
    if (a.dim != b.dim)
        return false;
    for (const auto& g : a.generators())
        if (!contains(b, g))
            return false;
    for (const auto& g : b.generators())
        if (!contains(a, g))
            return false;
    return true;
}

bool exists_negative_square(const RationalCone& c) {
    auto gens = c.generators();
    if (gens.empty())
        return false;
    bool pos = false, neg = false;
    for (const auto& g : gens) {
        if (pairing(g, g) < 0)
            return true;
        // g.g >= 0 and g != 0 force g.L* = g[0] != 0
        (g[0] > 0 ? pos : neg) = true;
    }
    if (!(pos && neg))
        return false;
    // both nappes: the segment between them crosses L*-perp, which is negative
    // definite, unless the cone is a single line
    return rank_of_classes(gens) > 1;
}

int rank_of_classes(const std::vector<IntVec>& vectors) {
    if (vectors.empty())
        return 0;
    return rank(to_rational(vectors), static_cast<int>(vectors[0].size()));
}

} // namespace rfi
