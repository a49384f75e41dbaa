#include "rfi/linsys.hpp"

#include <algorithm>
#include <map>

#include "rfi/charts.hpp"

namespace rfi {

namespace {

// local polynomial whose coefficients are linear forms in the unknowns
using Lin = std::map<int, FieldElement>;
using LinPoly = std::map<Exp2, Lin>;

void axpy(Lin& dst, const FieldElement& s, const Lin& src) {
    for (const auto& [k, v] : src) {
        auto it = dst.find(k);
        if (it == dst.end()) {
            dst.emplace(k, s * v);
        } else {
            it->second += s * v;
            if (it->second.is_zero())
                dst.erase(it);
        }
    }
}

void add_to(LinPoly& p, const Exp2& e, const FieldElement& s, const Lin& v) {
    Lin& slot = p[e];
    axpy(slot, s, v);
    if (slot.empty())
        p.erase(e);
}

// budget(p) = e_p + max(0, max over children): terms of local order >= budget
// never reach a condition at p or below
long budget(const Configuration& config, const DivisorClass& D, int p, std::vector<long>& memo) {
    long best = 0;
    for (int ch : config.children(p))
        best = std::max(best, budget(config, D, ch, memo));
    return memo[p] = D.e[p] + best;
}

struct Builder {
    const Configuration& config;
    const DivisorClass& D;
    const NumberField* field;
    std::vector<long> budgets;
    Matrix<FieldElement> rows;
    int unknowns;

    void emit(const Lin& v) {
        std::vector<FieldElement> row(unknowns, FieldElement(field, 0));
        for (const auto& [k, c] : v)
            row[k] = c;
        rows.push_back(std::move(row));
    }

    void visit(int p, LinPoly f) {
        long b = budgets[p];
        if (b <= 0)
            return;
        long e = D.e[p];
        for (auto it = f.begin(); it != f.end();) {
            long ord = it->first[0] + it->first[1];
            if (ord >= b) {
                it = f.erase(it);
            } else if (ord < e) {
                emit(it->second);
                it = f.erase(it);
            } else {
                ++it;
            }
        }
        for (int ch : config.children(p)) {
            const ClusterPoint& q = config.point(ch);
            LinPoly g;
            for (const auto& [ex, v] : f) {
                int i = ex[0], j = ex[1];
                int xe = static_cast<int>(i + j - e);
                if (q.chart == 2) {
                    add_to(g, {xe, i}, FieldElement(field, 1), v);
                    continue;
                }
                auto ey = binomial_expansion(field, q.c, j);
                for (int l = 0; l <= j; ++l)
                    if (!ey[l].is_zero())
                        add_to(g, {xe, l}, ey[l], v);
            }
            visit(ch, std::move(g));
        }
    }
};

} // namespace

ConditionSystem condition_system(const DivisorClass& D, const Configuration& config) {
    if (static_cast<int>(D.e.size()) != config.size())
        throw PreconditionError("divisor class and configuration have different sizes");
    ConditionSystem sys;
    sys.degree = static_cast<int>(D.d);
    sys.field = config.field() ? config.field() : NumberField::rationals();
    if (D.d < 0)
        return sys;
    auto monos = monomials_of_degree(sys.degree);
    sys.unknowns = static_cast<int>(monos.size());
    Builder bld{config, D, sys.field, std::vector<long>(config.size(), 0), {}, sys.unknowns};
    for (int p = 0; p < config.size(); ++p)
        if (config.is_root(p))
            budget(config, D, p, bld.budgets);
    for (int p = 0; p < config.size(); ++p) {
        if (!config.is_root(p) || bld.budgets[p] <= 0)
            continue;
        long b = bld.budgets[p];
        RootChart rc = root_chart(config.point(p).coords);
        LinPoly f;
        for (int k = 0; k < sys.unknowns; ++k) {
            const auto& m = monos[k];
            auto ex = binomial_expansion(sys.field, rc.x0, m[rc.xi]);
            auto ey = binomial_expansion(sys.field, rc.y0, m[rc.yi]);
            for (int i = 0; i < static_cast<int>(ex.size()) && i < b; ++i) {
                if (ex[i].is_zero())
                    continue;
                for (int j = 0; j < static_cast<int>(ey.size()) && i + j < b; ++j)
                    if (!ey[j].is_zero())
                        add_to(f, {i, j}, ex[i] * ey[j], Lin{{k, FieldElement(sys.field, 1)}});
            }
        }
        bld.visit(p, std::move(f));
    }
    sys.rows = std::move(bld.rows);
    return sys;
}

long h0(const DivisorClass& D, const Configuration& config) {
    if (D.d < 0)
        return 0;
    ConditionSystem sys = condition_system(D, config);
    return sys.unknowns - rank(sys.rows, sys.unknowns);
}

std::vector<Form> basis(const DivisorClass& D, const Configuration& config) {
    if (D.d < 0)
        return {};
    ConditionSystem sys = condition_system(D, config);
    auto monos = monomials_of_degree(sys.degree);
    auto null = nullspace(sys.rows, sys.unknowns, FieldElement(sys.field, 0), FieldElement(sys.field, 1));
    std::vector<Form> out;
    for (const auto& v : null) {
        Form f(sys.field);
        for (int k = 0; k < sys.unknowns; ++k)
            if (!v[k].is_zero())
                f.add_term(monos[k], v[k]);
        out.push_back(std::move(f));
    }
    return out;
}

namespace {

void multiplicities_below(const Configuration& config, int p, Local f, std::vector<long>& m) {
    int mp = f.order();
    m[p] = mp;
    auto kids = config.children(p);
    if (kids.empty())
        return;
    // terms of order > m_p (height + 1) cannot change any multiplicity below p
    f = f.truncated(mp * (config.height(p) + 1) + 1);
    for (int ch : kids) {
        const ClusterPoint& q = config.point(ch);
        multiplicities_below(config, ch, shift_x(chart_pullback(f, q.chart, q.c), mp), m);
    }
}

} // namespace

std::vector<long> effective_multiplicities(const Form& g, const Configuration& config) {
    if (g.is_zero())
        throw PreconditionError("effective_multiplicities of the zero form");
    std::vector<long> m(config.size(), 0);
    for (int p = 0; p < config.size(); ++p)
        if (config.is_root(p))
            multiplicities_below(config, p, dehomogenize(g, root_chart(config.point(p).coords)), m);
    return m;
}

DivisorClass strict_class(const Form& g, const Configuration& config) {
    return DivisorClass(g.total_degree(), effective_multiplicities(g, config));
}

int span_rank(const std::vector<Form>& forms) {
    std::map<Exp3, int, GrlexLess<3>> index;
    const NumberField* k = nullptr;
    for (const auto& f : forms) {
        k = common_field(k, f.field());
        for (const auto& [e, c] : f.terms())
            index.emplace(e, 0);
    }
    if (!k)
        k = NumberField::rationals();
    int n = 0;
    for (auto& [e, i] : index)
        i = n++;
    Matrix<FieldElement> rows;
    for (const auto& f : forms) {
        std::vector<FieldElement> row(n, FieldElement(k, 0));
        for (const auto& [e, c] : f.terms())
            row[index[e]] = c;
        rows.push_back(std::move(row));
    }
    return rank(rows, n);
}

bool same_span(const std::vector<Form>& a, const std::vector<Form>& b) {
    std::vector<Form> both = a;
    both.insert(both.end(), b.begin(), b.end());
    int r = span_rank(both);
    return r == span_rank(a) && r == span_rank(b);
}

} // namespace rfi
