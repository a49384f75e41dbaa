#include "rfi/charts.hpp"

#include <climits>

namespace rfi {

RootChart root_chart(const std::array<FieldElement, 3>& p) {
    RootChart r;
    for (int i = 2; i >= 0; --i)
        if (!p[i].is_zero()) {
            r.pivot = i;
            break;
        }
    int others[2], k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != r.pivot)
            others[k++] = i;
    r.xi = others[0];
    r.yi = others[1];
    FieldElement inv = p[r.pivot].inverse();
    r.x0 = p[r.xi] * inv;
    r.y0 = p[r.yi] * inv;
    return r;
}

std::vector<FieldElement> binomial_expansion(const NumberField* k, const FieldElement& a, int n) {
    std::vector<FieldElement> out(n + 1);
    Integer b = 1;
    FieldElement pw(k, 1);
    for (int i = n; i >= 0; --i) {
        out[i] = pw * Rational(b);
        b = b * i / (n - i + 1);
        pw = pw * a;
    }
    return out;
}

Local dehomogenize(const Form& f, const RootChart& r) {
    const NumberField* k = common_field(f.field(), common_field(r.x0.field(), r.y0.field()));
    Local out(k);
    for (const auto& [e, c] : f.terms()) {
        auto ex = binomial_expansion(k, r.x0, e[r.xi]);
        auto ey = binomial_expansion(k, r.y0, e[r.yi]);
        for (size_t i = 0; i < ex.size(); ++i) {
            if (ex[i].is_zero())
                continue;
            FieldElement ci = c * ex[i];
            for (size_t j = 0; j < ey.size(); ++j)
                if (!ey[j].is_zero())
                    out.add_term({static_cast<int>(i), static_cast<int>(j)}, ci * ey[j]);
        }
    }
    return out;
}

Local chart_pullback(const Local& f, int chart, const FieldElement& c) {
    Local out(f.field());
    for (const auto& [e, a] : f.terms()) {
        int i = e[0], j = e[1];
        if (chart == 2) {
            out.add_term({i + j, i}, a);
            continue;
        }
        auto ey = binomial_expansion(f.field(), c, j);
        for (int l = 0; l <= j; ++l)
            if (!ey[l].is_zero())
                out.add_term({i + j, l}, a * ey[l]);
    }
    return out;
}

Local shift_x(const Local& f, int k) {
    Local out(f.field());
    for (const auto& [e, a] : f.terms()) {
        if (e[0] < k)
            throw PreconditionError("shift_x: not divisible by the requested power of x");
        out.add_term({e[0] - k, e[1]}, a);
    }
    return out;
}

int x_order(const Local& f) {
    int m = INT_MAX;
    for (const auto& [e, a] : f.terms())
        m = std::min(m, e[0]);
    return f.is_zero() ? -1 : m;
}

} // namespace rfi
