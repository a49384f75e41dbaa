#include "rfi/qpoly.hpp"

#include <algorithm>

namespace rfi::qpoly {

void trim(QPoly& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

int degree(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i)
        r[i] += b[i];
    trim(r);
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i)
        r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i)
        r[i] -= b[i];
    trim(r);
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty())
        return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
    if (b.empty())
        throw DivisionByZero();
    QPoly r = a;
    trim(r);
    if (r.size() < b.size())
        return {{}, r};
    QPoly q(r.size() - b.size() + 1);
    Rational inv = 1 / b.back();
    for (int i = degree(r); i >= degree(b); --i) {
        Rational c = r[i] * inv;
        if (c == 0)
            continue;
        int s = i - degree(b);
        q[s] = c;
        for (size_t j = 0; j < b.size(); ++j)
            r[s + j] -= c * b[j];
    }
    r.resize(b.size() - 1);
    trim(r);
    trim(q);
    return {q, r};
}

QPoly monic(const QPoly& f) {
    if (f.empty())
        return f;
    QPoly r = f;
    Rational inv = 1 / f.back();
    for (auto& c : r)
        c *= inv;
    return r;
}

QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

std::pair<QPoly, QPoly> half_gcdex(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    QPoly s0{1}, s1{};
    while (!b.empty()) {
        auto [q, r] = divrem(a, b);
        QPoly s2 = sub(s0, mul(q, s1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (a.empty())
        return {a, s0};
    Rational inv = 1 / a.back();
    for (auto& c : a)
        c *= inv;
    for (auto& c : s0)
        c *= inv;
    return {a, s0};
}

QPoly derivative(const QPoly& f) {
    if (f.size() <= 1)
        return {};
    QPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i)
        r[i - 1] = f[i] * static_cast<long>(i);
    trim(r);
    return r;
}

Rational eval(const QPoly& f, const Rational& x) {
    Rational r = 0;
    for (size_t i = f.size(); i-- > 0;)
        r = r * x + f[i];
    return r;
}

QPoly squarefree_part(const QPoly& f) {
    QPoly g = f;
    trim(g);
    if (g.size() <= 1)
        return monic(g);
    QPoly h = gcd(g, derivative(g));
    return monic(divrem(g, h).first);
}

namespace {

int sign_variations(const std::vector<QPoly>& seq, const Rational& x) {
    int count = 0;
    int last = 0;
    for (const auto& p : seq) {
        int s = sgn(eval(p, x));
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

struct Interval {
    Rational lo, hi;
    bool hi_is_known_root;
};

} // namespace

std::vector<Rational> rational_roots(const QPoly& input) {
    QPoly f = squarefree_part(input);
    std::vector<Rational> roots;
    if (f.size() <= 1)
        return roots;
    if (f[0] == 0) {
        roots.push_back(0);
        f.erase(f.begin());
    }
    if (f.size() <= 1)
        return roots;
    // clear denominators: roots p/q of a primitive integer polynomial have q | lc
    Integer den = 1;
    for (const auto& c : f)
        den = lcm(den, Integer(c.get_den()));
    Integer content = 0;
    for (const auto& c : f) {
        Integer n = Integer(c * den);
        content = gcd(content, n);
    }
    Integer lc = abs(Integer(f.back() * den) / content);

    std::vector<QPoly> seq{f, derivative(f)};
    while (true) {
        QPoly r = divrem(seq[seq.size() - 2], seq.back()).second;
        if (r.empty())
            break;
        for (auto& c : r)
            c = -c;
        seq.push_back(std::move(r));
    }

    Rational bound = 0;
    for (size_t i = 0; i + 1 < f.size(); ++i)
        bound = std::max(bound, Rational(abs(f[i] / f.back())));
    bound += 2;

    Rational width_limit(1, lc);
    auto count = [&](const Interval& iv) {
        int n = sign_variations(seq, iv.lo) - sign_variations(seq, iv.hi);
        return iv.hi_is_known_root ? n - 1 : n;
    };
    std::vector<Interval> stack{{-bound, bound, false}};
    while (!stack.empty()) {
        Interval iv = stack.back();
        stack.pop_back();
        int n = count(iv);
        if (n <= 0)
            continue;
        if (n == 1 && iv.hi - iv.lo < width_limit) {
            Rational scaled_hi = iv.hi * lc;
            Integer k = Integer(scaled_hi.get_num()) / Integer(scaled_hi.get_den());
            if (k * scaled_hi.get_den() > scaled_hi.get_num())
                k -= 1;
            for (Integer cand : {k, Integer(k - 1), Integer(k + 1)}) {
                Rational x(cand, lc);
                x.canonicalize();
                bool inside = x > iv.lo && (x < iv.hi || (x == iv.hi && !iv.hi_is_known_root));
                if (inside && eval(f, x) == 0) {
                    roots.push_back(x);
                    break;
                }
            }
            continue;
        }
        Rational mid = (iv.lo + iv.hi) / 2;
        bool mid_root = eval(f, mid) == 0;
        if (mid_root)
            roots.push_back(mid);
        stack.push_back({iv.lo, mid, mid_root});
        stack.push_back({mid, iv.hi, iv.hi_is_known_root});
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace rfi::qpoly
