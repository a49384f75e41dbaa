#include "rfi/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rfi/linsys.hpp"
#include "rfi/upoly.hpp"

namespace rfi {

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::Integral:
        return "integral";
    case Outcome::NoIntegral:
        return "no-integral";
    default:
        return "inconclusive";
    }
}

Verdict Verdict::integral(Form f, Form g, std::string reason) {
    Verdict v;
    v.outcome = Outcome::Integral;
    v.F = std::move(f);
    v.G = std::move(g);
    v.reason = std::move(reason);
    return v;
}

Verdict Verdict::none(std::string reason) {
    Verdict v;
    v.outcome = Outcome::NoIntegral;
    v.reason = std::move(reason);
    return v;
}

Verdict Verdict::inconclusive(std::string reason) {
    Verdict v;
    v.outcome = Outcome::Inconclusive;
    v.reason = std::move(reason);
    return v;
}

namespace {

void trace(const Caps& caps, const std::string& line) {
    if (caps.trace)
        *caps.trace << line << '\n';
}

std::vector<IntVec> exceptional_vectors(const Configuration& config, const std::vector<int>& pts) {
    std::vector<IntVec> out;
    for (int q : pts)
        out.push_back(to_vector(strict_exceptional(config, q)));
    return out;
}

std::vector<int> all_points(const Configuration& config) {
    std::vector<int> v(config.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// wedge test on a two-dimensional space of sections
Verdict pencil_verdict(const OneForm& omega, const std::vector<Form>& b, const std::string& what) {
    if (is_first_integral(b[0], b[1], omega))
        return Verdict::integral(b[0], b[1], what + ": basis quotient is a first integral");
    return Verdict::none(what + ": basis quotient is not a first integral");
}

long max_lambda(const DivisorClass& c, const Caps& caps) {
    long by_degree = c.d > 0 ? caps.degree_max / c.d : caps.lambda_max;
    return std::min<long>(caps.lambda_max, by_degree);
}

// points whose conditions C.E~_q involve e_p; checked once the last of them is set
std::vector<std::vector<int>> checks_by_last_index(const Configuration& config) {
    std::vector<std::vector<int>> at(config.size());
    for (int q = 0; q < config.size(); ++q) {
        int last = q;
        for (int p : config.proximate_to(q))
            last = std::max(last, p);
        at[last].push_back(q);
    }
    return at;
}

long strict_product(const Configuration& config, const std::vector<long>& e, int q) {
    long v = e[q];
    for (int p : config.proximate_to(q))
        v -= e[p];
    return v;
}

DivisorClass primitive_class(const DivisorClass& c) {
    long g = std::labs(c.d);
    for (long x : c.e)
        g = std::gcd(g, std::labs(x));
    if (g <= 1)
        return c;
    DivisorClass r = c;
    r.d /= g;
    for (auto& x : r.e)
        x /= g;
    return r;
}

} // namespace

IndependentSystem make_independent_system(const OneForm& omega, const Configuration& config,
                                          const std::vector<Form>& curves) {
    auto dic = config.dicritical_points();
    auto nd = config.non_dicritical_points();
    if (curves.size() != dic.size())
        throw PreconditionError("an independent system needs " + std::to_string(dic.size()) + " curves, got " +
                                std::to_string(curves.size()));
    IndependentSystem s;
    std::vector<IntVec> vecs = exceptional_vectors(config, nd);
    for (size_t i = 0; i < curves.size(); ++i) {
        if (!is_invariant_curve(curves[i], omega))
            throw PreconditionError("curve " + std::to_string(i + 1) + " is not invariant");
        DivisorClass c = strict_class(curves[i], config);
        if (self_intersection(c) > 0)
            throw PreconditionError("curve " + std::to_string(i + 1) + " has strict self-intersection " +
                                    std::to_string(self_intersection(c)) + " > 0");
        s.curves.push_back(curves[i]);
        s.classes.push_back(c);
        vecs.push_back(to_vector(c));
    }
    if (rank_of_classes(vecs) != static_cast<int>(vecs.size()))
        throw PreconditionError("curve classes and E~_q, q in N, are not linearly independent");
    return s;
}

Verdict checked(const OneForm& omega, Verdict v) {
    if (v.outcome != Outcome::Integral)
        return v;
    if (v.F.total_degree() == v.G.total_degree() && v.F.monic() != v.G.monic() &&
        is_first_integral(v.F, v.G, omega))
        return v;
    return Verdict::inconclusive("candidate integral failed the wedge check: " + v.reason);
}

Verdict algorithm1(const OneForm& omega, const Configuration& config, int d, const Caps& caps) {
    int m = config.size();
    auto at = checks_by_last_index(config);
    std::vector<bool> dicritical(m);
    for (int q : config.dicritical_points())
        dicritical[q] = true;
    std::vector<long> e(m);
    long d2 = static_cast<long>(d) * d;
    std::optional<Verdict> found;
    long candidates = 0;

    std::function<void(int, long)> rec = [&](int i, long sq) {
        if (found)
            return;
        if (i == m) {
            if (sq != d2)
                return;
            ++candidates;
            DivisorClass D(d, e);
            long h = h0(D, config);
            trace(caps, "algorithm1: D = " + D.to_string(config) + " h0 = " + std::to_string(h));
            if (h != 2)
                return;
            auto b = basis(D, config);
            if (is_first_integral(b[0], b[1], omega))
                found = Verdict::integral(b[0], b[1], "algorithm 1: pencil of " + D.to_string(config));
            return;
        }
        for (long v = d; v >= -d; --v) {
            long s2 = sq + v * v;
            if (s2 > d2)
                continue;
            e[i] = v;
            bool ok = true;
            for (int q : at[i]) {
                long t = strict_product(config, e, q);
                if (dicritical[q] ? t <= 0 : t != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                rec(i + 1, s2);
            if (found)
                return;
        }
        e[i] = 0;
    };
    rec(0, 0);
    if (found)
        return *found;
    return Verdict::none("algorithm 1: no class of degree " + std::to_string(d) + " gives a pencil (" +
                         std::to_string(candidates) + " candidates)");
}

ConditionReport classify_conditions(const Configuration& config, const IndependentSystem& s, int lambda_max) {
    ConditionReport r;
    r.T = t_from_system(config, s.classes);
    r.c1 = self_intersection(r.T) == 0;
    try {
        r.decomposition = decompose_in_as(config, s.classes, r.T);
        r.c2 = r.decomposition.all_positive();
    } catch (const InconsistentSystem&) {
        r.c2 = false;
    }
    Caps caps;
    caps.lambda_max = lambda_max;
    for (long l = 1; l <= max_lambda(r.T, caps); ++l) {
        if (h0(l * r.T, config) >= 2) {
            r.c3 = true;
            r.lambda = l;
            break;
        }
    }
    r.c3_capped = !r.c3;
    return r;
}

std::optional<Rational> w_function(long k, bool positive) {
    if (k < 1)
        throw PreconditionError("w needs k >= 1");
    std::vector<long> divs;
    for (long x = 2; x <= k; ++x)
        if (k % x == 0)
            divs.push_back(x);
    std::optional<Rational> best;
    // adding a divisor raises the sum by at least 1/2, so branches stop once it exceeds 1
    std::function<void(size_t, Rational)> rec = [&](size_t i, Rational sum) {
        Rational phi = 1 - sum;
        if (positive ? phi > 0 : phi < 0) {
            Rational v = positive ? phi : -phi;
            if (!best || v < *best)
                best = v;
        }
        if (sum > 1)
            return;
        for (size_t j = i; j < divs.size(); ++j)
            rec(j + 1, sum + Rational(divs[j] - 1, divs[j]));
    };
    rec(0, 0);
    if (best)
        best->canonicalize();
    return best;
}

DeltaBound delta_bound(const OneForm& omega, const Configuration& config, const IndependentSystem& s,
                       const Decomposition& dec) {
    DeltaBound out;
    Integer r = 1;
    for (const auto& a : dec.alpha)
        r = lcm(r, Integer(a.get_den()));
    for (const auto& b : dec.beta)
        r = lcm(r, Integer(b.get_den()));
    out.r = r.get_si();
    DivisorClass T = t_from_system(config, s.classes);
    Integer g = T.d;
    for (long x : T.e)
        g = gcd(g, Integer(x));
    out.k0 = Integer(r * abs(g)).get_si();
    Integer num = omega.degree() + 2;
    Rational den = 0;
    for (size_t i = 0; i < s.curves.size(); ++i) {
        num -= s.curves[i].total_degree();
        den += dec.alpha[i] * s.curves[i].total_degree();
    }
    out.numerator = num;
    if (num == 0) {
        out.reason = "deg F + 2 - sum deg C_i = 0";
        return out;
    }
    auto w = w_function(out.k0, num > 0);
    if (!w) {
        out.reason = "w undefined for k0 = " + std::to_string(out.k0);
        return out;
    }
    out.value = Rational(num) / (*w * den);
    out.value.canonicalize();
    if (out.value < 1) {
        out.reason = "Delta = " + to_string(out.value) + " < 1";
        return out;
    }
    out.well_defined = true;
    return out;
}

Verdict algorithm2(const OneForm& omega, const Configuration& config, const IndependentSystem& s, const Caps& caps) {
    DivisorClass T = t_from_system(config, s.classes);
    trace(caps, "algorithm2: T = " + T.to_string(config));
    if (self_intersection(T) != 0)
        return Verdict::none("algorithm 2: T^2 = " + std::to_string(self_intersection(T)) + " != 0");
    std::optional<Decomposition> dec;
    try {
        dec = decompose_in_as(config, s.classes, T);
    } catch (const InconsistentSystem&) {
    }
    long alpha = 0;
    if (dec && dec->all_positive()) {
        DeltaBound db = delta_bound(omega, config, s, *dec);
        if (!db.well_defined)
            return Verdict::none("algorithm 2: Delta not well defined (" + db.reason + ")");
        trace(caps, "algorithm2: Delta = " + to_string(db.value));
        long top = Integer(db.value.get_num() / db.value.get_den()).get_si();
        for (long l = 1; l <= top && !alpha; ++l)
            if (l * T.d > caps.degree_max)
                return Verdict::inconclusive("algorithm 2: degree cap reached below Delta");
            else if (h0(l * T, config) >= 2)
                alpha = l;
        if (!alpha)
            return Verdict::none("algorithm 2: h0(lambda T) <= 1 for all lambda <= Delta = " + to_string(db.value));
    } else {
        long top = max_lambda(T, caps);
        for (long l = 1; l <= top && !alpha; ++l)
            if (h0(l * T, config) >= 2)
                alpha = l;
        if (!alpha)
            return Verdict::inconclusive("algorithm 2: no lambda <= " + std::to_string(top) + " with h0(lambda T) >= 2");
    }
    DivisorClass D = alpha * T;
    long h = h0(D, config);
    trace(caps, "algorithm2: alpha = " + std::to_string(alpha) + " h0 = " + std::to_string(h));
    if (h > 2)
        return Verdict::none("algorithm 2: h0(" + std::to_string(alpha) + "T) = " + std::to_string(h) + " > 2");
    return pencil_verdict(omega, basis(D, config), "algorithm 2 (alpha = " + std::to_string(alpha) + ")");
}

namespace {

// classes d L - sum e E with 0 <= e <= d, C.E~_q >= 0 and the K, square conditions,
// in descending lexicographic order of e
std::vector<DivisorClass> gamma3(const Configuration& config, long d) {
    int m = config.size();
    auto at = checks_by_last_index(config);
    std::vector<long> e(m);
    std::vector<DivisorClass> out;
    std::function<void(int, long, long)> rec = [&](int i, long sum, long sq) {
        if (i == m) {
            long c2 = d * d - sq, kc = sum - 3 * d;
            if ((c2 == -1 && kc == -1) || (c2 < 0 && kc >= 0))
                out.emplace_back(d, e);
            return;
        }
        for (long v = d; v >= 0; --v) {
            e[i] = v;
            bool ok = true;
            for (int q : at[i])
                if (strict_product(config, e, q) < 0) {
                    ok = false;
                    break;
                }
            if (ok)
                rec(i + 1, sum + v, sq + v * v);
        }
        e[i] = 0;
    };
    rec(0, 0, 0);
    return out;
}

} // namespace

Algorithm3Result algorithm3(const OneForm& omega, const Configuration& config, const Caps& caps) {
    Algorithm3Result res;
    int m = config.size();
    int dim = m + 1;
    auto nd = config.non_dicritical_points();
    size_t s = config.dicritical_points().size();
    std::vector<IntVec> vgens = exceptional_vectors(config, all_points(config));
    std::vector<IntVec> nvecs = exceptional_vectors(config, nd);
    RationalCone V(dim, vgens);
    res.duals.push_back(dual(V));
    trace(caps, "algorithm3: V0 dual has " + std::to_string(res.duals.back().rays.size()) + " rays");
    std::vector<DivisorClass> gclasses;

    long d = 0;
    std::vector<DivisorClass> pending;
    size_t next = 0;
    while (res.G.size() < s && exists_negative_square(res.duals.back())) {
        while (next == pending.size()) {
            if (++d > caps.d_max) {
                res.reason = "degree cap " + std::to_string(caps.d_max) + " reached with card(G) = " +
                             std::to_string(res.G.size());
                return res;
            }
            pending = gamma3(config, d);
            next = 0;
            trace(caps, "algorithm3: degree " + std::to_string(d) + ", " + std::to_string(pending.size()) +
                            " candidates");
        }
        const DivisorClass& D = pending[next++];
        IntVec dv = to_vector(D);
        if (contains(V, dv))
            continue;
        if (h0(D, config) != 1)
            continue;
        Form Q = basis(D, config)[0];
        if (!(strict_class(Q, config) == D))
            continue;
        vgens.push_back(dv);
        V = RationalCone(dim, vgens);
        res.accepted.push_back(D);
        res.duals.push_back(dual(V));
        std::ostringstream line;
        line << "algorithm3: V" << res.accepted.size() << " += " << D.to_string(config) << " (Q = " << to_string(Q)
             << "), dual has " << res.duals.back().rays.size() << " rays";
        trace(caps, line.str());
        if (!is_invariant_curve(Q, omega))
            continue;
        bool has_component = false;
        for (const auto& g : res.G)
            if (Q.exact_divide(g))
                has_component = true;
        if (has_component)
            continue;
        std::vector<IntVec> vecs = nvecs;
        for (const auto& c : gclasses)
            vecs.push_back(to_vector(c));
        vecs.push_back(dv);
        if (rank_of_classes(vecs) != static_cast<int>(vecs.size()))
            continue;
        res.G.push_back(Q);
        gclasses.push_back(D);
        trace(caps, "algorithm3: G += " + to_string(Q));
    }
    if (res.G.size() < s) {
        res.outcome = Outcome::NoIntegral;
        res.reason = "V dual has no class of negative square and card(G) = " + std::to_string(res.G.size()) +
                     " < " + std::to_string(s);
        return res;
    }
    res.outcome = Outcome::Integral;
    res.system.curves = res.G;
    res.system.classes = gclasses;
    res.reason = "independent system of " + std::to_string(s) + " curves";
    return res;
}

std::optional<Verdict> memo_fastpath(const OneForm& omega, const Configuration& config, const IndependentSystem& s) {
    DivisorClass T = t_from_system(config, s.classes);
    if (intersect(canonical_class(config), T) >= 0)
        return std::nullopt;
    long h = h0(T, config);
    if (h != 2)
        return Verdict::none("K.T < 0 and h0(T) = " + std::to_string(h) + " != 2");
    return pencil_verdict(omega, basis(T, config), "K.T < 0");
}

std::optional<Verdict> discard_checks(const OneForm& omega, const Configuration& config,
                                      const std::vector<Form>& invariant_curves) {
    std::vector<DivisorClass> cls;
    for (const auto& c : invariant_curves) {
        if (!is_invariant_curve(c, omega))
            throw PreconditionError("discard checks need invariant curves, got " + to_string(c));
        cls.push_back(strict_class(c, config));
        long sq = self_intersection(cls.back());
        if (sq > 0)
            return Verdict::none("invariant curve " + to_string(c) + " has strict self-intersection " +
                                 std::to_string(sq) + " > 0");
    }
    for (size_t i = 0; i < cls.size(); ++i) {
        if (self_intersection(cls[i]) != 0)
            continue;
        for (size_t j = 0; j < cls.size(); ++j) {
            if (i == j || !gcd(invariant_curves[i], invariant_curves[j]).is_constant())
                continue;
            if (intersect(cls[i], cls[j]) != 0)
                return Verdict::none("invariant curves " + to_string(invariant_curves[i]) + " (square 0) and " +
                                     to_string(invariant_curves[j]) + " meet after blowing up");
        }
    }
    return std::nullopt;
}

namespace {

using Poly3 = MPoly<3>;

Poly3 compose(const Form& f, const std::array<Poly3, 3>& lin) {
    Poly3 out(f.field());
    std::array<std::map<int, Poly3>, 3> powers;
    auto power = [&](int i, int k) -> const Poly3& {
        auto it = powers[i].find(k);
        if (it == powers[i].end())
            it = powers[i].emplace(k, lin[i].pow(k)).first;
        return it->second;
    };
    for (const auto& [e, c] : f.terms())
        out += power(0, e[0]) * power(1, e[1]) * power(2, e[2]) * c;
    return out;
}

Form line_through(const std::array<FieldElement, 3>& p, const std::array<FieldElement, 3>& q,
                  const NumberField* k) {
    Form l(k);
    for (int i = 0; i < 3; ++i) {
        FieldElement c = p[(i + 1) % 3] * q[(i + 2) % 3] - p[(i + 2) % 3] * q[(i + 1) % 3];
        l += Form::variable(k, i) * c;
    }
    return l;
}

} // namespace

LinesResult invariant_lines_through(const OneForm& omega, const std::array<FieldElement, 3>& p) {
    const NumberField* k = common_field(omega.field(), common_field(p[0].field(), common_field(p[1].field(), p[2].field())));
    if (!k)
        k = NumberField::rationals();
    // q1, q2 complete p to a basis
    std::array<std::array<FieldElement, 3>, 3> unit;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            unit[i][j] = FieldElement(k, i == j ? 1 : 0);
    int piv = 0;
    for (int i = 0; i < 3; ++i)
        if (!p[i].is_zero())
            piv = i;
    auto q1 = unit[(piv + 1) % 3], q2 = unit[(piv + 2) % 3];

    // Omega restricted to the line through p and q is h(s, u) (s du - u ds) up to a factor;
    // the line is invariant iff sum_i A_i(s p + u q) q_i vanishes
    auto restricted = [&](const std::array<Poly3, 3>& qv) {
        std::array<Poly3, 3> lin;
        Poly3 s = Poly3::variable(k, 0), u = Poly3::variable(k, 1);
        for (int i = 0; i < 3; ++i)
            lin[i] = s * p[i] + u * qv[i];
        Poly3 h(k);
        for (int i = 0; i < 3; ++i)
            h += compose(omega.component(i), lin) * qv[i];
        return h;
    };
    Poly3 t = Poly3::variable(k, 2);
    std::array<Poly3, 3> qt;
    for (int i = 0; i < 3; ++i)
        qt[i] = Poly3::constant(q1[i]) + t * q2[i];
    Poly3 h = restricted(qt);

    LinesResult out;
    std::map<std::pair<int, int>, std::vector<FieldElement>> coeffs;
    for (const auto& [e, c] : h.terms()) {
        auto& v = coeffs[{e[0], e[1]}];
        if (static_cast<int>(v.size()) <= e[2])
            v.resize(e[2] + 1, FieldElement(k, 0));
        v[e[2]] = c;
    }
    UPoly g(k);
    for (auto& [se, v] : coeffs)
        g = gcd(g, UPoly(k, v));
    if (coeffs.empty()) {
        // every line through p is invariant
        out.lines = {line_through(p, q1, k), line_through(p, q2, k)};
        return out;
    }
    if (g.degree() > 0) {
        RootsResult r = find_roots_in_field(g);
        for (const auto& x : r.roots) {
            std::array<FieldElement, 3> q;
            for (int i = 0; i < 3; ++i)
                q[i] = q1[i] + x * q2[i];
            out.lines.push_back(line_through(p, q, k));
        }
        out.complete = r.remaining_degree == 0;
    }
    std::array<Poly3, 3> qinf;
    for (int i = 0; i < 3; ++i)
        qinf[i] = Poly3::constant(q2[i]);
    if (restricted(qinf).is_zero())
        out.lines.push_back(line_through(p, q2, k));
    return out;
}

std::optional<Verdict> square_zero_check(const OneForm& omega, const Configuration& config, const Form& curve,
                                         const Caps& caps) {
    DivisorClass c = strict_class(curve, config);
    if (self_intersection(c) != 0 || c.d <= 0)
        return std::nullopt;
    if (!is_invariant_curve(curve, omega))
        return std::nullopt;
    c = primitive_class(c);
    long top = max_lambda(c, caps);
    for (long l = 1; l <= top; ++l) {
        long h = h0(l * c, config);
        if (h < 2)
            continue;
        std::string what = "invariant curve " + to_string(curve) + " with strict square 0, D_F = " +
                           std::to_string(l) + "(" + c.to_string(config) + ")";
        trace(caps, "square-zero check: " + what + ", h0 = " + std::to_string(h));
        if (h > 2)
            return Verdict::none(what + " has h0 = " + std::to_string(h) + " > 2");
        return pencil_verdict(omega, basis(l * c, config), what);
    }
    return std::nullopt;
}

namespace {

Verdict with_cone_data(Verdict v, const Configuration& config, const Algorithm3Result& a3) {
    for (const auto& g : a3.G)
        v.certificate.push_back("G " + to_string(g));
    for (const auto& c : a3.accepted)
        v.certificate.push_back("V " + c.to_string(config));
    if (!a3.duals.empty()) {
        const auto& d = a3.duals.back();
        v.certificate.push_back("dual rays " + std::to_string(d.rays.size()) + ", lineality " +
                                std::to_string(d.lineality.size()));
    }
    return v;
}

} // namespace

Verdict pipeline(const OneForm& omega, const Configuration& config, const Caps& caps) {
    if (config.size() == 0)
        return Verdict::none("no dicritical points");
    if (config.size() == 1) {
        if (!config.is_root(0))
            throw PreconditionError("single point configuration must be a point of P^2");
        auto b = basis(DivisorClass(1, {1}), config);
        return checked(omega, pencil_verdict(omega, b, "single point: lines through it"));
    }

    // invariant lines through the points of P^2 in the configuration
    std::vector<Form> lines;
    for (int i = 0; i < config.size(); ++i) {
        if (!config.is_root(i))
            continue;
        for (auto& l : invariant_lines_through(omega, config.point(i).coords).lines) {
            bool seen = false;
            for (const auto& x : lines)
                if (x.monic() == l.monic())
                    seen = true;
            if (!seen)
                lines.push_back(l);
        }
    }
    if (auto v = discard_checks(omega, config, lines))
        return *v;

    Algorithm3Result a3 = algorithm3(omega, config, caps);
    trace(caps, "algorithm3: " + a3.reason);
    if (a3.outcome == Outcome::Integral) {
        if (auto v = memo_fastpath(omega, config, a3.system))
            return checked(omega, *v);
        ConditionReport r = classify_conditions(config, a3.system, caps.lambda_max);
        if (r.c1 || r.c2 || r.c3)
            return checked(omega, algorithm2(omega, config, a3.system, caps));
        return Verdict::inconclusive("independent system found but none of the sufficient conditions hold");
    }
    if (a3.outcome == Outcome::NoIntegral)
        return with_cone_data(Verdict::none("algorithm 3: " + a3.reason), config, a3);

    // residual checks with the invariant curves found so far
    std::vector<Form> known = lines;
    for (const auto& g : a3.G)
        known.push_back(g);
    if (auto v = discard_checks(omega, config, known))
        return *v;
    for (const auto& c : known)
        if (auto v = square_zero_check(omega, config, c, caps))
            return checked(omega, *v);
    return with_cone_data(Verdict::inconclusive("algorithm 3: " + a3.reason), config, a3);
}

} // namespace rfi
