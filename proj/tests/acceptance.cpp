#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rfi/engine.hpp"
#include "rfi/linsys.hpp"
#include "rfi/parse.hpp"
#include "rfi/resolve.hpp"

using namespace rfi;

namespace {

struct Case {
    Configuration config;
    OneForm omega;
    const NumberField* k;
};

Case load(const std::string& name) {
    std::string dir = std::string(RFI_FIXTURE_DIR) + "/" + name;
    auto fol = read_foliation(dir + ".fol");
    auto cfg = read_configuration(dir + ".cfg", fol.field);
    return {cfg, fol.omega, fol.field};
}

// collects failed checks with a short label
struct Checks {
    std::vector<std::string> failed;
    std::vector<std::string> notes;
    void operator()(bool ok, const std::string& what) {
        if (!ok)
            failed.push_back(what);
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::string path_of(const Configuration& c, int i) {
    std::string s;
    for (int j : c.ancestors_and_self(i)) {
        const auto& p = c.point(j);
        if (p.parent < 0)
            s += "(" + p.coords[0].to_string() + ":" + p.coords[1].to_string() + ":" + p.coords[2].to_string() + ")";
        else
            s += p.chart == 2 ? "/2" : "/1:" + p.c.to_string();
    }
    return s;
}

// tree positions with dicritical marks and proximities, independent of names
std::set<std::string> shape(const Configuration& c) {
    std::set<std::string> out;
    for (int i = 0; i < c.size(); ++i) {
        std::vector<std::string> prox;
        for (int j = 0; j < c.size(); ++j)
            if (j != i && c.proximate(i, j))
                prox.push_back(path_of(c, j));
        std::sort(prox.begin(), prox.end());
        std::string s = path_of(c, i) + (c.point(i).dicritical ? " D" : " N");
        for (const auto& p : prox)
            s += " > " + p;
        out.insert(s);
    }
    return out;
}

// runs test cases of a property suite; true when at least one ran and all passed
bool run(const std::string& binary, const std::string& test_case) {
    std::string cmd = "\"" + binary + "\" -tc=\"" + test_case + "\" 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return false;
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe))
        out.append(buf, n);
    int status = pclose(pipe);
    auto at = out.find("test cases:");
    if (status != 0 || at == std::string::npos)
        return false;
    std::istringstream in(out.substr(at + 11));
    long ran = 0;
    in >> ran;
    return ran > 0 && out.find("| 0 failed", at) != std::string::npos;
}

void criterion1(Checks& check) {
    auto c = load("example1");
    Form line = parse_form("X-Z", c.k);
    Form conic = parse_form("(8a-1)X^2+4aXY+8Y^2+(2-8a)XZ-4aYZ-Z^2", c.k);
    auto s = make_independent_system(c.omega, c.config, {line, conic});
    DivisorClass t = t_from_system(c.config, s.classes);
    check(t == DivisorClass(4, {2, 2, 1, 1, 1, 1, 1, 1, 1, 1}), "T = 4L - 2E1 - 2E2 - sum E3..E10");
    auto dec = decompose_in_as(c.config, s.classes, t);
    check(dec.alpha == std::vector<Rational>{4, 0}, "alpha = (4, 0)");
    check(dec.beta == std::vector<Rational>{2, 4, 3, 2, 1, 3, 2, 1}, "beta = (2,4,3,2,1,3,2,1)");
    Form f = parse_form("X^2Z^2-2X^3Z+X^4+XYZ^2-2X^2YZ+X^3Y+Y^4", c.k);
    Form g = parse_form("(X-Z)^4", c.k);
    check(h0(t, c.config) == 2, "h0(T) = 2");
    check(same_span(basis(t, c.config), {f, g}), "basis spans F, (X-Z)^4");
    Verdict v = algorithm2(c.omega, c.config, s);
    check(v.outcome == Outcome::Integral && is_first_integral(v.F, v.G, c.omega), "algorithm2 verified integral");
    check(same_span({v.F, v.G}, {f, g}), "algorithm2 pencil");
}

void criterion2(Checks& check) {
    auto c = load("fig2");
    Configuration built = build_configuration(c.omega);
    check(built.size() == 13, "13 points");
    check(shape(built) == shape(c.config), "proximity graph equals the fixture");
    std::vector<std::string> dic;
    for (int q : c.config.dicritical_points())
        dic.push_back(c.config.point(q).id);
    check(dic == std::vector<std::string>{"q3", "q13"}, "dicritical divisors E_q3, E_q13");
    check(built.dicritical_points().size() == 2, "resolution finds two dicritical divisors");
    auto s = make_independent_system(c.omega, c.config, {parse_form("Y", c.k), parse_form("Z", c.k)});
    auto v = memo_fastpath(c.omega, c.config, s);
    check(v.has_value(), "K.T < 0");
    if (v) {
        check(v->outcome == Outcome::Integral && is_first_integral(v->F, v->G, c.omega), "fast path integral");
        check(same_span({v->F, v->G}, {parse_form("Y^10-2XY^5Z^4+2Y^6Z^4+X^2Z^8-2XYZ^8+Y^2Z^8", c.k),
                                       parse_form("Y^3Z^7", c.k)}),
              "span F1, F2");
    }
}

// the runtime target holds per case
struct CaseTimer {
    Checks& check;
    std::string name;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~CaseTimer() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check(secs < 120, name + " under 120 s");
    }
};

void criterion3(Checks& check) {
    {
        CaseTimer timer{check, "a = 5/9"};
        auto c = load("family_a59");
        Algorithm3Result a = algorithm3(c.omega, c.config);
        check(a.duals.size() >= 2, "a = 5/9: first dual computed");
        if (a.duals.size() >= 2) {
            std::vector<IntVec> expected;
            for (auto r : std::vector<std::vector<long>>{{1, 0, 0, 0, 0}, {1, -1, 0, 0, 0}, {1, 0, -1, 0, 0},
                                                         {2, 0, -1, -1, 0}, {3, 0, -2, -1, -1}}) {
                IntVec v;
                for (long x : r)
                    v.emplace_back(x);
                expected.push_back(v);
            }
            std::sort(expected.begin(), expected.end());
            auto rays = a.duals[1].rays;
            std::sort(rays.begin(), rays.end());
            check(rays == expected && a.duals[1].lineality.empty(), "a = 5/9: five printed generators");
        }
        check(a.outcome == Outcome::NoIntegral, "a = 5/9: algorithm 3 NoIntegral");
        check(a.G.size() == 1 && a.G[0].monic() == parse_form("X+Z", c.k).monic(), "a = 5/9: G = {X+Z}");
        check(pipeline(c.omega, c.config).outcome == Outcome::NoIntegral, "a = 5/9: pipeline NoIntegral");
    }
    {
        CaseTimer timer{check, "a = -861/100"};
        auto c = load("family_a861");
        Algorithm3Result a = algorithm3(c.omega, c.config);
        check(a.duals.size() >= 3 && a.duals[2].rays.size() == 27, "a = -861/100: dual of V2 has 27 rays");
        if (a.duals.size() >= 3) {
            int negative = 0;
            for (const auto& r : a.duals[2].rays)
                negative += pairing(r, r) < 0;
            check.note("a = -861/100: " + std::to_string(negative) + " of the 27 rays have negative square, " +
                       std::to_string(a.duals.size()) + " dual cones computed");
        }
        check(pipeline(c.omega, c.config).outcome == Outcome::NoIntegral, "a = -861/100: NoIntegral");
    }
    {
        CaseTimer timer{check, "a = 0"};
        auto c = load("family_a0");
        Verdict v = pipeline(c.omega, c.config);
        check(v.outcome == Outcome::Integral &&
                  same_span({v.F, v.G}, {parse_form("(X+Z)(Z-Y)", c.k), parse_form("Z(Y-X)", c.k)}),
              "a = 0: pencil (X+Z)(Z-Y), Z(Y-X)");
    }
}

void criterion4(Checks& check) {
    auto c = load("penultimate");
    auto s = make_independent_system(c.omega, c.config, {parse_form("Y-Z", c.k)});
    ConditionReport r = classify_conditions(c.config, s, 60);
    check(r.c2, "condition (2)");
    DeltaBound d = delta_bound(c.omega, c.config, s, r.decomposition);
    check(d.well_defined && d.value == 1, "Delta = 1");
    Verdict v = algorithm2(c.omega, c.config, s);
    check(v.outcome == Outcome::Integral && is_first_integral(v.F, v.G, c.omega), "verified integral");
    check(same_span({v.F, v.G}, {parse_form("Y^5-X^3Y^2+2X^3YZ-X^3Z^2", c.k), parse_form("(Y-Z)^5", c.k)}),
          "span");
}

void criterion5(Checks& check) {
    auto c = load("fig3");
    check(is_p_sufficient(c.config), "P-sufficient");
    Algorithm3Result a = algorithm3(c.omega, c.config);
    std::vector<Form> printed{parse_form("X", c.k), parse_form("X+Y", c.k), parse_form("Z", c.k),
                              parse_form("XY+Y^2+XZ", c.k), parse_form("aXY+aY^2+XZ", c.k),
                              parse_form("(a+1)XY+(a+1)Y^2-XZ", c.k)};
    bool all = a.outcome == Outcome::Integral && a.G.size() == 5;
    for (const auto& g : a.G) {
        bool hit = false;
        for (const auto& p : printed)
            hit = hit || g.monic() == p.monic();
        all = all && hit;
    }
    check(all, "five printed curves");
    if (a.outcome == Outcome::Integral) {
        auto v = memo_fastpath(c.omega, c.config, a.system);
        check(v && v->outcome == Outcome::Integral &&
                  same_span({v->F, v->G}, {parse_form("(X+Y)^2X^2Z^2", c.k), parse_form("(X+Y)^3Y^3+X^3Z^3", c.k)}),
              "fast path span");
    }
}

void criterion6(Checks& check) {
    auto c = load("nine");
    std::string s5 = "((17a-a^3)/6)";
    std::vector<std::string> text{
        "X-Y", "X+Y", "2X+(" + s5 + "+3)Y", "-2X+(" + s5 + "-3)Y", "X^2-XY+Y^2-4Z^2",
        "X^2+XY+Y^2-2Z^2", "2X^2+(" + s5 + "-3)XY-(3" + s5 + "-7)Y^2+(8" + s5 + "-24)Z^2",
        "-2X^2+(" + s5 + "+3)XY-(3" + s5 + "+7)Y^2+(8" + s5 + "+24)Z^2"};
    std::vector<Form> curves;
    std::vector<IntVec> vecs;
    for (const auto& t : text) {
        curves.push_back(parse_form(t, c.k));
        check(is_invariant_curve(curves.back(), c.omega), "invariant: " + t);
        DivisorClass sc = strict_class(curves.back(), c.config);
        check(self_intersection(sc) == -2, "strict square -2: " + t);
        vecs.push_back(to_vector(sc));
    }
    size_t s = c.config.dicritical_points().size();
    int rank = rank_of_classes(vecs);
    check(rank < static_cast<int>(s + c.config.non_dicritical_points().size()), "rank below s + |N|");
    check.note("s = " + std::to_string(s) + ", rank of the 8 strict classes = " + std::to_string(rank));
    int accepted = 0;
    for (unsigned mask = 1; mask < (1u << curves.size()); ++mask) {
        std::vector<Form> sub;
        for (size_t i = 0; i < curves.size(); ++i)
            if (mask & (1u << i))
                sub.push_back(curves[i]);
        try {
            make_independent_system(c.omega, c.config, sub);
            ++accepted;
        } catch (const PreconditionError&) {
        }
    }
    check(accepted == 0, "every subset rejected");
}

void criterion7(Checks& check) {
    check(run(RFI_TEST_LINSYS, "h0 agrees with the Taylor oracle at ordinary points"), "(a) h0 oracle");
    check(run(RFI_TEST_CONES, "dual of the dual is the cone"), "(b) dual of dual");
    check(run(RFI_TEST_CONES, "negative square decision agrees with random search"), "(c) negative squares");
    check(run(RFI_TEST_CLUSTER, "*"), "(d) cluster suite");
    for (const char* name : {"example1", "fig2", "fig3", "penultimate", "family_a0", "family_a59", "family_a861",
                             "family_a2", "nine"}) {
        auto c = read_configuration(std::string(RFI_FIXTURE_DIR) + "/" + name + ".cfg");
        bool ok = self_intersection(canonical_class(c)) == 9 - c.size();
        for (int q = 0; q < c.size(); ++q) {
            long prox = static_cast<long>(c.proximate_to(q).size());
            auto e = strict_exceptional(c, q);
            ok = ok && self_intersection(e) == -1 - prox && intersect(canonical_class(c), e) == -1 + prox;
            // E~_q = E_q - sum of E_p over the points p proximate to q
            DivisorClass expected = DivisorClass::zero(c.size());
            expected.e[q] = -1;
            for (int p = 0; p < c.size(); ++p)
                if (p != q && c.proximate(p, q))
                    expected.e[p] = 1;
            ok = ok && e == expected;
        }
        auto back = parse_configuration(c.to_text());
        for (int i = 0; i < c.size(); ++i)
            for (int j = 0; j < c.size(); ++j)
                ok = ok && back.proximate(i, j) == c.proximate(i, j);
        check(ok, std::string("(d) invariants on ") + name);
    }
    check(run(RFI_TEST_NUMFIELD, "field axioms on random triples"), "(e) field axioms");
}

void criterion8(Checks& check) {
    auto c = load("example1");
    check(algorithm1(c.omega, c.config, 3).outcome == Outcome::NoIntegral, "d = 3 NoIntegral");
}

} // namespace

int main() {
    struct Criterion {
        int id;
        double limit_s;
        std::function<void(Checks&)> run;
    };
    std::vector<Criterion> criteria{{1, 10, criterion1},  {2, 30, criterion2}, {3, 360, criterion3},
                                    {4, 60, criterion4},  {5, 120, criterion5}, {6, 60, criterion6},
                                    {7, 300, criterion7}, {8, 60, criterion8}};
    int failures = 0;
    for (auto& c : criteria) {
        Checks checks;
        auto start = std::chrono::steady_clock::now();
        try {
            c.run(checks);
        } catch (const std::exception& e) {
            checks.failed.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_s)
            checks.failed.push_back("runtime over " + std::to_string(c.limit_s) + " s");
        bool pass = checks.failed.empty();
        failures += !pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " (" << secs << " s, limit "
             << c.limit_s << " s, exact)";
        for (const auto& f : checks.failed)
            line << "; failed: " << f;
        for (const auto& n : checks.notes)
            line << "; " << n;
        std::cout << line.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
