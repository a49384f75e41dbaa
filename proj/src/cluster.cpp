#include "rfi/cluster.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "rfi/linalg.hpp"
#include "rfi/parse.hpp"

namespace rfi {

std::array<FieldElement, 3> normalize_point(std::array<FieldElement, 3> p) {
    int pivot = -1;
    for (int i = 2; i >= 0; --i)
        if (!p[i].is_zero()) {
            pivot = i;
            break;
        }
    if (pivot < 0)
        throw ConfigurationError("point (0:0:0) is not a point of P^2");
    FieldElement inv = p[pivot].inverse();
    for (auto& x : p)
        x = x * inv;
    return p;
}

int Configuration::add_root(const std::string& id, std::array<FieldElement, 3> coords) {
    if (index_of(id) >= 0)
        throw ConfigurationError("duplicate point id " + id);
    for (auto& c : coords)
        field_ = common_field(field_, c.field());
    auto p = normalize_point(coords);
    for (auto& x : p)
        if (x.field() == nullptr)
            x = FieldElement(field_, 0) + x;
    for (const auto& q : pts_)
        if (q.parent < 0 && q.coords == p)
            throw ConfigurationError("points " + q.id + " and " + id + " coincide");
    ClusterPoint pt;
    pt.id = id;
    pt.coords = p;
    pts_.push_back(std::move(pt));
    return size() - 1;
}

int Configuration::add_child(const std::string& id, int parent, int chart, const FieldElement& c) {
    if (index_of(id) >= 0)
        throw ConfigurationError("duplicate point id " + id);
    if (parent < 0 || parent >= size())
        throw ConfigurationError("parent of " + id + " must be listed before it");
    if (chart != 1 && chart != 2)
        throw ConfigurationError("chart of " + id + " must be 1 or 2");
    field_ = common_field(field_, c.field());
    FieldElement cc = chart == 1 ? FieldElement(field_, 0) + c : FieldElement(field_, 0);
    for (int j : children(parent))
        if (pts_[j].chart == chart && pts_[j].c == cc)
            throw ConfigurationError("points " + pts_[j].id + " and " + id + " coincide");
    ClusterPoint pt;
    pt.id = id;
    pt.parent = parent;
    pt.chart = chart;
    pt.c = cc;
    const ClusterPoint& par = pts_[parent];
    if (chart == 1)
        pt.second_divisor = cc.is_zero() ? par.second_divisor : -1;
    else
        pt.second_divisor = par.parent;
    pts_.push_back(std::move(pt));
    return size() - 1;
}

int Configuration::index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i)
        if (pts_[i].id == id)
            return i;
    return -1;
}

bool Configuration::proximate(int i, int j) const {
    return pts_[i].parent == j || (pts_[i].parent >= 0 && pts_[i].second_divisor == j);
}

std::vector<int> Configuration::proximate_to(int j) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (proximate(i, j))
            out.push_back(i);
    return out;
}

std::vector<int> Configuration::children(int i) const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j)
        if (pts_[j].parent == i)
            out.push_back(j);
    return out;
}

std::vector<int> Configuration::ancestors_and_self(int i) const {
    std::vector<int> path;
    for (int p = i; p >= 0; p = pts_[p].parent)
        path.push_back(p);
    std::reverse(path.begin(), path.end());
    return path;
}

int Configuration::height(int i) const {
    int h = 0;
    for (int j : children(i))
        h = std::max(h, 1 + height(j));
    return h;
}

std::vector<int> Configuration::dicritical_points() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (pts_[i].dicritical)
            out.push_back(i);
    return out;
}

std::vector<int> Configuration::non_dicritical_points() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (!pts_[i].dicritical)
            out.push_back(i);
    return out;
}

bool Configuration::is_b_configuration() const {
    std::vector<bool> ok(size(), false);
    for (int i = size() - 1; i >= 0; --i) {
        if (pts_[i].dicritical)
            ok[i] = true;
        if (ok[i] && pts_[i].parent >= 0)
            ok[pts_[i].parent] = true;
    }
    return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
}

Configuration Configuration::dicritical_closure() const {
    std::vector<bool> keep(size(), false);
    for (int i = size() - 1; i >= 0; --i) {
        if (pts_[i].dicritical)
            keep[i] = true;
        if (keep[i] && pts_[i].parent >= 0)
            keep[pts_[i].parent] = true;
    }
    Configuration out(field_);
    std::map<int, int> remap;
    for (int i = 0; i < size(); ++i) {
        if (!keep[i])
            continue;
        const auto& p = pts_[i];
        int k = p.parent < 0 ? out.add_root(p.id, p.coords) : out.add_child(p.id, remap.at(p.parent), p.chart, p.c);
        out.set_dicritical(k, p.dicritical);
        remap[i] = k;
    }
    return out;
}

std::string Configuration::to_text() const {
    std::ostringstream out;
    if (field_ && !field_->is_rationals())
        out << "field: " << field_->to_string() << "\n";
    for (const auto& p : pts_) {
        out << "point " << p.id;
        if (p.parent < 0) {
            out << " origin=(" << p.coords[0].to_string() << ":" << p.coords[1].to_string() << ":"
                << p.coords[2].to_string() << ")";
        } else {
            out << " parent=" << pts_[p.parent].id << " chart=" << p.chart;
            if (p.chart == 1)
                out << " c=" << p.c.to_string();
        }
        out << "\n";
    }
    auto dic = dicritical_points();
    if (!dic.empty()) {
        out << "dicritical";
        for (int i : dic)
            out << " " << pts_[i].id;
        out << "\n";
    }
    for (int i = 0; i < size(); ++i)
        if (pts_[i].parent >= 0 && pts_[i].second_divisor >= 0)
            out << "proximate " << pts_[i].id << " " << pts_[pts_[i].second_divisor].id << "\n";
    return out.str();
}

Configuration parse_configuration(const std::string& text, const NumberField* field) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    const NumberField* k = field;
    struct Pending {
        std::vector<std::string> tokens;
        int line;
    };
    std::vector<Pending> lines;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw = raw.substr(0, hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t)
            toks.push_back(t);
        if (toks.empty())
            continue;
        if (toks[0] == "field:") {
            std::string rest;
            for (size_t i = 1; i < toks.size(); ++i)
                rest += toks[i];
            const NumberField* declared = parse_field(rest, lineno);
            if (k != nullptr && k != declared && !k->is_rationals())
                throw ConfigurationError("configuration field differs from the foliation field");
            k = declared;
            continue;
        }
        lines.push_back({toks, lineno});
    }
    if (k == nullptr)
        k = NumberField::rationals();
    Configuration config(k);
    std::vector<std::pair<std::string, std::string>> asserted;
    for (const auto& [toks, line] : lines) {
        const std::string& kw = toks[0];
        if (kw == "point") {
            if (toks.size() < 3)
                throw ParseError("point needs an id and attributes", line, 1);
            std::map<std::string, std::string> attr;
            for (size_t i = 2; i < toks.size(); ++i) {
                auto eq = toks[i].find('=');
                if (eq == std::string::npos)
                    throw ParseError("expected key=value, got '" + toks[i] + "'", line, 1);
                attr[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
            }
            const std::string& id = toks[1];
            if (attr.count("origin")) {
                std::string o = attr["origin"];
                if (o.size() < 2 || o.front() != '(' || o.back() != ')')
                    throw ParseError("origin must be (x:y:z)", line, 1);
                o = o.substr(1, o.size() - 2);
                std::array<FieldElement, 3> xyz;
                std::istringstream os(o);
                std::string part;
                int n = 0;
                while (std::getline(os, part, ':')) {
                    if (n >= 3)
                        throw ParseError("origin must have three coordinates", line, 1);
                    xyz[n++] = parse_field_element(part, k, line);
                }
                if (n != 3)
                    throw ParseError("origin must have three coordinates", line, 1);
                config.add_root(id, xyz);
            } else {
                if (!attr.count("parent") || !attr.count("chart"))
                    throw ParseError("point needs origin= or parent= and chart=", line, 1);
                int parent = config.index_of(attr["parent"]);
                if (parent < 0)
                    throw ConfigurationError("unknown parent " + attr["parent"] + " on line " + std::to_string(line));
                int chart = attr["chart"] == "1" ? 1 : attr["chart"] == "2" ? 2 : 0;
                FieldElement c(k, 0);
                if (attr.count("c"))
                    c = parse_field_element(attr["c"], k, line);
                if (chart == 2 && !c.is_zero())
                    throw ConfigurationError("chart 2 points have no parameter (line " + std::to_string(line) + ")");
                config.add_child(id, parent, chart, c);
            }
        } else if (kw == "dicritical") {
            for (size_t i = 1; i < toks.size(); ++i) {
                int j = config.index_of(toks[i]);
                if (j < 0)
                    throw ConfigurationError("unknown point " + toks[i] + " on line " + std::to_string(line));
                config.set_dicritical(j);
            }
        } else if (kw == "proximate") {
            if (toks.size() != 3)
                throw ParseError("proximate takes two ids", line, 1);
            asserted.emplace_back(toks[1], toks[2]);
        } else {
            throw ParseError("unknown keyword '" + kw + "'", line, 1);
        }
    }
    for (const auto& [a, b] : asserted) {
        int i = config.index_of(a), j = config.index_of(b);
        if (i < 0 || j < 0)
            throw ConfigurationError("proximity assertion names an unknown point");
        if (!config.proximate(i, j))
            throw ConfigurationError("asserted proximity " + a + " -> " + b + " does not follow from the charts");
    }
    return config;
}

Configuration read_configuration(const std::string& path, const NumberField* field) {
    return parse_configuration(read_text_file(path), field);
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
    d += o.d;
    for (size_t i = 0; i < e.size(); ++i)
        e[i] += o.e[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
    d -= o.d;
    for (size_t i = 0; i < e.size(); ++i)
        e[i] -= o.e[i];
    return *this;
}

DivisorClass operator*(long k, DivisorClass a) {
    a.d *= k;
    for (auto& x : a.e)
        x *= k;
    return a;
}

std::vector<Rational> DivisorClass::coordinates() const {
    std::vector<Rational> v{Rational(d)};
    for (long x : e)
        v.emplace_back(-x);
    return v;
}

DivisorClass DivisorClass::from_coordinates(const std::vector<Integer>& v) {
    DivisorClass c;
    c.d = v[0].get_si();
    for (size_t i = 1; i < v.size(); ++i)
        c.e.push_back(-v[i].get_si());
    return c;
}

std::string DivisorClass::to_string(const Configuration& config) const {
    std::string out;
    auto term = [&](long k, const std::string& name) {
        if (k == 0)
            return;
        if (!out.empty())
            out += k < 0 ? " - " : " + ";
        else if (k < 0)
            out += "-";
        long a = std::labs(k);
        if (a != 1)
            out += std::to_string(a);
        out += name;
    };
    term(d, "L");
    for (size_t i = 0; i < e.size(); ++i)
        term(-e[i], "E_" + config.point(static_cast<int>(i)).id);
    return out.empty() ? "0" : out;
}

long intersect(const DivisorClass& a, const DivisorClass& b) {
    long s = a.d * b.d;
    for (size_t i = 0; i < a.e.size(); ++i)
        s -= a.e[i] * b.e[i];
    return s;
}

long self_intersection(const DivisorClass& a) { return intersect(a, a); }

DivisorClass strict_exceptional(const Configuration& config, int q) {
    DivisorClass c = DivisorClass::zero(config.size());
    c.e[q] = -1;
    for (int p : config.proximate_to(q))
        c.e[p] = 1;
    return c;
}

DivisorClass canonical_class(const Configuration& config) {
    return DivisorClass(-3, std::vector<long>(config.size(), -1));
}

namespace {

std::vector<std::vector<Integer>> integer_rows(const Configuration& config, const std::vector<DivisorClass>& curves) {
    std::vector<std::vector<Integer>> rows;
    auto push = [&](const DivisorClass& c) {
        std::vector<Integer> r{Integer(c.d)};
        for (long x : c.e)
            r.emplace_back(-x);
        rows.push_back(std::move(r));
    };
    for (const auto& c : curves)
        push(c);
    for (int q : config.non_dicritical_points())
        push(strict_exceptional(config, q));
    return rows;
}

} // namespace

Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
    int n = static_cast<int>(m.size());
    if (n == 0)
        return 1;
    int sign = 1;
    Integer prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[i][k] != 0) {
                    s = i;
                    break;
                }
            if (s < 0)
                return 0;
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

DivisorClass t_from_system(const Configuration& config, const std::vector<DivisorClass>& curves) {
    int m = config.size();
    auto rows = integer_rows(config, curves);
    if (static_cast<int>(rows.size()) != m)
        throw PreconditionError("t_from_system needs s + |N| = m rows, got " + std::to_string(rows.size()) +
                                " for m = " + std::to_string(m));
    std::vector<Integer> w(m + 1);
    for (int j = 0; j <= m; ++j) {
        std::vector<std::vector<Integer>> minor(m, std::vector<Integer>(m));
        for (int i = 0; i < m; ++i)
            for (int c = 0, k = 0; c <= m; ++c)
                if (c != j)
                    minor[i][k++] = rows[i][c];
        Integer det = bareiss_determinant(std::move(minor));
        w[j] = (j % 2 == 0) ? det : Integer(-det);
    }
    Integer g = 0;
    for (const auto& x : w)
        g = gcd(g, x);
    if (g == 0)
        throw InconsistentSystem("classes of the system are not independent");
    for (auto& x : w)
        x /= g;
    int lead = 0;
    while (w[lead] == 0)
        ++lead;
    if (w[lead] < 0)
        for (auto& x : w)
            x = -x;
    DivisorClass t;
    t.d = w[0].get_si();
    for (int j = 1; j <= m; ++j)
        t.e.push_back(w[j].get_si());
    return t;
}

bool Decomposition::all_positive() const {
    for (const auto& a : alpha)
        if (a <= 0)
            return false;
    for (const auto& b : beta)
        if (b <= 0)
            return false;
    return true;
}

Decomposition decompose_in_as(const Configuration& config, const std::vector<DivisorClass>& curves,
                              const DivisorClass& target) {
    std::vector<DivisorClass> gens = curves;
    auto nd = config.non_dicritical_points();
    for (int q : nd)
        gens.push_back(strict_exceptional(config, q));
    int n = static_cast<int>(gens.size());
    int dim = config.size() + 1;
    Matrix<Rational> a(dim, std::vector<Rational>(n));
    for (int j = 0; j < n; ++j) {
        auto c = gens[j].coordinates();
        for (int i = 0; i < dim; ++i)
            a[i][j] = c[i];
    }
    if (rank(a, n) != n)
        throw InconsistentSystem("classes of the system are not independent");
    auto x = solve(a, target.coordinates(), n, Rational(0));
    if (!x)
        throw InconsistentSystem("class is not in the span of the system");
    Decomposition out;
    out.alpha.assign(x->begin(), x->begin() + curves.size());
    out.beta.assign(x->begin() + curves.size(), x->end());
    out.beta_points = nd;
    return out;
}

DivisorClass simple_ideal_divisor(const Configuration& config, int p) {
    auto path = config.ancestors_and_self(p);
    std::map<int, long> mult;
    mult[p] = 1;
    for (int k = static_cast<int>(path.size()) - 2; k >= 0; --k) {
        int q = path[k];
        long s = 0;
        for (size_t r = k + 1; r < path.size(); ++r)
            if (config.proximate(path[r], q))
                s += mult[path[r]];
        mult[q] = s;
    }
    DivisorClass d = DivisorClass::zero(config.size());
    for (auto [q, v] : mult)
        d.e[q] = -v;
    return d;
}

std::vector<std::vector<Integer>> gc_matrix(const Configuration& config) {
    int m = config.size();
    std::vector<DivisorClass> ds;
    for (int p = 0; p < m; ++p)
        ds.push_back(simple_ideal_divisor(config, p));
    DivisorClass k = canonical_class(config);
    std::vector<std::vector<Integer>> g(m, std::vector<Integer>(m));
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            g[p][q] = Integer(-9 * intersect(ds[p], ds[q])) -
                      Integer(intersect(k, ds[p])) * Integer(intersect(k, ds[q]));
    return g;
}

bool is_strictly_copositive(const std::vector<std::vector<Integer>>& g) {
    int m = static_cast<int>(g.size());
    for (int i = 0; i < m; ++i)
        if (g[i][i] <= 0)
            return false;
    for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
        std::vector<int> j;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1)
                j.push_back(i);
        int k = static_cast<int>(j.size());
        if (k == 1)
            continue;
        bool has_negative = false;
        for (int a = 0; a < k && !has_negative; ++a)
            for (int b = a + 1; b < k; ++b)
                if (g[j[a]][j[b]] < 0) {
                    has_negative = true;
                    break;
                }
        if (!has_negative)
            continue;
        // [G_J -1; 1^T 0] [x; mu] = [0; 1]
        Matrix<Rational> a(k + 1, std::vector<Rational>(k + 1));
        std::vector<Rational> rhs(k + 1);
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c)
                a[r][c] = g[j[r]][j[c]];
            a[r][k] = -1;
            a[k][r] = 1;
        }
        rhs[k] = 1;
        if (rank(a, k + 1) != k + 1)
            continue;
        auto x = solve(a, rhs, k + 1, Rational(0));
        bool positive = std::all_of(x->begin(), x->begin() + k, [](const Rational& v) { return v > 0; });
        if (positive && (*x)[k] <= 0)
            return false;
    }
    return true;
}

namespace {

// min x^T N x over x >= 0, kappa . x = 1, N positive definite, kappa > 0;
// primal active-set method in exact arithmetic
Rational simplex_quadratic_minimum(const Matrix<Rational>& n, const std::vector<Rational>& kappa) {
    int m = static_cast<int>(n.size());
    auto value = [&](const std::vector<Rational>& x) {
        Rational v = 0;
        for (int i = 0; i < m; ++i) {
            if (x[i] == 0)
                continue;
            for (int j = 0; j < m; ++j)
                v += x[i] * n[i][j] * x[j];
        }
        return v;
    };
    int start = 0;
    for (int i = 1; i < m; ++i)
        if (n[i][i] / (kappa[i] * kappa[i]) < n[start][start] / (kappa[start] * kappa[start]))
            start = i;
    std::vector<Rational> x(m);
    x[start] = 1 / kappa[start];
    std::vector<bool> free(m, false);
    free[start] = true;
    for (int iter = 0; iter < 100000; ++iter) {
        std::vector<int> f;
        for (int i = 0; i < m; ++i)
            if (free[i])
                f.push_back(i);
        int k = static_cast<int>(f.size());
        Matrix<Rational> a(k, std::vector<Rational>(k));
        std::vector<Rational> b(k);
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c)
                a[r][c] = n[f[r]][f[c]];
            b[r] = kappa[f[r]];
        }
        auto z = *solve(a, b, k, Rational(0));
        Rational s = 0;
        for (int r = 0; r < k; ++r)
            s += kappa[f[r]] * z[r];
        std::vector<Rational> target(m);
        for (int r = 0; r < k; ++r)
            target[f[r]] = z[r] / s;
        bool feasible = std::all_of(target.begin(), target.end(), [](const Rational& v) { return v >= 0; });
        if (feasible) {
            x = target;
            Rational lambda = 2 * value(x);
            int enter = -1;
            Rational most = 0;
            for (int i = 0; i < m; ++i) {
                if (free[i])
                    continue;
                Rational g = 0;
                for (int j = 0; j < m; ++j)
                    g += 2 * n[i][j] * x[j];
                Rational mu = g - lambda * kappa[i];
                if (mu < most) {
                    most = mu;
                    enter = i;
                }
            }
            if (enter < 0)
                return value(x);
            free[enter] = true;
            continue;
        }
        Rational t = 1;
        for (int i : f)
            if (target[i] < x[i]) {
                Rational ti = x[i] / (x[i] - target[i]);
                if (ti < t)
                    t = ti;
            }
        for (int i = 0; i < m; ++i) {
            x[i] += t * (target[i] - x[i]);
            if (free[i] && x[i] == 0)
                free[i] = false;
        }
    }
    throw Error("active-set iteration did not terminate");
}

} // namespace

bool is_p_sufficient(const Configuration& config) {
    int m = config.size();
    if (m == 0)
        return true;
    std::vector<DivisorClass> ds;
    for (int p = 0; p < m; ++p)
        ds.push_back(simple_ideal_divisor(config, p));
    DivisorClass k = canonical_class(config);
    // G = 9 N - kappa kappa^T with N = -Gram(D) positive definite and kappa = -K.D > 0
    Matrix<Rational> n(m, std::vector<Rational>(m));
    std::vector<Rational> kappa(m);
    for (int p = 0; p < m; ++p) {
        kappa[p] = -intersect(k, ds[p]);
        for (int q = 0; q < m; ++q)
            n[p][q] = -intersect(ds[p], ds[q]);
    }
    return 9 * simplex_quadratic_minimum(n, kappa) > 1;
}

bool chain_criterion(const Configuration& config) {
    int m = config.size();
    if (m == 0)
        throw PreconditionError("empty configuration");
    for (int i = 0; i < m; ++i) {
        bool ok = i == 0 ? config.is_root(0) : config.point(i).parent == i - 1;
        if (!ok)
            throw PreconditionError("configuration is not a chain");
    }
    auto g = gc_matrix(config);
    return g[m - 1][m - 1] > 0;
}

} // namespace rfi
