#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rfi/numfield.hpp"

namespace rfi {

// A point of a configuration: either a point of P^2 or a point on the
// exceptional divisor of its parent, reached through chart 1 (u = x,
// v = x(y + c)) or chart 2 (u = xy, v = x). Local coordinates (x, y) at a
// non-root point always have the parent's exceptional divisor as x = 0.
struct ClusterPoint {
    std::string id;
    int parent = -1;
    std::array<FieldElement, 3> coords;  // roots only, normalized
    int chart = 0;                       // 1 or 2 for non-roots
    FieldElement c;                      // chart-1 parameter
    bool dicritical = false;
    int second_divisor = -1;             // other exceptional divisor through the point, as y = 0
};

class Configuration {
public:
    Configuration() = default;
    explicit Configuration(const NumberField* field) : field_(field) {}

    const NumberField* field() const { return field_; }
    int size() const { return static_cast<int>(pts_.size()); }
    const ClusterPoint& point(int i) const { return pts_.at(i); }
    const std::vector<ClusterPoint>& points() const { return pts_; }

    int add_root(const std::string& id, std::array<FieldElement, 3> coords);
    int add_child(const std::string& id, int parent, int chart, const FieldElement& c);
    void set_dicritical(int i, bool v = true) { pts_.at(i).dicritical = v; }

    int index_of(const std::string& id) const;
    bool is_root(int i) const { return pts_[i].parent < 0; }
    // i proximate to j
    bool proximate(int i, int j) const;
    std::vector<int> proximate_to(int j) const;
    std::vector<int> children(int i) const;
    // path from the root down to i, inclusive
    std::vector<int> ancestors_and_self(int i) const;
    int height(int i) const;
    std::vector<int> dicritical_points() const;
    std::vector<int> non_dicritical_points() const;
    bool is_b_configuration() const;

    // the configuration restricted to points that have a dicritical descendant
    Configuration dicritical_closure() const;

    std::string to_text() const;

private:
    const NumberField* field_ = nullptr;
    std::vector<ClusterPoint> pts_;
};

// pivot is the last nonzero coordinate, scaled to 1
std::array<FieldElement, 3> normalize_point(std::array<FieldElement, 3> p);

Configuration parse_configuration(const std::string& text, const NumberField* field = nullptr);
Configuration read_configuration(const std::string& path, const NumberField* field = nullptr);

// d L* - sum e_q E_q*
struct DivisorClass {
    long d = 0;
    std::vector<long> e;

    DivisorClass() = default;
    DivisorClass(long d, std::vector<long> e) : d(d), e(std::move(e)) {}
    static DivisorClass zero(int m) { return DivisorClass(0, std::vector<long>(m, 0)); }

    DivisorClass& operator+=(const DivisorClass& o);
    DivisorClass& operator-=(const DivisorClass& o);
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(long k, DivisorClass a);
    bool operator==(const DivisorClass& o) const { return d == o.d && e == o.e; }
    bool operator<(const DivisorClass& o) const { return d != o.d ? d < o.d : e < o.e; }

    // coordinates in the basis L*, E_1*, ..., E_m*
    std::vector<Rational> coordinates() const;
    static DivisorClass from_coordinates(const std::vector<Integer>& v);
    std::string to_string(const Configuration& config) const;
};

long intersect(const DivisorClass& a, const DivisorClass& b);
long self_intersection(const DivisorClass& a);

DivisorClass strict_exceptional(const Configuration& config, int q);
DivisorClass canonical_class(const Configuration& config);

// T from the absolute maximal minors of the matrix of [C_i] and [E~_q], q in N
DivisorClass t_from_system(const Configuration& config, const std::vector<DivisorClass>& curves);

struct Decomposition {
    std::vector<Rational> alpha;   // per curve
    std::vector<Rational> beta;    // per non-dicritical point, in index order
    std::vector<int> beta_points;
    bool all_positive() const;
};

Decomposition decompose_in_as(const Configuration& config, const std::vector<DivisorClass>& curves,
                              const DivisorClass& target);

DivisorClass simple_ideal_divisor(const Configuration& config, int p);
std::vector<std::vector<Integer>> gc_matrix(const Configuration& config);
bool is_strictly_copositive(const std::vector<std::vector<Integer>>& g);
bool is_p_sufficient(const Configuration& config);
bool chain_criterion(const Configuration& config);

} // namespace rfi
