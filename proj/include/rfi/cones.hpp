#pragma once
#include <vector>

#include "rfi/cluster.hpp"

namespace rfi {

using IntVec = std::vector<Integer>;

// Lorentzian pairing diag(1, -1, ..., -1) in the basis L*, E_1*, ..., E_m*
Integer pairing(const IntVec& a, const IntVec& b);
IntVec primitive(IntVec v);
IntVec to_vector(const DivisorClass& c);
DivisorClass to_class(const IntVec& v);

// Cone generated by primitive integer vectors. `lineality` lists a basis of
// the largest linear subspace when it is known; `rays` then are the
// extremal rays modulo it. Generators of an arbitrary cone may all go in rays.
struct RationalCone {
    int dim = 0;
    std::vector<IntVec> rays;
    std::vector<IntVec> lineality;

    RationalCone() = default;
    RationalCone(int dim, std::vector<IntVec> gens);
    // rays plus both signs of each lineality vector
    std::vector<IntVec> generators() const;
    bool empty() const { return rays.empty() && lineality.empty(); }
};

// {x : A x >= 0} by double description; rows of A processed in order
RationalCone cone_from_inequalities(int dim, const std::vector<IntVec>& rows);
// dual with respect to the intersection pairing
RationalCone dual(const RationalCone& c);
bool contains(const RationalCone& c, const IntVec& x);
bool same_cone(const RationalCone& a, const RationalCone& b);
// some x in the cone with x.x < 0
bool exists_negative_square(const RationalCone& c);
int rank_of_classes(const std::vector<IntVec>& vectors);

} // namespace rfi
