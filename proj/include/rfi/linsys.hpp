#pragma once
#include <vector>

#include "rfi/cluster.hpp"
#include "rfi/linalg.hpp"
#include "rfi/polyforms.hpp"

namespace rfi {

// Linear conditions on the coefficients of a generic degree-d form, one
// unknown per entry of monomials_of_degree(d).
struct ConditionSystem {
    int degree = 0;
    int unknowns = 0;
    const NumberField* field = nullptr;
    Matrix<FieldElement> rows;
};

// Forms F of degree D.d whose virtual transform with multiplicities D.e
// exists at every point, i.e. sections of pi_* O(D).
ConditionSystem condition_system(const DivisorClass& D, const Configuration& config);
long h0(const DivisorClass& D, const Configuration& config);
std::vector<Form> basis(const DivisorClass& D, const Configuration& config);

// multiplicity at each point of the successive strict transforms of G = 0
std::vector<long> effective_multiplicities(const Form& g, const Configuration& config);
DivisorClass strict_class(const Form& g, const Configuration& config);

int span_rank(const std::vector<Form>& forms);
bool same_span(const std::vector<Form>& a, const std::vector<Form>& b);

} // namespace rfi
