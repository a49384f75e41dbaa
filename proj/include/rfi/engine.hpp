#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rfi/cluster.hpp"
#include "rfi/cones.hpp"
#include "rfi/polyforms.hpp"

namespace rfi {

enum class Outcome { Integral, NoIntegral, Inconclusive };
std::string to_string(Outcome o);

struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    Form F, G;              // set for Integral
    std::string reason;
    std::vector<std::string> certificate;

    static Verdict integral(Form f, Form g, std::string reason);
    static Verdict none(std::string reason);
    static Verdict inconclusive(std::string reason);
};

struct Caps {
    int d_max = 30;
    int lambda_max = 60;
    int degree_max = 60;      // largest degree of a linear system searched for lambda
    std::ostream* trace = nullptr;
};

// Invariant curves C_1..C_s with strict squares <= 0 whose classes together
// with the E~_q, q in N, are linearly independent.
struct IndependentSystem {
    std::vector<Form> curves;
    std::vector<DivisorClass> classes;
};

// throws PreconditionError naming the failed condition
IndependentSystem make_independent_system(const OneForm& omega, const Configuration& config,
                                          const std::vector<Form>& curves);

// Integral verdicts are re-checked here; anything else passes through
Verdict checked(const OneForm& omega, Verdict v);

Verdict algorithm1(const OneForm& omega, const Configuration& config, int d, const Caps& caps = {});

struct ConditionReport {
    bool c1 = false, c2 = false, c3 = false;
    bool c3_capped = false;   // no lambda <= lambda_max certified (3)
    long lambda = 0;          // least lambda with h0(lambda T) >= 2 when c3
    DivisorClass T;
    Decomposition decomposition;
};
ConditionReport classify_conditions(const Configuration& config, const IndependentSystem& s, int lambda_max);

// w_{D(k)}; nullopt when undefined
std::optional<Rational> w_function(long k, bool positive);

struct DeltaBound {
    bool well_defined = false;
    Rational value;
    long r = 0, k0 = 0;
    Integer numerator;
    std::string reason;
};
DeltaBound delta_bound(const OneForm& omega, const Configuration& config, const IndependentSystem& s,
                       const Decomposition& dec);

Verdict algorithm2(const OneForm& omega, const Configuration& config, const IndependentSystem& s,
                   const Caps& caps = {});

struct Algorithm3Result {
    Outcome outcome = Outcome::Inconclusive;  // Integral here means a system was found
    IndependentSystem system;
    std::vector<Form> G;
    std::vector<DivisorClass> accepted;        // classes added to V, in order
    std::vector<RationalCone> duals;           // V_i^dual for i = 0, 1, ...
    std::string reason;
};
Algorithm3Result algorithm3(const OneForm& omega, const Configuration& config, const Caps& caps = {});

// nullopt when K.T >= 0
std::optional<Verdict> memo_fastpath(const OneForm& omega, const Configuration& config,
                                     const IndependentSystem& s);

std::optional<Verdict> discard_checks(const OneForm& omega, const Configuration& config,
                                      const std::vector<Form>& invariant_curves);

// invariant lines through a point of P^2 defined over its field; the flag is
// false when some direction is only defined over an extension
struct LinesResult {
    std::vector<Form> lines;
    bool complete = true;
};
LinesResult invariant_lines_through(const OneForm& omega, const std::array<FieldElement, 3>& p);

// an invariant curve with strict square 0 pins D_F to a multiple of its class
std::optional<Verdict> square_zero_check(const OneForm& omega, const Configuration& config, const Form& curve,
                                         const Caps& caps);

Verdict pipeline(const OneForm& omega, const Configuration& config, const Caps& caps = {});

} // namespace rfi
