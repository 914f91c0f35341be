#pragma once

#include "tame/automorphism.hpp"

namespace tame {

// proved upper bounds on the metrics of a conjugated step phi ∘ P ∘ psi:
//   |E| <= |phi| m(phi) m(P)^d(phi) |P|^d(phi) |psi|^(d(P) d(phi))
//   d(E) <= d(phi) d(P) d(psi)
//   m(E) <= m(phi) m(P)^d(phi) m(psi)^(d(P) d(phi))
// each product factor is clamped at 1 so the bound stays valid when a step
// map is zero (its conjugate is the constant column phi(0))
struct TransformBounds {
    int64_t degree = 0;
    Int coeff_norm = 0;
    Int monomials = 0;
};

TransformBounds transform_bounds(const Metrics& p, const Metrics& phi, const Metrics& psi);

bool within_transform_bounds(const Metrics& actual, const TransformBounds& bound);

// B = d(phi) b + ceil(log2(max(1, |phi| m(phi)))): bit width sufficient for
// any ciphertext coordinate of a b-bit input
int64_t bit_width_estimate(int64_t b, const Metrics& phi_metrics);

// one side (forward or inverse) of a generated pair against the budgets
struct SideReport {
    Metrics actual;
    bool degree_ok = false;
    bool coeff_ok = false;
    bool monomials_ok = false;
    // recorded, not gated per pair: the budget holds for the sample mean
    Rat avg_monomials = 0;
};

struct BoundsReport {
    int64_t degree_budget = 0;
    Int coeff_budget = 0;
    int64_t monomial_budget = 0;
    Rat avg_budget = 0;
    SideReport forward;
    SideReport inverse;
    bool satisfied = false;  // degree, coeff, monomial bounds on both sides
    int64_t bit_width_B = 0;  // bit_width_estimate(bits, forward.actual)
};

BoundsReport keygen_bound_check(const AutomorphismPair& pair, int64_t degree_budget,
                                const Int& coeff_budget, int64_t monomial_budget,
                                const Rat& avg_budget, int64_t bits = 32);
BoundsReport keygen_bound_check(const AutomorphismPair& pair, const TamePlan& plan,
                                int64_t bits = 32);

} // namespace tame
