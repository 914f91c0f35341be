#include "tame/bounds.hpp"

namespace tame {

TransformBounds transform_bounds(const Metrics& p, const Metrics& phi, const Metrics& psi) {
    // a zero map has all-zero metrics, which would void the products while
    // phi ∘ 0 ∘ psi = phi(0) is still the constant column of phi, bounded by
    // |phi| with one monomial per component. Clamping each factor at 1 keeps
    // the bound valid there and leaves nonzero inputs unchanged (a nonzero
    // integer map has m >= 1 and |.| >= 1)
    auto pos = [](const Int& x) { return x < 1 ? Int(1) : x; };
    uint64_t d_phi = static_cast<uint64_t>(phi.degree);
    uint64_t dp_dphi = static_cast<uint64_t>(p.degree) * d_phi;
    TransformBounds b;
    b.degree = phi.degree * p.degree * psi.degree;
    b.coeff_norm = pos(phi.coeff_norm) * pos(phi.monomials) * ipow(pos(p.monomials), d_phi) *
                   ipow(pos(p.coeff_norm), d_phi) * ipow(pos(psi.coeff_norm), dp_dphi);
    b.monomials = pos(phi.monomials) * ipow(pos(p.monomials), d_phi) *
                  ipow(pos(psi.monomials), dp_dphi);
    return b;
}

bool within_transform_bounds(const Metrics& actual, const TransformBounds& bound) {
    return actual.degree <= bound.degree && actual.coeff_norm <= bound.coeff_norm &&
           Int(actual.monomials) <= bound.monomials;
}

int64_t bit_width_estimate(int64_t b, const Metrics& phi_metrics) {
    require(b >= 1, ErrorKind::usage, "input bit width must be positive");
    Int scale = phi_metrics.coeff_norm * phi_metrics.monomials;
    if (scale < 1) scale = 1;
    return phi_metrics.degree * b + ceil_log2(scale);
}

BoundsReport keygen_bound_check(const AutomorphismPair& pair, int64_t degree_budget,
                                const Int& coeff_budget, int64_t monomial_budget,
                                const Rat& avg_budget, int64_t bits) {
    BoundsReport r;
    r.degree_budget = degree_budget;
    r.coeff_budget = coeff_budget;
    r.monomial_budget = monomial_budget;
    r.avg_budget = avg_budget;
    auto side = [&](const PolyMap& map) {
        SideReport s;
        s.actual = map.metrics();
        s.degree_ok = s.actual.degree <= degree_budget;
        s.coeff_ok = s.actual.coeff_norm <= coeff_budget;
        s.monomials_ok = s.actual.monomials <= monomial_budget;
        s.avg_monomials = s.actual.avg_monomials;
        return s;
    };
    r.forward = side(pair.phi);
    r.inverse = side(pair.psi);
    r.satisfied = r.forward.degree_ok && r.forward.coeff_ok && r.forward.monomials_ok &&
                  r.inverse.degree_ok && r.inverse.coeff_ok && r.inverse.monomials_ok;
    r.bit_width_B = bit_width_estimate(bits, r.forward.actual);
    return r;
}

BoundsReport keygen_bound_check(const AutomorphismPair& pair, const TamePlan& plan, int64_t bits) {
    return keygen_bound_check(pair, plan.degree_budget, plan.coeff_budget, plan.monomial_budget,
                              plan.avg_budget, bits);
}

} // namespace tame
