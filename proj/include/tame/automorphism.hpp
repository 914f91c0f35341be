#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tame/matrix.hpp"
#include "tame/polymap.hpp"
#include "tame/rng.hpp"

namespace tame {

// ---- unimodular matrix generation ----

struct UnimodularMatrix {
    IntMatrix forward;
    IntMatrix inverse;
    Int det;  // +1 or -1
};

// [[x11, x12], [x, y]] with x11*y - x12*x = det_sign, entries bounded by
// beta, and (x, y) the minimal-max-abs Bezout solution (ties toward
// non-negative y, then non-negative x). x11, x12 are resampled until coprime.
UnimodularMatrix gen_unimodular_2x2(const Int& beta, int det_sign, Rng& rng);

// same construction with the first row fixed (deterministic part, used by
// the generator above and directly testable)
UnimodularMatrix unimodular_2x2_from_row(const Int& x11, const Int& x12, int det_sign);

// alpha distinct all-nonzero 2x2 unimodular blocks plus n-2*alpha diagonal
// entries +-1; m_bar = 1 + 2*alpha/n exactly
UnimodularMatrix gen_block_diagonal(int n, int alpha, const Int& beta, Rng& rng);

UnimodularMatrix gen_signed_permutation(int n, Rng& rng);

// P1 * Delta * P2 with alpha drawn so E[alpha] = n*(mu_bar-1)/2; requires
// mu_bar in (1, 2). beta < 2 forces alpha = 0 (no all-nonzero unimodular
// 2x2 block exists with entries bounded by 1).
UnimodularMatrix gen_unimodular(int n, const Int& beta, const Rat& mu_bar, Rng& rng);

// ---- affine automorphisms ----

struct AffineParams {
    int n = 0;
    Int coeff_bound = 1;       // beta
    int64_t max_monomials = 1; // mu
    Rat avg_monomials = 1;     // mu_bar
    bool with_offset = false;
};

struct AffineMap {
    IntMatrix matrix;
    std::vector<Int> offset;
    IntMatrix matrix_inv;
    std::vector<Int> offset_inv;  // -M^-1 c
    Int det;
    PolyMap forward;
    PolyMap inverse;
};

AffineMap make_affine(const UnimodularMatrix& m, std::vector<Int> offset);

// product of floor(log2(budget)) unimodular factors at per-factor budgets
// (beta/mu)^(1/nu) and mu_bar^(1/nu), plus an optional offset; guarantees
// |A|, |A^-1| <= beta and m(A) <= mu. mu = 1 degenerates to a signed
// permutation; with_offset charges one monomial of the mu budget.
AffineMap gen_affine(const AffineParams& params, Rng& rng);

// ---- triangular automorphisms ----

struct TriangularParams {
    int n = 0;
    Int coeff_bound = 1;        // beta
    int64_t degree = 2;         // d
    int64_t max_monomials = 2;  // mu
    Rat avg_monomials = 2;      // mu_bar, in (1, mu]
    std::vector<int> offset_indices;  // E1 (0-based); empty = first floor(n/2)
    bool constant_tail = false;       // variation hook: constant f_i on E2 indices
};

struct TriangularMap {
    TriangularParams params;
    std::vector<int> e1, e2;          // partition, 0-based
    std::vector<Polynomial> f;        // offset polynomial per E1 index (over all n vars)
    PolyMap forward;
    PolyMap inverse;
};

// segmented triangular map: x_i + f_i(x_E2) on E1, identity on E2; the
// inverse y_i - f_i(y_E2) shares all four complexity metrics exactly
TriangularMap gen_segmented_triangular(const TriangularParams& params, Rng& rng);

// inverse of a general triangular map (component i = x_i + g_i(x_{i+1..n}))
// by back-substitution; degree can grow to product of the stage degrees
PolyMap invert_triangular(const PolyMap& t);

// ---- tame composition planning and generation ----

struct TamePlan {
    int n = 0;
    int64_t stages = 1;                 // k
    std::vector<int64_t> stage_degrees; // delta(1..k)
    int64_t mu_t = 2, mu_a = 1;
    Int beta_t = 1, beta_a = 1;
    Rat mubar_t = 2, mubar_a = 1;
    bool offsets = false;
    // requested budgets the plan was solved against
    int64_t degree_budget = 2;
    Int coeff_budget = 1;
    int64_t monomial_budget = 2;
    Rat avg_budget = 2;
    // derived exponents: Sigma = 1 + sum_{i<k} Delta(i), Delta(k) = prod delta(i)
    Int sigma = 1;
    Int delta_k = 2;
};

// solve the three budget inequalities
//   (mu_a mu_t)^Sigma mu_a^Delta(k) <= m
//   (beta_a mu_a beta_t mu_t)^Sigma (beta_a mu_a)^Delta(k) <= b
//   (mubar_a mubar_t)^Sigma mubar_a^Delta(k) <= m_bar
// deterministically; throws ErrorKind::infeasible naming the violated
// inequality when no assignment exists
TamePlan plan_tame(int n, int64_t d, const Int& b, int64_t m, const Rat& m_bar, int64_t k,
                   bool offsets = true);

enum class FactorKind { affine, triangular };

struct TameFactor {
    FactorKind kind;
    PolyMap forward;
    PolyMap inverse;
};

struct AutomorphismPair {
    int n = 0;
    PolyMap phi;
    PolyMap psi;
    std::vector<TameFactor> factors;  // A0, T1, A1, ..., Tk, Ak
};

// phi = A0 ∘ T1 ∘ A1 ∘ ... ∘ Tk ∘ Ak, psi = the reversed inverses; both
// compositions are verified symbolically before returning, and the keygen
// bounds d <= d(budget), |.| <= b, m <= m are asserted on phi and psi
AutomorphismPair gen_tame(const TamePlan& plan, Rng& rng);

struct PairCheck {
    bool ok = false;
    std::string detail;  // offending direction/component when !ok
};

PairCheck verify_inverse_pair(const PolyMap& phi, const PolyMap& psi);
inline PairCheck verify_inverse_pair(const AutomorphismPair& pair) {
    return verify_inverse_pair(pair.phi, pair.psi);
}

} // namespace tame
