#pragma once

#include <string>
#include <vector>

#include "tame/automorphism.hpp"
#include "tame/program.hpp"

namespace tame {

// scheme plumbing shared by program rewriting and data encryption.
// version 0: state = plaintext. version 1: state = (plaintext, randomness).
// version 2: like 1 but the plaintext slots are masked by h(g) and the
// randomness slots hold H(g) for an automorphism H
struct SchemeConfig {
    int version = 0;
    int m = 0;              // plaintext slots
    int n = 0;              // total state slots, n - m randomness slots
    Int rng_bound = 0;      // randomness drawn uniformly from [0, rng_bound]
    PolyMap mask_h;         // n-m -> m, version 2 only
    AutomorphismPair mask_pair;  // automorphism of Z^(n-m), version 2 only
    PolyMap shuffle;        // n -> n-m, version 2 only; refreshes the
                            // randomness slots inside the inserted step
};

// defaults: h_i = product of the first min(i+1, n-m) randomness slots,
// the mask pair is a freshly generated small verified automorphism, and the
// shuffle is a random affine map with coefficients in [-shuffle_bound, +shuffle_bound]
SchemeConfig make_scheme_config(int version, int m, int rand_slots, const Int& rng_bound,
                                Rng& rng, const Int& shuffle_bound = 3);

// program rewritten to run on encrypted state: identity input and output
// folds, every step conjugated by the key
struct TransformedProgram {
    StraightLineProgram inner;
    int version = 0;
    int m = 0;
    int n = 0;
    std::string key_fingerprint;
};

// F = phi ∘ f ∘ psi, expanded to canonical form; F(phi(x)) = phi(f(x))
PolyMap rewrite_step(const PolyMap& f, const AutomorphismPair& pair);

// plaintext-I/O form: steps conjugated, input becomes phi∘f_in, output
// becomes f_out∘psi; behavior equals p on every input
StraightLineProgram encrypt_program(const StraightLineProgram& p, const AutomorphismPair& pair);

// ciphertext-I/O form. p must have state_dim = cfg.m; versions 1-2 widen the
// state to cfg.n, version 2 prepends the unmask step
// s(x) = (x' - h(Hinv(x'')), shuffle(x)) before conjugation
TransformedProgram build_fhe(const StraightLineProgram& p, const AutomorphismPair& pair,
                             const SchemeConfig& cfg, std::string key_fingerprint = "");

// the maps a client composes around the transformed program:
// encryptor: (program inputs, randomness) -> initial encrypted state
// decryptor: final encrypted state -> program outputs
PolyMap fhe_encryptor(const StraightLineProgram& p, const AutomorphismPair& pair,
                      const SchemeConfig& cfg);
PolyMap fhe_decryptor(const StraightLineProgram& p, const AutomorphismPair& pair,
                      const SchemeConfig& cfg);

// warnings about weak parameter choices: version 0 determinism, public-map
// components that ignore every randomness slot
std::vector<std::string> check_mixing(const AutomorphismPair& pair, const SchemeConfig& cfg);

// human-readable listing of the transformed program
std::string emit_pseudocode(const TransformedProgram& tp);

} // namespace tame
