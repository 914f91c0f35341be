#pragma once

#include <string>
#include <vector>

#include "tame/rewrite.hpp"

namespace tame {

struct Ciphertext {
    int version = 0;
    std::string key_fingerprint;
    std::vector<Int> values;

    bool operator==(const Ciphertext& o) const {
        return version == o.version && key_fingerprint == o.key_fingerprint && values == o.values;
    }
};

std::string sha256_hex(const std::string& bytes);

// largest |f(x)| over |x_i| <= arg_bound, per-term triangle estimate
Int eval_norm_bound(const PolyMap& f, const Int& arg_bound);

// randomness g drawn uniformly from [0, rng_bound]^(n-m).
// version 0: phi(u); version 1: phi(u, g); version 2: phi(u + h(g), H(g))
Ciphertext encrypt(const std::vector<Int>& u, const PolyMap& phi, const SchemeConfig& cfg,
                   const std::string& key_fingerprint, Rng& rng);
Ciphertext encrypt_with(const std::vector<Int>& u, const std::vector<Int>& g, const PolyMap& phi,
                        const SchemeConfig& cfg, const std::string& key_fingerprint);

// exact inverse of encrypt: psi, version-2 unmask, truncate to m values
std::vector<Int> decrypt_data(const Ciphertext& c, const AutomorphismPair& pair,
                              const SchemeConfig& cfg, const std::string& key_fingerprint);

// decode of a transformed program's final state: f_out ∘ proj ∘ psi. The
// version-2 mask is not removed here; the program's inserted first step
// already consumed it
std::vector<Int> decrypt_output(const Ciphertext& c, const PolyMap& f_out,
                                const AutomorphismPair& pair, const SchemeConfig& cfg,
                                const std::string& key_fingerprint);

// |phi| m(phi) max(1, A)^d(phi) where A bounds the arguments the encryptor
// feeds phi: v0 |u|; v1 max(|u|, rng_bound); v2 accounts for the mask,
// max(|u| + bound of h, bound of H) over g in [0, rng_bound]
Int ciphertext_size_bound(const Metrics& phi_metrics, const SchemeConfig& cfg, const Int& u_norm);

} // namespace tame
