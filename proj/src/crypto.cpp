#include <openssl/evp.h>

#include "tame/crypto.hpp"

namespace tame {

namespace {

void check_binding(const Ciphertext& c, const SchemeConfig& cfg,
                   const std::string& key_fingerprint) {
    require(c.version == cfg.version, ErrorKind::usage,
            "ciphertext version " + std::to_string(c.version) + " does not match scheme version " +
                std::to_string(cfg.version));
    require(c.key_fingerprint == key_fingerprint, ErrorKind::verification,
            "ciphertext was produced under a different key");
    require(static_cast<int>(c.values.size()) == cfg.n, ErrorKind::usage,
            "ciphertext length differs from scheme state slots");
}

std::vector<Int> tail_of(const std::vector<Int>& v, int m) {
    return std::vector<Int>(v.begin() + m, v.end());
}

} // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

Int eval_norm_bound(const PolyMap& f, const Int& arg_bound) {
    require(arg_bound >= 0, ErrorKind::usage, "argument bound must be nonnegative");
    Int best = 0;
    for (const Polynomial& comp : f.components()) {
        Int total = 0;
        for (const Term& t : comp.terms()) {
            uint64_t deg = 0;
            for (uint32_t e : t.exps) deg += e;
            total += abs_val(t.coeff) * ipow(arg_bound, deg);
        }
        best = std::max(best, total);
    }
    return best;
}

Ciphertext encrypt_with(const std::vector<Int>& u, const std::vector<Int>& g, const PolyMap& phi,
                        const SchemeConfig& cfg, const std::string& key_fingerprint) {
    require(static_cast<int>(u.size()) == cfg.m, ErrorKind::usage,
            "plaintext length differs from scheme plaintext slots");
    require(static_cast<int>(g.size()) == cfg.n - cfg.m, ErrorKind::usage,
            "randomness length differs from scheme randomness slots");
    require(phi.domain() == cfg.n && phi.codomain() == cfg.n, ErrorKind::usage,
            "public map dimension differs from scheme state slots");
    for (const Int& gi : g)
        require(gi >= 0 && gi <= cfg.rng_bound, ErrorKind::usage,
                "randomness value outside [0, bound]");

    std::vector<Int> arg;
    arg.reserve(static_cast<size_t>(cfg.n));
    if (cfg.version == 0) {
        arg = u;
    } else if (cfg.version == 1) {
        arg = u;
        arg.insert(arg.end(), g.begin(), g.end());
    } else {
        std::vector<Int> mask = cfg.mask_h.evaluate(g);
        std::vector<Int> slots = cfg.mask_pair.phi.evaluate(g);
        for (size_t i = 0; i < u.size(); ++i) arg.push_back(u[i] + mask[i]);
        arg.insert(arg.end(), slots.begin(), slots.end());
    }
    return Ciphertext{cfg.version, key_fingerprint, phi.evaluate(arg)};
}

Ciphertext encrypt(const std::vector<Int>& u, const PolyMap& phi, const SchemeConfig& cfg,
                   const std::string& key_fingerprint, Rng& rng) {
    std::vector<Int> g;
    g.reserve(static_cast<size_t>(cfg.n - cfg.m));
    for (int i = 0; i < cfg.n - cfg.m; ++i) g.push_back(rng.big_in(0, cfg.rng_bound));
    return encrypt_with(u, g, phi, cfg, key_fingerprint);
}

std::vector<Int> decrypt_data(const Ciphertext& c, const AutomorphismPair& pair,
                              const SchemeConfig& cfg, const std::string& key_fingerprint) {
    check_binding(c, cfg, key_fingerprint);
    require(pair.n == cfg.n, ErrorKind::usage, "key dimension differs from scheme state slots");
    std::vector<Int> v = pair.psi.evaluate(c.values);
    if (cfg.version == 2) {
        std::vector<Int> g = cfg.mask_pair.psi.evaluate(tail_of(v, cfg.m));
        std::vector<Int> mask = cfg.mask_h.evaluate(g);
        for (int i = 0; i < cfg.m; ++i) v[static_cast<size_t>(i)] -= mask[static_cast<size_t>(i)];
    }
    v.resize(static_cast<size_t>(cfg.m));
    return v;
}

std::vector<Int> decrypt_output(const Ciphertext& c, const PolyMap& f_out,
                                const AutomorphismPair& pair, const SchemeConfig& cfg,
                                const std::string& key_fingerprint) {
    check_binding(c, cfg, key_fingerprint);
    require(pair.n == cfg.n, ErrorKind::usage, "key dimension differs from scheme state slots");
    require(f_out.domain() == cfg.m, ErrorKind::usage,
            "output map reads more state than the scheme's plaintext slots");
    std::vector<Int> v = pair.psi.evaluate(c.values);
    v.resize(static_cast<size_t>(cfg.m));
    return f_out.evaluate(v);
}

Int ciphertext_size_bound(const Metrics& phi_metrics, const SchemeConfig& cfg, const Int& u_norm) {
    require(u_norm >= 0, ErrorKind::usage, "plaintext norm must be nonnegative");
    Int arg;
    if (cfg.version == 0) {
        arg = u_norm;
    } else if (cfg.version == 1) {
        arg = std::max(u_norm, cfg.rng_bound);
    } else {
        Int masked = u_norm + eval_norm_bound(cfg.mask_h, cfg.rng_bound);
        Int slots = eval_norm_bound(cfg.mask_pair.phi, cfg.rng_bound);
        arg = std::max(masked, slots);
    }
    arg = std::max(arg, Int(1));
    return phi_metrics.coeff_norm * phi_metrics.monomials *
           ipow(arg, static_cast<uint64_t>(phi_metrics.degree));
}

} // namespace tame
