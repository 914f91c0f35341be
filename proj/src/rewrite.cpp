#include <sstream>

#include "tame/rewrite.hpp"

namespace tame {

namespace {

// vars m..n-1 as a map n -> n-m
PolyMap tail_vars(int n, int m) {
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<size_t>(n - m));
    for (int i = m; i < n; ++i) comps.push_back(Polynomial::variable(n, i));
    return PolyMap(n, std::move(comps));
}

// f: m -> m widened to n -> n, identity on the appended slots
PolyMap widen_step(const PolyMap& f, int n) {
    std::vector<Polynomial> comps(embed_domain(f, n).components());
    for (int i = f.codomain(); i < n; ++i) comps.push_back(Polynomial::variable(n, i));
    return PolyMap(n, std::move(comps));
}

// f_in: k -> m widened to (k+r) -> (m+r); the new outputs pass the new inputs
PolyMap widen_input(const PolyMap& f_in, int r) {
    int k = f_in.domain();
    std::vector<Polynomial> comps(embed_domain(f_in, k + r).components());
    for (int i = 0; i < r; ++i) comps.push_back(Polynomial::variable(k + r, k + i));
    return PolyMap(k + r, std::move(comps));
}

void check_scheme(const SchemeConfig& cfg, int pair_n, bool need_mask_inverse) {
    require(cfg.version >= 0 && cfg.version <= 2, ErrorKind::usage, "scheme version must be 0, 1, or 2");
    require(cfg.m >= 1, ErrorKind::usage, "scheme needs at least one plaintext slot");
    if (cfg.version == 0)
        require(cfg.n == cfg.m, ErrorKind::usage, "version 0 has no randomness slots");
    else
        require(cfg.n > cfg.m, ErrorKind::usage,
                "versions 1 and 2 need at least one randomness slot");
    require(pair_n == cfg.n, ErrorKind::usage, "key dimension differs from scheme state slots");
    require(cfg.rng_bound >= 0, ErrorKind::usage, "randomness bound must be nonnegative");
    if (cfg.version == 2) {
        int r = cfg.n - cfg.m;
        require(cfg.mask_h.domain() == r && cfg.mask_h.codomain() == cfg.m, ErrorKind::usage,
                "mask h must map the randomness slots to the plaintext slots");
        require(cfg.mask_pair.n == r, ErrorKind::usage,
                "mask pair must act on the randomness slots");
        require(cfg.shuffle.domain() == cfg.n && cfg.shuffle.codomain() == r, ErrorKind::usage,
                "shuffle must map the full state to the randomness slots");
        if (need_mask_inverse) {
            PairCheck chk = verify_inverse_pair(cfg.mask_pair);
            require(chk.ok, ErrorKind::verification, "mask pair is not an automorphism: " + chk.detail);
        }
    }
}

// s(x) = (x' - h(Hinv(x'')), shuffle(x)); consumes the input mask and
// refreshes the randomness slots
PolyMap unmask_step(const SchemeConfig& cfg) {
    int n = cfg.n, m = cfg.m;
    PolyMap hinv_tail = compose(cfg.mask_pair.psi, tail_vars(n, m));
    PolyMap h_of = compose(cfg.mask_h, hinv_tail);
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<size_t>(n));
    for (int i = 0; i < m; ++i) comps.push_back(Polynomial::variable(n, i) - h_of.component(i));
    for (int i = 0; i < n - m; ++i) comps.push_back(cfg.shuffle.component(i));
    return PolyMap(n, std::move(comps));
}

} // namespace

PolyMap rewrite_step(const PolyMap& f, const AutomorphismPair& pair) {
    require(f.domain() == pair.n && f.codomain() == pair.n, ErrorKind::usage,
            "step dimension differs from key dimension");
    return compose(compose(pair.phi, f), pair.psi);
}

StraightLineProgram encrypt_program(const StraightLineProgram& p, const AutomorphismPair& pair) {
    require(p.state_dim == pair.n, ErrorKind::usage,
            "program state dimension differs from key dimension");
    StraightLineProgram out;
    out.arity = p.arity;
    out.state_dim = p.state_dim;
    out.out_dim = p.out_dim;
    out.input = compose(pair.phi, p.input);
    out.steps.reserve(p.steps.size());
    for (const PolyMap& s : p.steps) out.steps.push_back(rewrite_step(s, pair));
    out.output = compose(p.output, pair.psi);
    return out;
}

TransformedProgram build_fhe(const StraightLineProgram& p, const AutomorphismPair& pair,
                             const SchemeConfig& cfg, std::string key_fingerprint) {
    require(p.state_dim == cfg.m, ErrorKind::usage,
            "program state dimension differs from scheme plaintext slots");
    check_scheme(cfg, pair.n, true);

    std::vector<PolyMap> plain;
    plain.reserve(p.steps.size() + 1);
    if (cfg.version == 2) plain.push_back(unmask_step(cfg));
    for (const PolyMap& s : p.steps)
        plain.push_back(cfg.version == 0 ? s : widen_step(s, cfg.n));

    TransformedProgram tp;
    tp.version = cfg.version;
    tp.m = cfg.m;
    tp.n = cfg.n;
    tp.key_fingerprint = std::move(key_fingerprint);
    tp.inner.arity = cfg.n;
    tp.inner.state_dim = cfg.n;
    tp.inner.out_dim = cfg.n;
    tp.inner.input = PolyMap::identity(cfg.n);
    tp.inner.output = PolyMap::identity(cfg.n);
    tp.inner.steps.reserve(plain.size());
    for (const PolyMap& s : plain) tp.inner.steps.push_back(rewrite_step(s, pair));
    return tp;
}

PolyMap fhe_encryptor(const StraightLineProgram& p, const AutomorphismPair& pair,
                      const SchemeConfig& cfg) {
    require(p.state_dim == cfg.m, ErrorKind::usage,
            "program state dimension differs from scheme plaintext slots");
    check_scheme(cfg, pair.n, false);
    if (cfg.version == 0) return compose(pair.phi, p.input);
    int r = cfg.n - cfg.m, k = p.arity;
    if (cfg.version == 1) return compose(pair.phi, widen_input(p.input, r));
    PolyMap g_sel = tail_vars(k + r, k);
    PolyMap h_g = compose(cfg.mask_h, g_sel);
    PolyMap big_h_g = compose(cfg.mask_pair.phi, g_sel);
    PolyMap f_emb = embed_domain(p.input, k + r);
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<size_t>(cfg.n));
    for (int i = 0; i < cfg.m; ++i) comps.push_back(f_emb.component(i) + h_g.component(i));
    for (int i = 0; i < r; ++i) comps.push_back(big_h_g.component(i));
    return compose(pair.phi, PolyMap(k + r, std::move(comps)));
}

PolyMap fhe_decryptor(const StraightLineProgram& p, const AutomorphismPair& pair,
                      const SchemeConfig& cfg) {
    require(p.state_dim == cfg.m, ErrorKind::usage,
            "program state dimension differs from scheme plaintext slots");
    check_scheme(cfg, pair.n, false);
    return compose(compose(p.output, projection(cfg.n, cfg.m)), pair.psi);
}

std::vector<std::string> check_mixing(const AutomorphismPair& pair, const SchemeConfig& cfg) {
    std::vector<std::string> warnings;
    if (cfg.version == 0) {
        warnings.push_back(
            "version 0 is deterministic: equal plaintexts always produce equal ciphertexts");
        return warnings;
    }
    for (int i = 0; i < pair.n; ++i) {
        bool mixed = false;
        for (int j = cfg.m; j < cfg.n && !mixed; ++j)
            mixed = pair.phi.component(i).uses_variable(j);
        if (!mixed)
            warnings.push_back("public map component " + std::to_string(i + 1) +
                               " ignores every randomness slot; equal plaintexts collide there");
    }
    return warnings;
}

std::string emit_pseudocode(const TransformedProgram& tp) {
    std::vector<std::string> header;
    header.push_back("encrypted program: scheme version " + std::to_string(tp.version) + ", " +
                     std::to_string(tp.m) + " plaintext slot(s) in a state of " +
                     std::to_string(tp.n));
    if (!tp.key_fingerprint.empty()) header.push_back("key fingerprint " + tp.key_fingerprint);
    header.push_back("state is ciphertext on entry and exit");
    return emit_program_text(tp.inner, header);
}

SchemeConfig make_scheme_config(int version, int m, int rand_slots, const Int& rng_bound,
                                Rng& rng, const Int& shuffle_bound) {
    require(version >= 0 && version <= 2, ErrorKind::usage, "scheme version must be 0, 1, or 2");
    require(m >= 1, ErrorKind::usage, "scheme needs at least one plaintext slot");
    require(rng_bound >= 0, ErrorKind::usage, "randomness bound must be nonnegative");
    SchemeConfig cfg;
    cfg.version = version;
    cfg.m = m;
    cfg.rng_bound = rng_bound;
    if (version == 0) {
        require(rand_slots == 0, ErrorKind::usage, "version 0 takes no randomness slots");
        cfg.n = m;
        return cfg;
    }
    require(rand_slots >= 1, ErrorKind::usage,
            "versions 1 and 2 need at least one randomness slot");
    cfg.n = m + rand_slots;
    if (version == 1) return cfg;

    int r = rand_slots;
    // h_i = product of the first min(i+1, r) randomness slots
    std::vector<Polynomial> hcomps;
    hcomps.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        Monomial e(static_cast<size_t>(r), 0);
        for (int j = 0; j <= std::min(i, r - 1); ++j) e[static_cast<size_t>(j)] = 1;
        hcomps.push_back(Polynomial::monomial(r, 1, std::move(e)));
    }
    cfg.mask_h = PolyMap(r, std::move(hcomps));

    if (r == 1) {
        Int s = rng.sign();
        Int c = rng.big_in(-3, 3);
        Polynomial x = Polynomial::variable(1, 0);
        PolyMap fwd(1, {x.scaled(s) + Polynomial::constant(1, c)});
        PolyMap inv(1, {x.scaled(s) - Polynomial::constant(1, s * c)});
        cfg.mask_pair.n = 1;
        cfg.mask_pair.phi = fwd;
        cfg.mask_pair.psi = inv;
        cfg.mask_pair.factors.push_back({FactorKind::affine, fwd, inv});
        PairCheck chk = verify_inverse_pair(cfg.mask_pair);
        require(chk.ok, ErrorKind::internal, "mask pair construction broken: " + chk.detail);
    } else {
        TamePlan hplan = plan_tame(r, 2, 3, 5, 5, 1);
        cfg.mask_pair = gen_tame(hplan, rng);
    }

    // random affine shuffle with coefficients in [-shuffle_bound, +shuffle_bound]
    require(shuffle_bound >= 1, ErrorKind::usage, "shuffle coefficient bound must be positive");
    std::vector<Polynomial> kcomps;
    kcomps.reserve(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) {
        Polynomial comp = Polynomial::constant(cfg.n, rng.big_in(-shuffle_bound, shuffle_bound));
        for (int j = 0; j < cfg.n; ++j)
            comp = comp + Polynomial::variable(cfg.n, j).scaled(rng.big_in(-shuffle_bound, shuffle_bound));
        kcomps.push_back(std::move(comp));
    }
    cfg.shuffle = PolyMap(cfg.n, std::move(kcomps));
    return cfg;
}

} // namespace tame
