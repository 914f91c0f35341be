#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tame/bounds.hpp"
#include "tame/serialize.hpp"

namespace tame {
namespace {

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::infeasible: return 3;
        case ErrorKind::verification: return 1;
        case ErrorKind::internal: return 1;
        default: return 2;  // usage, parse, not_straight_line, io
    }
}

const char* kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::usage: return "usage";
        case ErrorKind::parse: return "parse";
        case ErrorKind::not_straight_line: return "not straight-line";
        case ErrorKind::infeasible: return "infeasible";
        case ErrorKind::verification: return "verification";
        case ErrorKind::io: return "io";
        case ErrorKind::internal: return "internal";
    }
    return "error";
}

std::filesystem::path resolve(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_absolute()) return p;
    if (const char* ws = std::getenv("TAME_WORKSPACE")) return std::filesystem::path(ws) / p;
    return p;
}

std::vector<Int> parse_tuple(const std::string& text) {
    std::vector<Int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        size_t a = item.find_first_not_of(" \t");
        size_t b = item.find_last_not_of(" \t");
        require(a != std::string::npos, ErrorKind::usage, "empty entry in tuple '" + text + "'");
        out.push_back(int_from_string(item.substr(a, b - a + 1)));
    }
    require(!out.empty(), ErrorKind::usage, "empty tuple");
    return out;
}

std::string join_values(const std::vector<Int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += int_to_string(v[i]);
    }
    return out;
}

StraightLineProgram load_program(const std::string& path) {
    std::filesystem::path p = resolve(path);
    if (p.extension() == ".json") return program_from_json(read_json_file(p));
    std::ifstream in(p);
    require(in.good(), ErrorKind::io, "cannot open " + p.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_program_text(text.str());
}

PublicKey load_public_key(const std::string& path) {
    return public_key_from_json(read_json_file(resolve(path)));
}

PrivateKey load_private_key(const std::string& path) {
    Json j = read_json_file(resolve(path));
    require(j.contains("psi"), ErrorKind::usage,
            path + " is a public key; this command needs the private key");
    return private_key_from_json(j);
}

std::string metric_text(const Metrics& m) {
    return "degree=" + std::to_string(m.degree) + " coeff=" + int_to_string(m.coeff_norm) +
           " monomials=" + std::to_string(m.monomials) + " avg=" + rat_to_string(m.avg_monomials);
}

Json metrics_json(const Metrics& m) {
    return Json{{"degree", m.degree},
                {"coeff", int_to_string(m.coeff_norm)},
                {"monomials", m.monomials},
                {"avg", rat_to_string(m.avg_monomials)}};
}

void print_bounds_report(const BoundsReport& r) {
    auto flag = [](bool ok) { return ok ? "PASS" : "FAIL"; };
    std::cout << "budgets: degree<=" << r.degree_budget << " coeff<=" << int_to_string(r.coeff_budget)
              << " monomials<=" << r.monomial_budget << " avg<=" << rat_to_string(r.avg_budget)
              << "\n";
    std::cout << "phi: " << metric_text(r.forward.actual) << "\n";
    std::cout << "psi: " << metric_text(r.inverse.actual) << "\n";
    std::cout << "phi bounds: degree " << flag(r.forward.degree_ok) << ", coeff "
              << flag(r.forward.coeff_ok) << ", monomials " << flag(r.forward.monomials_ok) << "\n";
    std::cout << "psi bounds: degree " << flag(r.inverse.degree_ok) << ", coeff "
              << flag(r.inverse.coeff_ok) << ", monomials " << flag(r.inverse.monomials_ok) << "\n";
    std::cout << "bit width B (32-bit inputs) = " << r.bit_width_B << "\n";
}

Json bounds_report_json(const BoundsReport& r) {
    auto side = [](const SideReport& s) {
        return Json{{"actual", metrics_json(s.actual)},
                    {"degree_ok", s.degree_ok},
                    {"coeff_ok", s.coeff_ok},
                    {"monomials_ok", s.monomials_ok}};
    };
    return Json{{"degree_budget", r.degree_budget},
                {"coeff_budget", int_to_string(r.coeff_budget)},
                {"monomial_budget", r.monomial_budget},
                {"avg_budget", rat_to_string(r.avg_budget)},
                {"phi", side(r.forward)},
                {"psi", side(r.inverse)},
                {"satisfied", r.satisfied},
                {"bit_width_B", r.bit_width_B}};
}

// scheme from a companion file, or synthesized from flags for versions 0/1
SchemeConfig scheme_for_data(const std::string& scheme_path, int version, int rand_slots,
                             const PublicKey& pub) {
    if (!scheme_path.empty()) {
        SchemeFile sf = scheme_from_json(read_json_file(resolve(scheme_path)));
        require(sf.key_fingerprint == pub.fingerprint, ErrorKind::verification,
                "scheme file belongs to a different key");
        require(sf.cfg.n == pub.n, ErrorKind::usage,
                "scheme state slots differ from the key dimension");
        return sf.cfg;
    }
    require(version >= 0 && version <= 1, ErrorKind::usage,
            "version 2 needs --scheme (the mask lives there)");
    SchemeConfig cfg;
    cfg.version = version;
    cfg.n = pub.n;
    cfg.m = pub.n - rand_slots;
    cfg.rng_bound = pub.rng_bound;
    require(rand_slots == 0 || version == 1, ErrorKind::usage,
            "--rand-slots needs --version 1");
    require(cfg.m >= 1, ErrorKind::usage, "randomness slots leave no plaintext slot");
    require(version == 0 || rand_slots >= 1, ErrorKind::usage,
            "version 1 needs --rand-slots >= 1");
    return cfg;
}

// rebuild the pre-conjugation steps exactly as the transform does, for the
// per-step bound check
std::vector<PolyMap> plain_steps_of(const StraightLineProgram& p, const SchemeConfig& cfg) {
    if (cfg.version == 0) return p.steps;
    // mirror of build_fhe's widening: identity on appended slots
    std::vector<PolyMap> out;
    for (const PolyMap& s : p.steps) {
        std::vector<Polynomial> comps(embed_domain(s, cfg.n).components());
        for (int i = s.codomain(); i < cfg.n; ++i)
            comps.push_back(Polynomial::variable(cfg.n, i));
        out.push_back(PolyMap(cfg.n, std::move(comps)));
    }
    return out;
}

struct StepBoundRow {
    Metrics actual;
    TransformBounds bound;
    bool ok = false;
};

// bound rows for the conjugated steps; extra leading row for the version-2
// unmask step is checked against its own pre-conjugation metrics
std::vector<StepBoundRow> step_bound_rows(const TransformedProgram& tp,
                                          const StraightLineProgram& p, const SchemeConfig& cfg,
                                          const AutomorphismPair& pair) {
    Metrics mphi = pair.phi.metrics();
    Metrics mpsi = pair.psi.metrics();
    std::vector<PolyMap> plain = plain_steps_of(p, cfg);
    if (cfg.version == 2) {
        // reconstruct the inserted step through the public builder to stay in
        // lockstep with build_fhe
        TransformedProgram probe = build_fhe(p, pair, cfg, tp.key_fingerprint);
        require(probe.inner.steps.size() == tp.inner.steps.size(), ErrorKind::verification,
                "transformed program step count differs from a fresh transform");
        PolyMap unmask = compose(compose(pair.psi, probe.inner.steps.front()), pair.phi);
        plain.insert(plain.begin(), unmask);
    }
    require(plain.size() == tp.inner.steps.size(), ErrorKind::verification,
            "transformed program step count differs from the source program");
    std::vector<StepBoundRow> rows;
    rows.reserve(plain.size());
    for (size_t i = 0; i < plain.size(); ++i) {
        StepBoundRow row;
        row.actual = tp.inner.steps[i].metrics();
        row.bound = transform_bounds(plain[i].metrics(), mphi, mpsi);
        row.ok = within_transform_bounds(row.actual, row.bound);
        rows.push_back(row);
    }
    return rows;
}

void maybe_write_report(const std::string& json_out, const Json& report) {
    if (!json_out.empty()) write_json_file(resolve(json_out), report);
}

// ---- subcommands ----

int cmd_keygen(int n, int64_t degree, const std::string& coeff_bound, int64_t monomials,
               const std::string& avg_monomials, int64_t stages, uint64_t seed,
               const std::string& rng_bound, bool no_offsets, const std::string& out_private,
               const std::string& out_public, const std::string& json_out) {
    Int b = int_from_string(coeff_bound);
    Rat mbar = avg_monomials.empty() ? Rat(monomials) : rat_from_string(avg_monomials);
    TamePlan plan = plan_tame(n, degree, b, monomials, mbar, stages, !no_offsets);
    Rng rng(seed);
    AutomorphismPair pair = gen_tame(plan, rng);
    std::string fingerprint = fingerprint_of(pair.phi);

    PrivateKey priv;
    priv.n = n;
    priv.seed = seed;
    priv.plan = plan;
    priv.rng_bound = int_from_string(rng_bound);
    priv.pair = pair;
    priv.fingerprint = fingerprint;

    write_json_file(resolve(out_private), private_key_to_json(priv));
    write_json_file(resolve(out_public), public_key_to_json(public_part(priv)));

    BoundsReport rep = keygen_bound_check(pair, plan);
    std::cout << "generated automorphism pair on Z^" << n << " (" << plan.stages << " stage(s), "
              << "stage degrees";
    for (int64_t d : plan.stage_degrees) std::cout << " " << d;
    std::cout << ")\n";
    print_bounds_report(rep);
    std::cout << "fingerprint = " << fingerprint << "\n";
    std::cout << "wrote " << out_private << " and " << out_public << "\n";
    maybe_write_report(json_out, Json{{"plan", plan_to_json(plan)},
                                      {"bounds", bounds_report_json(rep)},
                                      {"fingerprint", fingerprint}});
    return rep.satisfied ? 0 : 1;
}

int cmd_transform(const std::string& key_path, const std::string& program_path, int version,
                  int rand_slots, uint64_t seed, const std::string& out_path,
                  const std::string& scheme_out, const std::string& json_out) {
    PrivateKey key = load_private_key(key_path);
    StraightLineProgram p = load_program(program_path);
    require(key.n == p.state_dim + rand_slots, ErrorKind::usage,
            "key dimension " + std::to_string(key.n) + " != program state " +
                std::to_string(p.state_dim) + " + randomness slots " + std::to_string(rand_slots));

    Rng rng(seed);
    SchemeConfig cfg = make_scheme_config(version, p.state_dim, rand_slots, key.rng_bound, rng,
                                          std::max(key.plan.coeff_budget, Int(1)));
    TransformedProgram tp = build_fhe(p, key.pair, cfg, key.fingerprint);

    write_json_file(resolve(out_path), transformed_to_json(tp));
    SchemeFile sf{cfg, key.fingerprint, seed};
    write_json_file(resolve(scheme_out), scheme_to_json(sf));

    std::vector<StepBoundRow> rows = step_bound_rows(tp, p, cfg, key.pair);
    bool all_ok = true;
    Json jrows = Json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
        const StepBoundRow& r = rows[i];
        all_ok = all_ok && r.ok;
        std::cout << "step " << (i + 1) << ": " << metric_text(r.actual) << "  bound degree<="
                  << r.bound.degree << " coeff<=" << int_to_string(r.bound.coeff_norm)
                  << " monomials<=" << int_to_string(r.bound.monomials) << "  "
                  << (r.ok ? "PASS" : "FAIL") << "\n";
        jrows.push_back(Json{{"actual", metrics_json(r.actual)},
                             {"bound_degree", r.bound.degree},
                             {"bound_coeff", int_to_string(r.bound.coeff_norm)},
                             {"bound_monomials", int_to_string(r.bound.monomials)},
                             {"ok", r.ok}});
    }
    Json jwarn = Json::array();
    for (const std::string& w : check_mixing(key.pair, cfg)) {
        std::cout << "warning: " << w << "\n";
        jwarn.push_back(w);
    }
    std::cout << "wrote " << out_path << " and " << scheme_out << "\n";
    maybe_write_report(json_out, Json{{"steps", std::move(jrows)}, {"warnings", std::move(jwarn)},
                                      {"bounds_ok", all_ok}});
    return all_ok ? 0 : 1;
}

int cmd_encrypt(const std::string& key_path, const std::string& scheme_path, int version,
                int rand_slots, const std::string& input, const std::string& g_text,
                uint64_t seed, bool has_enc_seed, uint64_t enc_seed, const std::string& out_path,
                const std::string& json_out) {
    PublicKey pub = load_public_key(key_path);
    SchemeConfig cfg = scheme_for_data(scheme_path, version, rand_slots, pub);
    std::vector<Int> u = parse_tuple(input);

    Ciphertext ct;
    if (!g_text.empty()) {
        ct = encrypt_with(u, parse_tuple(g_text), pub.phi, cfg, pub.fingerprint);
    } else {
        Rng rng(has_enc_seed ? enc_seed : seed);
        ct = encrypt(u, pub.phi, cfg, pub.fingerprint, rng);
    }
    write_json_file(resolve(out_path), ciphertext_to_json(ct));

    Int u_norm = 0;
    for (const Int& x : u) u_norm = std::max(u_norm, abs_val(x));
    Int bound = ciphertext_size_bound(pub.phi.metrics(), cfg, u_norm);
    Int actual = 0;
    for (const Int& x : ct.values) actual = std::max(actual, abs_val(x));
    std::cout << "ciphertext = (" << join_values(ct.values) << ")\n";
    std::cout << "size bound " << int_to_string(bound) << ", largest coordinate "
              << int_to_string(actual) << (actual <= bound ? " (within bound)" : " (EXCEEDS bound)")
              << "\n";
    std::cout << "wrote " << out_path << "\n";
    maybe_write_report(json_out, Json{{"ciphertext", ciphertext_to_json(ct)},
                                      {"size_bound", int_to_string(bound)},
                                      {"largest", int_to_string(actual)},
                                      {"within_bound", actual <= bound}});
    return actual <= bound ? 0 : 1;
}

int cmd_run(const std::string& transformed_path, const std::string& ct_path,
            const std::string& program_path, const std::string& input,
            const std::string& out_path, const std::string& json_out) {
    if (!program_path.empty()) {
        require(!input.empty(), ErrorKind::usage, "--program needs --input");
        StraightLineProgram p = load_program(program_path);
        std::vector<Int> out = run(p, parse_tuple(input));
        std::cout << "output = (" << join_values(out) << ")\n";
        maybe_write_report(json_out, Json{{"output", ciphertext_to_json(
                                              Ciphertext{0, "", out})["values"]}});
        return 0;
    }
    require(!transformed_path.empty() && !ct_path.empty(), ErrorKind::usage,
            "need --transformed with --ct, or --program with --input");
    TransformedProgram tp = transformed_from_json(read_json_file(resolve(transformed_path)));
    Ciphertext ct = ciphertext_from_json(read_json_file(resolve(ct_path)));
    require(ct.key_fingerprint == tp.key_fingerprint, ErrorKind::verification,
            "ciphertext and transformed program belong to different keys");
    require(ct.version == tp.version, ErrorKind::usage,
            "ciphertext version differs from the transformed program");
    require(static_cast<int>(ct.values.size()) == tp.n, ErrorKind::usage,
            "ciphertext length differs from the transformed program state");
    Ciphertext out{tp.version, tp.key_fingerprint, run(tp.inner, ct.values)};
    write_json_file(resolve(out_path), ciphertext_to_json(out));
    std::cout << "result ciphertext = (" << join_values(out.values) << ")\n";
    std::cout << "wrote " << out_path << "\n";
    maybe_write_report(json_out, Json{{"ciphertext", ciphertext_to_json(out)}});
    return 0;
}

int cmd_decrypt(const std::string& key_path, const std::string& scheme_path, int version,
                int rand_slots, const std::string& ct_path, const std::string& program_path,
                const std::string& json_out) {
    PrivateKey key = load_private_key(key_path);
    SchemeConfig cfg = scheme_for_data(scheme_path, version, rand_slots, public_part(key));
    Ciphertext ct = ciphertext_from_json(read_json_file(resolve(ct_path)));
    std::vector<Int> values;
    if (!program_path.empty()) {
        StraightLineProgram p = load_program(program_path);
        values = decrypt_output(ct, p.output, key.pair, cfg, key.fingerprint);
        std::cout << "program output = (" << join_values(values) << ")\n";
    } else {
        values = decrypt_data(ct, key.pair, cfg, key.fingerprint);
        std::cout << "plaintext = (" << join_values(values) << ")\n";
    }
    Json jv = Json::array();
    for (const Int& v : values) jv.push_back(int_to_string(v));
    maybe_write_report(json_out, Json{{"values", std::move(jv)}});
    return 0;
}

int cmd_verify(const std::string& key_path, const std::string& program_path,
               const std::string& transformed_path, const std::string& scheme_path, int version,
               int rand_slots, int64_t trials, uint64_t seed, const std::string& input_bound,
               const std::string& json_out) {
    PrivateKey key = load_private_key(key_path);
    StraightLineProgram p = load_program(program_path);
    TransformedProgram tp = transformed_from_json(read_json_file(resolve(transformed_path)));
    SchemeConfig cfg = scheme_for_data(scheme_path, version, rand_slots, public_part(key));
    require(tp.key_fingerprint == key.fingerprint, ErrorKind::verification,
            "transformed program belongs to a different key");
    require(tp.version == cfg.version && tp.m == cfg.m && tp.n == cfg.n, ErrorKind::usage,
            "transformed program scheme differs from the supplied scheme");
    require(p.state_dim == cfg.m, ErrorKind::usage,
            "program state dimension differs from the scheme plaintext slots");

    PairCheck pc = verify_inverse_pair(key.pair);
    require(pc.ok, ErrorKind::verification, "key is not an automorphism pair: " + pc.detail);

    Int ubound = int_from_string(input_bound);
    require(ubound >= 0, ErrorKind::usage, "input bound must be nonnegative");
    Metrics mphi = key.pair.phi.metrics();

    Rng master(seed);
    int64_t passed = 0;
    for (int64_t t = 0; t < trials; ++t) {
        Rng trial_rng = master.split();
        std::vector<Int> u;
        for (int i = 0; i < p.arity; ++i) u.push_back(trial_rng.big_in(-ubound, ubound));
        std::vector<Int> g;
        for (int i = 0; i < cfg.n - cfg.m; ++i) g.push_back(trial_rng.big_in(0, cfg.rng_bound));

        std::vector<Int> expected = run(p, u);
        std::vector<Int> state0 = p.input.evaluate(u);
        Ciphertext ct = encrypt_with(state0, g, key.pair.phi, cfg, key.fingerprint);

        Int u_norm = 0;
        for (const Int& x : state0) u_norm = std::max(u_norm, abs_val(x));
        Int size_bound = ciphertext_size_bound(mphi, cfg, u_norm);
        for (const Int& x : ct.values)
            if (abs_val(x) > size_bound) {
                std::cout << "FAIL trial " << t << ": ciphertext coordinate exceeds size bound\n"
                          << "  u = (" << join_values(u) << "), g = (" << join_values(g) << ")\n";
                maybe_write_report(json_out, Json{{"trials", trials}, {"passed", passed},
                                                  {"failed_trial", t}});
                return 1;
            }

        Ciphertext out{tp.version, tp.key_fingerprint, run(tp.inner, ct.values)};
        std::vector<Int> got = decrypt_output(out, p.output, key.pair, cfg, key.fingerprint);
        if (got != expected) {
            std::cout << "FAIL trial " << t << ": decrypt(run(F(P), encrypt(u,g))) != P(u)\n"
                      << "  u = (" << join_values(u) << "), g = (" << join_values(g) << ")\n"
                      << "  expected (" << join_values(expected) << "), got (" << join_values(got)
                      << ")\n";
            maybe_write_report(json_out, Json{{"trials", trials}, {"passed", passed},
                                              {"failed_trial", t}});
            return 1;
        }
        ++passed;
    }

    std::vector<StepBoundRow> rows = step_bound_rows(tp, p, cfg, key.pair);
    bool bounds_ok = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].ok) {
            bounds_ok = false;
            std::cout << "FAIL: step " << (i + 1) << " metrics exceed the transform bounds\n";
        }
    }
    std::cout << "verify: " << passed << "/" << trials << " trials passed, step bounds "
              << (bounds_ok ? "satisfied" : "VIOLATED") << "\n";
    maybe_write_report(json_out, Json{{"trials", trials}, {"passed", passed},
                                      {"bounds_ok", bounds_ok}});
    return bounds_ok ? 0 : 1;
}

int cmd_stats(const std::string& key_path, int64_t bits, const std::string& json_out) {
    Json j = read_json_file(resolve(key_path));
    if (j.contains("psi")) {
        PrivateKey key = private_key_from_json(j);
        BoundsReport rep = keygen_bound_check(key.pair, key.plan, bits);
        std::cout << "private key on Z^" << key.n << ", fingerprint " << key.fingerprint << "\n";
        print_bounds_report(rep);
        maybe_write_report(json_out, Json{{"bounds", bounds_report_json(rep)},
                                          {"fingerprint", key.fingerprint}});
        return rep.satisfied ? 0 : 1;
    }
    PublicKey pub = public_key_from_json(j);
    Metrics m = pub.phi.metrics();
    bool ok = m.degree <= pub.plan.degree_budget && m.coeff_norm <= pub.plan.coeff_budget &&
              m.monomials <= pub.plan.monomial_budget;
    std::cout << "public key on Z^" << pub.n << ", fingerprint " << pub.fingerprint << "\n";
    std::cout << "phi: " << metric_text(m) << "\n";
    std::cout << "budgets: degree<=" << pub.plan.degree_budget << " coeff<="
              << int_to_string(pub.plan.coeff_budget) << " monomials<=" << pub.plan.monomial_budget
              << " -> " << (ok ? "PASS" : "FAIL") << "\n";
    std::cout << "bit width B (" << bits << "-bit inputs) = " << bit_width_estimate(bits, m)
              << "\n";
    maybe_write_report(json_out, Json{{"phi", metrics_json(m)}, {"satisfied", ok},
                                      {"bit_width_B", bit_width_estimate(bits, m)},
                                      {"fingerprint", pub.fingerprint}});
    return ok ? 0 : 1;
}

int cmd_emit(const std::string& program_path, const std::string& transformed_path,
             const std::string& out_path) {
    require(program_path.empty() != transformed_path.empty(), ErrorKind::usage,
            "need exactly one of --program or --transformed");
    std::string text;
    if (!program_path.empty()) {
        text = emit_program_text(load_program(program_path));
    } else {
        text = emit_pseudocode(transformed_from_json(read_json_file(resolve(transformed_path))));
    }
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(resolve(out_path));
        require(out.good(), ErrorKind::io, "cannot open " + out_path + " for writing");
        out << text;
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

} // namespace
} // namespace tame

int main(int argc, char** argv) {
    using namespace tame;
    CLI::App app{"integer polynomial automorphism toolkit: keygen, program rewriting, "
                 "encrypted execution"};
    app.require_subcommand(1);

    // keygen
    auto* kg = app.add_subcommand("keygen", "generate an automorphism pair under budgets");
    int kg_n = 2;
    int64_t kg_d = 2, kg_m = 5, kg_stages = 1;
    std::string kg_b = "3", kg_mbar, kg_rng_bound = "1000000";
    uint64_t kg_seed = 0;
    bool kg_no_offsets = false;
    std::string kg_priv = "key.priv.json", kg_pub = "key.pub.json", kg_json;
    kg->add_option("--n", kg_n, "state dimension")->required();
    kg->add_option("--degree", kg_d, "degree budget d")->required();
    kg->add_option("--coeff-bound", kg_b, "coefficient budget b")->required();
    kg->add_option("--monomials", kg_m, "monomial budget m")->required();
    kg->add_option("--avg-monomials", kg_mbar, "mean monomial budget (default: --monomials)");
    kg->add_option("--stages", kg_stages, "triangular stages k");
    kg->add_option("--seed", kg_seed, "rng seed");
    kg->add_option("--rng-bound", kg_rng_bound, "encryption randomness bound recorded in the key");
    kg->add_flag("--no-offsets", kg_no_offsets, "affine factors without offsets");
    kg->add_option("--out-private", kg_priv, "private key path");
    kg->add_option("--out-public", kg_pub, "public key path");
    kg->add_option("--json-out", kg_json, "structured report path");

    // transform
    auto* tr = app.add_subcommand("transform", "rewrite a program to run on encrypted state");
    std::string tr_key, tr_prog, tr_out = "transformed.json", tr_scheme = "scheme.json", tr_json;
    int tr_version = 0, tr_slots = 0;
    uint64_t tr_seed = 0;
    tr->add_option("--key", tr_key, "private key file")->required();
    tr->add_option("--program", tr_prog, "program file (.slp text or .json)")->required();
    tr->add_option("--version", tr_version, "scheme version 0, 1, or 2")->required();
    tr->add_option("--rand-slots", tr_slots, "randomness slots (versions 1-2)");
    tr->add_option("--seed", tr_seed, "seed for version-2 mask generation");
    tr->add_option("--out", tr_out, "transformed program path");
    tr->add_option("--scheme-out", tr_scheme, "scheme companion path");
    tr->add_option("--json-out", tr_json, "structured report path");

    // encrypt
    auto* en = app.add_subcommand("encrypt", "encrypt a plaintext tuple");
    std::string en_key, en_scheme, en_input, en_g, en_out = "ct.json", en_json;
    int en_version = 0, en_slots = 0;
    uint64_t en_seed = 0, en_enc_seed = 0;
    en->add_option("--key", en_key, "public (or private) key file")->required();
    en->add_option("--scheme", en_scheme, "scheme companion file");
    en->add_option("--version", en_version, "scheme version when no --scheme is given");
    en->add_option("--rand-slots", en_slots, "randomness slots when no --scheme is given");
    en->add_option("--input", en_input, "plaintext tuple, e.g. \"2,3\"")->required();
    en->add_option("--g", en_g, "explicit randomness tuple (skips drawing)");
    en->add_option("--seed", en_seed, "rng seed");
    auto* en_enc_opt = en->add_option("--enc-seed", en_enc_seed, "encryption seed override");
    en->add_option("--out", en_out, "ciphertext path");
    en->add_option("--json-out", en_json, "structured report path");

    // run
    auto* rn = app.add_subcommand("run", "execute a program");
    std::string rn_tp, rn_ct, rn_prog, rn_input, rn_out = "ct.out.json", rn_json;
    rn->add_option("--transformed", rn_tp, "transformed program file");
    rn->add_option("--ct", rn_ct, "input ciphertext file");
    rn->add_option("--program", rn_prog, "plain program file (with --input)");
    rn->add_option("--input", rn_input, "plaintext input tuple for --program");
    rn->add_option("--out", rn_out, "result ciphertext path");
    rn->add_option("--json-out", rn_json, "structured report path");

    // decrypt
    auto* de = app.add_subcommand("decrypt", "decrypt a ciphertext");
    std::string de_key, de_scheme, de_ct, de_prog, de_json;
    int de_version = 0, de_slots = 0;
    de->add_option("--key", de_key, "private key file")->required();
    de->add_option("--scheme", de_scheme, "scheme companion file");
    de->add_option("--version", de_version, "scheme version when no --scheme is given");
    de->add_option("--rand-slots", de_slots, "randomness slots when no --scheme is given");
    de->add_option("--ct", de_ct, "ciphertext file")->required();
    de->add_option("--program", de_prog,
                   "original program; decode a program result through its output map");
    de->add_option("--json-out", de_json, "structured report path");

    // verify
    auto* ve = app.add_subcommand("verify", "check the encrypted pipeline end to end");
    std::string ve_key, ve_prog, ve_tp, ve_scheme, ve_ibound = "1000", ve_json;
    int ve_version = 0, ve_slots = 0;
    int64_t ve_trials = 100;
    uint64_t ve_seed = 0;
    ve->add_option("--key", ve_key, "private key file")->required();
    ve->add_option("--program", ve_prog, "original program file")->required();
    ve->add_option("--transformed", ve_tp, "transformed program file")->required();
    ve->add_option("--scheme", ve_scheme, "scheme companion file");
    ve->add_option("--version", ve_version, "scheme version when no --scheme is given");
    ve->add_option("--rand-slots", ve_slots, "randomness slots when no --scheme is given");
    ve->add_option("--trials", ve_trials, "number of random trials");
    ve->add_option("--seed", ve_seed, "rng seed");
    ve->add_option("--input-bound", ve_ibound, "inputs drawn from [-bound, bound]");
    ve->add_option("--json-out", ve_json, "structured report path");

    // stats
    auto* st = app.add_subcommand("stats", "report key metrics against budgets");
    std::string st_key, st_json;
    int64_t st_bits = 32;
    st->add_option("--key", st_key, "key file (public or private)")->required();
    st->add_option("--bits", st_bits, "input bit width for the B estimate");
    st->add_option("--json-out", st_json, "structured report path");

    // emit
    auto* em = app.add_subcommand("emit", "print a program as canonical text");
    std::string em_prog, em_tp, em_out;
    em->add_option("--program", em_prog, "program file");
    em->add_option("--transformed", em_tp, "transformed program file");
    em->add_option("--out", em_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
        if (*kg)
            return cmd_keygen(kg_n, kg_d, kg_b, kg_m, kg_mbar, kg_stages, kg_seed, kg_rng_bound,
                              kg_no_offsets, kg_priv, kg_pub, kg_json);
        if (*tr)
            return cmd_transform(tr_key, tr_prog, tr_version, tr_slots, tr_seed, tr_out, tr_scheme,
                                 tr_json);
        if (*en)
            return cmd_encrypt(en_key, en_scheme, en_version, en_slots, en_input, en_g, en_seed,
                               en_enc_opt->count() > 0, en_enc_seed, en_out, en_json);
        if (*rn) return cmd_run(rn_tp, rn_ct, rn_prog, rn_input, rn_out, rn_json);
        if (*de)
            return cmd_decrypt(de_key, de_scheme, de_version, de_slots, de_ct, de_prog, de_json);
        if (*ve)
            return cmd_verify(ve_key, ve_prog, ve_tp, ve_scheme, ve_version, ve_slots, ve_trials,
                              ve_seed, ve_ibound, ve_json);
        if (*st) return cmd_stats(st_key, st_bits, st_json);
        if (*em) return cmd_emit(em_prog, em_tp, em_out);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error (" << kind_name(e.kind) << ")";
        if (e.line > 0) {
            std::cerr << " at line " << e.line;
            if (e.column > 0) std::cerr << ", column " << e.column;
        }
        std::cerr << ": " << e.what() << "\n";
        return exit_code_for(e.kind);
    } catch (const std::exception& e) {
        std::cerr << "error (internal): " << e.what() << "\n";
        return 1;
    }
}
