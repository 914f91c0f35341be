#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>

#include "fixtures.hpp"
#include "tame/serialize.hpp"

using namespace tame;
using fixtures::make_poly;

namespace {

PrivateKey sample_private_key(uint64_t seed) {
    PrivateKey k;
    k.n = 2;
    k.seed = seed;
    k.plan = plan_tame(2, 2, 3, 5, 5, 1);
    k.rng_bound = 1000;
    Rng rng(seed);
    k.pair = gen_tame(k.plan, rng);
    k.fingerprint = fingerprint_of(k.pair.phi);
    return k;
}

SchemeFile sample_scheme_file() {
    SchemeFile sf;
    sf.cfg.version = 2;
    sf.cfg.m = 2;
    sf.cfg.n = 4;
    sf.cfg.rng_bound = 10;
    sf.cfg.mask_h = fixtures::appendix_mask_h();
    sf.cfg.mask_pair = fixtures::appendix_mask_pair();
    sf.cfg.shuffle = fixtures::appendix_shuffle();
    sf.key_fingerprint = "deadbeef";
    sf.seed = 99;
    return sf;
}

// byte-level stability: dump -> parse -> dump is the identity
template <typename T, typename ToJson, typename FromJson>
void check_stable(const T& value, ToJson&& to, FromJson&& from) {
    Json j = to(value);
    std::string bytes = j.dump(2);
    T back = from(Json::parse(bytes));
    CHECK(to(back).dump(2) == bytes);
}

} // namespace

TEST_CASE("polynomial and map round trips") {
    Polynomial p = fixtures::rewritten_sum_component();
    CHECK(poly_from_json(poly_to_json(p), 2) == p);
    CHECK(poly_from_json(poly_to_json(Polynomial::zero(3)), 3) == Polynomial::zero(3));

    PolyMap f = fixtures::first_example_phi();
    CHECK(map_from_json(map_to_json(f)) == f);
    check_stable(f, map_to_json, map_from_json);
}

TEST_CASE("plan round trip") {
    TamePlan p = plan_tame(4, 4, 1000000, 40, 40, 2);
    TamePlan q = plan_from_json(plan_to_json(p));
    CHECK(q.n == p.n);
    CHECK(q.stages == p.stages);
    CHECK(q.stage_degrees == p.stage_degrees);
    CHECK(q.mu_t == p.mu_t);
    CHECK(q.mu_a == p.mu_a);
    CHECK(q.beta_t == p.beta_t);
    CHECK(q.beta_a == p.beta_a);
    CHECK(q.mubar_t == p.mubar_t);
    CHECK(q.mubar_a == p.mubar_a);
    CHECK(q.offsets == p.offsets);
    CHECK(q.degree_budget == p.degree_budget);
    CHECK(q.coeff_budget == p.coeff_budget);
    CHECK(q.monomial_budget == p.monomial_budget);
    CHECK(q.avg_budget == p.avg_budget);
    CHECK(q.sigma == p.sigma);
    CHECK(q.delta_k == p.delta_k);
    check_stable(p, plan_to_json, plan_from_json);
}

TEST_CASE("program round trip") {
    StraightLineProgram p = fixtures::add_multiply_program();
    CHECK(program_from_json(program_to_json(p)) == p);
    check_stable(p, program_to_json, program_from_json);

    // inconsistent dimensions are rejected on load
    Json j = program_to_json(p);
    j["n"] = 3;
    CHECK_THROWS_AS((void)program_from_json(j), Error);
}

TEST_CASE("key round trips and the public file's omissions") {
    PrivateKey priv = sample_private_key(17);
    Json jpriv = private_key_to_json(priv);
    PrivateKey back = private_key_from_json(jpriv);
    CHECK(back.n == priv.n);
    CHECK(back.seed == priv.seed);
    CHECK(back.rng_bound == priv.rng_bound);
    CHECK(back.pair.phi == priv.pair.phi);
    CHECK(back.pair.psi == priv.pair.psi);
    CHECK(back.pair.factors.size() == priv.pair.factors.size());
    CHECK(back.fingerprint == priv.fingerprint);
    check_stable(priv, private_key_to_json, private_key_from_json);

    PublicKey pub = public_part(priv);
    CHECK(pub.phi == priv.pair.phi);
    CHECK(pub.fingerprint == priv.fingerprint);
    Json jpub = public_key_to_json(pub);
    PublicKey pback = public_key_from_json(jpub);
    CHECK(pback.phi == pub.phi);
    CHECK(pback.fingerprint == pub.fingerprint);
    check_stable(pub, public_key_to_json, public_key_from_json);

    // nothing private leaks into the public serialization
    std::string text = jpub.dump();
    CHECK(text.find("\"psi\"") == std::string::npos);
    CHECK(text.find("\"seed\"") == std::string::npos);
    CHECK(text.find("\"factorization\"") == std::string::npos);
    // psi's distinguishing coefficients must not appear either
    for (const Term& t : priv.pair.psi.component(0).terms())
        if (abs_val(t.coeff) > 1)
            CHECK(jpriv["psi"].dump().find(int_to_string(t.coeff)) != std::string::npos);
}

TEST_CASE("transformed program and ciphertext round trips") {
    PrivateKey priv = sample_private_key(29);
    StraightLineProgram p = fixtures::add_multiply_program();
    SchemeConfig cfg;
    cfg.version = 0;
    cfg.m = 2;
    cfg.n = 2;
    TransformedProgram tp = build_fhe(p, priv.pair, cfg, priv.fingerprint);
    TransformedProgram back = transformed_from_json(transformed_to_json(tp));
    CHECK(back.inner == tp.inner);
    CHECK(back.version == tp.version);
    CHECK(back.m == tp.m);
    CHECK(back.n == tp.n);
    CHECK(back.key_fingerprint == tp.key_fingerprint);
    check_stable(tp, transformed_to_json, transformed_from_json);
    CHECK(transformed_to_json(tp).dump().find("\"psi\"") == std::string::npos);

    Ciphertext ct{2, "fp", {Int(-12), Int("123456789012345678901234567890"), Int(0), Int(7)}};
    Ciphertext cback = ciphertext_from_json(ciphertext_to_json(ct));
    CHECK(cback == ct);
    check_stable(ct, ciphertext_to_json, ciphertext_from_json);
}

TEST_CASE("scheme companion round trip") {
    SchemeFile sf = sample_scheme_file();
    SchemeFile back = scheme_from_json(scheme_to_json(sf));
    CHECK(back.cfg.version == sf.cfg.version);
    CHECK(back.cfg.m == sf.cfg.m);
    CHECK(back.cfg.n == sf.cfg.n);
    CHECK(back.cfg.rng_bound == sf.cfg.rng_bound);
    CHECK(back.cfg.mask_h == sf.cfg.mask_h);
    CHECK(back.cfg.mask_pair.phi == sf.cfg.mask_pair.phi);
    CHECK(back.cfg.mask_pair.psi == sf.cfg.mask_pair.psi);
    CHECK(back.cfg.shuffle == sf.cfg.shuffle);
    CHECK(back.key_fingerprint == sf.key_fingerprint);
    CHECK(back.seed == sf.seed);
    check_stable(sf, scheme_to_json, scheme_from_json);

    // versions 0/1 carry no mask fields
    SchemeFile flat;
    flat.cfg.version = 1;
    flat.cfg.m = 2;
    flat.cfg.n = 3;
    flat.cfg.rng_bound = 50;
    flat.key_fingerprint = "abc";
    flat.seed = 1;
    Json j = scheme_to_json(flat);
    CHECK_FALSE(j.contains("h"));
    CHECK_FALSE(j.contains("H"));
    CHECK_FALSE(j.contains("K"));
    SchemeFile fback = scheme_from_json(j);
    CHECK(fback.cfg.version == 1);
    CHECK(fback.cfg.rng_bound == 50);
}

TEST_CASE("fingerprint binds to the forward map") {
    AutomorphismPair pair = fixtures::first_example_pair();
    std::string fp = fingerprint_of(pair.phi);
    CHECK(fp.size() == 64);
    CHECK(fp == fingerprint_of(pair.phi));
    CHECK(fp != fingerprint_of(pair.psi));
    // one coefficient flips the fingerprint
    PolyMap tweaked(2, {pair.phi.component(0) + Polynomial::constant(2, 1), pair.phi.component(1)});
    CHECK(fp != fingerprint_of(tweaked));
}

TEST_CASE("same seed, same bytes") {
    PrivateKey a = sample_private_key(123);
    PrivateKey b = sample_private_key(123);
    PrivateKey c = sample_private_key(124);
    CHECK(private_key_to_json(a).dump(2) == private_key_to_json(b).dump(2));
    CHECK(private_key_to_json(a).dump(2) != private_key_to_json(c).dump(2));
}

TEST_CASE("file write and read") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("tame_ser_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    fs::path file = dir / "key.json";
    PrivateKey priv = sample_private_key(5);
    write_json_file(file, private_key_to_json(priv));
    Json j = read_json_file(file);
    CHECK(private_key_from_json(j).fingerprint == priv.fingerprint);

    // malformed JSON surfaces as a parse error
    {
        std::ofstream bad(dir / "bad.json");
        bad << "{ not json";
    }
    try {
        (void)read_json_file(dir / "bad.json");
        FAIL("malformed JSON accepted");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::parse);
    }
    // missing file is an io error
    try {
        (void)read_json_file(dir / "missing.json");
        FAIL("missing file accepted");
    } catch (const Error& e) {
        CHECK(e.kind == ErrorKind::io);
    }
    fs::remove_all(dir);
}

TEST_CASE("term exponent arity is validated") {
    Json j = Json::array();
    j.push_back(Json{{"c", "3"}, {"e", Json::array({1, 2, 3})}});
    CHECK_THROWS_AS((void)poly_from_json(j, 2), Error);
    Json neg = Json::array();
    neg.push_back(Json{{"c", "3"}, {"e", Json::array({-1, 2})}});
    CHECK_THROWS_AS((void)poly_from_json(neg, 2), Error);
}
