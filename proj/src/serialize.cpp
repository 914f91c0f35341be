#include <fstream>

#include "tame/serialize.hpp"

namespace tame {

namespace {

const Json& field(const Json& j, const char* name) {
    require(j.is_object(), ErrorKind::parse, "expected an object");
    auto it = j.find(name);
    require(it != j.end(), ErrorKind::parse, std::string("missing field '") + name + "'");
    return *it;
}

int64_t get_i64(const Json& j, const char* name) {
    const Json& f = field(j, name);
    require(f.is_number_integer(), ErrorKind::parse,
            std::string("field '") + name + "' must be an integer");
    return f.get<int64_t>();
}

int get_int(const Json& j, const char* name) { return static_cast<int>(get_i64(j, name)); }

uint64_t get_u64(const Json& j, const char* name) {
    const Json& f = field(j, name);
    require(f.is_number_unsigned() || (f.is_number_integer() && f.get<int64_t>() >= 0),
            ErrorKind::parse, std::string("field '") + name + "' must be a nonnegative integer");
    return f.get<uint64_t>();
}

std::string get_str(const Json& j, const char* name) {
    const Json& f = field(j, name);
    require(f.is_string(), ErrorKind::parse, std::string("field '") + name + "' must be a string");
    return f.get<std::string>();
}

bool get_bool(const Json& j, const char* name) {
    const Json& f = field(j, name);
    require(f.is_boolean(), ErrorKind::parse, std::string("field '") + name + "' must be a boolean");
    return f.get<bool>();
}

Int get_big(const Json& j, const char* name) { return int_from_string(get_str(j, name)); }
Rat get_rat(const Json& j, const char* name) { return rat_from_string(get_str(j, name)); }

const Json& array_field(const Json& j, const char* name) {
    const Json& f = field(j, name);
    require(f.is_array(), ErrorKind::parse, std::string("field '") + name + "' must be an array");
    return f;
}

} // namespace

Json poly_to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const Term& t : p.terms()) {
        Json e = Json::array();
        for (uint32_t x : t.exps) e.push_back(x);
        terms.push_back(Json{{"c", int_to_string(t.coeff)}, {"e", std::move(e)}});
    }
    return terms;
}

Polynomial poly_from_json(const Json& j, int num_vars) {
    require(j.is_array(), ErrorKind::parse, "polynomial must be an array of terms");
    std::vector<Term> terms;
    terms.reserve(j.size());
    for (const Json& tj : j) {
        Term t;
        t.coeff = get_big(tj, "c");
        const Json& e = array_field(tj, "e");
        require(static_cast<int>(e.size()) == num_vars, ErrorKind::parse,
                "term exponent tuple length differs from the variable count");
        for (const Json& x : e) {
            require(x.is_number_integer() && x.get<int64_t>() >= 0, ErrorKind::parse,
                    "exponents must be nonnegative integers");
            t.exps.push_back(x.get<uint32_t>());
        }
        terms.push_back(std::move(t));
    }
    return Polynomial::from_terms(num_vars, std::move(terms));
}

Json map_to_json(const PolyMap& f) {
    Json comps = Json::array();
    for (const Polynomial& c : f.components()) comps.push_back(poly_to_json(c));
    return Json{{"domain", f.domain()}, {"codomain", f.codomain()}, {"components", std::move(comps)}};
}

PolyMap map_from_json(const Json& j) {
    int domain = get_int(j, "domain");
    int codomain = get_int(j, "codomain");
    require(domain >= 0 && codomain >= 0, ErrorKind::parse, "map dimensions must be nonnegative");
    const Json& comps = array_field(j, "components");
    require(static_cast<int>(comps.size()) == codomain, ErrorKind::parse,
            "component count differs from the declared codomain");
    std::vector<Polynomial> out;
    out.reserve(comps.size());
    for (const Json& c : comps) out.push_back(poly_from_json(c, domain));
    return PolyMap(domain, std::move(out));
}

Json plan_to_json(const TamePlan& p) {
    Json degrees = Json::array();
    for (int64_t d : p.stage_degrees) degrees.push_back(d);
    return Json{{"n", p.n},
                {"stages", p.stages},
                {"stage_degrees", std::move(degrees)},
                {"mu_t", p.mu_t},
                {"mu_a", p.mu_a},
                {"beta_t", int_to_string(p.beta_t)},
                {"beta_a", int_to_string(p.beta_a)},
                {"mubar_t", rat_to_string(p.mubar_t)},
                {"mubar_a", rat_to_string(p.mubar_a)},
                {"offsets", p.offsets},
                {"degree_budget", p.degree_budget},
                {"coeff_budget", int_to_string(p.coeff_budget)},
                {"monomial_budget", p.monomial_budget},
                {"avg_budget", rat_to_string(p.avg_budget)},
                {"sigma", int_to_string(p.sigma)},
                {"delta_k", int_to_string(p.delta_k)}};
}

TamePlan plan_from_json(const Json& j) {
    TamePlan p;
    p.n = get_int(j, "n");
    p.stages = get_i64(j, "stages");
    for (const Json& d : array_field(j, "stage_degrees")) {
        require(d.is_number_integer(), ErrorKind::parse, "stage degrees must be integers");
        p.stage_degrees.push_back(d.get<int64_t>());
    }
    p.mu_t = get_i64(j, "mu_t");
    p.mu_a = get_i64(j, "mu_a");
    p.beta_t = get_big(j, "beta_t");
    p.beta_a = get_big(j, "beta_a");
    p.mubar_t = get_rat(j, "mubar_t");
    p.mubar_a = get_rat(j, "mubar_a");
    p.offsets = get_bool(j, "offsets");
    p.degree_budget = get_i64(j, "degree_budget");
    p.coeff_budget = get_big(j, "coeff_budget");
    p.monomial_budget = get_i64(j, "monomial_budget");
    p.avg_budget = get_rat(j, "avg_budget");
    p.sigma = get_big(j, "sigma");
    p.delta_k = get_big(j, "delta_k");
    return p;
}

Json program_to_json(const StraightLineProgram& p) {
    Json steps = Json::array();
    for (const PolyMap& s : p.steps) steps.push_back(map_to_json(s));
    return Json{{"k", p.arity},
                {"n", p.state_dim},
                {"l", p.out_dim},
                {"f_in", map_to_json(p.input)},
                {"steps", std::move(steps)},
                {"f_out", map_to_json(p.output)}};
}

StraightLineProgram program_from_json(const Json& j) {
    StraightLineProgram p;
    p.arity = get_int(j, "k");
    p.state_dim = get_int(j, "n");
    p.out_dim = get_int(j, "l");
    p.input = map_from_json(field(j, "f_in"));
    for (const Json& s : array_field(j, "steps")) p.steps.push_back(map_from_json(s));
    p.output = map_from_json(field(j, "f_out"));
    ValidationReport v = validate(p);
    require(v.ok, ErrorKind::parse,
            v.diagnostics.empty() ? "inconsistent program file" : v.diagnostics.front());
    return p;
}

PublicKey public_part(const PrivateKey& k) {
    return PublicKey{k.n, k.plan, k.rng_bound, k.pair.phi, k.fingerprint};
}

Json public_key_to_json(const PublicKey& k) {
    return Json{{"version", 1},
                {"n", k.n},
                {"plan", plan_to_json(k.plan)},
                {"rng_bound", int_to_string(k.rng_bound)},
                {"phi", map_to_json(k.phi)},
                {"fingerprint", k.fingerprint}};
}

PublicKey public_key_from_json(const Json& j) {
    require(get_int(j, "version") == 1, ErrorKind::parse, "unsupported key file version");
    PublicKey k;
    k.n = get_int(j, "n");
    k.plan = plan_from_json(field(j, "plan"));
    k.rng_bound = get_big(j, "rng_bound");
    k.phi = map_from_json(field(j, "phi"));
    k.fingerprint = get_str(j, "fingerprint");
    require(k.phi.domain() == k.n && k.phi.codomain() == k.n, ErrorKind::parse,
            "public map dimension differs from the declared n");
    return k;
}

Json private_key_to_json(const PrivateKey& k) {
    Json factors = Json::array();
    for (const TameFactor& f : k.pair.factors)
        factors.push_back(Json{{"kind", f.kind == FactorKind::affine ? "affine" : "triangular"},
                               {"forward", map_to_json(f.forward)},
                               {"inverse", map_to_json(f.inverse)}});
    return Json{{"version", 1},
                {"n", k.n},
                {"seed", k.seed},
                {"plan", plan_to_json(k.plan)},
                {"rng_bound", int_to_string(k.rng_bound)},
                {"phi", map_to_json(k.pair.phi)},
                {"psi", map_to_json(k.pair.psi)},
                {"factorization", std::move(factors)},
                {"fingerprint", k.fingerprint}};
}

PrivateKey private_key_from_json(const Json& j) {
    require(get_int(j, "version") == 1, ErrorKind::parse, "unsupported key file version");
    PrivateKey k;
    k.n = get_int(j, "n");
    k.seed = get_u64(j, "seed");
    k.plan = plan_from_json(field(j, "plan"));
    k.rng_bound = get_big(j, "rng_bound");
    k.pair.n = k.n;
    k.pair.phi = map_from_json(field(j, "phi"));
    k.pair.psi = map_from_json(field(j, "psi"));
    for (const Json& f : array_field(j, "factorization")) {
        std::string kind = get_str(f, "kind");
        require(kind == "affine" || kind == "triangular", ErrorKind::parse,
                "unknown factor kind '" + kind + "'");
        k.pair.factors.push_back({kind == "affine" ? FactorKind::affine : FactorKind::triangular,
                                  map_from_json(field(f, "forward")),
                                  map_from_json(field(f, "inverse"))});
    }
    k.fingerprint = get_str(j, "fingerprint");
    return k;
}

Json transformed_to_json(const TransformedProgram& tp) {
    Json j = program_to_json(tp.inner);
    j["scheme"] = Json{{"version", tp.version},
                       {"m", tp.m},
                       {"n", tp.n},
                       {"key_fingerprint", tp.key_fingerprint}};
    return j;
}

TransformedProgram transformed_from_json(const Json& j) {
    TransformedProgram tp;
    tp.inner = program_from_json(j);
    const Json& s = field(j, "scheme");
    tp.version = get_int(s, "version");
    tp.m = get_int(s, "m");
    tp.n = get_int(s, "n");
    tp.key_fingerprint = get_str(s, "key_fingerprint");
    require(tp.inner.state_dim == tp.n, ErrorKind::parse,
            "transformed program state differs from the scheme state slots");
    return tp;
}

Json ciphertext_to_json(const Ciphertext& c) {
    Json values = Json::array();
    for (const Int& v : c.values) values.push_back(int_to_string(v));
    return Json{{"version", c.version},
                {"key_fingerprint", c.key_fingerprint},
                {"values", std::move(values)}};
}

Ciphertext ciphertext_from_json(const Json& j) {
    Ciphertext c;
    c.version = get_int(j, "version");
    c.key_fingerprint = get_str(j, "key_fingerprint");
    for (const Json& v : array_field(j, "values")) {
        require(v.is_string(), ErrorKind::parse, "ciphertext values must be decimal strings");
        c.values.push_back(int_from_string(v.get<std::string>()));
    }
    return c;
}

Json scheme_to_json(const SchemeFile& s) {
    Json j{{"version", s.cfg.version},
           {"m", s.cfg.m},
           {"n", s.cfg.n},
           {"rng_bound", int_to_string(s.cfg.rng_bound)},
           {"key_fingerprint", s.key_fingerprint},
           {"seed", s.seed}};
    if (s.cfg.version == 2) {
        j["h"] = map_to_json(s.cfg.mask_h);
        j["H"] = Json{{"forward", map_to_json(s.cfg.mask_pair.phi)},
                      {"inverse", map_to_json(s.cfg.mask_pair.psi)}};
        j["K"] = map_to_json(s.cfg.shuffle);
    }
    return j;
}

SchemeFile scheme_from_json(const Json& j) {
    SchemeFile s;
    s.cfg.version = get_int(j, "version");
    s.cfg.m = get_int(j, "m");
    s.cfg.n = get_int(j, "n");
    s.cfg.rng_bound = get_big(j, "rng_bound");
    s.key_fingerprint = get_str(j, "key_fingerprint");
    s.seed = get_u64(j, "seed");
    if (s.cfg.version == 2) {
        s.cfg.mask_h = map_from_json(field(j, "h"));
        const Json& hp = field(j, "H");
        s.cfg.mask_pair.n = s.cfg.n - s.cfg.m;
        s.cfg.mask_pair.phi = map_from_json(field(hp, "forward"));
        s.cfg.mask_pair.psi = map_from_json(field(hp, "inverse"));
        s.cfg.shuffle = map_from_json(field(j, "K"));
    }
    return s;
}

std::string fingerprint_of(const PolyMap& phi) { return sha256_hex(map_to_json(phi).dump()); }

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    require(out.good(), ErrorKind::io, "cannot open " + path.string() + " for writing");
    out << j.dump(2) << "\n";
    require(out.good(), ErrorKind::io, "write to " + path.string() + " failed");
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::io, "cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, path.string() + ": " + e.what());
    }
}

} // namespace tame
