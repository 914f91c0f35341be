#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tame/crypto.hpp"
#include "tame/program.hpp"
#include "tame/rewrite.hpp"

namespace tame {

using Json = nlohmann::ordered_json;

// key files. The public form carries only the forward map; the private form
// additionally holds the seed, the inverse map, and the factorization
struct PublicKey {
    int n = 0;
    TamePlan plan;
    Int rng_bound = 0;
    PolyMap phi;
    std::string fingerprint;
};

struct PrivateKey {
    int n = 0;
    uint64_t seed = 0;
    TamePlan plan;
    Int rng_bound = 0;
    AutomorphismPair pair;
    std::string fingerprint;
};

PublicKey public_part(const PrivateKey& k);

// version-2 companion: the mask components, private to the data owner
struct SchemeFile {
    SchemeConfig cfg;
    std::string key_fingerprint;
    uint64_t seed = 0;  // seed the mask components were generated from
};

Json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const Json& j, int num_vars);
Json map_to_json(const PolyMap& f);
PolyMap map_from_json(const Json& j);

Json plan_to_json(const TamePlan& p);
TamePlan plan_from_json(const Json& j);

Json program_to_json(const StraightLineProgram& p);
StraightLineProgram program_from_json(const Json& j);

Json public_key_to_json(const PublicKey& k);
PublicKey public_key_from_json(const Json& j);
Json private_key_to_json(const PrivateKey& k);
PrivateKey private_key_from_json(const Json& j);

Json transformed_to_json(const TransformedProgram& tp);
TransformedProgram transformed_from_json(const Json& j);

Json ciphertext_to_json(const Ciphertext& c);
Ciphertext ciphertext_from_json(const Json& j);

Json scheme_to_json(const SchemeFile& s);
SchemeFile scheme_from_json(const Json& j);

// hash of the canonical compact serialization of the forward map
std::string fingerprint_of(const PolyMap& phi);

void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

} // namespace tame
