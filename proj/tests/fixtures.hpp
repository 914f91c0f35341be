#pragma once

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "tame/automorphism.hpp"
#include "tame/program.hpp"

// printed example maps and small random generators shared by the tests
namespace fixtures {

using namespace tame;

inline Polynomial make_poly(int nvars,
                            std::vector<std::pair<long long, std::vector<uint32_t>>> ts) {
    std::vector<Term> terms;
    terms.reserve(ts.size());
    for (auto& [c, e] : ts) terms.push_back({Int(c), Monomial(e.begin(), e.end())});
    return Polynomial::from_terms(nvars, std::move(terms));
}

// phi = (-x1 - 3 x2 + 2 x2^2, 2 x1 + 5 x2 - 4 x2^2)
inline PolyMap first_example_phi() {
    return PolyMap(2, {make_poly(2, {{-1, {1, 0}}, {-3, {0, 1}}, {2, {0, 2}}}),
                       make_poly(2, {{2, {1, 0}}, {5, {0, 1}}, {-4, {0, 2}}})});
}

// psi = (5 y1 + 3 y2 + 8 y1^2 + 8 y1 y2 + 2 y2^2, -2 y1 - y2)
inline PolyMap first_example_psi() {
    return PolyMap(2, {make_poly(2, {{5, {1, 0}}, {3, {0, 1}}, {8, {2, 0}}, {8, {1, 1}}, {2, {0, 2}}}),
                       make_poly(2, {{-2, {1, 0}}, {-1, {0, 1}}})});
}

inline AutomorphismPair first_example_pair() {
    return AutomorphismPair{2, first_example_phi(), first_example_psi(), {}};
}

// the quadratic pair printed for n=2, b=3, d=2, m=5, mbar=5
inline AutomorphismPair small_printed_pair() {
    PolyMap phi(2, {make_poly(2, {{-1, {0, 1}}, {1, {2, 0}}, {2, {1, 1}}, {1, {0, 2}}, {-2, {1, 0}}}),
                    make_poly(2, {{-2, {0, 1}}, {1, {2, 0}}, {2, {1, 1}}, {1, {0, 2}}, {-3, {1, 0}}})});
    PolyMap psi(2, {make_poly(2, {{-2, {1, 0}}, {1, {2, 0}}, {-2, {1, 1}}, {1, {0, 2}}, {1, {0, 1}}}),
                    make_poly(2, {{3, {1, 0}}, {-1, {2, 0}}, {2, {1, 1}}, {-1, {0, 2}}, {-2, {0, 1}}})});
    return AutomorphismPair{2, std::move(phi), std::move(psi), {}};
}

// the quadratic pair printed for n=2, b=10^12
inline AutomorphismPair large_printed_pair() {
    auto poly = [](const char* c1, const char* c2, const char* c20, const char* c11,
                   const char* c02) {
        std::vector<Term> ts;
        ts.push_back({Int(c1), {1, 0}});
        ts.push_back({Int(c2), {0, 1}});
        ts.push_back({Int(c20), {2, 0}});
        ts.push_back({Int(c11), {1, 1}});
        ts.push_back({Int(c02), {0, 2}});
        return Polynomial::from_terms(2, std::move(ts));
    };
    PolyMap phi(2, {poly("-2331187", "2246855", "14309229798", "-27583166484", "13292662918"),
                    poly("-6593429", "6354908", "40471627563", "-78015075354", "37596412283")});
    PolyMap psi(2, {poly("-6354908", "2246855", "-38201180309", "27012971828", "-4775380244"),
                    poly("-6593429", "2331187", "-39635004771", "28026863532", "-4954617036")});
    return AutomorphismPair{2, std::move(phi), std::move(psi), {}};
}

// the 4-variable pair printed alongside the worked program; fails the
// inverse check as printed
inline AutomorphismPair appendix_printed_pair() {
    PolyMap phi(4, {make_poly(4, {{-4, {0, 0, 0, 0}}, {-1, {0, 1, 0, 0}}, {-2, {0, 1, 0, 1}}, {-2, {0, 0, 1, 1}}}),
                    make_poly(4, {{1, {0, 0, 0, 1}}, {-1, {1, 0, 0, 0}}, {-1, {0, 0, 1, 0}}, {1, {0, 0, 0, 0}}}),
                    make_poly(4, {{4, {0, 0, 0, 0}}, {1, {0, 1, 0, 0}}, {2, {0, 1, 0, 1}}, {2, {0, 0, 1, 1}}, {-1, {0, 0, 0, 1}}}),
                    make_poly(4, {{1, {0, 0, 0, 0}}, {1, {0, 0, 0, 1}}, {-1, {1, 0, 0, 0}}, {-2, {0, 1, 0, 0}}, {-2, {0, 0, 1, 0}}})});
    PolyMap psi(4, {make_poly(4, {{1, {0, 0, 0, 0}}, {-2, {0, 1, 0, 0}}, {1, {0, 0, 0, 1}}, {-1, {1, 0, 0, 0}}, {-1, {0, 0, 1, 0}}}),
                    make_poly(4, {{-1, {1, 0, 0, 0}}, {-4, {0, 0, 0, 0}}, {-2, {1, 0, 0, 1}}, {2, {1, 1, 0, 0}}, {-2, {0, 0, 1, 1}}, {2, {0, 1, 1, 0}}}),
                    make_poly(4, {{1, {1, 0, 0, 0}}, {4, {0, 0, 0, 0}}, {-1, {0, 0, 0, 1}}, {1, {0, 1, 0, 0}}, {2, {1, 0, 0, 1}}, {-2, {1, 1, 0, 0}}, {2, {0, 0, 1, 1}}, {-2, {0, 1, 1, 0}}}),
                    make_poly(4, {{-1, {1, 0, 0, 0}}, {-1, {0, 0, 1, 0}}})});
    return AutomorphismPair{4, std::move(phi), std::move(psi), {}};
}

// what psi∘phi of the printed appendix pair actually expands to
inline PolyMap appendix_pair_psi_phi() {
    return PolyMap(4, {make_poly(4, {{1, {1, 0, 0, 0}}, {-2, {0, 1, 0, 0}}}),
                       make_poly(4, {{-2, {0, 1, 0, 1}}, {1, {0, 1, 0, 0}}}),
                       make_poly(4, {{2, {0, 1, 0, 1}}, {1, {0, 1, 0, 0}}, {1, {0, 0, 1, 0}}}),
                       make_poly(4, {{1, {0, 0, 0, 1}}})});
}

// worked mask components: h(g) = (g1, g1 g2), H(g) = (g1 + g2, g2),
// K(x) = (x1 + 2 x2 + 3 x3 + 4 x4, x1 - 6 x3)
inline PolyMap appendix_mask_h() {
    return PolyMap(2, {make_poly(2, {{1, {1, 0}}}), make_poly(2, {{1, {1, 1}}})});
}

inline AutomorphismPair appendix_mask_pair() {
    PolyMap fwd(2, {make_poly(2, {{1, {1, 0}}, {1, {0, 1}}}), make_poly(2, {{1, {0, 1}}})});
    PolyMap inv(2, {make_poly(2, {{1, {1, 0}}, {-1, {0, 1}}}), make_poly(2, {{1, {0, 1}}})});
    return AutomorphismPair{2, std::move(fwd), std::move(inv), {}};
}

inline PolyMap appendix_shuffle() {
    return PolyMap(4, {make_poly(4, {{1, {1, 0, 0, 0}}, {2, {0, 1, 0, 0}}, {3, {0, 0, 1, 0}}, {4, {0, 0, 0, 1}}}),
                       make_poly(4, {{1, {1, 0, 0, 0}}, {-6, {0, 0, 1, 0}}})});
}

// conjugation of f = (x1 + x2, x1 x2) by the first-example pair, expanded:
// the two 27-term step polynomials
inline Polynomial rewritten_sum_component() {
    return make_poly(2, {{512, {6, 0}}, {1536, {5, 1}}, {1920, {4, 2}}, {1280, {3, 3}},
                         {480, {2, 4}}, {96, {1, 5}},  {8, {0, 6}},    {640, {5, 0}},
                         {1664, {4, 1}}, {1728, {3, 2}}, {896, {2, 3}}, {232, {1, 4}},
                         {24, {0, 5}},  {200, {4, 0}},  {440, {3, 1}}, {362, {2, 2}},
                         {132, {1, 3}}, {18, {0, 4}},   {48, {3, 0}},  {72, {2, 1}},
                         {36, {1, 2}},  {6, {0, 3}},    {22, {2, 0}},  {25, {1, 1}},
                         {7, {0, 2}},   {-3, {1, 0}},   {-2, {0, 1}}});
}

inline Polynomial rewritten_product_component() {
    return make_poly(2, {{-1024, {6, 0}}, {-3072, {5, 1}}, {-3840, {4, 2}}, {-2560, {3, 3}},
                         {-960, {2, 4}},  {-192, {1, 5}},  {-16, {0, 6}},   {-1280, {5, 0}},
                         {-3328, {4, 1}}, {-3456, {3, 2}}, {-1792, {2, 3}}, {-464, {1, 4}},
                         {-48, {0, 5}},   {-400, {4, 0}},  {-880, {3, 1}},  {-724, {2, 2}},
                         {-264, {1, 3}},  {-36, {0, 4}},   {-80, {3, 0}},   {-120, {2, 1}},
                         {-60, {1, 2}},   {-10, {0, 3}},   {-34, {2, 0}},   {-39, {1, 1}},
                         {-11, {0, 2}},   {6, {1, 0}},     {4, {0, 1}}});
}

// the add/multiply payload: one step (x1 + x2, x1 x2), identity I/O
inline StraightLineProgram add_multiply_program() {
    StraightLineProgram p;
    p.arity = 2;
    p.state_dim = 2;
    p.out_dim = 2;
    p.input = PolyMap::identity(2);
    p.steps.push_back(PolyMap(2, {make_poly(2, {{1, {1, 0}}, {1, {0, 1}}}),
                                  make_poly(2, {{1, {1, 1}}})}));
    p.output = PolyMap::identity(2);
    return p;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

// --- random generators for property suites ---

inline Polynomial random_poly(Rng& rng, int nvars, int max_deg, int max_terms,
                              long long coeff_bound) {
    std::vector<Term> ts;
    int count = static_cast<int>(rng.below(static_cast<uint64_t>(max_terms))) + 1;
    for (int t = 0; t < count; ++t) {
        Term term;
        term.coeff = rng.big_in(-Int(coeff_bound), Int(coeff_bound));
        int64_t budget = max_deg;
        for (int v = 0; v < nvars; ++v) {
            int64_t e = rng.int_in(0, budget);
            term.exps.push_back(static_cast<uint32_t>(e));
            budget -= e;
        }
        ts.push_back(std::move(term));
    }
    return Polynomial::from_terms(nvars, std::move(ts));
}

inline std::vector<Int> random_point(Rng& rng, int nvars, long long bound) {
    std::vector<Int> p;
    for (int i = 0; i < nvars; ++i) p.push_back(rng.big_in(-Int(bound), Int(bound)));
    return p;
}

// random program over n state slots: identity input, 1-3 steps of degree <=
// max_deg, projection-like random linear output
inline StraightLineProgram random_program(Rng& rng, int n, int max_deg) {
    StraightLineProgram p;
    p.arity = n;
    p.state_dim = n;
    p.input = PolyMap::identity(n);
    int steps = static_cast<int>(rng.below(3)) + 1;
    for (int s = 0; s < steps; ++s) {
        std::vector<Polynomial> comps;
        for (int i = 0; i < n; ++i) comps.push_back(random_poly(rng, n, max_deg, 3, 4));
        p.steps.push_back(PolyMap(n, std::move(comps)));
    }
    int l = static_cast<int>(rng.below(static_cast<uint64_t>(n))) + 1;
    std::vector<Polynomial> out;
    for (int i = 0; i < l; ++i) {
        Polynomial comp = Polynomial::zero(n);
        for (int j = 0; j < n; ++j)
            comp = comp + Polynomial::variable(n, j).scaled(rng.big_in(-2, 2));
        out.push_back(std::move(comp));
    }
    p.out_dim = l;
    p.output = PolyMap(n, std::move(out));
    return p;
}

inline AutomorphismPair random_small_pair(int n, uint64_t seed) {
    TamePlan plan = plan_tame(n, 2, 1000, 40, 40, 1);
    Rng rng(seed);
    return gen_tame(plan, rng);
}

} // namespace fixtures
