#include "tame/automorphism.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace tame {

namespace {

constexpr int kResampleCap = 10000;

// s*a + t*b = gcd(a, b) >= 0
void extended_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;  // truncated division keeps the identity exact
        Int r2 = r0 - q * r1;
        Int s2 = s0 - q * s1;
        Int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    g = r0; s = s0; t = t0;
}

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

IntMatrix perm_matrix(const std::vector<int>& perm) {
    IntMatrix m(static_cast<int>(perm.size()), static_cast<int>(perm.size()));
    for (size_t i = 0; i < perm.size(); ++i) m.at(static_cast<int>(i), perm[i]) = 1;
    return m;
}

int perm_sign(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (size_t j = i; !seen[j]; j = static_cast<size_t>(perm[j])) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

// base^exp <= bound without forming huge powers; base >= 1, exp >= 0
bool pow_leq(const Int& base, const Int& exp, const Int& bound) {
    if (bound < 1) return false;
    if (base <= 1 || exp == 0) return Int(1) <= bound;
    Int acc = 1;
    for (Int i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > bound) return false;
    }
    return true;
}

// largest x >= 1 with x^exp <= bound, or 0 if even 1 fails
Int root_or_one(const Int& bound, const Int& exp) {
    if (bound < 1) return 0;
    require(exp >= 1, ErrorKind::internal, "root exponent must be positive");
    if (bound == 1) return 1;
    if (exp > floor_log2(bound) + 1) return 1;
    return iroot_floor(bound, static_cast<uint64_t>(exp));
}

// floor(bound / base^exp), or 0 once the power exceeds the bound
Int shrink_by_power(Int bound, const Int& base, const Int& exp) {
    if (base <= 1) return bound;
    for (Int i = 0; i < exp && bound >= 1; ++i) bound /= base;
    return bound;
}

} // namespace

UnimodularMatrix unimodular_2x2_from_row(const Int& x11, const Int& x12, int det_sign) {
    require(det_sign == 1 || det_sign == -1, ErrorKind::usage, "determinant must be +-1");
    Int g, s, t;
    extended_gcd(x11, x12, g, s, t);
    require(g == 1, ErrorKind::usage, "top row entries must be coprime");
    // particular solution of x11*y - x12*x = det_sign
    Int y0 = s * det_sign;
    Int x0 = -t * det_sign;
    // the solution family is (y0 + j*x12, x0 + j*x11); scan j near both
    // per-coordinate minimizers for the minimal max-abs pair
    std::set<Int> js = {0};
    if (x12 != 0) {
        Int c = floor_div(-y0, x12);
        for (int d = -2; d <= 2; ++d) js.insert(c + d);
    }
    if (x11 != 0) {
        Int c = floor_div(-x0, x11);
        for (int d = -2; d <= 2; ++d) js.insert(c + d);
    }
    bool have = false;
    Int best_y = 0, best_x = 0, best_norm = 0;
    for (const Int& j : js) {
        Int y = y0 + j * x12;
        Int x = x0 + j * x11;
        Int norm = std::max(abs_val(y), abs_val(x));
        auto better = [&]() {
            if (!have) return true;
            if (norm != best_norm) return norm < best_norm;
            if ((y >= 0) != (best_y >= 0)) return y >= 0;
            return x >= 0 && best_x < 0;
        };
        if (better()) {
            best_y = y; best_x = x; best_norm = norm;
            have = true;
        }
    }
    UnimodularMatrix um;
    um.forward = IntMatrix(2, 2);
    um.forward.at(0, 0) = x11; um.forward.at(0, 1) = x12;
    um.forward.at(1, 0) = best_x; um.forward.at(1, 1) = best_y;
    um.det = det_sign;
    // adjugate over determinant; 1/det = det for det = +-1
    um.inverse = IntMatrix(2, 2);
    um.inverse.at(0, 0) = best_y * det_sign;  um.inverse.at(0, 1) = -x12 * det_sign;
    um.inverse.at(1, 0) = -best_x * det_sign; um.inverse.at(1, 1) = x11 * det_sign;
    require((um.forward * um.inverse).is_identity(), ErrorKind::internal, "2x2 inverse check failed");
    return um;
}

UnimodularMatrix gen_unimodular_2x2(const Int& beta, int det_sign, Rng& rng) {
    require(beta >= 1, ErrorKind::usage, "coefficient bound must be >= 1");
    for (int tries = 0; tries < kResampleCap; ++tries) {
        Int x11 = rng.big_in(-beta, beta);
        Int x12 = rng.big_in(-beta, beta);
        Int g, s, t;
        extended_gcd(x11, x12, g, s, t);
        if (g != 1) continue;
        UnimodularMatrix um = unimodular_2x2_from_row(x11, x12, det_sign);
        require(um.forward.max_abs() <= beta && um.inverse.max_abs() <= beta,
                ErrorKind::internal, "minimal Bezout solution exceeded the bound");
        return um;
    }
    fail(ErrorKind::internal, "could not sample a coprime top row");
}

UnimodularMatrix gen_signed_permutation(int n, Rng& rng) {
    std::vector<int> perm = rng.permutation(n);
    UnimodularMatrix um;
    um.forward = IntMatrix(n, n);
    um.inverse = IntMatrix(n, n);
    Int det = perm_sign(perm);
    for (int i = 0; i < n; ++i) {
        int s = rng.sign();
        um.forward.at(i, perm[static_cast<size_t>(i)]) = s;
        um.inverse.at(perm[static_cast<size_t>(i)], i) = s;
        det *= s;
    }
    um.det = det;
    return um;
}

UnimodularMatrix gen_block_diagonal(int n, int alpha, const Int& beta, Rng& rng) {
    require(2 * alpha <= n, ErrorKind::usage, "block count exceeds the dimension");
    require(alpha == 0 || beta >= 2, ErrorKind::usage,
            "all-nonzero unimodular 2x2 blocks need a coefficient bound >= 2");
    UnimodularMatrix um;
    um.forward = IntMatrix(n, n);
    um.inverse = IntMatrix(n, n);
    um.det = 1;
    std::set<std::tuple<Int, Int, Int, Int>> used;
    for (int b = 0; b < alpha; ++b) {
        UnimodularMatrix block;
        bool found = false;
        for (int tries = 0; tries < kResampleCap; ++tries) {
            block = gen_unimodular_2x2(beta, rng.sign(), rng);
            bool nonzero = true;
            for (int i = 0; i < 2 && nonzero; ++i)
                for (int j = 0; j < 2; ++j)
                    if (block.forward.at(i, j) == 0) { nonzero = false; break; }
            if (!nonzero) continue;
            auto key = std::make_tuple(block.forward.at(0, 0), block.forward.at(0, 1),
                                       block.forward.at(1, 0), block.forward.at(1, 1));
            if (used.count(key)) continue;
            used.insert(key);
            found = true;
            break;
        }
        require(found, ErrorKind::internal, "could not sample enough distinct blocks");
        int base = 2 * b;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                um.forward.at(base + i, base + j) = block.forward.at(i, j);
                um.inverse.at(base + i, base + j) = block.inverse.at(i, j);
            }
        um.det *= block.det;
    }
    for (int i = 2 * alpha; i < n; ++i) {
        int s = rng.sign();
        um.forward.at(i, i) = s;
        um.inverse.at(i, i) = s;
        um.det *= s;
    }
    return um;
}

UnimodularMatrix gen_unimodular(int n, const Int& beta, const Rat& mu_bar, Rng& rng) {
    require(beta >= 1, ErrorKind::usage, "coefficient bound must be >= 1");
    require(mu_bar >= 1 && mu_bar < 2, ErrorKind::usage, "mean monomial budget must lie in [1, 2)");
    Rat expected = Rat(n) * (mu_bar - 1) / 2;
    Int whole = rat_floor(expected);
    Rat frac = expected - Rat(whole);
    Int alpha_big = whole + (rng.bernoulli(frac) ? 1 : 0);
    int alpha = static_cast<int>(alpha_big);
    alpha = std::min(alpha, n / 2);
    if (beta < 2) alpha = 0;
    UnimodularMatrix delta = gen_block_diagonal(n, alpha, beta, rng);
    std::vector<int> p1 = rng.permutation(n);
    std::vector<int> p2 = rng.permutation(n);
    IntMatrix m1 = perm_matrix(p1), m2 = perm_matrix(p2);
    UnimodularMatrix um;
    um.forward = m1 * delta.forward * m2;
    // (P1 D P2)^-1 = P2^T D^-1 P1^T; a permutation's transpose is its inverse
    IntMatrix m1t(n, n), m2t(n, n);
    for (int i = 0; i < n; ++i) {
        m1t.at(p1[static_cast<size_t>(i)], i) = 1;
        m2t.at(p2[static_cast<size_t>(i)], i) = 1;
    }
    um.inverse = m2t * delta.inverse * m1t;
    um.det = delta.det * perm_sign(p1) * perm_sign(p2);
    require((um.forward * um.inverse).is_identity(), ErrorKind::internal, "unimodular inverse check failed");
    return um;
}

AffineMap make_affine(const UnimodularMatrix& m, std::vector<Int> offset) {
    int n = m.forward.rows();
    if (offset.empty()) offset.assign(static_cast<size_t>(n), Int(0));
    require(static_cast<int>(offset.size()) == n, ErrorKind::usage, "offset length mismatch");
    AffineMap a;
    a.matrix = m.forward;
    a.matrix_inv = m.inverse;
    a.offset = offset;
    std::vector<Int> mc = m.inverse.apply(offset);
    a.offset_inv.reserve(static_cast<size_t>(n));
    for (Int& v : mc) a.offset_inv.push_back(-v);
    a.det = m.det;
    a.forward = affine_to_polymap(a.matrix, a.offset);
    a.inverse = affine_to_polymap(a.matrix_inv, a.offset_inv);
    return a;
}

AffineMap gen_affine(const AffineParams& params, Rng& rng) {
    const int n = params.n;
    const Int& beta = params.coeff_bound;
    require(n >= 1, ErrorKind::usage, "dimension must be positive");
    require(beta >= 1, ErrorKind::usage, "coefficient bound must be >= 1");
    require(params.max_monomials >= 1, ErrorKind::usage, "monomial budget must be >= 1");

    // an offset adds one constant monomial per row, so it is charged
    // against the monomial budget; a 1-monomial row cannot carry one
    bool use_offset = params.with_offset && params.max_monomials >= 2;
    int64_t matrix_budget = use_offset ? params.max_monomials - 1 : params.max_monomials;

    UnimodularMatrix m;
    if (matrix_budget == 1) {
        m = gen_signed_permutation(n, rng);
    } else {
        int64_t nu = floor_log2(Int(matrix_budget));
        auto factor_bound = [&](int64_t) {
            Int ratio = beta / params.max_monomials;
            return ratio < 1 ? Int(1) : std::max(Int(1), iroot_floor(ratio, static_cast<uint64_t>(nu)));
        };
        // shrink the factor count until the product bound 2^(nu-1) * bf^nu
        // provably stays within beta (only binding when bf was rounded up to 1)
        Int bf = factor_bound(nu);
        while (nu > 1 && (Int(1) << static_cast<unsigned>(nu - 1)) * ipow(bf, static_cast<uint64_t>(nu)) > beta) {
            --nu;
            bf = factor_bound(nu);
        }
        // per-factor mean budget mu_bar^(1/nu) as a fixed-point rational root
        Rat mf = 1;
        if (params.avg_monomials > 1) {
            const int64_t scale_bits = 20;
            Int scale = Int(1) << scale_bits;
            Int num = boost::multiprecision::numerator(params.avg_monomials);
            Int den = boost::multiprecision::denominator(params.avg_monomials);
            Int scaled = iroot_floor(num * ipow(scale, static_cast<uint64_t>(nu)) / den,
                                     static_cast<uint64_t>(nu));
            mf = Rat(scaled, scale);
            if (mf < 1) mf = 1;
            Rat cap = Rat(2) - Rat(1, scale);
            if (mf > cap) mf = cap;
        }
        bool first = true;
        for (int64_t i = 0; i < nu; ++i) {
            UnimodularMatrix f = gen_unimodular(n, bf, mf, rng);
            if (first) {
                m = f;
                first = false;
            } else {
                m.forward = m.forward * f.forward;
                m.inverse = f.inverse * m.inverse;
                m.det *= f.det;
            }
        }
        require(m.forward.max_abs() <= beta && m.inverse.max_abs() <= beta,
                ErrorKind::internal, "affine factor product exceeded the coefficient bound");
        require(m.forward.max_row_nonzeros() <= matrix_budget,
                ErrorKind::internal, "affine factor product exceeded the monomial budget");
    }

    std::vector<Int> offset;
    if (use_offset) {
        for (int tries = 0; tries < 64; ++tries) {
            std::vector<Int> c(static_cast<size_t>(n));
            for (Int& v : c) v = rng.big_in(-beta, beta);
            std::vector<Int> ci = m.inverse.apply(c);
            Int norm = 0;
            for (const Int& v : ci) norm = std::max(norm, abs_val(v));
            if (norm <= beta) {
                offset = std::move(c);
                break;
            }
        }
        if (offset.empty()) offset.assign(static_cast<size_t>(n), Int(0));
    }
    return make_affine(m, std::move(offset));
}

TriangularMap gen_segmented_triangular(const TriangularParams& params, Rng& rng) {
    const int n = params.n;
    require(n >= 2, ErrorKind::usage, "triangular maps need at least 2 variables");
    require(params.coeff_bound >= 1, ErrorKind::usage, "coefficient bound must be >= 1");
    require(params.degree >= 2, ErrorKind::usage, "degree budget must be >= 2");
    require(params.max_monomials >= 2, ErrorKind::usage, "monomial budget must be >= 2");
    require(params.avg_monomials > 1 && params.avg_monomials <= Rat(params.max_monomials),
            ErrorKind::usage, "mean monomial budget must lie in (1, mu]");

    TriangularMap t;
    t.params = params;
    t.e1 = params.offset_indices;
    if (t.e1.empty())
        for (int i = 0; i < n / 2; ++i) t.e1.push_back(i);
    std::vector<bool> in_e1(static_cast<size_t>(n), false);
    for (int i : t.e1) {
        require(i >= 0 && i < n, ErrorKind::usage, "partition index out of range");
        require(!in_e1[static_cast<size_t>(i)], ErrorKind::usage, "duplicate partition index");
        in_e1[static_cast<size_t>(i)] = true;
    }
    for (int i = 0; i < n; ++i)
        if (!in_e1[static_cast<size_t>(i)]) t.e2.push_back(i);
    require(!t.e1.empty() && !t.e2.empty(), ErrorKind::usage, "both partition classes must be nonempty");

    int64_t mu_cap = std::min<int64_t>(params.max_monomials - 1,
                                       static_cast<int64_t>(rat_floor(2 * params.avg_monomials - 1)));
    require(mu_cap >= 1, ErrorKind::internal, "empty monomial count range");

    auto draw_offset_poly = [&]() {
        for (int tries = 0; tries < kResampleCap; ++tries) {
            int64_t count = rng.int_in(1, mu_cap);
            std::vector<Term> raw;
            for (int64_t j = 0; j < 2 * count; ++j) {
                int64_t deg = rng.int_in(1, params.degree);
                Monomial e(static_cast<size_t>(n), 0);
                for (int64_t p = 0; p < deg; ++p) {
                    int v = t.e2[static_cast<size_t>(rng.below(t.e2.size()))];
                    ++e[static_cast<size_t>(v)];
                }
                raw.push_back({rng.nonzero_in(params.coeff_bound), std::move(e)});
            }
            Polynomial f = Polynomial::from_terms(n, std::move(raw))
                               .truncated(params.max_monomials - 1);
            if (f.coeff_norm() > params.coeff_bound) continue;  // merged duplicates can overshoot
            if (f.degree() < 2) continue;  // nonlinear required
            if (mu_cap >= 2) {
                // nonhomogeneous required whenever the cap allows >= 2 terms
                bool mixed_degrees = false;
                uint64_t d0 = total_degree(f.terms().front().exps);
                for (const Term& term : f.terms())
                    if (total_degree(term.exps) != d0) { mixed_degrees = true; break; }
                if (!mixed_degrees) continue;
            }
            return f;
        }
        fail(ErrorKind::internal, "could not sample a usable triangular offset polynomial");
    };

    std::vector<Polynomial> fwd(static_cast<size_t>(n));
    std::vector<Polynomial> inv(static_cast<size_t>(n));
    std::vector<Int> tail(static_cast<size_t>(n), Int(0));
    for (int i : t.e2) {
        if (params.constant_tail) tail[static_cast<size_t>(i)] = rng.big_in(-params.coeff_bound, params.coeff_bound);
        fwd[static_cast<size_t>(i)] =
            Polynomial::variable(n, i) + Polynomial::constant(n, tail[static_cast<size_t>(i)]);
        inv[static_cast<size_t>(i)] =
            Polynomial::variable(n, i) - Polynomial::constant(n, tail[static_cast<size_t>(i)]);
    }
    std::vector<Polynomial> shifted;  // x_j -> x_j - c_j on E2, used to invert E1 components
    if (params.constant_tail) {
        shifted.reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            shifted.push_back(Polynomial::variable(n, j) -
                              Polynomial::constant(n, tail[static_cast<size_t>(j)]));
    }
    for (int i : t.e1) {
        Polynomial f = draw_offset_poly();
        t.f.push_back(f);
        fwd[static_cast<size_t>(i)] = Polynomial::variable(n, i) + f;
        inv[static_cast<size_t>(i)] = params.constant_tail
                                          ? Polynomial::variable(n, i) - f.substitute(shifted)
                                          : Polynomial::variable(n, i) - f;
    }
    t.forward = PolyMap(n, std::move(fwd));
    t.inverse = PolyMap(n, std::move(inv));
    return t;
}

PolyMap invert_triangular(const PolyMap& t) {
    int n = t.domain();
    require(t.codomain() == n, ErrorKind::usage, "triangular map must be square");
    std::vector<Polynomial> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        g[static_cast<size_t>(i)] = t.component(i) - Polynomial::variable(n, i);
        for (int j = 0; j <= i; ++j)
            require(!g[static_cast<size_t>(i)].uses_variable(j), ErrorKind::usage,
                    "component " + std::to_string(i + 1) + " is not triangular");
    }
    std::vector<Polynomial> inv(static_cast<size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        std::vector<Polynomial> args;
        args.reserve(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            args.push_back(j <= i ? Polynomial::variable(n, j) : inv[static_cast<size_t>(j)]);
        inv[static_cast<size_t>(i)] =
            Polynomial::variable(n, i) - g[static_cast<size_t>(i)].substitute(args);
    }
    return PolyMap(n, std::move(inv));
}

TamePlan plan_tame(int n, int64_t d, const Int& b, int64_t m, const Rat& m_bar, int64_t k,
                   bool offsets) {
    require(n >= 2, ErrorKind::usage, "dimension must be >= 2");
    require(k >= 1, ErrorKind::usage, "stage count must be >= 1");
    require(d >= 2, ErrorKind::usage, "degree budget must be >= 2");
    require(b >= 1 && m >= 1 && m_bar >= 1, ErrorKind::usage, "budgets must be >= 1");

    TamePlan plan;
    plan.n = n;
    plan.stages = k;
    plan.degree_budget = d;
    plan.coeff_budget = b;
    plan.monomial_budget = m;
    plan.avg_budget = m_bar;

    // stage degrees: as-equal-as-possible factorization of the largest
    // product <= d into k factors >= 2
    if (!pow_leq(2, Int(k), Int(d)))
        fail(ErrorKind::infeasible,
             "stage-degree budget violated: " + std::to_string(k) +
                 " stages of degree >= 2 need a degree budget >= 2^" + std::to_string(k));
    std::vector<int64_t> best, cur;
    Int best_prod = 0;
    int64_t best_spread = 0;
    auto consider = [&](const std::vector<int64_t>& seq, const Int& prod) {
        int64_t spread = seq.back() - seq.front();
        if (prod > best_prod || (prod == best_prod && spread < best_spread) ||
            (prod == best_prod && spread == best_spread && seq < best)) {
            best = seq;
            best_prod = prod;
            best_spread = spread;
        }
    };
    auto dfs = [&](auto&& self, int64_t depth, int64_t lo, const Int& prod) -> void {
        if (depth == k - 1) {
            // the last factor is pushed to the cap; smaller choices only
            // shrink the product
            Int cap = Int(d) / prod;
            if (cap >= lo) {
                cur.push_back(static_cast<int64_t>(cap));
                consider(cur, prod * cap);
                cur.pop_back();
            }
            return;
        }
        for (int64_t delta = lo;; ++delta) {
            Int next = prod * delta;
            // remaining factors are >= delta each
            if (!pow_leq(Int(delta), Int(k - depth - 1), Int(d) / next)) break;
            cur.push_back(delta);
            self(self, depth + 1, delta, next);
            cur.pop_back();
        }
    };
    dfs(dfs, 0, 2, Int(1));
    require(!best.empty(), ErrorKind::internal, "stage degree search failed");
    plan.stage_degrees = best;

    // Sigma = 1 + sum of the first k-1 running products; Delta(k) = full product
    Int running = 1;
    plan.sigma = 1;
    for (int64_t i = 0; i < k; ++i) {
        running *= plan.stage_degrees[static_cast<size_t>(i)];
        if (i < k - 1) plan.sigma += running;
    }
    plan.delta_k = running;
    const Int& sigma = plan.sigma;
    const Int& delta_k = plan.delta_k;

    // joint (mu_a, mu_t): the monomial inequality must hold, and the
    // coefficient inequality must admit beta_a = beta_t = 1
    auto mu_t_limit = [&](int64_t mu_a, const Int& budget) -> Int {
        // largest mu_t with (mu_a mu_t)^Sigma mu_a^Delta(k) <= budget
        Int rest = shrink_by_power(budget, Int(mu_a), delta_k);
        return root_or_one(rest, sigma) / mu_a;
    };
    bool m_alone_feasible = false;
    int64_t mu_a = 0, mu_t = 0;
    // both caps are nonincreasing in mu_a, so the first failure is final
    for (int64_t a = 1;; ++a) {
        Int cap_m = mu_t_limit(a, Int(m));
        if (cap_m < 2) break;
        m_alone_feasible = true;
        Int cap_b = mu_t_limit(a, b);
        if (cap_b < 2) break;
        int64_t t = static_cast<int64_t>(std::min(cap_m, cap_b));
        auto key = [](int64_t x, int64_t y) { return std::make_tuple(std::min(x, y), x + y, y); };
        if (mu_t == 0 || key(a, t) > key(mu_a, mu_t)) {
            mu_a = a;
            mu_t = t;
        }
    }
    if (mu_t == 0) {
        if (!m_alone_feasible)
            fail(ErrorKind::infeasible,
                 "monomial budget inequality violated: no mu_t >= 2 satisfies "
                 "(mu_a*mu_t)^Sigma * mu_a^Delta(k) <= m");
        fail(ErrorKind::infeasible,
             "coefficient budget inequality violated: no beta_t, beta_a >= 1 satisfy "
             "(beta_a*mu_a*beta_t*mu_t)^Sigma * (beta_a*mu_a)^Delta(k) <= b");
    }
    plan.mu_a = mu_a;
    plan.mu_t = mu_t;

    // betas against the coefficient inequality
    auto beta_t_limit = [&](const Int& beta_a) -> Int {
        Int base_a = beta_a * mu_a;
        Int rest = shrink_by_power(b, base_a, delta_k);
        return root_or_one(rest, sigma) / (base_a * mu_t);
    };
    if (mu_a == 1) {
        // a signed permutation spends no coefficient budget
        plan.beta_a = 1;
        plan.beta_t = beta_t_limit(1);
    } else {
        Int best_a = 0, best_t = 0;
        for (Int a = 1;; ++a) {
            Int t = beta_t_limit(a);
            if (t < 1) break;
            auto better = [&]() {
                if (best_a == 0) return true;
                Int mn = std::min(a, t), bmn = std::min(best_a, best_t);
                if (mn != bmn) return mn > bmn;
                if (a + t != best_a + best_t) return a + t > best_a + best_t;
                return t > best_t;
            };
            if (better()) { best_a = a; best_t = t; }
        }
        require(best_a >= 1, ErrorKind::internal, "beta search lost a known-feasible point");
        plan.beta_a = best_a;
        plan.beta_t = best_t;
    }
    require(plan.beta_t >= 1, ErrorKind::internal, "beta search lost a known-feasible point");

    // mean budgets in quarter steps; mu_bar_a = 1 iff the affine part is a
    // signed permutation
    // (a*t)^Sigma * a^Delta(k) <= m_bar, accumulated with early abort
    auto mbar_ok = [&](const Rat& a, const Rat& t) {
        Rat acc = 1;
        Rat step = a * t;
        for (Int i = 0; i < sigma; ++i) {
            acc *= step;
            if (acc > m_bar) return false;
        }
        if (a > 1)
            for (Int i = 0; i < delta_k; ++i) {
                acc *= a;
                if (acc > m_bar) return false;
            }
        return acc <= m_bar;
    };
    std::vector<Rat> a_candidates;
    if (mu_a == 1) a_candidates.push_back(Rat(1));
    else for (int q = 5; q <= 7; ++q) a_candidates.push_back(Rat(q, 4));
    Rat best_a_bar = 0, best_t_bar = 0;
    for (const Rat& a : a_candidates) {
        // binary search the largest quarter q/4 in [5/4, mu_t] passing the inequality
        int64_t lo = 5, hi = 4 * mu_t, found = 0;
        while (lo <= hi) {
            int64_t mid = lo + (hi - lo) / 2;
            if (mbar_ok(a, Rat(mid, 4))) {
                found = mid;
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
        if (found == 0) continue;
        Rat t = Rat(found, 4);
        auto better = [&]() {
            if (best_t_bar == 0) return true;
            Rat mn = std::min(a, t), bmn = std::min(best_a_bar, best_t_bar);
            if (mn != bmn) return mn > bmn;
            if (a + t != best_a_bar + best_t_bar) return a + t > best_a_bar + best_t_bar;
            return t > best_t_bar;
        };
        if (better()) { best_a_bar = a; best_t_bar = t; }
    }
    if (best_t_bar == 0)
        fail(ErrorKind::infeasible,
             "mean-monomial budget inequality violated: no mu_bar_t > 1 satisfies "
             "(mu_bar_a*mu_bar_t)^Sigma * mu_bar_a^Delta(k) <= m_bar");
    plan.mubar_a = best_a_bar;
    plan.mubar_t = best_t_bar;
    plan.offsets = offsets && mu_a >= 2;
    return plan;
}

AutomorphismPair gen_tame(const TamePlan& plan, Rng& rng) {
    AutomorphismPair pair;
    pair.n = plan.n;
    AffineParams ap{plan.n, plan.beta_a, plan.mu_a, plan.mubar_a, plan.offsets};
    auto add_affine = [&]() {
        AffineMap a = gen_affine(ap, rng);
        pair.factors.push_back({FactorKind::affine, a.forward, a.inverse});
    };
    add_affine();
    for (int64_t s = 0; s < plan.stages; ++s) {
        TriangularParams tp;
        tp.n = plan.n;
        tp.coeff_bound = plan.beta_t;
        tp.degree = plan.stage_degrees[static_cast<size_t>(s)];
        tp.max_monomials = plan.mu_t;
        tp.avg_monomials = plan.mubar_t;
        TriangularMap t = gen_segmented_triangular(tp, rng);
        pair.factors.push_back({FactorKind::triangular, t.forward, t.inverse});
        add_affine();
    }
    pair.phi = pair.factors.front().forward;
    for (size_t i = 1; i < pair.factors.size(); ++i)
        pair.phi = compose(pair.phi, pair.factors[i].forward);
    pair.psi = pair.factors.back().inverse;
    for (size_t i = pair.factors.size() - 1; i-- > 0;)
        pair.psi = compose(pair.psi, pair.factors[i].inverse);

    PairCheck check = verify_inverse_pair(pair.phi, pair.psi);
    require(check.ok, ErrorKind::internal, "generated pair failed inversion: " + check.detail);
    for (const PolyMap* side : {&pair.phi, &pair.psi}) {
        Metrics met = side->metrics();
        require(met.degree <= plan.degree_budget, ErrorKind::internal, "degree bound violated by construction");
        require(met.coeff_norm <= plan.coeff_budget, ErrorKind::internal, "coefficient bound violated by construction");
        require(met.monomials <= plan.monomial_budget, ErrorKind::internal, "monomial bound violated by construction");
    }
    return pair;
}

PairCheck verify_inverse_pair(const PolyMap& phi, const PolyMap& psi) {
    require(phi.domain() == psi.domain() && phi.codomain() == psi.codomain() &&
                phi.domain() == phi.codomain(),
            ErrorKind::usage, "inverse verification needs square maps of equal dimension");
    PairCheck r;
    int n = phi.domain();
    for (int dir = 0; dir < 2; ++dir) {
        PolyMap c = dir == 0 ? compose(psi, phi) : compose(phi, psi);
        for (int i = 0; i < n; ++i) {
            if (c.component(i) != Polynomial::variable(n, i)) {
                r.ok = false;
                r.detail = std::string(dir == 0 ? "psi∘phi" : "phi∘psi") + " component " +
                           std::to_string(i + 1) + " = " + c.component(i).to_text();
                return r;
            }
        }
    }
    r.ok = true;
    return r;
}

} // namespace tame
