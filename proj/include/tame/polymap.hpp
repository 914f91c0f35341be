#pragma once

#include <string>
#include <vector>

#include "tame/polynomial.hpp"

namespace tame {

// complexity metrics of a polynomial map, component-wise maxima plus the
// exact mean monomial count
struct Metrics {
    int64_t degree = 0;      // d(S)
    Int coeff_norm = 0;      // |S|
    int64_t monomials = 0;   // m(S)
    Rat avg_monomials = 0;   // mean monomial count over components
};

// polynomial map Z^domain -> Z^codomain; component i gives coordinate i of
// the image, each a polynomial in the domain variables
class PolyMap {
public:
    PolyMap() : domain_(0) {}
    PolyMap(int domain, std::vector<Polynomial> components);

    static PolyMap identity(int n);

    int domain() const { return domain_; }
    int codomain() const { return static_cast<int>(components_.size()); }
    const std::vector<Polynomial>& components() const { return components_; }
    const Polynomial& component(int i) const { return components_[static_cast<size_t>(i)]; }

    bool is_identity() const;
    bool operator==(const PolyMap& o) const;
    bool operator!=(const PolyMap& o) const { return !(*this == o); }

    std::vector<Int> evaluate(const std::vector<Int>& point) const;
    Metrics metrics() const;

    std::string to_text(const std::string& var_prefix = "x") const;

private:
    int domain_;
    std::vector<Polynomial> components_;
};

// (outer ∘ inner)(x) = outer(inner(x)); powers of inner components are
// memoized across outer components
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

// map keeping the first m of n coordinates
PolyMap projection(int n, int m);

// (f, g): Z^d -> Z^(cod f + cod g), shared domain
PolyMap stack(const PolyMap& top, const PolyMap& bottom);

// reinterpret components over a wider variable set (appended variables)
PolyMap embed_domain(const PolyMap& f, int new_domain);

} // namespace tame
