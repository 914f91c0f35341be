#include "tame/polymap.hpp"

#include <algorithm>

namespace tame {

PolyMap::PolyMap(int domain, std::vector<Polynomial> components)
    : domain_(domain), components_(std::move(components)) {
    for (const Polynomial& c : components_)
        require(c.num_vars() == domain_, ErrorKind::internal,
                "component variable count does not match the map domain");
}

PolyMap PolyMap::identity(int n) {
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) comps.push_back(Polynomial::variable(n, i));
    return PolyMap(n, std::move(comps));
}

bool PolyMap::is_identity() const {
    if (codomain() != domain_) return false;
    for (int i = 0; i < domain_; ++i)
        if (components_[static_cast<size_t>(i)] != Polynomial::variable(domain_, i)) return false;
    return true;
}

bool PolyMap::operator==(const PolyMap& o) const {
    return domain_ == o.domain_ && components_ == o.components_;
}

std::vector<Int> PolyMap::evaluate(const std::vector<Int>& point) const {
    require(static_cast<int>(point.size()) == domain_, ErrorKind::usage,
            "point arity does not match the map domain");
    std::vector<Int> out;
    out.reserve(components_.size());
    for (const Polynomial& c : components_) out.push_back(c.evaluate(point));
    return out;
}

Metrics PolyMap::metrics() const {
    Metrics m;
    Int term_sum = 0;
    for (const Polynomial& c : components_) {
        m.degree = std::max(m.degree, c.degree());
        m.coeff_norm = std::max(m.coeff_norm, c.coeff_norm());
        m.monomials = std::max(m.monomials, c.term_count());
        term_sum += c.term_count();
    }
    m.avg_monomials = components_.empty() ? Rat(0) : Rat(term_sum, Int(components_.size()));
    return m;
}

std::string PolyMap::to_text(const std::string& var_prefix) const {
    std::string out = "(";
    for (size_t i = 0; i < components_.size(); ++i) {
        if (i) out += ", ";
        out += components_[i].to_text(var_prefix);
    }
    return out + ")";
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
    require(outer.domain() == inner.codomain(), ErrorKind::usage,
            "composition dimension mismatch");
    int inner_vars = inner.domain();
    // powers of inner components, shared across all outer components
    std::vector<std::vector<Polynomial>> powers(static_cast<size_t>(outer.domain()));
    for (size_t v = 0; v < powers.size(); ++v)
        powers[v].push_back(Polynomial::constant(inner_vars, 1));
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<size_t>(outer.codomain()));
    for (const Polynomial& oc : outer.components()) {
        Polynomial sum = Polynomial::zero(inner_vars);
        for (const Term& t : oc.terms()) {
            Polynomial prod = Polynomial::constant(inner_vars, t.coeff);
            for (size_t v = 0; v < t.exps.size(); ++v) {
                uint32_t e = t.exps[v];
                if (e == 0) continue;
                auto& cache = powers[v];
                while (cache.size() <= e)
                    cache.push_back(cache.back() * inner.component(static_cast<int>(v)));
                prod = prod * cache[e];
            }
            sum = sum + prod;
        }
        comps.push_back(std::move(sum));
    }
    return PolyMap(inner.domain(), std::move(comps));
}

PolyMap projection(int n, int m) {
    require(m <= n, ErrorKind::internal, "projection onto more coordinates than exist");
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) comps.push_back(Polynomial::variable(n, i));
    return PolyMap(n, std::move(comps));
}

PolyMap stack(const PolyMap& top, const PolyMap& bottom) {
    require(top.domain() == bottom.domain(), ErrorKind::internal,
            "stacking maps with different domains");
    std::vector<Polynomial> comps = top.components();
    comps.insert(comps.end(), bottom.components().begin(), bottom.components().end());
    return PolyMap(top.domain(), std::move(comps));
}

PolyMap embed_domain(const PolyMap& f, int new_domain) {
    require(new_domain >= f.domain(), ErrorKind::internal, "embedding into a smaller domain");
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<size_t>(f.codomain()));
    for (const Polynomial& c : f.components()) {
        std::vector<Term> raw = c.terms();
        for (Term& t : raw) t.exps.resize(static_cast<size_t>(new_domain), 0);
        comps.push_back(Polynomial::from_terms(new_domain, std::move(raw)));
    }
    return PolyMap(new_domain, std::move(comps));
}

} // namespace tame
