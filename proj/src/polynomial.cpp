#include "tame/polynomial.hpp"

#include <algorithm>

namespace tame {

bool monomial_before(const Monomial& a, const Monomial& b) {
    uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

Polynomial Polynomial::from_terms(int num_vars, std::vector<Term> raw) {
    for (const Term& t : raw)
        require(static_cast<int>(t.exps.size()) == num_vars, ErrorKind::internal,
                "term arity does not match the variable count");
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return monomial_before(a.exps, b.exps); });
    Polynomial p(num_vars);
    for (Term& t : raw) {
        if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
            p.terms_.back().coeff += t.coeff;
            if (p.terms_.back().coeff == 0) p.terms_.pop_back();
        } else if (t.coeff != 0) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

Polynomial Polynomial::constant(int num_vars, const Int& c) {
    Polynomial p(num_vars);
    if (c != 0) p.terms_.push_back({c, Monomial(static_cast<size_t>(num_vars), 0)});
    return p;
}

Polynomial Polynomial::variable(int num_vars, int index) {
    require(index >= 0 && index < num_vars, ErrorKind::internal, "variable index out of range");
    Monomial e(static_cast<size_t>(num_vars), 0);
    e[static_cast<size_t>(index)] = 1;
    Polynomial p(num_vars);
    p.terms_.push_back({Int(1), std::move(e)});
    return p;
}

Polynomial Polynomial::monomial(int num_vars, const Int& c, Monomial e) {
    return from_terms(num_vars, {{c, std::move(e)}});
}

int64_t Polynomial::degree() const {
    if (terms_.empty()) return 0;
    // canonical order puts a maximal-degree term first
    return static_cast<int64_t>(total_degree(terms_.front().exps));
}

Int Polynomial::coeff_norm() const {
    Int m = 0;
    for (const Term& t : terms_) m = std::max(m, abs_val(t.coeff));
    return m;
}

Int Polynomial::constant_term() const {
    if (terms_.empty()) return 0;
    const Term& last = terms_.back();
    return total_degree(last.exps) == 0 ? last.coeff : Int(0);
}

Int Polynomial::coeff_of(const Monomial& e) const {
    for (const Term& t : terms_)
        if (t.exps == e) return t.coeff;
    return 0;
}

bool Polynomial::uses_variable(int index) const {
    for (const Term& t : terms_)
        if (t.exps[static_cast<size_t>(index)] > 0) return true;
    return false;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(num_vars_);
    r.terms_ = terms_;
    for (Term& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require(num_vars_ == o.num_vars_, ErrorKind::internal, "adding polynomials over different variables");
    // merge two canonical term lists
    Polynomial r(num_vars_);
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() ||
            (i < terms_.size() && monomial_before(terms_[i].exps, o.terms_[j].exps))) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || monomial_before(o.terms_[j].exps, terms_[i].exps)) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Int c = terms_[i].coeff + o.terms_[j].coeff;
            if (c != 0) r.terms_.push_back({std::move(c), terms_[i].exps});
            ++i;
            ++j;
        }
    }
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require(num_vars_ == o.num_vars_, ErrorKind::internal, "multiplying polynomials over different variables");
    std::vector<Term> raw;
    raw.reserve(terms_.size() * o.terms_.size());
    for (const Term& a : terms_) {
        for (const Term& b : o.terms_) {
            Monomial e(a.exps);
            for (size_t v = 0; v < e.size(); ++v) e[v] += b.exps[v];
            raw.push_back({a.coeff * b.coeff, std::move(e)});
        }
    }
    return from_terms(num_vars_, std::move(raw));
}

Polynomial Polynomial::scaled(const Int& c) const {
    if (c == 0) return zero(num_vars_);
    Polynomial r(num_vars_);
    r.terms_ = terms_;
    for (Term& t : r.terms_) t.coeff *= c;
    return r;
}

Polynomial Polynomial::pow(uint64_t e) const {
    Polynomial r = constant(num_vars_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (num_vars_ != o.num_vars_ || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].exps != o.terms_[i].exps) return false;
    return true;
}

Int Polynomial::evaluate(const std::vector<Int>& point) const {
    require(static_cast<int>(point.size()) == num_vars_, ErrorKind::usage,
            "evaluation point has wrong arity");
    // per-variable power cache up to the largest exponent used
    std::vector<std::vector<Int>> powers(static_cast<size_t>(num_vars_));
    for (size_t v = 0; v < powers.size(); ++v) powers[v].push_back(1);
    Int sum = 0;
    for (const Term& t : terms_) {
        Int prod = t.coeff;
        for (size_t v = 0; v < t.exps.size(); ++v) {
            uint32_t e = t.exps[v];
            if (e == 0) continue;
            auto& cache = powers[v];
            while (cache.size() <= e) cache.push_back(cache.back() * point[v]);
            prod *= cache[e];
        }
        sum += prod;
    }
    return sum;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& args) const {
    require(static_cast<int>(args.size()) == num_vars_, ErrorKind::internal,
            "substitution arity mismatch");
    int inner_vars = args.empty() ? 0 : args[0].num_vars();
    for (const Polynomial& a : args)
        require(a.num_vars() == inner_vars, ErrorKind::internal,
                "substitution arguments over different variables");
    std::vector<std::vector<Polynomial>> powers(args.size());
    for (size_t v = 0; v < args.size(); ++v) powers[v].push_back(constant(inner_vars, 1));
    Polynomial sum = zero(inner_vars);
    for (const Term& t : terms_) {
        Polynomial prod = constant(inner_vars, t.coeff);
        for (size_t v = 0; v < t.exps.size(); ++v) {
            uint32_t e = t.exps[v];
            if (e == 0) continue;
            auto& cache = powers[v];
            while (cache.size() <= e) cache.push_back(cache.back() * args[v]);
            prod = prod * cache[e];
        }
        sum = sum + prod;
    }
    return sum;
}

std::string Polynomial::to_text(const std::function<std::string(int)>& name) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const Term& t : terms_) {
        Int a = abs_val(t.coeff);
        if (first) {
            if (t.coeff < 0) out += "-";
            first = false;
        } else {
            out += t.coeff < 0 ? " - " : " + ";
        }
        bool has_vars = total_degree(t.exps) > 0;
        bool coeff_shown = !has_vars || a != 1;
        if (coeff_shown) out += a.str();
        bool star = coeff_shown;
        for (size_t v = 0; v < t.exps.size(); ++v) {
            if (t.exps[v] == 0) continue;
            if (star) out += "*";
            out += name(static_cast<int>(v));
            if (t.exps[v] > 1) out += "^" + std::to_string(t.exps[v]);
            star = true;
        }
    }
    return out;
}

std::string Polynomial::to_text(const std::string& prefix) const {
    return to_text([&prefix](int i) { return prefix + std::to_string(i + 1); });
}

Polynomial Polynomial::truncated(int64_t max_terms) const {
    require(max_terms >= 0, ErrorKind::internal, "negative term cap");
    if (term_count() <= max_terms) return *this;
    Polynomial r(num_vars_);
    r.terms_.assign(terms_.begin(), terms_.begin() + static_cast<long>(max_terms));
    return r;
}

} // namespace tame
