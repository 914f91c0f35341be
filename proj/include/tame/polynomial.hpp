#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tame/integers.hpp"

namespace tame {

// exponent tuple; index i is the power of variable i
using Monomial = std::vector<uint32_t>;

inline uint64_t total_degree(const Monomial& e) {
    uint64_t d = 0;
    for (uint32_t x : e) d += x;
    return d;
}

// canonical order: descending total degree, then descending lexicographic
// comparison of exponent tuples. Returns true if a precedes b.
bool monomial_before(const Monomial& a, const Monomial& b);

struct Term {
    Int coeff;
    Monomial exps;
};

// Sparse multivariate polynomial over Z in canonical form: terms sorted in
// the canonical order, like terms merged, no zero coefficients.
class Polynomial {
public:
    Polynomial() : num_vars_(0) {}
    explicit Polynomial(int num_vars) : num_vars_(num_vars) {}

    static Polynomial from_terms(int num_vars, std::vector<Term> raw);
    static Polynomial zero(int num_vars) { return Polynomial(num_vars); }
    static Polynomial constant(int num_vars, const Int& c);
    static Polynomial variable(int num_vars, int index);
    static Polynomial monomial(int num_vars, const Int& c, Monomial e);

    int num_vars() const { return num_vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // metric conventions: degree(0) = 0, coeff_norm(0) = 0, term_count(0) = 0
    int64_t degree() const;
    Int coeff_norm() const;
    int64_t term_count() const { return static_cast<int64_t>(terms_.size()); }
    bool is_constant() const { return terms_.empty() || degree() == 0; }
    // constant term (0 if absent)
    Int constant_term() const;
    // coefficient of a given monomial (0 if absent)
    Int coeff_of(const Monomial& e) const;
    // true iff some term has a positive exponent on variable index
    bool uses_variable(int index) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Int& c) const;
    Polynomial pow(uint64_t e) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Int evaluate(const std::vector<Int>& point) const;

    // replace variable i by args[i]; all args share a variable count
    Polynomial substitute(const std::vector<Polynomial>& args) const;

    // rendering like "2*x1^2*x2 - x2 + 3"; name(i) yields the variable name
    std::string to_text(const std::function<std::string(int)>& name) const;
    std::string to_text(const std::string& prefix = "x") const;

    // drop all but the first max_terms canonical terms
    Polynomial truncated(int64_t max_terms) const;

private:
    int num_vars_;
    std::vector<Term> terms_;
};

} // namespace tame
