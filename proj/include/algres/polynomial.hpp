#pragma once
#include "algres/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace algres {

using Weights = std::vector<int>;

struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e(nvars, 0) {}
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

    std::size_t nvars() const { return e.size(); }
    int total() const;
    int weighted(const Weights& w) const;
    bool divides(const Monomial& o) const;

    Monomial operator*(const Monomial& o) const;
    auto operator<=>(const Monomial&) const = default;
};

// Monomials of quasi-degree d in graded-lex order: total degree ascending,
// then exponent vectors lexicographically descending.
std::vector<Monomial> monomials_of_degree(const Weights& w, int d);

struct QuasiDegree {
    bool homogeneous;
    int degree; // lowest weighted degree when not homogeneous
};

class Polynomial {
public:
    using Terms = std::map<Monomial, Q>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : n_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Q& c);
    static Polynomial variable(std::size_t nvars, std::size_t i);
    static Polynomial term(const Monomial& m, const Q& c);

    std::size_t nvars() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Q coeff(const Monomial& m) const;
    void add_term(const Monomial& m, const Q& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Q& c);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Q& c) const;
    bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    Polynomial pow(unsigned k) const;
    Polynomial derivative(std::size_t i) const;

    // Substitute images[i] for variable i; all images share one source ring.
    Polynomial compose(const std::vector<Polynomial>& images) const;

    // Drop variables with index >= k (terms containing them vanish).
    Polynomial truncate_vars(std::size_t k) const;
    // Re-embed into a ring with more variables.
    Polynomial extend(std::size_t nvars) const;

    // Throws CheckError on the zero polynomial.
    QuasiDegree quasi_degree(const Weights& w) const;
    Polynomial homogeneous_part(const Weights& w, int d) const;
    std::map<int, Polynomial> split_by_degree(const Weights& w) const;

    // Lowest total degree among terms; -1 for zero.
    int order() const;
    int degree() const;

    std::string str(const std::vector<std::string>& names) const;

private:
    std::size_t n_ = 0;
    Terms terms_;
};

inline Polynomial operator*(const Q& c, const Polynomial& p) { return p * c; }

// Univariate truncated power series helpers (coefficient vectors, index = power).
using Series = std::vector<Q>;
Series to_series(const Polynomial& p, int cut); // p in one variable
void series_mul_into(Series& out, const Series& a, const Series& b, int cut);
int series_order(const Series& s); // -1 when zero

std::vector<std::string> default_names(std::size_t n, const std::string& stem = "x");

} // namespace algres
