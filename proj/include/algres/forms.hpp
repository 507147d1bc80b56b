#pragma once
#include "algres/polynomial.hpp"

#include <map>
#include <string>
#include <vector>

namespace algres {

using VectorField = std::vector<Polynomial>;
// Target coordinate i ↦ polynomial in the source variables.
using PolyMap = std::vector<Polynomial>;

// Polynomial-coefficient p-form, p ≤ 3, keyed by strictly increasing index tuples.
class DiffForm {
public:
    using Index = std::vector<int>;

    DiffForm() = default;
    DiffForm(std::size_t nvars, int degree) : n_(nvars), p_(degree) {}

    static DiffForm function(const Polynomial& f);
    // dx_i (0-based).
    static DiffForm dx(std::size_t nvars, int i);
    // c · dx_i ∧ dx_j with i < j (0-based).
    static DiffForm dx2(std::size_t nvars, int i, int j, const Polynomial& c);

    std::size_t nvars() const { return n_; }
    int degree() const { return p_; }
    const std::map<Index, Polynomial>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    Polynomial coeff(const Index& idx) const;
    // Adds c · dx_idx for an arbitrary (possibly unsorted) index list.
    void add(Index idx, const Polynomial& c);

    DiffForm& operator+=(const DiffForm& o);
    DiffForm operator+(const DiffForm& o) const;
    DiffForm operator-(const DiffForm& o) const;
    DiffForm operator*(const Q& c) const;
    DiffForm operator*(const Polynomial& f) const;
    bool operator==(const DiffForm& o) const;

    // Drop every term involving x_k or dx_k for k >= m.
    DiffForm truncate_vars(std::size_t m) const;
    DiffForm extend(std::size_t nvars) const;
    // Quasi-homogeneous components keyed by degree (dx_i weighs w_i).
    std::map<int, DiffForm> split_by_degree(const Weights& w) const;
    // Constant part of the coefficients (value at 0).
    DiffForm at_origin() const;

    std::string str(const std::vector<std::string>& names) const;

private:
    std::size_t n_ = 0;
    int p_ = 0;
    std::map<Index, Polynomial> c_;
};

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm exterior_d(const DiffForm& a);
DiffForm interior(const VectorField& x, const DiffForm& a);
// Cartan: L_X = d ι_X + ι_X d.
DiffForm lie_derivative(const VectorField& x, const DiffForm& a);
// Pullback along f: source coordinates are the variables of f's components.
DiffForm pullback(const PolyMap& f, const DiffForm& a);
bool is_closed(const DiffForm& a);

// Apply a vector field to a function.
Polynomial directional(const VectorField& x, const Polynomial& f);

// Euler field Σ w_i x_i ∂_i.
VectorField euler_field(const Weights& w);

} // namespace algres
