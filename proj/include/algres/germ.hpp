#pragma once
#include "algres/forms.hpp"
#include "algres/linalg.hpp"

#include <string>
#include <vector>

namespace algres {

struct Branch {
    std::string label;
    PolyMap map; // one polynomial in t per ambient coordinate
};

struct CurveGerm {
    std::string name;
    std::vector<std::string> vars;
    Weights weights;
    std::vector<Polynomial> equations;
    std::vector<Branch> branches;
    // Sign maps x_i ↦ s_i x_i.
    std::vector<std::vector<int>> symmetries;
    int jet_cutoff = 64;

    std::size_t nvars() const { return vars.size(); }
    // Throws InputError naming the first failing identity.
    void validate() const;
    // Germ formed by a subset of branches (0-based), equations dropped.
    CurveGerm sub_germ(const std::vector<std::size_t>& idx) const;
};

bool verify_branch(const CurveGerm& g, const Branch& b);
bool vanishes_on_germ(const CurveGerm& g, const Polynomial& h);
bool preserves(const CurveGerm& g, const std::vector<int>& signs);

// Evaluates monomials along the branches with cached powers.
class BranchEvaluator {
public:
    explicit BranchEvaluator(const CurveGerm& g);
    // Stacked t-coefficients of m∘b over all branches, length = rows().
    Vec column(const Monomial& m);
    std::size_t rows() const { return rows_; }
    Polynomial image(std::size_t branch, const Monomial& m);

private:
    const CurveGerm& g_;
    std::vector<std::vector<std::vector<Polynomial>>> pw_; // [branch][var][k]
    std::vector<std::size_t> offset_;
    std::size_t rows_ = 0;
};

// Basis of quasi-degree-δ polynomials vanishing on every branch.
std::vector<Polynomial> ideal_piece(const CurveGerm& g, int delta);
std::vector<Polynomial> ideal_piece(const CurveGerm& g, int delta, BranchEvaluator& ev);

bool is_tangent(const CurveGerm& g, const VectorField& x);

struct TangentField {
    Monomial g;
    VectorField field; // g·E
    int degree = 0;
    std::string name;
};

TangentField make_euler_multiple(const CurveGerm& g, const Monomial& m);
// g·E over monomials g of quasi-degree ≤ max_delta, one per class modulo the
// vanishing ideal, each checked tangent.
std::vector<TangentField> euler_tangent_fields(const CurveGerm& g, int max_delta);

std::string monomial_name(const Monomial& m, const std::vector<std::string>& vars);

} // namespace algres
