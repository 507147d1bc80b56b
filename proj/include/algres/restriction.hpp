#pragma once
#include "algres/germ.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace algres {

struct FormBasisElement {
    std::string name;
    DiffForm form;
    int degree = 0;
    bool closed = true;
};

// Coordinate of Λ²: monomial coefficient times dx_i ∧ dx_j, i < j.
struct FormCoord {
    Monomial m;
    int i = 0, j = 0;
    auto operator<=>(const FormCoord&) const = default;
};

// Algebraic restrictions of 2-forms to a quasi-homogeneous curve germ,
// graded by quasi-degree up to a truncation bound D.
class RestrictionSpace {
public:
    static constexpr int default_bound = 40;

    // Empty basis lists are chosen automatically; a supplied basis is
    // checked against the computed quotient.
    RestrictionSpace(CurveGerm g, int bound = default_bound,
                     std::vector<FormBasisElement> closed_basis = {},
                     std::vector<FormBasisElement> extra_basis = {});

    const CurveGerm& germ() const { return g_; }
    int bound() const { return bound_; }
    std::size_t nvars() const { return g_.nvars(); }

    // Closed elements first, then the complement.
    const std::vector<FormBasisElement>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    std::size_t closed_dim() const { return closed_dim_; }
    std::vector<int> closed_degrees() const;

    // Full coordinates of [w]; terms with x_k or dx_k (k ≥ nvars) are dropped.
    Vec restrict(const DiffForm& w) const;
    // Coordinates on the closed basis; CheckError when w restricts outside it.
    Vec restrict_closed(const DiffForm& w) const;
    // Σ c_j θ_j over the closed basis.
    DiffForm representative(const Vec& closed_coords) const;

    // Degrees where the ideal generated by the equations differs from the
    // branch-vanishing ideal.
    const std::vector<int>& ideal_discrepancies() const { return discrepancies_; }

    // Graded internals, used by the invariants module.
    const std::vector<FormCoord>& columns(int delta) const;
    Vec coordinates_in_piece(const DiffForm& homogeneous, int delta) const;
    bool in_a0(const DiffForm& homogeneous, int delta) const;

private:
    struct Level {
        std::vector<FormCoord> cols;
        std::map<FormCoord, std::size_t> index;
        Echelon a0;
        std::vector<std::size_t> free;
        std::vector<std::size_t> basis_ids;
        Mat inv; // basis coordinates from free-column entries
    };

    Vec piece_vector(const DiffForm& homogeneous, const Level& lv) const;
    const Level& level(int delta) const;

    CurveGerm g_;
    int bound_;
    std::vector<Level> levels_;
    std::vector<FormBasisElement> basis_;
    std::size_t closed_dim_ = 0;
    std::vector<int> discrepancies_;
};

// All quasi-homogeneous 1-form monomials m·dx_k of quasi-degree δ.
std::vector<std::pair<Monomial, int>> one_form_monomials(const Weights& w, int delta);

} // namespace algres
