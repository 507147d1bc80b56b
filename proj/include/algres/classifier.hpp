#pragma once
#include "algres/radical.hpp"
#include "algres/restriction.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace algres {

// Infinitesimal actions L_X on the closed restriction coordinates.
struct ActionTable {
    std::vector<TangentField> fields;
    std::vector<std::string> labels; // X0, X1, ...
    std::vector<Mat> m;              // m[x][i][j]: θ_i coefficient of L_X θ_j
    std::vector<int> degrees;        // quasi-degrees of the closed basis
    std::size_t dim = 0;

    Vec apply(std::size_t x, const Vec& a) const;
};

// Column j is the closed restriction of d(ι_X θ_j); throws for non-tangent X.
Mat action_matrix(const RestrictionSpace& s, const TangentField& x);
ActionTable action_table(const RestrictionSpace& s, std::vector<TangentField> fields);

Mat orbit_tangent_vectors(const ActionTable& t, const Vec& a);
std::size_t orbit_span_dim(const ActionTable& t, const Vec& a);
int symplectic_multiplicity(const ActionTable& t, const Vec& a);

// exp(Σ t_x M_x) a for a combination of positive-degree fields.
Vec exp_action(const ActionTable& t, const Vec& coeffs, const Vec& a);

struct ReductionStep {
    int level = 0;
    Vec coeffs; // one per field
    Vec before, after;
};

struct Elimination {
    Vec coords;
    std::vector<ReductionStep> trace;
};

// Graded elimination, lowest level first. At each level the reachable
// directions are those of fields that leave every lower level untouched;
// pivots prefer the higher θ index, so lower indices survive as moduli.
Elimination eliminate(const ActionTable& t, const Vec& a);
Vec replay(const ActionTable& t, const std::vector<ReductionStep>& trace, const Vec& a);

// Sign actions on the closed coordinates: the torus element s = -1 and the
// germ's sign symmetries, all diagonal.
std::vector<std::vector<int>> residual_signs(const RestrictionSpace& s);

struct Normalized {
    std::vector<Radical> coords;
    std::optional<std::size_t> lead;
    int sign = 1;
    bool sign_genuine = false;
};

// Scale the lead coefficient to ±1 by c_j ↦ r^{δ_j} c_j (r > 0) and pick the
// lexicographically smallest vector over the residual sign group.
Normalized normalize(const std::vector<int>& degrees, const Vec& a, const std::vector<std::vector<int>>& signs);

struct NormalFormPattern {
    std::string label;
    std::optional<std::size_t> lead; // none for the zero class
    std::map<std::size_t, Q> fixed;
    std::vector<std::size_t> moduli;
    std::vector<std::string> moduli_names;
};

struct Decision {
    std::string label;
    std::string sub;
};
using DecisionTree = std::function<Decision(const Vec&)>;

// Decision trees for U7, U8, U9; throws InputError for other names.
DecisionTree decision_tree(const std::string& family);

struct Classification {
    std::string label;
    std::string sub;
    int sign = 1;
    bool sign_genuine = false;
    std::vector<Radical> normal_form;
    std::vector<std::pair<std::string, Radical>> moduli;
    Elimination elimination;
};

// patterns empty or tree empty: generic result labelled by the lead index.
Classification classify(const RestrictionSpace& s, const ActionTable& t, const std::vector<NormalFormPattern>& patterns,
                        const DecisionTree& tree, const Vec& a);

int class_codimension(const ActionTable& t, const Vec& normal_form, std::size_t nmoduli);

} // namespace algres
