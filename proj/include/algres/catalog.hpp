#pragma once
#include "algres/classifier.hpp"

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace algres {

// Extra condition on the moduli selecting a row of the invariant tables,
// e.g. c1 = 0 or c2 = 2*c1.
struct Variant {
    std::string name; // "" for the generic row
    std::string sub;  // normal-form sub-label, e.g. "0_1"
    std::vector<std::pair<std::string, std::string>> set;
};

struct ClassRecord {
    std::string label;
    NormalFormPattern pattern;
    bool signed_form = false;
    // lhs ≠ rhs, expressions in the moduli
    std::vector<std::pair<std::string, std::string>> exclusions;
    std::vector<Variant> variants;
    int n = 2;
    // Constant part of the realizing form: dx_i ∧ dx_j pairs, 1-based.
    std::vector<std::pair<int, int>> omega_constant;
    // Scene coordinates (p1,q1,...,pn,qn) as polynomials in x1,x2,x3.
    std::vector<std::string> psi;
    // Branch parametrizations in scene coordinates, one list per branch.
    std::vector<std::vector<std::string>> scene;
};

struct GermRecord {
    std::string family;
    CurveGerm germ;
    std::vector<FormBasisElement> theta;
    std::vector<FormBasisElement> sigma;
    std::vector<Monomial> field_monomials;
    std::size_t singular_branch = 0;
    std::vector<std::pair<std::string, std::vector<std::size_t>>> subsets;
    std::vector<ClassRecord> classes;

    const ClassRecord& find(const std::string& label) const;
};

// A class record with its sign and moduli fixed.
struct ClassInstance {
    const GermRecord* germ = nullptr;
    const ClassRecord* cls = nullptr;
    int sign = 1;
    std::map<std::string, Q> moduli;

    Vec normal_form() const;
    // Realizing symplectic form on R^{2n} in x-coordinates.
    DiffForm omega() const;
    PolyMap psi() const;
    std::vector<Branch> scene_branches() const;
    std::map<std::string, Q> constants() const;
};

// Built germ: restriction space, action table, decision data.
struct GermContext {
    std::shared_ptr<const GermRecord> record; // null for user germs
    RestrictionSpace space;
    ActionTable table;
    std::vector<NormalFormPattern> patterns;
    DecisionTree tree;

    GermContext(std::shared_ptr<const GermRecord> rec, RestrictionSpace s, ActionTable t);
};

std::vector<std::string> catalog_families();
// Raw record with optional replacement equations (negative controls).
GermRecord make_record(const std::string& family, const std::vector<std::string>& equations = {});
// Builds the context and runs every load-time check; throws on failure.
std::shared_ptr<const GermContext> build_context(const GermRecord& rec, int bound = RestrictionSpace::default_bound);
// Cached catalog contexts (thread-safe).
std::shared_ptr<const GermContext> catalog(const std::string& family);
// User germ: automatic basis and Euler fields.
std::shared_ptr<const GermContext> user_context(const CurveGerm& g, int bound = RestrictionSpace::default_bound);

// Equal polynomial maps in t, possibly after t ↦ -t.
bool same_up_to_reparam(const PolyMap& a, const PolyMap& b);

// Symplectic form Σ dp_i ∧ dq_i on (p1,q1,...,pn,qn).
DiffForm standard_symplectic(int n);
// Deterministic sample moduli for load checks.
std::map<std::string, Q> sample_moduli(const ClassRecord& c, const Variant& v);
// Applies a variant's assignments to the moduli.
void apply_variant(const Variant& v, std::map<std::string, Q>& moduli);
bool respects_exclusions(const ClassRecord& c, const std::map<std::string, Q>& moduli);
// Numerators in [-9,9]\{0}, denominators in [1,5], from raw generator output;
// redraws until the class exclusions hold.
Q random_rational(std::mt19937_64& rng);
std::map<std::string, Q> random_moduli(const ClassRecord& c, const Variant& v, std::mt19937_64& rng);

} // namespace algres
