#pragma once
#include "algres/catalog.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace algres {

// Non-negative integer or ∞.
struct Order {
    bool inf = false;
    int value = 0;

    static Order infinity() { return {true, 0}; }
    static Order of(int v) { return {false, v}; }
    std::string str() const { return inf ? "inf" : std::to_string(value); }
    bool operator==(const Order&) const = default;
};

struct SymplecticScene {
    int n = 2;
    std::vector<Branch> branches; // components ordered p1,q1,...,pn,qn
    std::string label;
};

// Independent variables u_i: p_i for i in J, q_i otherwise. The chart is
// p_i = ∂S/∂q_i (i ∉ J), q_j = -∂S/∂p_j (j ∈ J).
struct LagrangianChart {
    int n = 2;
    unsigned mask = 0; // bit i set: i ∈ J
    Polynomial s;      // in u_1..u_n
};

// Parametrization u ↦ (p,q) of the chart's submanifold.
PolyMap chart_embedding(const LagrangianChart& c);
bool is_lagrangian(const LagrangianChart& c);
// Pulls ω0 back along the embedding of a generic cubic jet, for every J.
bool check_chart_shapes(int n);

Order tangency_order(const Branch& b, const LagrangianChart& c);

struct LtOptions {
    int ceiling = 24;
    int jet = 0; // 0: 2·ceiling
};

// Whether some S makes every H_i∘f_b vanish below t^k for chart mask J.
bool lt_feasible(const std::vector<Branch>& branches, int n, unsigned mask, int k, int jet);
// Largest feasible k below the ceiling; BoundError when the ceiling is reached.
int lt_search_serial(const std::vector<Branch>& branches, int n, const LtOptions& o = {});
int lt_search_parallel(const std::vector<Branch>& branches, int n, const LtOptions& o = {});

// Zero-restriction certificate for a branch subset.
using Certificate = std::function<bool(const std::vector<std::size_t>&)>;

// Exact Lagrangian chart containing the branches (jet degree ≤ cap).
bool exact_chart_certificate(const std::vector<Branch>& branches, int n, int cap = 12);

Order lt_multigerm(const SymplecticScene& scene, const std::vector<std::size_t>& subset, const Certificate& cert,
                   const LtOptions& o = {});

// Max over r with a represented by a closed form of order ≥ r; ∞ iff a = 0.
Order index_of_isotropy(const RestrictionSpace& s, const Vec& a);

// Max over 1-forms α with [dα] = a of min_i ord_t(α_i∘f) on the single
// quasi-homogeneous branch of s.germ().
Order lt_via_one_forms(const RestrictionSpace& s, const Vec& a);
// Same, requiring a to be represented by a closed form vanishing at 0.
Order lt_single_via_restriction(const RestrictionSpace& s, const Vec& a);

struct GeometricFrame {
    std::size_t dim = 0;
    Vec l1, l2;
    std::vector<Vec> v; // 2 vectors
    std::vector<Vec> w; // 3 vectors
};

struct GeometricFlags {
    bool v_nonzero = false;
    bool l12_nonzero = false;
    bool ker_w_is_l2 = false;
    bool w_zero = false;
};

// ℓ1 from branch 0, ℓ2 and V from the singular branch, W from the first
// three independent jet directions across all branches.
GeometricFrame geometric_frame(const std::vector<Branch>& branches, std::size_t singular);
// Flags of the constant 2-form ω(0) given as an antisymmetric matrix.
GeometricFlags geometric_conditions(const GeometricFrame& f, const Mat& omega0);
Mat standard_symplectic_matrix(int n);

// Restriction space of the sub-germ on the given branches, cached per context.
std::shared_ptr<const RestrictionSpace> sub_space(const GermContext& ctx, const std::vector<std::size_t>& idx);

struct SubsetOrder {
    std::string name;
    Order value;
};

struct ClassInvariants {
    int cod = 0;
    int mu = 0;
    Order ind, ind2, lt;
    std::vector<SubsetOrder> subsets;
    GeometricFlags geometry;
    bool zero_restriction = false;
};

ClassInvariants class_invariants(const GermContext& ctx, const ClassInstance& inst, const LtOptions& o = {});

} // namespace algres
