#include "algres/catalog.hpp"
#include "algres/error.hpp"
#include "algres/parser.hpp"

#include <algorithm>
#include <mutex>

namespace algres {

namespace {

const std::vector<std::string> xvars{"x1", "x2", "x3"};
const std::vector<std::string> tvar{"t"};

Polynomial px(const std::string& s) { return parse_polynomial(s, xvars); }

FormBasisElement element(const std::string& name, const std::string& coeff, int i, int j, const Weights& w,
                         bool closed = true) {
    FormBasisElement e;
    e.name = name;
    e.form = DiffForm::dx2(3, i - 1, j - 1, px(coeff));
    e.degree = e.form.split_by_degree(w).begin()->first;
    e.closed = closed;
    return e;
}

Branch branch(const std::string& label, const std::vector<std::string>& comps) {
    Branch b;
    b.label = label;
    for (const auto& c : comps) b.map.push_back(parse_polynomial(c, tvar));
    return b;
}

Monomial mono(int a, int b, int c) { return Monomial(std::vector<int>{a, b, c}); }

NormalFormPattern pattern(const std::string& label, std::optional<std::size_t> lead, std::vector<std::size_t> moduli,
                          std::vector<std::string> names, std::map<std::size_t, Q> fixed = {}) {
    NormalFormPattern p;
    p.label = label;
    p.lead = lead;
    p.moduli = std::move(moduli);
    p.moduli_names = std::move(names);
    p.fixed = std::move(fixed);
    return p;
}

const std::vector<std::pair<int, int>> n2_class0{{2, 4}};
const std::vector<std::pair<int, int>> n2_class1{{1, 4}};
const std::vector<std::pair<int, int>> n2_class2{{3, 4}};
const std::vector<std::pair<int, int>> n3{{1, 4}, {2, 5}, {3, 6}};

ClassRecord rec(NormalFormPattern p, bool sign, int n, std::vector<std::pair<int, int>> constant,
                std::vector<std::string> psi, std::vector<std::vector<std::string>> scene) {
    ClassRecord c;
    c.label = p.label;
    c.pattern = std::move(p);
    c.signed_form = sign;
    c.n = n;
    c.omega_constant = std::move(constant);
    c.psi = std::move(psi);
    c.scene = std::move(scene);
    c.variants.push_back({"", c.label, {}});
    return c;
}

std::vector<FormBasisElement> common_theta(const Weights& w) {
    return {element("θ1", "1", 1, 3, w), element("θ2", "1", 2, 3, w), element("θ3", "1", 1, 2, w),
            element("θ4", "x3", 1, 3, w), element("θ5", "x1", 1, 3, w), element("θ6", "x3^2", 1, 3, w),
            element("θ7", "x1*x3", 1, 3, w)};
}

GermRecord u7() {
    GermRecord r;
    r.family = "U7";
    auto& g = r.germ;
    g.name = "U7";
    g.vars = xvars;
    g.weights = {4, 5, 3};
    g.equations = {px("x1^2 + x2*x3"), px("x1*x2 + x3^3")};
    g.branches = {branch("B1", {"0", "t", "0"}), branch("B2", {"t^4", "-t^5", "t^3"})};
    g.symmetries = {{1, -1, -1}};
    r.theta = common_theta(g.weights);
    r.sigma = {element("σ", "x1", 2, 3, g.weights, false)};
    r.field_monomials = {mono(0, 0, 0), mono(0, 0, 1), mono(1, 0, 0), mono(0, 1, 0), mono(0, 0, 2), mono(1, 0, 1)};
    r.singular_branch = 1;
    r.subsets = {{"L2", {1}}};

    const std::vector<std::string> b1_2{"0", "0", "t", "0"};
    const std::vector<std::string> b1_3{"0", "0", "t", "0", "0", "0"};
    auto c0 = rec(pattern("0", 0, {1, 2}, {"c1", "c2"}), false, 2, n2_class0, {"x1", "x3", "x2", "c1*x3 + c2*x1"},
                  {b1_2, {"t^4", "-t^3", "t^5", "-c1*t^3 + c2*t^4"}});
    c0.variants = {{"c1≠0", "0_0", {}}, {"c1=0", "0_1", {{"c1", "0"}}}};
    r.classes.push_back(c0);
    r.classes.push_back(rec(pattern("1", 1, {2, 3}, {"c1", "c2"}), true, 2, n2_class1,
                            {"s*x2", "x3", "x1", "c1*s*x2 + c2/2*x3^2"},
                            {{"t", "0", "0", "c1*t"}, {"t^5", "-s*t^3", "t^4", "c1*t^5 + c2/2*t^6"}}));
    r.classes.push_back(rec(pattern("2", 2, {3, 4}, {"c1", "c2"}), false, 2, n2_class2,
                            {"x1", "x2", "c1*x1*x3 + c2/2*x1^2", "x3"},
                            {{"0", "t", "0", "0"}, {"t^4", "t^5", "-c1*t^7 + c2/2*t^8", "-t^3"}}));
    r.classes.push_back(rec(pattern("3", 3, {4}, {"c"}), true, 3, n3, {"x1", "c*x1*x3", "x2", "0", "x3", "-s*x1*x3"},
                            {b1_3, {"t^4", "-c*t^7", "t^5", "0", "-t^3", "s*t^7"}}));
    r.classes.push_back(rec(pattern("4", 4, {5}, {"c"}), false, 3, n3,
                            {"x1", "c/3*x3^3", "x2", "0", "x3", "-1/2*x1^2"},
                            {b1_3, {"t^4", "-c/3*t^9", "t^5", "0", "-t^3", "-1/2*t^8"}}));
    r.classes.push_back(rec(pattern("5", 5, {6}, {"c"}), false, 3, n3,
                            {"x1", "-c/2*x1*x3^2", "x2", "0", "x3", "-x1*x3^2"},
                            {b1_3, {"t^4", "-c/2*t^10", "t^5", "0", "-t^3", "-t^10"}}));
    r.classes.push_back(rec(pattern("6", 6, {}, {}), true, 3, n3, {"x1", "0", "x2", "0", "x3", "-s/2*x1^2*x3"},
                            {b1_3, {"t^4", "0", "t^5", "0", "-t^3", "s/2*t^11"}}));
    r.classes.push_back(rec(pattern("7", std::nullopt, {}, {}), false, 3, n3, {"x1", "0", "x2", "0", "x3", "0"},
                            {b1_3, {"t^4", "0", "t^5", "0", "-t^3", "0"}}));
    return r;
}

GermRecord u8() {
    GermRecord r;
    r.family = "U8";
    auto& g = r.germ;
    g.name = "U8";
    g.vars = xvars;
    g.weights = {3, 4, 2};
    g.equations = {px("x1^2 + x2*x3"), px("x1*x2 + x1*x3^2")};
    g.branches = {branch("B1", {"0", "t", "0"}), branch("B2", {"0", "0", "t"}), branch("B3", {"t^3", "-t^4", "t^2"})};
    g.symmetries = {{-1, 1, 1}};
    r.theta = common_theta(g.weights);
    r.theta.push_back(element("θ8", "x3^3", 1, 3, g.weights));
    r.sigma = {element("σ", "x1", 2, 3, g.weights, false)};
    r.field_monomials = {mono(0, 0, 0), mono(0, 0, 1), mono(1, 0, 0), mono(0, 0, 2), mono(0, 1, 0),
                         mono(1, 0, 1), mono(0, 0, 3), mono(2, 0, 0), mono(0, 1, 1)};
    r.singular_branch = 2;
    r.subsets = {{"L12", {0, 1}}, {"L3", {2}}};

    const std::vector<std::string> b1_2{"0", "t", "0", "0"}, b2_2{"0", "0", "0", "t"};
    const std::vector<std::string> b1_3{"0", "0", "t", "0", "0", "0"}, b2_3{"0", "0", "0", "0", "t", "0"};
    auto n3rec = [&](NormalFormPattern p, bool sign, const std::string& q3, const std::string& q3t) {
        return rec(std::move(p), sign, 3, n3, {"x1", "0", "x2", "0", "x3", q3},
                   {b1_3, b2_3, {"t^3", "0", "-t^4", "0", "t^2", q3t}});
    };
    auto c0 = rec(pattern("0", 0, {1, 2}, {"c1", "c2"}), false, 2, n2_class0, {"x1", "x3", "x2", "c1*x3 - c2*x1"},
                  {{"0", "0", "t", "0"}, {"0", "t", "0", "c1*t"}, {"t^3", "t^2", "-t^4", "c1*t^2 - c2*t^3"}});
    c0.variants = {{"c1≠0", "0_1", {}}, {"c1=0", "0_∞", {{"c1", "0"}}}};
    r.classes.push_back(c0);
    auto c1 = rec(pattern("1", 1, {2, 3}, {"c1", "c2"}), true, 2, n2_class1, {"x1", "c1*x2 + c2/2*x3^2", "x2", "s*x3"},
                  {{"0", "c1*t", "t", "0"}, {"0", "c2/2*t^2", "0", "s*t"}, {"t^3", "(c2/2 - c1)*t^4", "-t^4", "s*t^2"}});
    c1.variants = {{"c2≠2c1", "1_5", {}}, {"c2=2c1", "1_∞", {{"c2", "2*c1"}}}};
    c1.exclusions = {{"c2", "2*c1"}};
    r.classes.push_back(c1);
    auto c2 = rec(pattern("2", 2, {3, 4}, {"c1", "c2"}), false, 2, n2_class2,
                  {"x1", "x2", "c1*x1*x3 + c2/2*x1^2", "x3"},
                  {b1_2, b2_2, {"t^3", "-t^4", "c1*t^5 + c2/2*t^6", "t^2"}});
    c2.exclusions = {{"c1", "2"}, {"c1", "-1/3"}};
    r.classes.push_back(c2);
    r.classes.push_back(rec(pattern("3,0_5", 2, {4, 5}, {"c1", "c2"}, {{3, Q(-1, 3)}}), false, 2, n2_class2,
                            {"x1", "x2", "-1/3*x1*x3 + c1/2*x1^2 + c2*x1*x3^2", "x3"},
                            {b1_2, b2_2, {"t^3", "-t^4", "-1/3*t^5 + c1/2*t^6 + c2*t^7", "t^2"}}));
    r.classes.push_back(rec(pattern("3,0_∞", 2, {4, 6}, {"c1", "c2"}, {{3, Q(2)}}), false, 2, n2_class2,
                            {"x1", "x2", "2*x1*x3 + c1/2*x1^2 + c2/2*x1^2*x3", "x3"},
                            {b1_2, b2_2, {"t^3", "-t^4", "2*t^5 + c1/2*t^6 + c2/2*t^8", "t^2"}}));
    r.classes.push_back(n3rec(pattern("3,1", 3, {4}, {"c"}), false, "-x1*x3 - c/2*x1^2", "-t^5 - c/2*t^6"));
    r.classes.push_back(n3rec(pattern("4", 4, {5}, {"c"}), true, "-s/2*x1^2 - c*x1*x3^2", "-s/2*t^6 - c*t^7"));
    r.classes.push_back(n3rec(pattern("5", 5, {6}, {"c"}), false, "-x1*x3^2 - c/2*x1^2*x3", "-t^7 - c/2*t^8"));
    r.classes.push_back(n3rec(pattern("6", 6, {7}, {"c"}), true, "-s/2*x1^2*x3 + c*x1*x3^3", "-s/2*t^8 + c*t^9"));
    r.classes.push_back(n3rec(pattern("7", 7, {}, {}), false, "-x1*x3^3", "-t^9"));
    r.classes.push_back(n3rec(pattern("8", std::nullopt, {}, {}), false, "0", "0"));
    return r;
}

GermRecord u9() {
    GermRecord r;
    r.family = "U9";
    auto& g = r.germ;
    g.name = "U9";
    g.vars = xvars;
    g.weights = {5, 7, 3};
    g.equations = {px("x1^2 + x2*x3"), px("x1*x2 + x3^4")};
    g.branches = {branch("B1", {"0", "t", "0"}), branch("B2", {"t^5", "-t^7", "t^3"})};
    g.symmetries = {{-1, -1, -1}};
    r.theta = common_theta(g.weights);
    r.theta.push_back(element("θ8", "x3^3", 1, 3, g.weights));
    r.theta.push_back(element("θ9", "x1*x3^2", 1, 3, g.weights));
    r.sigma = {element("σ", "x3", 1, 2, g.weights, false)};
    r.field_monomials = {mono(0, 0, 0), mono(0, 0, 1), mono(1, 0, 0), mono(0, 0, 2),
                         mono(0, 1, 0), mono(1, 0, 1), mono(0, 0, 3), mono(1, 0, 2)};
    r.singular_branch = 1;
    r.subsets = {{"L2", {1}}};

    const std::vector<std::string> b1_3{"0", "0", "t", "0", "0", "0"};
    auto n3rec = [&](NormalFormPattern p, bool sign, const std::string& q3, const std::string& q3t) {
        return rec(std::move(p), sign, 3, n3, {"x1", "0", "x2", "0", "x3", q3},
                   {b1_3, {"t^5", "0", "-t^7", "0", "t^3", q3t}});
    };
    auto c0 = rec(pattern("0", 0, {1, 2}, {"c1", "c2"}), true, 2, n2_class0, {"s*x1", "x3", "x2", "c1*x3 - c2*x1"},
                  {{"0", "0", "t", "0"}, {"s*t^5", "t^3", "-t^7", "c1*t^3 - c2*t^5"}});
    c0.variants = {{"c1≠0", "0_0", {}}, {"c1=0", "0_1", {{"c1", "0"}}}};
    r.classes.push_back(c0);
    r.classes.push_back(rec(pattern("1", 1, {2, 3, 5}, {"c1", "c2", "c3"}), true, 2, n2_class1,
                            {"s*x2", "x3", "s*x1", "c1*s*x2 + c2/2*x3^2 + s*c3/3*x3^3"},
                            {{"t", "0", "0", "c1*t"}, {"-t^7", "s*t^3", "t^5", "-c1*t^7 + c2/2*t^6 + c3/3*t^9"}}));
    auto n2c2 = [&](NormalFormPattern p, const std::string& p2, const std::string& p2t) {
        return rec(std::move(p), true, 2, n2_class2, {"x1", "s*x2", p2, "x3"},
                   {{"0", "s*t", "0", "0"}, {"t^5", "-s*t^7", p2t, "t^3"}});
    };
    auto c2 = n2c2(pattern("2", 2, {3, 4}, {"c1", "c2"}), "c1*x1*x3 + c2/2*x1^2", "c1*t^8 + c2/2*t^10");
    c2.exclusions = {{"c1", "0"}};
    r.classes.push_back(c2);
    auto c30 = n2c2(pattern("3,0", 2, {4, 5}, {"c1", "c2"}), "c1/2*x1^2 + c2*x1*x3^2", "c1/2*t^10 + c2*t^11");
    c30.exclusions = {{"c1", "0"}};
    r.classes.push_back(c30);
    r.classes.push_back(
        n2c2(pattern("4,0", 2, {5, 6}, {"c1", "c2"}), "c1*x1*x3^2 + c2/2*x1^2*x3", "c1*t^11 + c2/2*t^13"));
    r.classes.push_back(n3rec(pattern("3,1", 3, {4}, {"c"}), false, "-x1*x3 - c/2*x1^2", "-t^8 - c/2*t^10"));
    r.classes.push_back(n3rec(pattern("4,1", 4, {5, 7}, {"c1", "c2"}), false,
                              "-1/2*x1^2 - c1*x1*x3^2 - c2*x1*x3^3", "-1/2*t^10 - c1*t^11 - c2*t^14"));
    r.classes.push_back(n3rec(pattern("5", 5, {6}, {"c"}), true, "-s*x1*x3^2 - c/2*x1^2*x3", "-s*t^11 - c/2*t^13"));
    r.classes.push_back(n3rec(pattern("6", 6, {7}, {"c"}), true, "-s/2*x1^2*x3 - c*x1*x3^3", "-s/2*t^13 - c*t^14"));
    r.classes.push_back(n3rec(pattern("7", 7, {8}, {"c"}), false, "-x1*x3^3 - c/2*x1^2*x3^2", "-t^14 - c/2*t^16"));
    r.classes.push_back(n3rec(pattern("8", 8, {}, {}), false, "-1/2*x1^2*x3^2", "-1/2*t^16"));
    r.classes.push_back(n3rec(pattern("9", std::nullopt, {}, {}), false, "0", "0"));
    return r;
}

Q eval_constant(const std::string& expr, const std::map<std::string, Q>& k) {
    Polynomial p = parse_polynomial(expr, {}, k);
    return p.is_zero() ? Q(0) : p.terms().begin()->second;
}

std::size_t constant_rank(const DiffForm& w, std::size_t n) {
    Mat m(n, Vec(n, Q(0)));
    Monomial one(w.nvars());
    for (const auto& [idx, c] : w.coeffs()) {
        Q v = c.coeff(one);
        m[static_cast<std::size_t>(idx[0])][static_cast<std::size_t>(idx[1])] = v;
        m[static_cast<std::size_t>(idx[1])][static_cast<std::size_t>(idx[0])] = -v;
    }
    return rank(m, n);
}

} // namespace

bool same_up_to_reparam(const PolyMap& a, const PolyMap& b) {
    if (a.size() != b.size()) return false;
    if (a == b) return true;
    PolyMap minus_t{Polynomial::variable(1, 0) * Q(-1)};
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i].compose(minus_t) == b[i])) return false;
    return true;
}

const ClassRecord& GermRecord::find(const std::string& label) const {
    for (const auto& c : classes)
        if (c.label == label) return c;
    throw InputError(family + " has no class '" + label + "'");
}

std::map<std::string, Q> ClassInstance::constants() const {
    auto k = moduli;
    k["s"] = Q(sign);
    for (const char* name : {"c", "c1", "c2", "c3"}) k.try_emplace(name, Q(0));
    return k;
}

Vec ClassInstance::normal_form() const {
    Vec v(germ->theta.size(), Q(0));
    const auto& p = cls->pattern;
    if (p.lead) v[*p.lead] = cls->signed_form ? Q(sign) : Q(1);
    for (const auto& [i, q] : p.fixed) v[i] = q;
    for (std::size_t m = 0; m < p.moduli.size(); ++m) {
        auto it = moduli.find(p.moduli_names[m]);
        if (it == moduli.end()) throw InputError("class " + cls->label + " needs modulus " + p.moduli_names[m]);
        v[p.moduli[m]] = it->second;
    }
    return v;
}

DiffForm ClassInstance::omega() const {
    std::size_t dim = static_cast<std::size_t>(2 * cls->n);
    DiffForm w(dim, 2);
    Vec nf = normal_form();
    for (std::size_t j = 0; j < nf.size(); ++j)
        if (nf[j] != 0) w += germ->theta[j].form.extend(dim) * nf[j];
    for (auto [i, j] : cls->omega_constant) w += DiffForm::dx2(dim, i - 1, j - 1, Polynomial::constant(dim, 1));
    return w;
}

PolyMap ClassInstance::psi() const {
    auto k = constants();
    PolyMap m;
    for (const auto& s : cls->psi) m.push_back(parse_polynomial(s, xvars, k));
    return m;
}

std::vector<Branch> ClassInstance::scene_branches() const {
    auto k = constants();
    std::vector<Branch> out;
    for (std::size_t b = 0; b < cls->scene.size(); ++b) {
        Branch br;
        br.label = "B" + std::to_string(b + 1);
        for (const auto& s : cls->scene[b]) br.map.push_back(parse_polynomial(s, tvar, k));
        out.push_back(std::move(br));
    }
    return out;
}

DiffForm standard_symplectic(int n) {
    std::size_t dim = static_cast<std::size_t>(2 * n);
    DiffForm w(dim, 2);
    for (int i = 0; i < n; ++i) w += DiffForm::dx2(dim, 2 * i, 2 * i + 1, Polynomial::constant(dim, 1));
    return w;
}

void apply_variant(const Variant& v, std::map<std::string, Q>& moduli) {
    for (const auto& [name, expr] : v.set) {
        auto k = moduli;
        moduli[name] = eval_constant(expr, k);
    }
}

bool respects_exclusions(const ClassRecord& c, const std::map<std::string, Q>& moduli) {
    auto k = moduli;
    for (const char* name : {"c", "c1", "c2", "c3"}) k.try_emplace(name, Q(0));
    for (const auto& [lhs, rhs] : c.exclusions)
        if (eval_constant(lhs, k) == eval_constant(rhs, k)) return false;
    // Generic rows need nonzero moduli.
    for (const auto& n : c.pattern.moduli_names)
        if (k[n] == 0) return false;
    return true;
}

std::map<std::string, Q> sample_moduli(const ClassRecord& c, const Variant& v) {
    const Q values[] = {Q(3, 2), Q(-2, 5), Q(7, 3)};
    std::map<std::string, Q> m;
    for (std::size_t i = 0; i < c.pattern.moduli_names.size(); ++i) m[c.pattern.moduli_names[i]] = values[i % 3];
    apply_variant(v, m);
    return m;
}

Q random_rational(std::mt19937_64& rng) {
    long n = static_cast<long>(rng() % 18);
    n = n < 9 ? n - 9 : n - 8;
    long d = 1 + static_cast<long>(rng() % 5);
    return make_q(n, d);
}

std::map<std::string, Q> random_moduli(const ClassRecord& c, const Variant& v, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::map<std::string, Q> m;
        for (const auto& n : c.pattern.moduli_names) m[n] = random_rational(rng);
        apply_variant(v, m);
        if (!v.set.empty() || respects_exclusions(c, m)) return m;
    }
    throw CheckError("could not sample moduli for class " + c.label);
}

GermContext::GermContext(std::shared_ptr<const GermRecord> rec, RestrictionSpace s, ActionTable t)
    : record(std::move(rec)), space(std::move(s)), table(std::move(t)) {}

std::vector<std::string> catalog_families() { return {"U7", "U8", "U9"}; }

GermRecord make_record(const std::string& family, const std::vector<std::string>& equations) {
    GermRecord r;
    if (family == "U7")
        r = u7();
    else if (family == "U8")
        r = u8();
    else if (family == "U9")
        r = u9();
    else
        throw InputError("unknown germ '" + family + "'");
    if (!equations.empty()) {
        r.germ.equations.clear();
        for (const auto& e : equations) r.germ.equations.push_back(px(e));
    }
    return r;
}

std::shared_ptr<const GermContext> build_context(const GermRecord& rec_in, int bound) {
    auto rec = std::make_shared<const GermRecord>(rec_in);
    const std::string& f = rec->family;
    try {
        rec->germ.validate();
    } catch (const InputError& e) {
        throw CheckError(std::string("load check failed: ") + e.what());
    }
    RestrictionSpace space(rec->germ, bound, rec->theta, rec->sigma);
    std::vector<TangentField> fields;
    for (const auto& m : rec->field_monomials) fields.push_back(make_euler_multiple(rec->germ, m));
    ActionTable table = action_table(space, fields);
    auto ctx = std::make_shared<GermContext>(rec, std::move(space), std::move(table));
    for (const auto& c : rec->classes) ctx->patterns.push_back(c.pattern);
    ctx->tree = decision_tree(f);
    (void)residual_signs(ctx->space);

    for (const auto& c : rec->classes) {
        const std::string where = f + " class " + c.label;
        for (int sign : c.signed_form ? std::vector<int>{1, -1} : std::vector<int>{1})
            for (const auto& v : c.variants) {
                ClassInstance inst{rec.get(), &c, sign, sample_moduli(c, v)};
                Vec nf = inst.normal_form();
                DiffForm w = inst.omega();
                if (!is_closed(w)) throw CheckError(where + ": realizing form is not closed");
                if (constant_rank(w, static_cast<std::size_t>(2 * c.n)) != static_cast<std::size_t>(2 * c.n))
                    throw CheckError(where + ": realizing form is degenerate at 0");
                Vec r = ctx->space.restrict(w);
                Vec rc(r.begin(), r.begin() + static_cast<long>(nf.size()));
                for (std::size_t i = nf.size(); i < r.size(); ++i)
                    if (r[i] != 0) throw CheckError(where + ": realizing form restricts outside the closed subspace");
                if (rc != nf) throw CheckError(where + ": realizing form does not restrict to the normal form");

                Classification cl = classify(ctx->space, ctx->table, ctx->patterns, ctx->tree, nf);
                if (cl.label != c.label || cl.sub != v.sub)
                    throw CheckError(where + ": normal form classifies as " + cl.sub);
                if (c.signed_form && cl.sign != sign) throw CheckError(where + ": normal form sign mismatch");

                PolyMap psi = inst.psi();
                if (psi.size() != static_cast<std::size_t>(2 * c.n)) throw CheckError(where + ": chart arity");
                auto scene = inst.scene_branches();
                if (scene.size() != rec->germ.branches.size()) throw CheckError(where + ": scene branch count");
                for (std::size_t b = 0; b < scene.size(); ++b) {
                    PolyMap img;
                    for (const auto& comp : psi) img.push_back(comp.compose(rec->germ.branches[b].map));
                    if (!same_up_to_reparam(img, scene[b].map))
                        throw CheckError(where + ": scene branch B" + std::to_string(b + 1) +
                                         " is not the chart image of the germ branch");
                }
                Vec pulled = ctx->space.restrict_closed(pullback(psi, standard_symplectic(c.n)));
                Classification sc = classify(ctx->space, ctx->table, ctx->patterns, ctx->tree, pulled);
                if (sc.label != c.label) throw CheckError(where + ": scene classifies as " + sc.label);
                if (c.signed_form && sc.sign != sign) throw CheckError(where + ": scene sign mismatch");
            }
    }
    return ctx;
}

std::shared_ptr<const GermContext> catalog(const std::string& family) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const GermContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(family);
    if (it != cache.end()) return it->second;
    auto ctx = build_context(make_record(family));
    cache[family] = ctx;
    return ctx;
}

std::shared_ptr<const GermContext> user_context(const CurveGerm& g, int bound) {
    g.validate();
    RestrictionSpace space(g, bound);
    auto degs = space.closed_degrees();
    int span = degs.empty() ? 0 : *std::max_element(degs.begin(), degs.end()) - *std::min_element(degs.begin(), degs.end());
    ActionTable table = action_table(space, euler_tangent_fields(g, span));
    return std::make_shared<GermContext>(nullptr, std::move(space), std::move(table));
}

} // namespace algres
