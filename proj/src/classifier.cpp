#include "algres/classifier.hpp"
#include "algres/error.hpp"

#include <algorithm>
#include <set>

namespace algres {

Vec ActionTable::apply(std::size_t x, const Vec& a) const {
    Vec r(dim, Q(0));
    const Mat& mx = m[x];
    for (std::size_t j = 0; j < dim; ++j) {
        if (a[j] == 0) continue;
        for (std::size_t i = 0; i < dim; ++i)
            if (mx[i][j] != 0) r[i] += mx[i][j] * a[j];
    }
    return r;
}

Mat action_matrix(const RestrictionSpace& s, const TangentField& x) {
    if (!is_tangent(s.germ(), x.field)) throw CheckError("field " + x.name + " is not tangent to " + s.germ().name);
    std::size_t k = s.closed_dim();
    Mat m(k, Vec(k, Q(0)));
    for (std::size_t j = 0; j < k; ++j) {
        const auto& th = s.basis()[j];
        Vec col = s.restrict_closed(exterior_d(interior(x.field, th.form)));
        for (std::size_t i = 0; i < k; ++i) {
            if (col[i] == 0) continue;
            if (s.basis()[i].degree != th.degree + x.degree)
                throw CheckError("action of " + x.name + " on " + th.name + " is not graded");
            m[i][j] = col[i];
        }
    }
    return m;
}

ActionTable action_table(const RestrictionSpace& s, std::vector<TangentField> fields) {
    ActionTable t;
    t.dim = s.closed_dim();
    t.degrees = s.closed_degrees();
    for (std::size_t x = 0; x < fields.size(); ++x) {
        t.m.push_back(action_matrix(s, fields[x]));
        t.labels.push_back("X" + std::to_string(x));
    }
    t.fields = std::move(fields);
    return t;
}

Mat orbit_tangent_vectors(const ActionTable& t, const Vec& a) {
    Mat out;
    for (std::size_t x = 0; x < t.fields.size(); ++x) out.push_back(t.apply(x, a));
    return out;
}

std::size_t orbit_span_dim(const ActionTable& t, const Vec& a) { return rank(orbit_tangent_vectors(t, a), t.dim); }

int symplectic_multiplicity(const ActionTable& t, const Vec& a) {
    return static_cast<int>(t.dim) - static_cast<int>(orbit_span_dim(t, a));
}

Vec exp_action(const ActionTable& t, const Vec& coeffs, const Vec& a) {
    Vec result = a;
    Vec term = a;
    for (std::size_t n = 1; n <= t.dim + 1; ++n) {
        Vec next(t.dim, Q(0));
        for (std::size_t x = 0; x < t.fields.size(); ++x) {
            if (coeffs[x] == 0) continue;
            if (t.fields[x].degree <= 0) throw CheckError("exp_action: field " + t.fields[x].name + " has degree 0");
            Vec v = t.apply(x, term);
            for (std::size_t i = 0; i < t.dim; ++i) next[i] += coeffs[x] * v[i];
        }
        for (auto& q : next) q /= Q(static_cast<long>(n));
        if (is_zero(next)) break;
        for (std::size_t i = 0; i < t.dim; ++i) result[i] += next[i];
        term = std::move(next);
    }
    return result;
}

Elimination eliminate(const ActionTable& t, const Vec& a) {
    if (a.size() != t.dim) throw InputError("coordinate count " + std::to_string(a.size()) + ", expected " + std::to_string(t.dim));
    Elimination e;
    e.coords = a;
    std::vector<std::size_t> pos;
    for (std::size_t x = 0; x < t.fields.size(); ++x)
        if (t.fields[x].degree > 0) pos.push_back(x);
    std::set<int> levels(t.degrees.begin(), t.degrees.end());
    for (int d : levels) {
        std::vector<std::size_t> lower, here;
        for (std::size_t i = 0; i < t.dim; ++i) {
            if (t.degrees[i] < d) lower.push_back(i);
            if (t.degrees[i] == d) here.push_back(i);
        }
        std::vector<Vec> v;
        for (std::size_t x : pos) v.push_back(t.apply(x, e.coords));
        Mat c;
        for (std::size_t r : lower) {
            Vec row(pos.size());
            for (std::size_t p = 0; p < pos.size(); ++p) row[p] = v[p][r];
            c.push_back(std::move(row));
        }
        Mat kb = kernel_basis(c, pos.size());
        Mat w;
        for (const auto& k : kb) {
            Vec row(here.size(), Q(0));
            for (std::size_t p = 0; p < pos.size(); ++p)
                if (k[p] != 0)
                    for (std::size_t h = 0; h < here.size(); ++h) row[h] += k[p] * v[p][here[h]];
            w.push_back(std::move(row));
        }
        std::vector<std::size_t> order(here.size());
        for (std::size_t h = 0; h < here.size(); ++h) order[h] = here.size() - 1 - h;
        Echelon ech = rref(w, here.size(), order);
        Vec cur(here.size());
        for (std::size_t h = 0; h < here.size(); ++h) cur[h] = e.coords[here[h]];
        Vec red = ech.reduce(cur);
        Vec target(here.size());
        for (std::size_t h = 0; h < here.size(); ++h) target[h] = red[h] - cur[h];
        if (is_zero(target)) continue;
        LinearSolution sol = solve_linear(transpose(w, here.size()), target);
        if (!sol.feasible) throw CheckError("elimination system infeasible at degree " + std::to_string(d));
        Vec coeffs(t.fields.size(), Q(0));
        for (std::size_t i = 0; i < kb.size(); ++i)
            if (sol.particular[i] != 0)
                for (std::size_t p = 0; p < pos.size(); ++p) coeffs[pos[p]] += sol.particular[i] * kb[i][p];
        ReductionStep step{d, coeffs, e.coords, exp_action(t, coeffs, e.coords)};
        for (std::size_t r : lower)
            if (step.after[r] != step.before[r]) throw CheckError("elimination disturbed a lower level");
        for (std::size_t h = 0; h < here.size(); ++h)
            if (step.after[here[h]] != red[h]) throw CheckError("elimination missed its target");
        e.coords = step.after;
        e.trace.push_back(std::move(step));
    }
    return e;
}

Vec replay(const ActionTable& t, const std::vector<ReductionStep>& trace, const Vec& a) {
    Vec cur = a;
    for (const auto& s : trace) cur = exp_action(t, s.coeffs, cur);
    return cur;
}

std::vector<std::vector<int>> residual_signs(const RestrictionSpace& s) {
    std::vector<std::vector<int>> out;
    std::vector<int> torus;
    for (int d : s.closed_degrees()) torus.push_back(d % 2 ? -1 : 1);
    out.push_back(torus);
    const auto& g = s.germ();
    for (const auto& sym : g.symmetries) {
        PolyMap phi;
        for (std::size_t i = 0; i < g.nvars(); ++i) phi.push_back(Polynomial::variable(g.nvars(), i) * Q(sym[i]));
        std::vector<int> act;
        for (std::size_t j = 0; j < s.closed_dim(); ++j) {
            Vec c = s.restrict_closed(pullback(phi, s.basis()[j].form));
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != j && c[i] != 0) throw CheckError("symmetry acts non-diagonally on " + s.basis()[j].name);
            if (c[j] != 1 && c[j] != -1) throw CheckError("symmetry acts on " + s.basis()[j].name + " by " + to_string(c[j]));
            act.push_back(c[j] == 1 ? 1 : -1);
        }
        out.push_back(act);
    }
    return out;
}

Normalized normalize(const std::vector<int>& degrees, const Vec& a, const std::vector<std::vector<int>>& signs) {
    Normalized n;
    n.coords.assign(a.size(), Radical());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) {
            n.lead = i;
            break;
        }
    if (!n.lead) return n;
    std::size_t l = *n.lead;
    Q base = abs(a[l]);
    std::vector<Radical> v(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) v[j] = Radical::power(a[j], base, -degrees[j], degrees[l]);

    std::set<std::vector<int>> group{std::vector<int>(a.size(), 1)};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& g : std::vector<std::vector<int>>(group.begin(), group.end()))
            for (const auto& s : signs) {
                std::vector<int> p(a.size());
                for (std::size_t j = 0; j < a.size(); ++j) p[j] = g[j] * s[j];
                grew = group.insert(p).second || grew;
            }
    }
    n.sign_genuine = true;
    std::optional<std::vector<Radical>> best;
    for (const auto& g : group) {
        if (g[l] < 0) n.sign_genuine = false;
        std::vector<Radical> c(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) c[j] = g[j] < 0 ? -v[j] : v[j];
        if (!best) {
            best = c;
            continue;
        }
        int cs = c[l].sign(), bs = (*best)[l].sign();
        if (cs != bs) {
            if (cs > bs) best = c;
            continue;
        }
        if (std::lexicographical_compare(c.begin(), c.end(), best->begin(), best->end())) best = c;
    }
    n.coords = *best;
    n.sign = n.coords[l].sign();
    return n;
}

namespace {

std::string range_label(std::size_t s, std::size_t offset) { return std::to_string(s - offset); }

} // namespace

DecisionTree decision_tree(const std::string& family) {
    auto first = [](const Vec& c) -> std::size_t {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) return i + 1;
        return 0;
    };
    if (family == "U7")
        return [first](const Vec& c) -> Decision {
            std::size_t s = first(c);
            if (s == 0) return {"7", "7"};
            if (s == 1) return {"0", c[1] != 0 ? "0_0" : "0_1"};
            return {range_label(s, 1), range_label(s, 1)};
        };
    if (family == "U8")
        return [first](const Vec& c) -> Decision {
            std::size_t s = first(c);
            if (s == 0) return {"8", "8"};
            if (s == 1) return {"0", c[1] != 0 ? "0_1" : "0_∞"};
            if (s == 2) return {"1", c[3] == 2 * c[2] ? "1_∞" : "1_5"};
            if (s == 3) {
                if (c[3] == 2 * c[2]) return {"3,0_∞", "3,0_∞"};
                if (c[3] == -c[2] / 3) return {"3,0_5", "3,0_5"};
                return {"2", "2"};
            }
            if (s == 4) return {"3,1", "3,1"};
            return {range_label(s, 1), range_label(s, 1)};
        };
    if (family == "U9")
        return [first](const Vec& c) -> Decision {
            std::size_t s = first(c);
            if (s == 0) return {"9", "9"};
            if (s == 1) return {"0", c[1] != 0 ? "0_0" : "0_1"};
            if (s == 2) return {"1", "1"};
            if (s == 3) {
                if (c[3] != 0) return {"2", "2"};
                if (c[4] != 0) return {"3,0", "3,0"};
                return {"4,0", "4,0"};
            }
            if (s == 4) return {"3,1", "3,1"};
            if (s == 5) return {"4,1", "4,1"};
            return {range_label(s, 1), range_label(s, 1)};
        };
    throw InputError("no decision tree for germ " + family);
}

Classification classify(const RestrictionSpace& s, const ActionTable& t, const std::vector<NormalFormPattern>& patterns,
                        const DecisionTree& tree, const Vec& a) {
    Classification c;
    c.elimination = eliminate(t, a);
    const Vec& red = c.elimination.coords;
    Normalized n = normalize(t.degrees, red, residual_signs(s));
    c.normal_form = n.coords;
    c.sign = n.sign;
    c.sign_genuine = n.sign_genuine;

    if (!tree || patterns.empty()) {
        c.label = n.lead ? s.basis()[*n.lead].name : "0";
        c.sub = c.label;
        for (std::size_t j = 0; j < red.size(); ++j)
            if (n.lead && j != *n.lead && red[j] != 0) c.moduli.emplace_back("c(" + s.basis()[j].name + ")", n.coords[j]);
        return c;
    }

    Decision d = tree(red);
    c.label = d.label;
    c.sub = d.sub;
    const NormalFormPattern* p = nullptr;
    for (const auto& q : patterns)
        if (q.label == d.label) p = &q;
    if (!p) throw CheckError("no normal form recorded for class " + d.label);
    if (p->lead != n.lead) throw CheckError("class " + d.label + ": lead coefficient mismatch");
    for (std::size_t j = 0; j < red.size(); ++j) {
        if (n.lead && j == *n.lead) continue;
        if (auto it = p->fixed.find(j); it != p->fixed.end()) {
            if (n.coords[j] != Radical(it->second))
                throw CheckError("class " + d.label + ": " + s.basis()[j].name + " is not " + to_string(it->second));
            continue;
        }
        if (std::find(p->moduli.begin(), p->moduli.end(), j) != p->moduli.end()) continue;
        if (n.coords[j].sign() != 0)
            throw CheckError("class " + d.label + ": reduction left " + s.basis()[j].name + " outside the normal form");
    }
    for (std::size_t m = 0; m < p->moduli.size(); ++m) c.moduli.emplace_back(p->moduli_names[m], n.coords[p->moduli[m]]);
    return c;
}

int class_codimension(const ActionTable& t, const Vec& nf, std::size_t nmoduli) {
    return static_cast<int>(t.dim) - static_cast<int>(orbit_span_dim(t, nf)) - static_cast<int>(nmoduli);
}

} // namespace algres
