#include "algres/germ.hpp"
#include "algres/error.hpp"

#include <set>

namespace algres {

bool verify_branch(const CurveGerm& g, const Branch& b) {
    for (const auto& f : g.equations)
        if (!f.compose(b.map).is_zero()) return false;
    return true;
}

bool vanishes_on_germ(const CurveGerm& g, const Polynomial& h) {
    for (const auto& b : g.branches)
        if (!h.compose(b.map).is_zero()) return false;
    return true;
}

bool preserves(const CurveGerm& g, const std::vector<int>& signs) {
    if (signs.size() != g.nvars()) return false;
    PolyMap phi;
    for (std::size_t i = 0; i < g.nvars(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) return false;
        phi.push_back(Polynomial::variable(g.nvars(), i) * Q(signs[i]));
    }
    for (const auto& f : g.equations)
        if (!vanishes_on_germ(g, f.compose(phi))) return false;
    // The image of each branch must lie on the germ as well.
    for (const auto& b : g.branches) {
        PolyMap img;
        for (std::size_t i = 0; i < g.nvars(); ++i) img.push_back(b.map[i] * Q(signs[i]));
        for (const auto& f : g.equations)
            if (!f.compose(img).is_zero()) return false;
    }
    return true;
}

void CurveGerm::validate() const {
    if (vars.empty()) throw InputError(name + ": no variables");
    if (weights.size() != vars.size()) throw InputError(name + ": weights/variables count mismatch");
    for (int w : weights)
        if (w <= 0) throw InputError(name + ": weights must be positive");
    for (const auto& f : equations) {
        if (f.nvars() != nvars()) throw InputError(name + ": equation arity mismatch");
        if (f.is_zero()) throw InputError(name + ": zero equation");
        if (!f.quasi_degree(weights).homogeneous)
            throw InputError(name + ": equation " + f.str(vars) + " is not quasi-homogeneous");
    }
    if (branches.empty()) throw InputError(name + ": no branches");
    std::set<std::vector<Polynomial::Terms>> seen;
    for (const auto& b : branches) {
        if (b.map.size() != nvars()) throw InputError(name + ": branch " + b.label + " arity mismatch");
        bool nonzero = false;
        std::vector<Polynomial::Terms> key;
        for (const auto& c : b.map) {
            if (c.nvars() != 1) throw InputError(name + ": branch " + b.label + " must use one parameter t");
            if (c.coeff(Monomial(1)) != 0)
                throw InputError(name + ": branch " + b.label + " does not pass through 0");
            if (c.degree() > jet_cutoff)
                throw InputError(name + ": branch " + b.label + " exceeds jet cutoff " + std::to_string(jet_cutoff));
            nonzero = nonzero || !c.is_zero();
            key.push_back(c.terms());
        }
        if (!nonzero) throw InputError(name + ": branch " + b.label + " is identically zero");
        if (!verify_branch(*this, b))
            throw InputError(name + ": branch " + b.label + " does not satisfy the defining equations");
        if (!seen.insert(key).second) throw InputError(name + ": duplicate branch " + b.label);
    }
    for (const auto& s : symmetries)
        if (!preserves(*this, s)) {
            std::string d;
            for (int x : s) d += (x < 0 ? "-" : "+");
            throw InputError(name + ": symmetry " + d + " does not preserve the germ");
        }
}

CurveGerm CurveGerm::sub_germ(const std::vector<std::size_t>& idx) const {
    CurveGerm s;
    s.name = name + "[";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        s.name += (k ? "," : "") + branches.at(idx[k]).label;
        s.branches.push_back(branches[idx[k]]);
    }
    s.name += "]";
    s.vars = vars;
    s.weights = weights;
    s.jet_cutoff = jet_cutoff;
    return s;
}

BranchEvaluator::BranchEvaluator(const CurveGerm& g) : g_(g) {
    pw_.resize(g.branches.size());
    for (std::size_t b = 0; b < g.branches.size(); ++b) {
        pw_[b].resize(g.nvars());
        for (std::size_t i = 0; i < g.nvars(); ++i) pw_[b][i].push_back(Polynomial::constant(1, 1));
    }
    offset_.assign(g.branches.size(), 0);
}

Polynomial BranchEvaluator::image(std::size_t b, const Monomial& m) {
    Polynomial r = Polynomial::constant(1, 1);
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        auto& pw = pw_[b][i];
        while (static_cast<int>(pw.size()) <= m.e[i]) pw.push_back(pw.back() * g_.branches[b].map[i]);
        if (m.e[i]) r = r * pw[static_cast<std::size_t>(m.e[i])];
        if (r.is_zero()) break;
    }
    return r;
}

Vec BranchEvaluator::column(const Monomial& m) {
    std::vector<Polynomial> imgs;
    std::size_t total = 0;
    std::vector<std::size_t> sizes;
    for (std::size_t b = 0; b < g_.branches.size(); ++b) {
        imgs.push_back(image(b, m));
        std::size_t len = static_cast<std::size_t>(std::max(imgs.back().degree(), 0) + 1);
        sizes.push_back(len);
        total += len;
    }
    Vec col;
    col.reserve(total);
    for (std::size_t b = 0; b < imgs.size(); ++b) {
        Series s = to_series(imgs[b], static_cast<int>(sizes[b]));
        col.insert(col.end(), s.begin(), s.end());
    }
    return col;
}

std::vector<Polynomial> ideal_piece(const CurveGerm& g, int delta, BranchEvaluator& ev) {
    auto mons = monomials_of_degree(g.weights, delta);
    if (mons.empty()) return {};
    // Rows are (branch, t-power); branch images of one degree may differ in length.
    std::vector<std::vector<Polynomial>> imgs(mons.size());
    std::vector<int> maxdeg(g.branches.size(), 0);
    for (std::size_t j = 0; j < mons.size(); ++j)
        for (std::size_t b = 0; b < g.branches.size(); ++b) {
            imgs[j].push_back(ev.image(b, mons[j]));
            maxdeg[b] = std::max(maxdeg[b], imgs[j][b].degree());
        }
    Mat a;
    for (std::size_t b = 0; b < g.branches.size(); ++b)
        for (int k = 0; k <= maxdeg[b]; ++k) {
            Vec row(mons.size(), Q(0));
            Monomial tk(std::vector<int>{k});
            bool any = false;
            for (std::size_t j = 0; j < mons.size(); ++j) {
                row[j] = imgs[j][b].coeff(tk);
                any = any || row[j] != 0;
            }
            if (any) a.push_back(std::move(row));
        }
    std::vector<Polynomial> out;
    for (const auto& v : kernel_basis(a, mons.size())) {
        Polynomial p(g.nvars());
        for (std::size_t j = 0; j < mons.size(); ++j) p.add_term(mons[j], v[j]);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Polynomial> ideal_piece(const CurveGerm& g, int delta) {
    BranchEvaluator ev(g);
    return ideal_piece(g, delta, ev);
}

bool is_tangent(const CurveGerm& g, const VectorField& x) {
    for (const auto& f : g.equations)
        if (!vanishes_on_germ(g, directional(x, f))) return false;
    // Germs without equations: tangency along each branch means X∘b is
    // proportional to b'; for Euler multiples this always holds.
    if (g.equations.empty()) {
        for (const auto& b : g.branches) {
            std::vector<Polynomial> xb;
            for (const auto& c : x) xb.push_back(c.compose(b.map));
            // X∘b ∧ b' = 0 componentwise.
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = i + 1; j < x.size(); ++j) {
                    Polynomial m = xb[i] * b.map[j].derivative(0) - xb[j] * b.map[i].derivative(0);
                    if (!m.is_zero()) return false;
                }
        }
    }
    return true;
}

std::string monomial_name(const Monomial& m, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (!m.e[i]) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    return s.empty() ? "1" : s;
}

TangentField make_euler_multiple(const CurveGerm& g, const Monomial& m) {
    TangentField t;
    t.g = m;
    t.degree = m.weighted(g.weights);
    Polynomial gm = Polynomial::term(m, 1);
    for (const auto& c : euler_field(g.weights)) t.field.push_back(gm * c);
    std::string mn = monomial_name(m, g.vars);
    t.name = mn == "1" ? "E" : mn + "*E";
    return t;
}

std::vector<TangentField> euler_tangent_fields(const CurveGerm& g, int max_delta) {
    std::vector<TangentField> out;
    BranchEvaluator ev(g);
    for (int d = 0; d <= max_delta; ++d) {
        auto mons = monomials_of_degree(g.weights, d);
        if (mons.empty()) continue;
        // Classes modulo the ideal: reduce each monomial column by what is taken.
        std::size_t rows = 0;
        std::vector<Vec> cols;
        std::vector<int> maxdeg(g.branches.size(), 0);
        std::vector<std::vector<Polynomial>> imgs(mons.size());
        for (std::size_t j = 0; j < mons.size(); ++j)
            for (std::size_t b = 0; b < g.branches.size(); ++b) {
                imgs[j].push_back(ev.image(b, mons[j]));
                maxdeg[b] = std::max(maxdeg[b], imgs[j][b].degree());
            }
        for (int m : maxdeg) rows += static_cast<std::size_t>(m + 1);
        for (std::size_t j = 0; j < mons.size(); ++j) {
            Vec c;
            c.reserve(rows);
            for (std::size_t b = 0; b < g.branches.size(); ++b) {
                Series s = to_series(imgs[j][b], maxdeg[b] + 1);
                c.insert(c.end(), s.begin(), s.end());
            }
            cols.push_back(std::move(c));
        }
        Mat taken;
        for (std::size_t j = 0; j < mons.size(); ++j) {
            Mat trial = taken;
            trial.push_back(cols[j]);
            if (rank(trial, rows) == trial.size()) {
                taken = std::move(trial);
                TangentField f = make_euler_multiple(g, mons[j]);
                if (!is_tangent(g, f.field))
                    throw CheckError(g.name + ": field " + f.name + " is not tangent");
                out.push_back(std::move(f));
            }
        }
    }
    return out;
}

} // namespace algres
