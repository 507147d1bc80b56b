#include "algres/restriction.hpp"
#include "algres/error.hpp"

#include <algorithm>

namespace algres {

std::vector<std::pair<Monomial, int>> one_form_monomials(const Weights& w, int delta) {
    std::vector<std::pair<Monomial, int>> out;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (delta - w[k] >= 0)
            for (auto& m : monomials_of_degree(w, delta - w[k])) out.emplace_back(m, static_cast<int>(k));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<FormCoord> two_form_columns(const Weights& w, int delta) {
    std::vector<FormCoord> cols;
    int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int rest = delta - w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(j)];
            if (rest < 0) continue;
            for (auto& m : monomials_of_degree(w, rest)) cols.push_back({m, i, j});
        }
    std::sort(cols.begin(), cols.end());
    return cols;
}

DiffForm one_form(const Polynomial& h, int k, std::size_t n) {
    DiffForm a(n, 1);
    a.add({k}, h);
    return a;
}

} // namespace

Vec RestrictionSpace::piece_vector(const DiffForm& f, const Level& lv) const {
    Vec v(lv.cols.size(), Q(0));
    for (const auto& [idx, c] : f.coeffs())
        for (const auto& [m, q] : c.terms()) {
            auto it = lv.index.find({m, idx[0], idx[1]});
            if (it == lv.index.end()) throw CheckError("form component outside its graded piece");
            v[it->second] += q;
        }
    return v;
}

RestrictionSpace::RestrictionSpace(CurveGerm g, int bound, std::vector<FormBasisElement> closed_basis,
                                   std::vector<FormBasisElement> extra_basis)
    : g_(std::move(g)), bound_(bound) {
    if (bound_ < 0) throw InputError("degree bound must be non-negative");
    const std::size_t n = g_.nvars();
    const Weights& w = g_.weights;
    const bool auto_basis = closed_basis.empty() && extra_basis.empty();
    BranchEvaluator ev(g_);
    std::map<int, std::vector<Polynomial>> ideal;
    auto ideal_at = [&](int d) -> const std::vector<Polynomial>& {
        auto it = ideal.find(d);
        if (it == ideal.end()) it = ideal.emplace(d, d < 0 ? std::vector<Polynomial>{} : ideal_piece(g_, d, ev)).first;
        return it->second;
    };

    std::map<int, std::vector<const FormBasisElement*>> supplied;
    for (const auto& b : closed_basis) {
        if (b.degree < 0 || b.degree > bound_) throw BoundError("basis element " + b.name + " above bound: increase D");
        supplied[b.degree].push_back(&b);
    }
    for (const auto& b : extra_basis) {
        if (b.degree < 0 || b.degree > bound_) throw BoundError("basis element " + b.name + " above bound: increase D");
        supplied[b.degree].push_back(&b);
    }

    std::vector<FormBasisElement> closed_out, extra_out;
    levels_.resize(static_cast<std::size_t>(bound_) + 1);
    for (int d = 0; d <= bound_; ++d) {
        Level& lv = levels_[static_cast<std::size_t>(d)];
        lv.cols = two_form_columns(w, d);
        for (std::size_t c = 0; c < lv.cols.size(); ++c) lv.index[lv.cols[c]] = c;
        if (lv.cols.empty()) continue;

        Mat gens;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (const auto& h : ideal_at(d - w[i] - w[j]))
                    gens.push_back(piece_vector(DiffForm::dx2(n, static_cast<int>(i), static_cast<int>(j), h), lv));
        for (std::size_t k = 0; k < n; ++k)
            for (const auto& h : ideal_at(d - w[k])) {
                DiffForm dh = exterior_d(one_form(h, static_cast<int>(k), n));
                if (!dh.is_zero()) gens.push_back(piece_vector(dh, lv));
            }
        lv.a0 = rref(gens, lv.cols.size());
        lv.free = lv.a0.free_columns();

        // Images of closed forms: d(m dx_k).
        std::vector<DiffForm> zgen;
        for (const auto& [m, k] : one_form_monomials(w, d)) {
            DiffForm dz = exterior_d(one_form(Polynomial::term(m, 1), k, n));
            if (dz.is_zero()) continue;
            Q lead = dz.coeffs().begin()->second.terms().begin()->second;
            zgen.push_back(dz * (Q(1) / lead));
        }
        Mat zred;
        for (const auto& z : zgen) zred.push_back(lv.a0.reduce(piece_vector(z, lv)));
        std::size_t zdim = rank(zred, lv.cols.size());

        std::vector<FormBasisElement> here;
        if (auto_basis) {
            Mat taken;
            for (std::size_t t = 0; t < zgen.size() && taken.size() < zdim; ++t) {
                Mat trial = taken;
                trial.push_back(zred[t]);
                if (rank(trial, lv.cols.size()) == trial.size()) {
                    taken = std::move(trial);
                    here.push_back({"", zgen[t], d, true});
                }
            }
            for (std::size_t c = 0; c < lv.cols.size() && taken.size() < lv.free.size(); ++c) {
                Vec e(lv.cols.size(), Q(0));
                e[c] = 1;
                Mat trial = taken;
                trial.push_back(lv.a0.reduce(e));
                if (rank(trial, lv.cols.size()) == trial.size()) {
                    taken = std::move(trial);
                    const auto& fc = lv.cols[c];
                    here.push_back({"", DiffForm::dx2(n, fc.i, fc.j, Polynomial::term(fc.m, 1)), d, false});
                }
            }
        } else {
            std::size_t nclosed = 0;
            for (const auto* b : supplied[d]) {
                if (b->form.degree() != 2) throw CheckError(b->name + " is not a 2-form");
                DiffForm f = b->form.truncate_vars(n);
                auto parts = f.split_by_degree(w);
                if (parts.size() != 1 || parts.begin()->first != d)
                    throw CheckError(b->name + " is not quasi-homogeneous of degree " + std::to_string(d));
                if (b->closed) {
                    if (!is_closed(f)) throw CheckError(b->name + " is not closed");
                    ++nclosed;
                }
                here.push_back({b->name, f, d, b->closed});
            }
            if (nclosed != zdim)
                throw CheckError(g_.name + ": closed restrictions at degree " + std::to_string(d) + " have dimension " +
                                 std::to_string(zdim) + ", basis lists " + std::to_string(nclosed));
            if (here.size() != lv.free.size())
                throw CheckError(g_.name + ": restrictions at degree " + std::to_string(d) + " have dimension " +
                                 std::to_string(lv.free.size()) + ", basis lists " + std::to_string(here.size()));
        }

        // Change of basis between the free-column coordinates and the basis.
        if (!here.empty()) {
            Mat b(lv.free.size(), Vec(here.size(), Q(0)));
            for (std::size_t e = 0; e < here.size(); ++e) {
                Vec r = lv.a0.reduce(piece_vector(here[e].form, lv));
                for (std::size_t f = 0; f < lv.free.size(); ++f) b[f][e] = r[lv.free[f]];
            }
            try {
                lv.inv = inverse(b);
            } catch (const CheckError&) {
                throw CheckError(g_.name + ": basis elements at degree " + std::to_string(d) +
                                 " are dependent modulo vanishing forms");
            }
        }
        for (auto& e : here) (e.closed ? closed_out : extra_out).push_back(std::move(e));

        // Ideal generated by the equations, compared with the branch ideal.
        if (!g_.equations.empty()) {
            std::vector<Polynomial> gen;
            for (const auto& f : g_.equations) {
                int fd = f.quasi_degree(w).degree;
                for (auto& m : monomials_of_degree(w, d - fd)) gen.push_back(f * Polynomial::term(m, 1));
            }
            auto mons = monomials_of_degree(w, d);
            Mat rows;
            for (const auto& p : gen) {
                Vec v(mons.size(), Q(0));
                for (std::size_t c = 0; c < mons.size(); ++c) v[c] = p.coeff(mons[c]);
                rows.push_back(v);
            }
            if (rank(rows, mons.size()) != ideal_at(d).size()) discrepancies_.push_back(d);
        }
    }

    // Pieces in the stabilization window must vanish.
    int maxw = *std::max_element(w.begin(), w.end());
    for (int d = std::max(0, bound_ - 2 * maxw); d <= bound_; ++d)
        if (!levels_[static_cast<std::size_t>(d)].free.empty())
            throw BoundError(g_.name + ": nonzero restrictions at degree " + std::to_string(d) + ": increase D");

    // Supplied bases keep their listed order; automatic ones are numbered by degree.
    if (!auto_basis) {
        auto pos = [&](const std::vector<FormBasisElement>& list, const std::string& name) {
            for (std::size_t i = 0; i < list.size(); ++i)
                if (list[i].name == name) return i;
            return list.size();
        };
        std::stable_sort(closed_out.begin(), closed_out.end(), [&](const auto& a, const auto& b) {
            return pos(closed_basis, a.name) < pos(closed_basis, b.name);
        });
        std::stable_sort(extra_out.begin(), extra_out.end(), [&](const auto& a, const auto& b) {
            return pos(extra_basis, a.name) < pos(extra_basis, b.name);
        });
    } else {
        for (std::size_t i = 0; i < closed_out.size(); ++i) closed_out[i].name = "θ" + std::to_string(i + 1);
        for (std::size_t i = 0; i < extra_out.size(); ++i)
            extra_out[i].name = extra_out.size() == 1 ? "σ" : "σ" + std::to_string(i + 1);
    }
    closed_dim_ = closed_out.size();
    basis_ = std::move(closed_out);
    basis_.insert(basis_.end(), extra_out.begin(), extra_out.end());

    // Per-level basis ids in the order the inverse was built (the order of `here`).
    for (int d = 0; d <= bound_; ++d) {
        Level& lv = levels_[static_cast<std::size_t>(d)];
        if (lv.free.empty()) continue;
        std::vector<std::size_t> ids;
        std::vector<std::size_t> cl, ex;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].degree == d) (basis_[i].closed ? cl : ex).push_back(i);
        // `here` listed closed elements before the rest in the supplied or generated order.
        if (!auto_basis) {
            std::vector<std::size_t> order;
            for (const auto* b : supplied[d])
                for (std::size_t i = 0; i < basis_.size(); ++i)
                    if (basis_[i].name == b->name && basis_[i].degree == d) order.push_back(i);
            lv.basis_ids = order;
        } else {
            lv.basis_ids = cl;
            lv.basis_ids.insert(lv.basis_ids.end(), ex.begin(), ex.end());
        }
    }
}

const RestrictionSpace::Level& RestrictionSpace::level(int delta) const {
    if (delta < 0 || delta > bound_) throw BoundError("form component of degree " + std::to_string(delta) + " above bound: increase D");
    return levels_[static_cast<std::size_t>(delta)];
}

const std::vector<FormCoord>& RestrictionSpace::columns(int delta) const { return level(delta).cols; }

Vec RestrictionSpace::coordinates_in_piece(const DiffForm& f, int delta) const {
    return piece_vector(f, level(delta));
}

bool RestrictionSpace::in_a0(const DiffForm& f, int delta) const {
    const Level& lv = level(delta);
    return lv.a0.contains(piece_vector(f, lv));
}

std::vector<int> RestrictionSpace::closed_degrees() const {
    std::vector<int> d;
    for (std::size_t i = 0; i < closed_dim_; ++i) d.push_back(basis_[i].degree);
    return d;
}

Vec RestrictionSpace::restrict(const DiffForm& w) const {
    if (w.degree() != 2) throw CheckError("restrict: not a 2-form");
    Vec out(basis_.size(), Q(0));
    DiffForm f = w.nvars() >= nvars() ? w.truncate_vars(nvars()) : w.extend(nvars());
    for (const auto& [d, part] : f.split_by_degree(g_.weights)) {
        const Level& lv = level(d);
        if (lv.free.empty()) continue;
        Vec r = lv.a0.reduce(piece_vector(part, lv));
        for (std::size_t e = 0; e < lv.basis_ids.size(); ++e) {
            Q s = 0;
            for (std::size_t k = 0; k < lv.free.size(); ++k)
                if (r[lv.free[k]] != 0) s += lv.inv[e][k] * r[lv.free[k]];
            out[lv.basis_ids[e]] += s;
        }
    }
    return out;
}

Vec RestrictionSpace::restrict_closed(const DiffForm& w) const {
    Vec full = restrict(w);
    for (std::size_t i = closed_dim_; i < full.size(); ++i)
        if (full[i] != 0) throw CheckError("restriction is not in the closed subspace");
    full.resize(closed_dim_);
    return full;
}

DiffForm RestrictionSpace::representative(const Vec& c) const {
    DiffForm r(nvars(), 2);
    for (std::size_t j = 0; j < c.size() && j < closed_dim_; ++j)
        if (c[j] != 0) r += basis_[j].form * c[j];
    return r;
}

} // namespace algres
