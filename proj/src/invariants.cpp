#include "algres/invariants.hpp"
#include "algres/error.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>

#include <omp.h>

namespace algres {

namespace {

constexpr int no_order = INT_MAX / 4;

struct ChartVars {
    std::vector<int> ind, dep, sign;
};

ChartVars chart_vars(int n, unsigned mask) {
    ChartVars v;
    for (int i = 0; i < n; ++i) {
        bool in_j = (mask >> i) & 1u;
        v.ind.push_back(in_j ? 2 * i : 2 * i + 1);
        v.dep.push_back(in_j ? 2 * i + 1 : 2 * i);
        v.sign.push_back(in_j ? 1 : -1);
    }
    return v;
}

int branch_order(const Polynomial& p) { return p.is_zero() ? no_order : p.order(); }

std::vector<Monomial> jet_monomials(int n, int lo, int hi) {
    Weights ones(static_cast<std::size_t>(n), 1);
    std::vector<Monomial> out;
    for (int d = lo; d <= hi; ++d)
        for (auto& m : monomials_of_degree(ones, d)) out.push_back(std::move(m));
    return out;
}

// t-order of ∂(u^e)/∂u_i along a branch with variable orders ords; no_order if zero.
int derivative_order(const Monomial& e, std::size_t i, const std::vector<int>& ords) {
    if (e.e[i] == 0) return no_order;
    long o = 0;
    for (std::size_t j = 0; j < e.e.size(); ++j) {
        int ej = e.e[j] - (j == i ? 1 : 0);
        if (ej == 0) continue;
        if (ords[j] >= no_order) return no_order;
        o += static_cast<long>(ej) * ords[j];
    }
    return o >= no_order ? no_order : static_cast<int>(o);
}

bool feasible_impl(const std::vector<Branch>& branches, int n, unsigned mask, int k, int jet) {
    if (k <= 0) return true;
    auto cv = chart_vars(n, mask);
    std::size_t nb = branches.size();
    std::vector<std::vector<int>> ords(nb, std::vector<int>(static_cast<std::size_t>(n)));
    for (std::size_t b = 0; b < nb; ++b)
        for (int i = 0; i < n; ++i)
            ords[b][static_cast<std::size_t>(i)] = branch_order(branches[b].map[static_cast<std::size_t>(cv.ind[i])]);

    std::vector<Monomial> mons;
    for (auto& e : jet_monomials(n, 2, jet)) {
        bool keep = false;
        for (std::size_t b = 0; b < nb && !keep; ++b)
            for (std::size_t i = 0; i < static_cast<std::size_t>(n) && !keep; ++i)
                if (derivative_order(e, i, ords[b]) < k) keep = true;
        if (keep) mons.push_back(std::move(e));
    }
    std::size_t m = mons.size();

    Mat rows;
    for (std::size_t b = 0; b < nb; ++b) {
        // pw[i][e] = u_i(t)^e truncated below t^k
        std::vector<std::vector<Series>> pw(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            auto& p = pw[static_cast<std::size_t>(i)];
            Series base = to_series(branches[b].map[static_cast<std::size_t>(cv.ind[i])], k);
            Series one(static_cast<std::size_t>(k), Q(0));
            one[0] = 1;
            p.push_back(one);
            for (int e = 1; e <= jet; ++e) {
                Series next;
                series_mul_into(next, p.back(), base, k);
                p.push_back(std::move(next));
            }
        }
        for (int i = 0; i < n; ++i) {
            std::size_t ii = static_cast<std::size_t>(i);
            Mat block(static_cast<std::size_t>(k), Vec(m + 1, Q(0)));
            for (std::size_t c = 0; c < m; ++c) {
                const auto& e = mons[c];
                if (derivative_order(e, ii, ords[b]) >= k) continue;
                Series acc(static_cast<std::size_t>(k), Q(0));
                acc[0] = Q(e.e[ii] * cv.sign[ii]);
                for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
                    int ej = e.e[j] - (j == ii ? 1 : 0);
                    if (ej == 0) continue;
                    Series next;
                    series_mul_into(next, acc, pw[j][static_cast<std::size_t>(ej)], k);
                    acc = std::move(next);
                }
                for (int t = 0; t < k; ++t) block[static_cast<std::size_t>(t)][c] = acc[static_cast<std::size_t>(t)];
            }
            Series rhs = to_series(branches[b].map[static_cast<std::size_t>(cv.dep[i])], k);
            for (int t = 0; t < k; ++t) {
                auto& row = block[static_cast<std::size_t>(t)];
                row[m] = -rhs[static_cast<std::size_t>(t)];
                if (!is_zero(row)) rows.push_back(std::move(row));
            }
        }
    }
    if (rows.empty()) return true;
    Echelon e = rref_serial(std::move(rows), m + 1);
    return std::find(e.pivots.begin(), e.pivots.end(), m) == e.pivots.end();
}

int effective_jet(const LtOptions& o) { return o.jet > 0 ? o.jet : 2 * o.ceiling; }

std::vector<Branch> pick(const std::vector<Branch>& all, const std::vector<std::size_t>& idx) {
    std::vector<Branch> out;
    for (auto i : idx) {
        if (i >= all.size()) throw InputError("branch index " + std::to_string(i + 1) + " out of range");
        out.push_back(all[i]);
    }
    return out;
}

Q omega_eval(const Mat& om, const Vec& u, const Vec& v) {
    Q s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0 && om[i][j] != 0) s += u[i] * om[i][j] * v[j];
    }
    return s;
}

Vec jet_vector(const Branch& b, int t) {
    Vec v;
    for (const auto& c : b.map) v.push_back(c.coeff(Monomial(std::vector<int>{t})));
    return v;
}

int max_t_degree(const std::vector<Branch>& branches) {
    int d = 0;
    for (const auto& b : branches)
        for (const auto& c : b.map) d = std::max(d, c.degree());
    return d;
}

// Appends v when it is independent of the current list.
bool add_independent(std::vector<Vec>& basis, const Vec& v) {
    if (is_zero(v)) return false;
    Mat m = basis;
    m.push_back(v);
    if (rank(m, v.size()) == m.size()) {
        basis.push_back(v);
        return true;
    }
    return false;
}

} // namespace

PolyMap chart_embedding(const LagrangianChart& c) {
    std::size_t n = static_cast<std::size_t>(c.n);
    PolyMap out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        Polynomial u = Polynomial::variable(n, i);
        Polynomial ds = c.s.is_zero() ? Polynomial(n) : c.s.derivative(i);
        if ((c.mask >> i) & 1u) {
            out[2 * i] = u;
            out[2 * i + 1] = -ds;
        } else {
            out[2 * i] = ds;
            out[2 * i + 1] = u;
        }
    }
    return out;
}

bool is_lagrangian(const LagrangianChart& c) { return pullback(chart_embedding(c), standard_symplectic(c.n)).is_zero(); }

bool check_chart_shapes(int n) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        LagrangianChart c{n, mask, Polynomial(static_cast<std::size_t>(n))};
        int k = 1;
        for (const auto& m : jet_monomials(n, 2, 3)) c.s.add_term(m, Q(k++));
        if (!is_lagrangian(c)) return false;
    }
    return true;
}

Order tangency_order(const Branch& b, const LagrangianChart& c) {
    auto cv = chart_vars(c.n, c.mask);
    PolyMap u;
    for (int i = 0; i < c.n; ++i) u.push_back(b.map.at(static_cast<std::size_t>(cv.ind[i])));
    int best = no_order;
    for (int i = 0; i < c.n; ++i) {
        Polynomial h = b.map.at(static_cast<std::size_t>(cv.dep[i]));
        if (!c.s.is_zero()) h += c.s.derivative(static_cast<std::size_t>(i)).compose(u) * Q(cv.sign[i]);
        if (!h.is_zero()) best = std::min(best, h.order());
    }
    return best == no_order ? Order::infinity() : Order::of(best);
}

bool lt_feasible(const std::vector<Branch>& branches, int n, unsigned mask, int k, int jet) {
    for (const auto& b : branches)
        if (b.map.size() != static_cast<std::size_t>(2 * n)) throw InputError("branch " + b.label + " has wrong arity");
    return feasible_impl(branches, n, mask, k, jet);
}

int lt_search_serial(const std::vector<Branch>& branches, int n, const LtOptions& o) {
    int jet = effective_jet(o);
    std::vector<unsigned> live;
    for (unsigned m = 0; m < (1u << n); ++m) live.push_back(m);
    for (int k = 1; k <= o.ceiling; ++k) {
        std::vector<unsigned> next;
        for (unsigned m : live)
            if (lt_feasible(branches, n, m, k, jet)) next.push_back(m);
        if (next.empty()) return k - 1;
        live = std::move(next);
    }
    throw BoundError("Lagrangian tangency search reached ceiling " + std::to_string(o.ceiling) +
                     " without a zero-restriction certificate; increase ceiling");
}

int lt_search_parallel(const std::vector<Branch>& branches, int n, const LtOptions& o) {
    int jet = effective_jet(o);
    for (const auto& b : branches)
        if (b.map.size() != static_cast<std::size_t>(2 * n)) throw InputError("branch " + b.label + " has wrong arity");
    std::vector<unsigned> live;
    for (unsigned m = 0; m < (1u << n); ++m) live.push_back(m);
    for (int k = 1; k <= o.ceiling; ++k) {
        std::vector<char> ok(live.size(), 0);
        long count = static_cast<long>(live.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i)
            ok[static_cast<std::size_t>(i)] = feasible_impl(branches, n, live[static_cast<std::size_t>(i)], k, jet);
        std::vector<unsigned> next;
        for (std::size_t i = 0; i < live.size(); ++i)
            if (ok[i]) next.push_back(live[i]);
        if (next.empty()) return k - 1;
        live = std::move(next);
    }
    throw BoundError("Lagrangian tangency search reached ceiling " + std::to_string(o.ceiling) +
                     " without a zero-restriction certificate; increase ceiling");
}

bool exact_chart_certificate(const std::vector<Branch>& branches, int n, int cap) {
    int k = cap * std::max(1, max_t_degree(branches)) + 1;
    for (unsigned m = 0; m < (1u << n); ++m)
        if (lt_feasible(branches, n, m, k, cap)) return true;
    return false;
}

Order lt_multigerm(const SymplecticScene& scene, const std::vector<std::size_t>& subset, const Certificate& cert,
                   const LtOptions& o) {
    auto sub = pick(scene.branches, subset);
    bool zero = cert ? cert(subset) : exact_chart_certificate(sub, scene.n);
    if (zero) return Order::infinity();
    return Order::of(lt_search_parallel(sub, scene.n, o));
}

Order index_of_isotropy(const RestrictionSpace& s, const Vec& a) {
    if (a.size() != s.closed_dim()) throw InputError("expected " + std::to_string(s.closed_dim()) + " coordinates");
    if (is_zero(a)) return Order::infinity();
    auto degs = s.closed_degrees();
    const auto& w = s.germ().weights;
    std::size_t nv = s.nvars();
    int best = no_order;
    std::vector<int> seen;
    for (int d : degs) {
        if (std::find(seen.begin(), seen.end(), d) != seen.end()) continue;
        seen.push_back(d);
        Vec ad(a.size(), Q(0));
        for (std::size_t j = 0; j < a.size(); ++j)
            if (degs[j] == d) ad[j] = a[j];
        if (is_zero(ad)) continue;
        std::vector<std::pair<int, Vec>> gens;
        for (const auto& [m, k] : one_form_monomials(w, d)) {
            DiffForm f = DiffForm::dx(nv, k) * Polynomial::term(m, Q(1));
            Vec v = s.restrict_closed(exterior_d(f));
            if (!is_zero(v)) gens.emplace_back(m.total(), std::move(v));
        }
        int r = 0;
        while (true) {
            Mat span;
            for (const auto& [t, v] : gens)
                if (t >= r + 2) span.push_back(v);
            if (span.empty()) break;
            if (!rref_serial(span, a.size()).contains(ad)) break;
            ++r;
        }
        best = std::min(best, r);
    }
    return Order::of(best);
}

Order lt_via_one_forms(const RestrictionSpace& s, const Vec& a) {
    const auto& g = s.germ();
    if (g.branches.size() != 1) throw InputError("one-form oracle needs a single branch");
    const auto& w = g.weights;
    const auto& br = g.branches[0];
    Vec lead(g.nvars(), Q(0));
    for (std::size_t i = 0; i < g.nvars(); ++i) {
        const auto& c = br.map[i];
        if (c.is_zero()) continue;
        if (c.size() != 1 || c.terms().begin()->first.e[0] != w[i])
            throw InputError("one-form oracle needs a quasi-homogeneous branch");
        lead[i] = c.terms().begin()->second;
    }
    if (a.size() != s.closed_dim()) throw InputError("expected " + std::to_string(s.closed_dim()) + " coordinates");
    if (is_zero(a)) return Order::infinity();
    auto degs = s.closed_degrees();
    std::size_t nv = s.nvars();

    struct Piece {
        std::vector<std::pair<Monomial, int>> mons;
        Mat restr; // one column per monomial 1-form, rows = closed coords
        Vec target;
        int degree;
    };
    std::vector<Piece> pieces;
    for (int d : degs) {
        bool dup = false;
        for (const auto& p : pieces) dup |= p.degree == d;
        if (dup) continue;
        Piece p;
        p.degree = d;
        p.target.assign(a.size(), Q(0));
        for (std::size_t j = 0; j < a.size(); ++j)
            if (degs[j] == d) p.target[j] = a[j];
        if (is_zero(p.target)) continue;
        p.mons = one_form_monomials(w, d);
        p.restr.assign(a.size(), Vec(p.mons.size(), Q(0)));
        for (std::size_t c = 0; c < p.mons.size(); ++c) {
            const auto& [m, k] = p.mons[c];
            Vec v = s.restrict_closed(exterior_d(DiffForm::dx(nv, k) * Polynomial::term(m, Q(1))));
            for (std::size_t r = 0; r < v.size(); ++r) p.restr[r][c] = v[r];
        }
        pieces.push_back(std::move(p));
    }

    auto feasible = [&](int order) {
        for (const auto& p : pieces) {
            Mat rows = p.restr;
            Vec rhs = p.target;
            for (std::size_t k = 0; k < nv; ++k) {
                if (p.degree - w[k] >= order) continue;
                Vec row(p.mons.size(), Q(0));
                for (std::size_t c = 0; c < p.mons.size(); ++c) {
                    if (static_cast<std::size_t>(p.mons[c].second) != k) continue;
                    Q val = 1;
                    for (std::size_t i = 0; i < nv && val != 0; ++i)
                        for (int e = 0; e < p.mons[c].first.e[i]; ++e) val *= lead[i];
                    row[c] = val;
                }
                rows.push_back(std::move(row));
                rhs.push_back(Q(0));
            }
            if (!solve_linear(rows, rhs).feasible) return false;
        }
        return true;
    };
    int best = 0;
    int top = *std::max_element(degs.begin(), degs.end()) + 1;
    for (int k = 1; k <= top; ++k) {
        if (!feasible(k)) return Order::of(best);
        best = k;
    }
    throw BoundError("one-form oracle exceeded the restriction degree range");
}

Order lt_single_via_restriction(const RestrictionSpace& s, const Vec& a) {
    Order ind = index_of_isotropy(s, a);
    if (!ind.inf && ind.value < 1)
        throw InputError("restriction is not represented by a closed 2-form vanishing at 0");
    return lt_via_one_forms(s, a);
}

Mat standard_symplectic_matrix(int n) {
    std::size_t d = static_cast<std::size_t>(2 * n);
    Mat m(d, Vec(d, Q(0)));
    for (std::size_t i = 0; i < d; i += 2) {
        m[i][i + 1] = 1;
        m[i + 1][i] = -1;
    }
    return m;
}

GeometricFrame geometric_frame(const std::vector<Branch>& branches, std::size_t singular) {
    if (branches.empty() || singular >= branches.size()) throw InputError("frame: no singular branch");
    GeometricFrame f;
    f.dim = branches[0].map.size();
    int top = max_t_degree(branches);
    auto tangent = [&](const Branch& b) {
        for (int t = 1; t <= top; ++t) {
            Vec v = jet_vector(b, t);
            if (!is_zero(v)) return v;
        }
        throw InputError("frame degenerate: branch " + b.label + " is constant");
    };
    f.l1 = tangent(branches[0]);
    f.l2 = tangent(branches[singular]);
    for (int t = 1; t <= top && f.v.size() < 2; ++t) add_independent(f.v, jet_vector(branches[singular], t));
    for (int t = 1; t <= top && f.w.size() < 3; ++t)
        for (const auto& b : branches)
            if (f.w.size() < 3) add_independent(f.w, jet_vector(b, t));
    if (f.v.size() < 2) throw InputError("frame degenerate: singular branch spans fewer than 2 directions");
    if (f.w.size() < 3) throw InputError("frame degenerate: branches span fewer than 3 directions");
    for (const Vec* l : {&f.l1, &f.l2}) {
        Mat m = f.w;
        m.push_back(*l);
        if (rank(m, f.dim) != 3) throw CheckError("frame: tangent line outside W");
    }
    return f;
}

GeometricFlags geometric_conditions(const GeometricFrame& f, const Mat& om) {
    GeometricFlags g;
    g.v_nonzero = omega_eval(om, f.v[0], f.v[1]) != 0;
    g.l12_nonzero = omega_eval(om, f.l1, f.l2) != 0;
    Mat gram(3, Vec(3, Q(0)));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) gram[i][j] = omega_eval(om, f.w[i], f.w[j]);
    g.w_zero = true;
    for (const auto& r : gram) g.w_zero &= is_zero(r);
    Mat ker = kernel_basis(gram, 3);
    if (ker.size() == 1) {
        Vec amb(f.dim, Q(0));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t d = 0; d < f.dim; ++d) amb[d] += ker[0][i] * f.w[i][d];
        g.ker_w_is_l2 = rank(Mat{amb, f.l2}, f.dim) == 1;
    }
    return g;
}

std::shared_ptr<const RestrictionSpace> sub_space(const GermContext& ctx, const std::vector<std::size_t>& idx) {
    static std::mutex mu;
    static std::map<std::pair<const GermContext*, std::vector<std::size_t>>, std::shared_ptr<const RestrictionSpace>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(&ctx, idx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto sp = std::make_shared<const RestrictionSpace>(ctx.space.germ().sub_germ(idx), ctx.space.bound());
    cache[key] = sp;
    return sp;
}

ClassInvariants class_invariants(const GermContext& ctx, const ClassInstance& inst, const LtOptions& o) {
    if (!ctx.record) throw InputError("class invariants need a catalog germ");
    const auto& rec = *ctx.record;
    ClassInvariants r;
    Vec nf = inst.normal_form();
    r.zero_restriction = is_zero(nf);
    r.mu = symplectic_multiplicity(ctx.table, nf);
    r.cod = class_codimension(ctx.table, nf, inst.cls->pattern.moduli.size());
    r.ind = index_of_isotropy(ctx.space, nf);
    DiffForm rep = ctx.space.representative(nf);
    auto sing = sub_space(ctx, {rec.singular_branch});
    r.ind2 = index_of_isotropy(*sing, sing->restrict_closed(rep));

    SymplecticScene scene{inst.cls->n, inst.scene_branches(), inst.cls->label};
    DiffForm pulled = pullback(inst.psi(), standard_symplectic(inst.cls->n));
    Certificate cert = [&](const std::vector<std::size_t>& idx) { return is_zero(sub_space(ctx, idx)->restrict(pulled)); };
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < scene.branches.size(); ++i) all.push_back(i);
    r.lt = lt_multigerm(scene, all, cert, o);
    for (const auto& [name, idx] : rec.subsets) r.subsets.push_back({name, lt_multigerm(scene, idx, cert, o)});
    r.geometry =
        geometric_conditions(geometric_frame(scene.branches, rec.singular_branch), standard_symplectic_matrix(scene.n));
    return r;
}

} // namespace algres
