#include "algres/forms.hpp"
#include "algres/error.hpp"

#include <sstream>

namespace algres {

DiffForm DiffForm::function(const Polynomial& f) {
    DiffForm a(f.nvars(), 0);
    a.add({}, f);
    return a;
}

DiffForm DiffForm::dx(std::size_t nvars, int i) {
    DiffForm a(nvars, 1);
    a.add({i}, Polynomial::constant(nvars, 1));
    return a;
}

DiffForm DiffForm::dx2(std::size_t nvars, int i, int j, const Polynomial& c) {
    DiffForm a(nvars, 2);
    a.add({i, j}, c);
    return a;
}

Polynomial DiffForm::coeff(const Index& idx) const {
    auto it = c_.find(idx);
    return it == c_.end() ? Polynomial(n_) : it->second;
}

void DiffForm::add(Index idx, const Polynomial& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(idx.size()) != p_) throw CheckError("form degree mismatch");
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
            if (idx[j] == idx[j + 1]) return;
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
        }
    for (std::size_t j = 0; j + 1 < idx.size(); ++j)
        if (idx[j] == idx[j + 1]) return;
    auto [it, fresh] = c_.try_emplace(idx, Polynomial(n_));
    if (sign > 0)
        it->second += c;
    else
        it->second -= c;
    if (it->second.is_zero()) c_.erase(it);
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
    if (o.is_zero()) return *this;
    if (is_zero() && n_ == 0) {
        n_ = o.n_;
        p_ = o.p_;
    }
    if (o.p_ != p_) throw CheckError("adding forms of different degree");
    for (const auto& [idx, c] : o.c_) add(idx, c);
    return *this;
}

DiffForm DiffForm::operator+(const DiffForm& o) const {
    DiffForm r(*this);
    r += o;
    return r;
}

DiffForm DiffForm::operator-(const DiffForm& o) const { return *this + o * Q(-1); }

DiffForm DiffForm::operator*(const Q& k) const {
    DiffForm r(n_, p_);
    for (const auto& [idx, c] : c_) r.add(idx, c * k);
    return r;
}

DiffForm DiffForm::operator*(const Polynomial& f) const {
    DiffForm r(n_, p_);
    for (const auto& [idx, c] : c_) r.add(idx, c * f);
    return r;
}

bool DiffForm::operator==(const DiffForm& o) const {
    if (is_zero() && o.is_zero()) return true;
    return p_ == o.p_ && c_ == o.c_;
}

DiffForm DiffForm::truncate_vars(std::size_t m) const {
    DiffForm r(m, p_);
    for (const auto& [idx, c] : c_) {
        bool keep = true;
        for (int i : idx)
            if (i >= static_cast<int>(m)) keep = false;
        if (keep) r.add(idx, c.truncate_vars(m));
    }
    return r;
}

DiffForm DiffForm::extend(std::size_t nvars) const {
    DiffForm r(nvars, p_);
    for (const auto& [idx, c] : c_) r.add(idx, c.extend(nvars));
    return r;
}

std::map<int, DiffForm> DiffForm::split_by_degree(const Weights& w) const {
    std::map<int, DiffForm> out;
    for (const auto& [idx, c] : c_) {
        int base = 0;
        for (int i : idx) base += w[static_cast<std::size_t>(i)];
        for (const auto& [d, part] : c.split_by_degree(w)) {
            auto [it, fresh] = out.try_emplace(base + d, DiffForm(n_, p_));
            it->second.add(idx, part);
        }
    }
    return out;
}

DiffForm DiffForm::at_origin() const {
    DiffForm r(n_, p_);
    Monomial one(n_);
    for (const auto& [idx, c] : c_) r.add(idx, Polynomial::constant(n_, c.coeff(one)));
    return r;
}

std::string DiffForm::str(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : c_) {
        std::string cs = c.str(names);
        bool simple = c.size() == 1;
        bool neg = simple && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        if (idx.empty()) {
            os << cs;
            continue;
        }
        if (cs != "1") os << (simple ? cs : "(" + cs + ")") << "*";
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (k) os << "^";
            os << "d" << names[static_cast<std::size_t>(idx[k])];
        }
    }
    return os.str();
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    if (a.degree() + b.degree() > 3) throw CheckError("wedge: degree exceeds 3");
    std::size_t n = std::max(a.nvars(), b.nvars());
    DiffForm r(n, a.degree() + b.degree());
    for (const auto& [i, f] : a.coeffs())
        for (const auto& [j, g] : b.coeffs()) {
            DiffForm::Index k = i;
            k.insert(k.end(), j.begin(), j.end());
            r.add(k, f * g);
        }
    return r;
}

DiffForm exterior_d(const DiffForm& a) {
    if (a.degree() > 2) throw CheckError("exterior_d: degree exceeds 2");
    DiffForm r(a.nvars(), a.degree() + 1);
    for (const auto& [idx, c] : a.coeffs())
        for (std::size_t k = 0; k < a.nvars(); ++k) {
            Polynomial dk = c.derivative(k);
            if (dk.is_zero()) continue;
            DiffForm::Index j{static_cast<int>(k)};
            j.insert(j.end(), idx.begin(), idx.end());
            r.add(j, dk);
        }
    return r;
}

DiffForm interior(const VectorField& x, const DiffForm& a) {
    if (a.degree() == 0) return DiffForm(a.nvars(), 0);
    DiffForm r(a.nvars(), a.degree() - 1);
    for (const auto& [idx, c] : a.coeffs())
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const Polynomial& xk = x[static_cast<std::size_t>(idx[k])];
            if (xk.is_zero()) continue;
            DiffForm::Index rest;
            for (std::size_t m = 0; m < idx.size(); ++m)
                if (m != k) rest.push_back(idx[m]);
            Polynomial t = xk * c;
            if (k % 2) t *= Q(-1);
            r.add(rest, t);
        }
    return r;
}

DiffForm lie_derivative(const VectorField& x, const DiffForm& a) {
    if (a.degree() == 0) return interior(x, exterior_d(a));
    DiffForm r = exterior_d(interior(x, a));
    if (a.degree() < 3) r += interior(x, exterior_d(a));
    return r;
}

DiffForm pullback(const PolyMap& f, const DiffForm& a) {
    if (f.size() != a.nvars()) throw CheckError("pullback: arity mismatch");
    std::size_t src = f.empty() ? 0 : f[0].nvars();
    std::vector<DiffForm> df;
    for (const auto& fi : f) df.push_back(exterior_d(DiffForm::function(fi)));
    DiffForm r(src, a.degree());
    for (const auto& [idx, c] : a.coeffs()) {
        DiffForm t = DiffForm::function(c.compose(f));
        for (int i : idx) t = wedge(t, df[static_cast<std::size_t>(i)]);
        r += t;
    }
    return r;
}

bool is_closed(const DiffForm& a) { return a.degree() == 3 || exterior_d(a).is_zero(); }

Polynomial directional(const VectorField& x, const Polynomial& f) {
    Polynomial r(f.nvars());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) r += x[i] * f.derivative(i);
    return r;
}

VectorField euler_field(const Weights& w) {
    VectorField e;
    for (std::size_t i = 0; i < w.size(); ++i)
        e.push_back(Polynomial::variable(w.size(), i) * Q(w[i]));
    return e;
}

} // namespace algres
