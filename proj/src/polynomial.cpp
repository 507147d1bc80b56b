#include "algres/polynomial.hpp"
#include "algres/error.hpp"

#include <algorithm>
#include <sstream>

namespace algres {

int Monomial::total() const {
    int s = 0;
    for (int x : e) s += x;
    return s;
}

int Monomial::weighted(const Weights& w) const {
    int s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * w[i];
    return s;
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r(e);
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
    return r;
}

namespace {
void enumerate(const Weights& w, std::size_t i, int left, std::vector<int>& cur,
               std::vector<Monomial>& out) {
    if (i == w.size()) {
        if (left == 0) out.emplace_back(cur);
        return;
    }
    for (int k = left / w[i]; k >= 0; --k) {
        cur[i] = k;
        enumerate(w, i + 1, left - k * w[i], cur, out);
    }
    cur[i] = 0;
}
} // namespace

std::vector<Monomial> monomials_of_degree(const Weights& w, int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    std::vector<int> cur(w.size(), 0);
    enumerate(w, 0, d, cur, out);
    std::stable_sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.e > b.e;
    });
    return out;
}

Polynomial Polynomial::constant(std::size_t nvars, const Q& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
    Monomial m(nvars);
    m.e[i] = 1;
    return term(m, 1);
}

Polynomial Polynomial::term(const Monomial& m, const Q& c) {
    Polynomial p(m.nvars());
    p.add_term(m, c);
    return p;
}

Q Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Q(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Q& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (n_ == 0) n_ = o.n_;
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (n_ == 0) n_ = o.n_;
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Q& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r(*this);
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r(*this);
    r -= o;
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    r *= Q(-1);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(std::max(n_, o.n_));
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) r.add_term(a * b, ca * cb);
    return r;
}

Polynomial Polynomial::operator*(const Q& c) const {
    Polynomial r(*this);
    r *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial r = constant(n_, 1);
    Polynomial b = *this;
    while (k) {
        if (k & 1u) r = r * b;
        k >>= 1u;
        if (k) b = b * b;
    }
    return r;
}

Polynomial Polynomial::derivative(std::size_t i) const {
    Polynomial r(n_);
    for (const auto& [m, c] : terms_) {
        if (m.e[i] == 0) continue;
        Monomial d = m;
        d.e[i] -= 1;
        r.add_term(d, c * m.e[i]);
    }
    return r;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& images) const {
    if (images.size() != n_) throw CheckError("compose: arity mismatch");
    std::size_t src = images.empty() ? 0 : images[0].nvars();
    Polynomial r(src);
    // Powers are cached per variable; monomial counts here are small.
    std::vector<std::vector<Polynomial>> powers(n_);
    for (const auto& [m, c] : terms_) {
        Polynomial t = constant(src, c);
        for (std::size_t i = 0; i < n_; ++i) {
            int k = m.e[i];
            if (k == 0) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(constant(src, 1));
            while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * images[i]);
            t = t * pw[k];
            if (t.is_zero()) break;
        }
        r += t;
    }
    return r;
}

Polynomial Polynomial::truncate_vars(std::size_t k) const {
    Polynomial r(k);
    for (const auto& [m, c] : terms_) {
        bool keep = true;
        for (std::size_t i = k; i < m.e.size(); ++i)
            if (m.e[i] != 0) keep = false;
        if (!keep) continue;
        r.add_term(Monomial(std::vector<int>(m.e.begin(), m.e.begin() + static_cast<long>(k))), c);
    }
    return r;
}

Polynomial Polynomial::extend(std::size_t nvars) const {
    if (nvars < n_) throw CheckError("extend: cannot shrink ring");
    Polynomial r(nvars);
    for (const auto& [m, c] : terms_) {
        Monomial e(nvars);
        std::copy(m.e.begin(), m.e.end(), e.e.begin());
        r.add_term(e, c);
    }
    return r;
}

QuasiDegree Polynomial::quasi_degree(const Weights& w) const {
    if (is_zero()) throw CheckError("undefined degree of the zero polynomial");
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& kv : terms_) {
        int d = kv.first.weighted(w);
        if (first) lo = hi = d;
        lo = std::min(lo, d);
        hi = std::max(hi, d);
        first = false;
    }
    return {lo == hi, lo};
}

Polynomial Polynomial::homogeneous_part(const Weights& w, int d) const {
    Polynomial r(n_);
    for (const auto& [m, c] : terms_)
        if (m.weighted(w) == d) r.add_term(m, c);
    return r;
}

std::map<int, Polynomial> Polynomial::split_by_degree(const Weights& w) const {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : terms_) {
        auto [it, fresh] = out.try_emplace(m.weighted(w), Polynomial(n_));
        it->second.add_term(m, c);
    }
    return out;
}

int Polynomial::order() const {
    int best = -1;
    for (const auto& kv : terms_) {
        int t = kv.first.total();
        if (best < 0 || t < best) best = t;
    }
    return best;
}

int Polynomial::degree() const {
    int best = -1;
    for (const auto& kv : terms_) best = std::max(best, kv.first.total());
    return best;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    // Highest total degree first, then lex descending, for readability.
    std::vector<std::pair<Monomial, Q>> ts(terms_.begin(), terms_.end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        if (a.first.total() != b.first.total()) return a.first.total() > b.first.total();
        return a.first.e > b.first.e;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : ts) {
        Q a = abs(c);
        if (c < 0)
            os << (first ? "-" : " - ");
        else if (!first)
            os << " + ";
        bool unit = m.total() == 0;
        bool show = unit || a != 1;
        if (show) os << to_string(a);
        bool star = show;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (star) os << "*";
            os << names[i];
            if (m.e[i] > 1) os << "^" << m.e[i];
            star = true;
        }
        first = false;
    }
    return os.str();
}

Series to_series(const Polynomial& p, int cut) {
    Series s(static_cast<std::size_t>(cut), Q(0));
    for (const auto& [m, c] : p.terms()) {
        int k = m.e.empty() ? 0 : m.e[0];
        if (k < cut) s[static_cast<std::size_t>(k)] += c;
    }
    return s;
}

void series_mul_into(Series& out, const Series& a, const Series& b, int cut) {
    out.assign(static_cast<std::size_t>(cut), Q(0));
    int la = std::min<int>(cut, static_cast<int>(a.size()));
    int lb = std::min<int>(cut, static_cast<int>(b.size()));
    for (int i = 0; i < la; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < lb && i + j < cut; ++j)
            if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
}

int series_order(const Series& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0) return static_cast<int>(i);
    return -1;
}

std::vector<std::string> default_names(std::size_t n, const std::string& stem) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i + 1));
    return v;
}

} // namespace algres
