#pragma once
#include "algres/invariants.hpp"

#include <algorithm>
#include <random>

namespace algres::testing {

// Seeded random inputs for property tests.
struct Gen {
    std::mt19937_64 rng;

    explicit Gen(std::uint64_t seed) : rng(seed) {}

    int uniform(int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

    // Small nonzero rational.
    Q rational() { return random_rational(rng); }
    // Small rational, zero about a third of the time.
    Q maybe_zero() { return uniform(0, 2) == 0 ? Q(0) : rational(); }

    Monomial monomial(std::size_t nvars, int max_total) {
        Monomial m(nvars);
        int budget = uniform(0, max_total);
        for (int k = 0; k < budget; ++k) m.e[static_cast<std::size_t>(uniform(0, static_cast<int>(nvars) - 1))]++;
        return m;
    }

    Polynomial polynomial(std::size_t nvars, int max_total, int terms) {
        Polynomial p(nvars);
        for (int k = 0; k < terms; ++k) p.add_term(monomial(nvars, max_total), rational());
        return p;
    }

    Polynomial homogeneous(const Weights& w, int delta, int terms) {
        Polynomial p(w.size());
        auto ms = monomials_of_degree(w, delta);
        if (ms.empty()) return p;
        for (int k = 0; k < terms; ++k) p.add_term(ms[rng() % ms.size()], rational());
        return p;
    }

    DiffForm form(std::size_t nvars, int degree, int max_total, int terms) {
        DiffForm f(nvars, degree);
        for (int k = 0; k < terms; ++k) {
            std::vector<int> idx;
            while (static_cast<int>(idx.size()) < degree) {
                int i = uniform(0, static_cast<int>(nvars) - 1);
                if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
            }
            std::sort(idx.begin(), idx.end());
            DiffForm t(nvars, degree);
            t.add(idx, polynomial(nvars, max_total, 2));
            f += t;
        }
        return f;
    }

    PolyMap map(std::size_t source, std::size_t target, int max_total, int terms) {
        PolyMap m;
        for (std::size_t i = 0; i < target; ++i) m.push_back(polynomial(source, max_total, terms));
        return m;
    }

    // Element of the ideal generated by the equations, times a random multiplier.
    Polynomial in_ideal(const CurveGerm& g, int max_total) {
        Polynomial p(g.nvars());
        for (const auto& e : g.equations) p += e * polynomial(g.nvars(), max_total, 2);
        return p;
    }

    Vec vector(std::size_t n) {
        Vec v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(maybe_zero());
        return v;
    }

    Mat matrix(std::size_t rows, std::size_t cols) {
        Mat m;
        for (std::size_t r = 0; r < rows; ++r) m.push_back(vector(cols));
        return m;
    }
};

} // namespace algres::testing
