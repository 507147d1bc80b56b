#include "doctest.h"
#include "generators.hpp"

#include "algres/error.hpp"
#include "algres/parser.hpp"

using namespace algres;
using algres::testing::Gen;

namespace {
const std::vector<std::string> xyz{"x", "y", "z"};
Polynomial P(const std::string& s) { return parse_polynomial(s, xyz); }
}

TEST_CASE("rationals print canonically and reject malformed input") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-10/5")) == "-2");
    CHECK(to_string(make_q(-3, 3)) == "-1");
    CHECK(make_q(4, -6) == Q(-2, 3));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(make_q(1, 0), InputError);
}

TEST_CASE("parser follows the grammar") {
    CHECK(P("(x+y)^2") == P("x^2 + 2*x*y + y^2"));
    CHECK(P("x/2 - -y") == P("1/2*x + y"));
    CHECK(P("x − y") == P("x - y"));
    CHECK(P("3/6*z") == P("1/2*z"));
    std::map<std::string, Q> k{{"c", Q(5)}};
    CHECK(parse_polynomial("c*x", xyz, k) == P("5*x"));
    CHECK_THROWS_AS(P("x^"), InputError);
    CHECK_THROWS_AS(P("w + x"), InputError);
    CHECK_THROWS_AS(P("x/y"), InputError);
    CHECK_THROWS_AS(P("x/0"), InputError);
    CHECK_THROWS_AS(P("(x + y"), InputError);
    CHECK_THROWS_AS(P("x y"), InputError);
}

TEST_CASE("polynomial ring identities on random inputs") {
    Gen gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = gen.polynomial(3, 4, 4), b = gen.polynomial(3, 4, 4), c = gen.polynomial(3, 3, 3);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).derivative(0) == a.derivative(0) * b + a * b.derivative(0));
        CHECK(a - a == Polynomial(3));
        // Composition is a ring homomorphism.
        PolyMap f = gen.map(2, 3, 2, 2);
        CHECK((a * b).compose(f) == a.compose(f) * b.compose(f));
    }
}

TEST_CASE("quasi-degrees and monomial enumeration") {
    Weights w{4, 5, 3};
    auto qd = P("x^2 + y*z").quasi_degree(w);
    CHECK(qd.homogeneous);
    CHECK(qd.degree == 8);
    CHECK_FALSE(P("x + y").quasi_degree(w).homogeneous);
    for (int d = 0; d < 20; ++d)
        for (const auto& m : monomials_of_degree(w, d)) CHECK(m.weighted(w) == d);
    auto ms = monomials_of_degree(w, 12);
    for (std::size_t i = 1; i < ms.size(); ++i) CHECK(ms[i - 1].total() <= ms[i].total());
}

TEST_CASE("exact linear algebra") {
    Gen gen(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = static_cast<std::size_t>(gen.uniform(1, 7)), c = static_cast<std::size_t>(gen.uniform(1, 7));
        Mat a = gen.matrix(r, c);
        Echelon s = rref_serial(a, c), p = rref_parallel(a, c);
        CHECK(s.rows == p.rows);
        CHECK(s.pivots == p.pivots);
        for (const auto& row : a) CHECK(s.contains(row));
        for (const auto& k : kernel_basis(a, c)) CHECK(is_zero(mat_vec(a, k)));
        CHECK(rank(a, c) + kernel_basis(a, c).size() == c);
        Vec x = gen.vector(c);
        Vec b = mat_vec(a, x);
        auto sol = solve_linear(a, b);
        REQUIRE(sol.feasible);
        CHECK(mat_vec(a, sol.particular) == b);
    }
    Mat m{{Q(2), Q(1)}, {Q(1), Q(1)}};
    Mat inv = inverse(m);
    CHECK(inv == Mat{{Q(1), Q(-1)}, {Q(-1), Q(2)}});
    CHECK_THROWS_AS(inverse(Mat{{Q(1), Q(2)}, {Q(2), Q(4)}}), CheckError);
}

TEST_CASE("exterior derivative squares to zero") {
    Gen gen(21);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = static_cast<std::size_t>(gen.uniform(2, 5));
        int p = gen.uniform(0, 1);
        DiffForm a = p == 0 ? DiffForm::function(gen.polynomial(n, 4, 4)) : gen.form(n, p, 4, 3);
        CHECK(exterior_d(exterior_d(a)).is_zero());
    }
}

TEST_CASE("pullback is natural") {
    Gen gen(33);
    for (int trial = 0; trial < 40; ++trial) {
        PolyMap f = gen.map(2, 3, 2, 2);
        PolyMap g = gen.map(3, 3, 2, 2);
        DiffForm a = gen.form(3, 1, 2, 2), b = gen.form(3, 1, 2, 2);
        DiffForm w = gen.form(3, 2, 2, 2);
        CHECK(pullback(f, exterior_d(a)) == exterior_d(pullback(f, a)));
        CHECK(pullback(f, wedge(a, b)) == wedge(pullback(f, a), pullback(f, b)));
        CHECK(pullback(f, exterior_d(w)) == exterior_d(pullback(f, w)));
        PolyMap gf;
        for (const auto& comp : g) gf.push_back(comp.compose(f));
        CHECK(pullback(gf, w) == pullback(f, pullback(g, w)));
    }
}

TEST_CASE("Cartan formula and Lie derivative commute with d") {
    Gen gen(44);
    for (int trial = 0; trial < 40; ++trial) {
        VectorField x;
        for (int i = 0; i < 3; ++i) x.push_back(gen.polynomial(3, 2, 2));
        DiffForm a = gen.form(3, 1, 3, 3);
        CHECK(lie_derivative(x, exterior_d(a)) == exterior_d(lie_derivative(x, a)));
        Polynomial f = gen.polynomial(3, 3, 3);
        CHECK(lie_derivative(x, DiffForm::function(f)) == DiffForm::function(directional(x, f)));
    }
    // L_E of a quasi-homogeneous form of degree δ is δ times the form.
    Weights w{4, 5, 3};
    DiffForm theta = DiffForm::dx2(3, 0, 2, P("z^2"));
    CHECK(lie_derivative(euler_field(w), theta) == theta * Q(13));
}

TEST_CASE("form printer") {
    DiffForm w = DiffForm::dx2(3, 0, 1, P("-x")) + DiffForm::dx2(3, 1, 2, P("1"));
    CHECK(w.str(xyz) == "-x*dx^dy + dy^dz");
}
