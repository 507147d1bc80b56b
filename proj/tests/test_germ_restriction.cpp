#include "doctest.h"
#include "generators.hpp"

#include "algres/error.hpp"
#include "algres/parser.hpp"

using namespace algres;
using algres::testing::Gen;

namespace {

std::vector<int> closed_degrees(const RestrictionSpace& s) {
    std::vector<int> d;
    for (const auto& e : s.basis())
        if (e.closed) d.push_back(e.degree);
    return d;
}

CurveGerm plane(const std::string& eq, std::vector<std::vector<std::string>> branches, Weights w) {
    CurveGerm g;
    g.name = "test";
    g.vars = {"x", "y"};
    g.weights = std::move(w);
    g.equations = {parse_polynomial(eq, g.vars)};
    for (std::size_t b = 0; b < branches.size(); ++b) {
        Branch br;
        br.label = "B" + std::to_string(b + 1);
        for (const auto& c : branches[b]) br.map.push_back(parse_polynomial(c, {"t"}));
        g.branches.push_back(br);
    }
    return g;
}

} // namespace

TEST_CASE("catalog germs pass their load checks") {
    for (const auto& f : catalog_families()) {
        auto ctx = catalog(f);
        const auto& g = ctx->space.germ();
        CHECK_NOTHROW(g.validate());
        for (const auto& b : g.branches) CHECK(verify_branch(g, b));
        for (const auto& s : g.symmetries) CHECK(preserves(g, s));
        for (const auto& x : ctx->table.fields) CHECK(is_tangent(g, x.field));
    }
    CHECK(catalog("U7")->space.germ().weights == Weights{4, 5, 3});
    CHECK(catalog("U7")->space.germ().branches.size() == 2);
    CHECK(catalog("U8")->space.germ().branches.size() == 3);
    CHECK(catalog("U9")->space.germ().branches.size() == 2);
    CHECK(catalog("U7")->record->classes.size() == 8);
    CHECK(catalog("U8")->record->classes.size() == 11);
    CHECK(catalog("U9")->record->classes.size() == 12);
}

TEST_CASE("germ validation rejects malformed germs") {
    CHECK_NOTHROW(plane("x^3 - y^2", {{"t^2", "t^3"}}, {2, 3}).validate());
    CHECK_THROWS_AS(plane("x^2 + y^2", {{"t", "t"}}, {1, 1}).validate(), InputError);
    CHECK_THROWS_AS(plane("x^2 + y", {{"t", "-t^2"}}, {1, 1}).validate(), InputError);
    CHECK_THROWS_AS(plane("x^3 - y^2", {{"t^2 + 1", "t^3"}}, {2, 3}).validate(), InputError);
    CHECK_THROWS_AS(plane("x^3 - y^2", {{"t^2", "t^3"}, {"t^2", "t^3"}}, {2, 3}).validate(), InputError);
    auto g = plane("x^3 - y^2", {{"t^2", "t^3"}}, {2, 3});
    g.symmetries = {{-1, 1}};
    CHECK_THROWS_AS(g.validate(), InputError);
    g.symmetries = {{1, -1}};
    CHECK_NOTHROW(g.validate());
}

TEST_CASE("vanishing ideal pieces vanish on the branches") {
    for (const auto& f : catalog_families()) {
        const auto& g = catalog(f)->space.germ();
        for (int d = 0; d < 30; ++d)
            for (const auto& h : ideal_piece(g, d)) {
                CHECK(vanishes_on_germ(g, h));
                CHECK(h.quasi_degree(g.weights).degree == d);
            }
    }
}

TEST_CASE("Euler multiples are tangent; coordinate fields are not") {
    const auto& g = catalog("U7")->space.germ();
    for (const auto& m : monomials_of_degree(g.weights, 6)) CHECK(is_tangent(g, make_euler_multiple(g, m).field));
    VectorField d1{Polynomial::constant(3, 1), Polynomial(3), Polynomial(3)};
    CHECK_FALSE(is_tangent(g, d1));
}

TEST_CASE("restriction space dimensions and degrees") {
    struct Case {
        const char* family;
        std::size_t dim, closed;
        std::vector<int> degrees;
    };
    for (const auto& c : {Case{"U7", 8, 7, {7, 8, 9, 10, 11, 13, 14}}, Case{"U8", 9, 8, {5, 6, 7, 7, 8, 9, 10, 11}},
                          Case{"U9", 10, 9, {8, 10, 12, 11, 13, 14, 16, 17, 19}}}) {
        const auto& s = catalog(c.family)->space;
        CHECK(s.dim() == c.dim);
        CHECK(s.closed_dim() == c.closed);
        CHECK(closed_degrees(s) == c.degrees);
    }
}

TEST_CASE("automatic bases agree with the catalog bases in dimension and degrees") {
    for (const auto& f : catalog_families()) {
        const auto& s = catalog(f)->space;
        RestrictionSpace automatic(s.germ());
        CHECK(automatic.dim() == s.dim());
        CHECK(automatic.closed_dim() == s.closed_dim());
        auto a = automatic.closed_degrees(), b = s.closed_degrees();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("restriction is well defined modulo forms vanishing on the germ") {
    for (const auto& f : catalog_families()) {
        const auto& s = catalog(f)->space;
        const auto& g = s.germ();
        Gen gen(100 + static_cast<std::uint64_t>(f[1]));
        for (int trial = 0; trial < 100; ++trial) {
            DiffForm w = gen.form(3, 2, 3, 3);
            Polynomial h1 = gen.in_ideal(g, 1), h2 = gen.in_ideal(g, 1), h3 = gen.in_ideal(g, 1);
            // α vanishes on N: h·γ + dh∧η; β vanishes on N: h·η.
            DiffForm alpha = gen.form(3, 2, 1, 2) * h1 + wedge(exterior_d(DiffForm::function(h2)), gen.form(3, 1, 1, 2));
            DiffForm beta = gen.form(3, 1, 1, 2) * h3;
            CHECK(s.restrict(w + alpha + exterior_d(beta)) == s.restrict(w));
            CHECK(is_zero(s.restrict(alpha)));
        }
    }
}

TEST_CASE("closed forms restrict into the closed subspace and representatives round-trip") {
    Gen gen(7);
    for (const auto& f : catalog_families()) {
        const auto& s = catalog(f)->space;
        for (int trial = 0; trial < 20; ++trial) {
            DiffForm w = exterior_d(gen.form(3, 1, 3, 3));
            Vec full = s.restrict(w);
            for (std::size_t i = s.closed_dim(); i < full.size(); ++i) CHECK(full[i] == 0);
            Vec c = gen.vector(s.closed_dim());
            CHECK(s.restrict_closed(s.representative(c)) == c);
        }
        CHECK_THROWS_AS(s.restrict_closed(s.basis().back().form), CheckError);
    }
}

TEST_CASE("restriction ignores extra ambient coordinates") {
    const auto& s = catalog("U7")->space;
    DiffForm w = DiffForm::dx2(6, 0, 2, Polynomial::constant(6, 1)) + DiffForm::dx2(6, 3, 4, Polynomial::constant(6, 1));
    Vec r = s.restrict(w);
    CHECK(r[0] == 1);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] == 0);
}
