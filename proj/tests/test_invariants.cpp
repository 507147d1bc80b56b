#include "doctest.h"
#include "generators.hpp"

#include "algres/error.hpp"
#include "algres/parser.hpp"

using namespace algres;
using algres::testing::Gen;

namespace {

struct Row {
    std::shared_ptr<const GermContext> ctx;
    const ClassRecord* cls;
    const Variant* var;
    ClassInstance inst;
};

std::vector<Row> rows(std::uint64_t seed) {
    std::vector<Row> out;
    std::mt19937_64 rng(seed);
    for (const auto& f : catalog_families()) {
        auto ctx = catalog(f);
        for (const auto& c : ctx->record->classes)
            for (const auto& v : c.variants)
                out.push_back({ctx, &c, &v, ClassInstance{ctx->record.get(), &c, 1, random_moduli(c, v, rng)}});
    }
    return out;
}

Certificate restriction_certificate(const GermContext& ctx, const DiffForm& pulled) {
    return [&ctx, pulled](const std::vector<std::size_t>& idx) { return is_zero(sub_space(ctx, idx)->restrict(pulled)); };
}

ClassInvariants invariants_of(const std::string& f, const std::string& label, const std::string& variant = "") {
    auto ctx = catalog(f);
    const auto& c = ctx->record->find(label);
    const Variant* v = &c.variants.front();
    for (const auto& x : c.variants)
        if (x.name == variant) v = &x;
    return class_invariants(*ctx, ClassInstance{ctx->record.get(), &c, 1, sample_moduli(c, *v)});
}

} // namespace

TEST_CASE("invariant examples") {
    auto u7 = invariants_of("U7", "5");
    CHECK(u7.ind == Order::of(2));
    CHECK(u7.lt == Order::of(10));
    CHECK(u7.subsets.at(0).value == Order::infinity());
    CHECK(u7.cod == 5);
    CHECK(u7.mu == 6);

    auto u8 = invariants_of("U8", "0", "c1=0");
    CHECK(u8.lt == Order::of(3));
    CHECK(u8.subsets.at(0).name == "L12");
    CHECK(u8.subsets.at(0).value == Order::infinity());
    CHECK(u8.subsets.at(1).value == Order::of(3));
    CHECK(invariants_of("U8", "3,0_5").mu == 5);

    auto u9 = invariants_of("U9", "9");
    CHECK(u9.ind.inf);
    CHECK(u9.ind2.inf);
    CHECK(u9.lt.inf);
    CHECK(u9.subsets.at(0).value.inf);
    CHECK(u9.zero_restriction);
    CHECK(invariants_of("U9", "6").lt == Order::of(13));
    auto u941 = invariants_of("U9", "4,1");
    CHECK(u941.cod == 4);
    CHECK(u941.mu == 6);
    CHECK(u941.ind == Order::of(1));
}

TEST_CASE("Lagrangian charts are Lagrangian") {
    CHECK(check_chart_shapes(2));
    CHECK(check_chart_shapes(3));
    Gen gen(3);
    for (int trial = 0; trial < 20; ++trial) {
        int n = gen.uniform(1, 3);
        LagrangianChart c{n, static_cast<unsigned>(gen.uniform(0, (1 << n) - 1)), gen.polynomial(static_cast<std::size_t>(n), 4, 4)};
        CHECK(is_lagrangian(c));
        PolyMap emb = chart_embedding(c);
        CHECK(pullback(emb, standard_symplectic(n)).is_zero());
    }
}

TEST_CASE("1-form oracle agrees with the chart search on every singular branch") {
    for (const auto& r : rows(5)) {
        const auto& rec = *r.ctx->record;
        std::size_t sing = rec.singular_branch;
        auto space = sub_space(*r.ctx, {sing});
        DiffForm pulled = pullback(r.inst.psi(), standard_symplectic(r.cls->n));
        Vec a = space->restrict_closed(pulled);
        SymplecticScene scene{r.cls->n, r.inst.scene_branches(), r.cls->label};
        Order chart = lt_multigerm(scene, {sing}, restriction_certificate(*r.ctx, pulled));
        CAPTURE(rec.family);
        CAPTURE(r.var->sub);
        CHECK(lt_via_one_forms(*space, a) == chart);
        Order ind = index_of_isotropy(*space, a);
        if (ind.inf || ind.value >= 1)
            CHECK(lt_single_via_restriction(*space, a) == chart);
        else
            CHECK_THROWS_AS(lt_single_via_restriction(*space, a), InputError);
    }
}

TEST_CASE("tangency orders are monotone under passing to sub-germs") {
    for (const auto& r : rows(6)) {
        ClassInvariants inv = class_invariants(*r.ctx, r.inst);
        for (const auto& s : inv.subsets)
            if (!inv.lt.inf) CHECK((s.value.inf || s.value.value >= inv.lt.value));
            else CHECK(s.value.inf);
    }
}

TEST_CASE("Lt is infinite exactly when the restriction vanishes (zero-restriction certificate)") {
    for (const auto& r : rows(8)) {
        const auto& rec = *r.ctx->record;
        DiffForm pulled = pullback(r.inst.psi(), standard_symplectic(r.cls->n));
        SymplecticScene scene{r.cls->n, r.inst.scene_branches(), r.cls->label};
        std::vector<std::vector<std::size_t>> subsets{{}};
        for (std::size_t i = 0; i < scene.branches.size(); ++i) subsets[0].push_back(i);
        for (const auto& [name, idx] : rec.subsets) subsets.push_back(idx);
        for (const auto& idx : subsets) {
            bool zero = is_zero(sub_space(*r.ctx, idx)->restrict(pulled));
            std::vector<Branch> sub;
            for (std::size_t i : idx) sub.push_back(scene.branches[i]);
            CAPTURE(r.var->sub);
            // An exact chart exists iff the restriction is zero.
            CHECK(exact_chart_certificate(sub, scene.n) == zero);
            // Without a certificate the search must hit the ceiling on zero restrictions.
            LtOptions small;
            small.ceiling = 18;
            if (zero) CHECK_THROWS_AS(lt_search_serial(sub, scene.n, small), BoundError);
        }
    }
}

TEST_CASE("parallel and serial tangency searches agree") {
    auto rs = rows(10);
    for (std::size_t k = 0; k < rs.size(); k += 3) {
        const auto& r = rs[k];
        DiffForm pulled = pullback(r.inst.psi(), standard_symplectic(r.cls->n));
        if (is_zero(r.ctx->space.restrict(pulled))) continue;
        auto scene = r.inst.scene_branches();
        CHECK(lt_search_serial(scene, r.cls->n) == lt_search_parallel(scene, r.cls->n));
    }
}

TEST_CASE("index of isotropy basics") {
    const auto& s = catalog("U7")->space;
    Vec a(s.closed_dim(), Q(0));
    CHECK(index_of_isotropy(s, a).inf);
    a[0] = 1;
    CHECK(index_of_isotropy(s, a) == Order::of(0));
    Vec b(s.closed_dim(), Q(0));
    b[5] = 1;
    CHECK(index_of_isotropy(s, b) == Order::of(2));
    CHECK_THROWS_AS(index_of_isotropy(s, Vec(2, Q(0))), InputError);
}

TEST_CASE("printed U9 row-1 geometry flags are not attained by any representative") {
    auto ctx = catalog("U9");
    const auto& c = ctx->record->find("1");
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial)
        for (int sign : {1, -1}) {
            ClassInstance inst{ctx->record.get(), &c, sign, random_moduli(c, c.variants.front(), rng)};
            auto g = geometric_conditions(geometric_frame(inst.scene_branches(), ctx->record->singular_branch),
                                          standard_symplectic_matrix(c.n));
            CHECK_FALSE(g.v_nonzero);
            CHECK(g.l12_nonzero);
            CHECK_FALSE(g.ker_w_is_l2);
        }
}

TEST_CASE("geometric frame rejects degenerate scenes") {
    Branch line;
    line.map = {parse_polynomial("t", {"t"}), Polynomial(1), Polynomial(1), Polynomial(1)};
    CHECK_THROWS_AS(geometric_frame({line}, 0), InputError);
}
