#include "algres/report.hpp"
#include "algres/error.hpp"
#include "algres/parser.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <random>
#include <sstream>

#ifndef ALGRES_DATA_DIR
#define ALGRES_DATA_DIR "data"
#endif

namespace algres {

namespace {

const std::vector<std::string> tvar{"t"};

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw InputError(std::string(what) + " entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<int> int_list(const Json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw InputError(std::string(what) + " entries must be integers");
        out.push_back(e.get<int>());
    }
    return out;
}

Branch parse_branch(const Json& j, std::size_t index, const std::map<std::string, Q>& k = {}) {
    Branch b;
    b.label = "B" + std::to_string(index + 1);
    const Json* comps = &j;
    if (j.is_object()) {
        if (j.contains("label")) b.label = j.at("label").get<std::string>();
        comps = &field(j, "map");
    }
    for (const auto& s : string_list(*comps, "branch components")) b.map.push_back(parse_polynomial(s, tvar, k));
    return b;
}

Json radicals(const std::vector<Radical>& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

Json rationals(const Vec& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

Json moduli_json(const std::map<std::string, Q>& m) {
    Json o = Json::object();
    for (const auto& [k, v] : m) o[k] = to_string(v);
    return o;
}

Json geometry_json(const GeometricFlags& g) {
    return Json{{"V_nonzero", g.v_nonzero},
                {"l1_l2_nonzero", g.l12_nonzero},
                {"ker_omega_is_l2", g.ker_w_is_l2},
                {"W_zero", g.w_zero}};
}

// Runs fn(i) for i < n, rethrowing the first failure by index.
template <class F>
void for_each_index(std::size_t n, bool parallel, F&& fn) {
    std::vector<std::exception_ptr> errors(n);
    auto body = [&](std::size_t i) {
        try {
            fn(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (parallel) {
        const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// Common value over both signs, or "sign-dependent".
Json merge_signs(const std::vector<Json>& values) {
    for (const auto& v : values)
        if (v != values.front()) return "sign-dependent";
    return values.front();
}

const Variant& find_variant(const ClassRecord& c, const std::string& name) {
    for (const auto& v : c.variants)
        if (v.name == name || v.sub == name) return v;
    if (name.empty()) return c.variants.front();
    throw InputError("class " + c.label + " has no variant '" + name + "'");
}

} // namespace

Json order_json(const Order& o) { return o.inf ? Json("inf") : Json(o.value); }

CurveGerm parse_germ(const Json& j) {
    try {
        CurveGerm g;
        g.name = j.contains("name") ? j.at("name").get<std::string>() : std::string("germ");
        g.vars = string_list(field(j, "variables"), "variables");
        g.weights = int_list(field(j, "weights"), "weights");
        if (g.weights.size() != g.vars.size()) throw InputError("weights and variables differ in length");
        for (const auto& e : string_list(field(j, "equations"), "equations"))
            g.equations.push_back(parse_polynomial(e, g.vars));
        const Json& br = field(j, "branches");
        if (!br.is_array()) throw InputError("branches must be an array");
        for (std::size_t b = 0; b < br.size(); ++b) {
            g.branches.push_back(parse_branch(br[b], b));
            if (g.branches.back().map.size() != g.vars.size())
                throw InputError("branch " + std::to_string(b + 1) + " has the wrong number of components");
        }
        if (j.contains("symmetries"))
            for (const auto& s : field(j, "symmetries")) g.symmetries.push_back(int_list(s, "symmetries"));
        return g;
    } catch (const Json::exception& e) {
        throw InputError(std::string("germ file: ") + e.what());
    }
}

std::shared_ptr<const GermContext> load_germ(const std::string& name_or_file, int bound) {
    for (const auto& f : catalog_families())
        if (f == name_or_file)
            return bound == RestrictionSpace::default_bound ? catalog(f) : build_context(make_record(f), bound);
    CurveGerm g = parse_germ(read_json_file(name_or_file));
    return user_context(g, bound);
}

SceneSpec parse_scene(const Json& j) {
    try {
        SceneSpec s;
        s.scene.n = field(j, "n").get<int>();
        if (s.scene.n < 1) throw InputError("scene dimension must be positive");
        s.scene.label = j.contains("name") ? j.at("name").get<std::string>() : std::string("scene");
        const Json& br = field(j, "branches");
        if (!br.is_array() || br.empty()) throw InputError("scene needs at least one branch");
        for (std::size_t b = 0; b < br.size(); ++b) {
            s.scene.branches.push_back(parse_branch(br[b], b));
            if (s.scene.branches.back().map.size() != static_cast<std::size_t>(2 * s.scene.n))
                throw InputError("scene branch " + std::to_string(b + 1) + " needs 2n components");
        }
        std::size_t singular = j.contains("singular") ? j.at("singular").get<std::size_t>() : 1;
        if (singular < 1 || singular > br.size()) throw InputError("singular branch index out of range");
        s.singular = singular - 1;
        if (j.contains("subsets")) {
            for (const auto& [name, idx] : field(j, "subsets").items()) {
                std::vector<std::size_t> v;
                for (int i : int_list(idx, "subset")) {
                    if (i < 1 || static_cast<std::size_t>(i) > br.size())
                        throw InputError("subset " + name + " index out of range");
                    v.push_back(static_cast<std::size_t>(i - 1));
                }
                s.subsets.push_back({name, v});
            }
        }
        if (j.contains("germ")) s.germ = j.at("germ").get<std::string>();
        if (j.contains("psi")) s.psi = string_list(j.at("psi"), "psi");
        if (!s.psi.empty() && s.psi.size() != static_cast<std::size_t>(2 * s.scene.n))
            throw InputError("psi needs 2n components");
        if (!s.psi.empty() && s.germ.empty()) throw InputError("psi requires a germ");
        return s;
    } catch (const Json::exception& e) {
        throw InputError(std::string("scene file: ") + e.what());
    }
}

Json basis_results(const RestrictionSpace& s) {
    Json elems = Json::array();
    for (const auto& e : s.basis())
        elems.push_back({{"name", e.name}, {"form", e.form.str(s.germ().vars)}, {"degree", e.degree}, {"closed", e.closed}});
    Json disc = Json::array();
    for (int d : s.ideal_discrepancies()) disc.push_back(d);
    return Json{{"dim", s.dim()}, {"closed_dim", s.closed_dim()}, {"elements", elems}, {"ideal_discrepancies", disc}};
}

Json action_results(const GermContext& ctx) {
    const auto& t = ctx.table;
    const auto& basis = ctx.space.basis();
    Json fields = Json::array();
    for (std::size_t x = 0; x < t.fields.size(); ++x) {
        Json images = Json::object();
        for (std::size_t j = 0; j < t.dim; ++j) {
            Json img = Json::object();
            for (std::size_t i = 0; i < t.dim; ++i)
                if (t.m[x][i][j] != 0) img[basis[i].name] = to_string(t.m[x][i][j]);
            images[basis[j].name] = img;
        }
        fields.push_back(
            {{"label", t.labels[x]}, {"generator", t.fields[x].name}, {"degree", t.fields[x].degree}, {"images", images}});
    }
    return Json{{"fields", fields}};
}

Json classify_results(const GermContext& ctx, const Vec& a) {
    if (a.size() != ctx.space.closed_dim())
        throw InputError("expected " + std::to_string(ctx.space.closed_dim()) + " coefficients, got " +
                         std::to_string(a.size()));
    Classification c = classify(ctx.space, ctx.table, ctx.patterns, ctx.tree, a);
    int mu = symplectic_multiplicity(ctx.table, a);
    Json moduli = Json::object();
    for (const auto& [name, v] : c.moduli) moduli[name] = v.str();
    Json trace = Json::array();
    for (const auto& step : c.elimination.trace) {
        Json coeffs = Json::object();
        for (std::size_t x = 0; x < step.coeffs.size(); ++x)
            if (step.coeffs[x] != 0) coeffs[ctx.table.labels[x]] = to_string(step.coeffs[x]);
        trace.push_back({{"level", step.level}, {"fields", coeffs}});
    }
    Json r{{"input", rationals(a)},
           {"class", c.label},
           {"normal_form_label", c.sub},
           {"sign", c.sign},
           {"sign_invariant", c.sign_genuine},
           {"normal_form", radicals(c.normal_form)},
           {"moduli", moduli},
           {"trace", trace},
           {"cod", mu - static_cast<int>(c.moduli.size())},
           {"mu_sym", mu},
           {"ind", order_json(index_of_isotropy(ctx.space, a))}};
    if (is_zero(a)) r["note"] = "zero restriction: contained in a smooth Lagrangian submanifold";
    return r;
}

Json invariants_results(const GermContext& ctx, const ClassSelection& sel, const LtOptions& o) {
    if (!ctx.record) throw InputError("--class requires a catalog germ");
    const auto& c = ctx.record->find(sel.label);
    const auto& v = find_variant(c, sel.variant);
    if (sel.sign != 1 && sel.sign != -1) throw InputError("sign must be +1 or -1");
    if (sel.sign == -1 && !c.signed_form) throw InputError("class " + c.label + " has no sign");
    for (const auto& [name, q] : sel.moduli) {
        const auto& names = c.pattern.moduli_names;
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw InputError("class " + c.label + " has no modulus '" + name + "'");
    }
    std::mt19937_64 rng(sel.seed);
    auto moduli = random_moduli(c, v, rng);
    for (const auto& [name, q] : sel.moduli) moduli[name] = q;
    apply_variant(v, moduli);
    if (v.set.empty() && !respects_exclusions(c, moduli))
        throw InputError("moduli violate the generic-row conditions of class " + c.label);

    ClassInstance inst{ctx.record.get(), &c, sel.sign, moduli};
    ClassInvariants inv = class_invariants(ctx, inst, o);
    Json subsets = Json::object();
    for (const auto& s : inv.subsets) subsets[s.name] = order_json(s.value);
    Json scene = Json::array();
    for (const auto& b : inst.scene_branches()) {
        Json comps = Json::array();
        for (const auto& p : b.map) comps.push_back(p.str(tvar));
        scene.push_back(comps);
    }
    Json r{{"class", c.label},
           {"variant", v.name},
           {"normal_form_label", v.sub},
           {"sign", sel.sign},
           {"moduli", moduli_json(moduli)},
           {"normal_form", rationals(inst.normal_form())},
           {"realizing_form", inst.omega().str(default_names(static_cast<std::size_t>(2 * c.n)))},
           {"scene", scene},
           {"cod", inv.cod},
           {"mu_sym", inv.mu},
           {"ind", order_json(inv.ind)},
           {"ind2", order_json(inv.ind2)},
           {"Lt", order_json(inv.lt)},
           {"subsets", subsets},
           {"geometry", geometry_json(inv.geometry)},
           {"zero_restriction", inv.zero_restriction}};
    if (inv.zero_restriction) r["note"] = "zero restriction: contained in a smooth Lagrangian submanifold";
    return r;
}

Json scene_results(const SceneSpec& spec, int bound, const LtOptions& o) {
    const auto& scene = spec.scene;
    Certificate cert;
    Json extra = Json::object();
    std::shared_ptr<const GermContext> ctx;
    if (!spec.germ.empty() && !spec.psi.empty()) {
        ctx = load_germ(spec.germ, bound);
        const auto& g = ctx->space.germ();
        if (g.branches.size() != scene.branches.size()) throw InputError("scene and germ differ in branch count");
        PolyMap psi;
        for (const auto& s : spec.psi) psi.push_back(parse_polynomial(s, g.vars));
        for (std::size_t b = 0; b < scene.branches.size(); ++b) {
            PolyMap img;
            for (const auto& comp : psi) img.push_back(comp.compose(g.branches[b].map));
            if (!same_up_to_reparam(img, scene.branches[b].map))
                throw InputError("scene branch " + std::to_string(b + 1) + " is not the chart image of the germ branch");
        }
        DiffForm pulled = pullback(psi, standard_symplectic(scene.n));
        Vec full = ctx->space.restrict(pulled);
        for (std::size_t i = ctx->space.closed_dim(); i < full.size(); ++i)
            if (full[i] != 0) throw CheckError("pulled-back symplectic form restricts outside the closed subspace");
        Vec a(full.begin(), full.begin() + static_cast<long>(ctx->space.closed_dim()));
        extra = classify_results(*ctx, a);
        auto c = ctx;
        cert = [c, pulled](const std::vector<std::size_t>& idx) { return is_zero(sub_space(*c, idx)->restrict(pulled)); };
    }
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < scene.branches.size(); ++i) all.push_back(i);
    Json subsets = Json::object();
    for (const auto& [name, idx] : spec.subsets) subsets[name] = order_json(lt_multigerm(scene, idx, cert, o));
    Json r{{"scene", scene.label},
           {"n", scene.n},
           {"branches", scene.branches.size()},
           {"certificate", cert ? "zero restriction of the pulled-back form" : "exact Lagrangian chart"},
           {"Lt", order_json(lt_multigerm(scene, all, cert, o))},
           {"subsets", subsets}};
    try {
        r["geometry"] =
            geometry_json(geometric_conditions(geometric_frame(scene.branches, spec.singular), standard_symplectic_matrix(scene.n)));
    } catch (const InputError& e) {
        r["geometry"] = nullptr;
        r["geometry_note"] = e.what();
    }
    if (!extra.empty()) r["restriction"] = extra;
    return r;
}

namespace {
Json germ_json(const CurveGerm& g);
}

Json family_tables(const GermContext& ctx, const TableOptions& o) {
    if (!ctx.record) throw InputError("tables need a catalog germ");
    const auto& rec = *ctx.record;
    struct Row {
        const ClassRecord* cls;
        const Variant* var;
        std::vector<int> signs;
        std::map<std::string, Q> moduli;
        std::vector<ClassInvariants> inv;
    };
    std::vector<Row> rows;
    std::mt19937_64 rng(o.seed);
    for (const auto& c : rec.classes)
        for (const auto& v : c.variants) {
            Row r{&c, &v, c.signed_form ? std::vector<int>{1, -1} : std::vector<int>{1}, random_moduli(c, v, rng), {}};
            r.inv.resize(r.signs.size());
            rows.push_back(std::move(r));
        }
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t s = 0; s < rows[i].signs.size(); ++s) tasks.push_back({i, s});
    for_each_index(tasks.size(), o.parallel, [&](std::size_t k) {
        auto [i, s] = tasks[k];
        Row& r = rows[i];
        ClassInstance inst{&rec, r.cls, r.signs[s], r.moduli};
        r.inv[s] = class_invariants(ctx, inst, o.lt);
    });

    auto collect = [](const Row& r, auto&& get) {
        std::vector<Json> v;
        for (const auto& inv : r.inv) v.push_back(get(inv));
        return merge_signs(v);
    };
    Json classification = Json::array(), tangency = Json::array(), geometry = Json::array();
    for (const auto& r : rows) {
        if (r.var == &r.cls->variants.front())
            classification.push_back({{"class", r.cls->label},
                                      {"cod", collect(r, [](const ClassInvariants& x) { return Json(x.cod); })},
                                      {"mu_sym", collect(r, [](const ClassInvariants& x) { return Json(x.mu); })},
                                      {"ind", collect(r, [](const ClassInvariants& x) { return order_json(x.ind); })}});
        Json t{{"class", r.cls->label}};
        if (!r.var->name.empty()) t["variant"] = r.var->name;
        t["moduli"] = moduli_json(r.moduli);
        t["ind"] = collect(r, [](const ClassInvariants& x) { return order_json(x.ind); });
        t["ind2"] = collect(r, [](const ClassInvariants& x) { return order_json(x.ind2); });
        t["Lt"] = collect(r, [](const ClassInvariants& x) { return order_json(x.lt); });
        for (std::size_t k = 0; k < rec.subsets.size(); ++k)
            t[rec.subsets[k].first] = collect(r, [k](const ClassInvariants& x) { return order_json(x.subsets[k].value); });
        tangency.push_back(t);
        Json g{{"class", r.cls->label}, {"normal_form", r.var->sub}};
        for (const char* key : {"V_nonzero", "l1_l2_nonzero", "ker_omega_is_l2", "W_zero"})
            g[key] = collect(r, [key](const ClassInvariants& x) { return geometry_json(x.geometry)[key]; });
        geometry.push_back(g);
    }
    return Json{{"family", rec.family},
                {"germ", germ_json(rec.germ)},
                {"basis", basis_results(ctx.space)},
                {"action_table", action_results(ctx)},
                {"classification", classification},
                {"tangency", tangency},
                {"geometry", geometry}};
}

namespace {

struct Verifier {
    std::string family;
    const Json& golden;
    bool accept;
    struct Erratum {
        Json printed, corrected;
        std::string reason;
    };
    std::map<std::string, Erratum> errata;
    std::vector<CellResult> cells;

    Verifier(std::string f, const Json& g, bool a) : family(std::move(f)), golden(g), accept(a) {
        if (g.contains("errata"))
            for (const auto& e : g.at("errata"))
                errata[e.at("cell").get<std::string>()] = {e.value("printed", Json()), e.at("corrected"),
                                                           e.value("reason", std::string())};
    }

    static bool same(const Json& a, const Json& b) {
        return nlohmann::json::parse(a.dump()) == nlohmann::json::parse(b.dump());
    }

    void cell(const std::string& path, const Json& expected, const Json& actual, bool equal) {
        CellResult c{family + "/" + path, expected, actual, "pass", ""};
        auto it = errata.find(c.cell);
        if (it != errata.end()) {
            const Erratum& e = it->second;
            if (!e.printed.is_null() && !same(expected, e.printed)) {
                c.status = "fail";
                c.note = "golden value differs from the printed value recorded with the erratum";
            } else if (accept) {
                bool ok = same(actual, e.corrected);
                c.status = ok ? "erratum-accepted" : "fail";
                c.note = (ok ? "matches documented correction: " : "differs from documented correction: ") + e.reason;
            } else if (!equal) {
                c.status = "erratum";
                c.note = "documented erratum: " + e.reason;
            }
        } else if (!equal) {
            c.status = "fail";
        }
        cells.push_back(std::move(c));
    }

    void compare(const std::string& path, const Json& expected, const Json* actual) {
        if (expected.is_null()) return;
        if (!actual) {
            CellResult c{family + "/" + path, expected, nullptr, "fail", "not computed"};
            cells.push_back(std::move(c));
            return;
        }
        cell(path, expected, *actual, same(expected, *actual));
    }

    static const Json* find_row(const Json& rows, const std::string& key, const std::string& id,
                                const char* variant_key = nullptr) {
        for (const auto& r : rows) {
            std::string rid = r.value(key, std::string());
            if (variant_key && r.contains(variant_key)) rid += "[" + r.at(variant_key).get<std::string>() + "]";
            if (rid == id) return &r;
        }
        return nullptr;
    }

    static std::string golden_row_id(const Json& r, const char* key, const char* variant_key) {
        std::string id = r.at(key).get<std::string>();
        if (variant_key && r.contains(variant_key)) id += "[" + r.at(variant_key).get<std::string>() + "]";
        return id;
    }

    void rows(const char* section, const char* key, const char* variant_key, const Json& actual) {
        if (!golden.contains(section)) return;
        for (const auto& g : golden.at(section)) {
            std::string id = golden_row_id(g, key, variant_key);
            const Json* a = actual.contains(section) ? find_row(actual.at(section), key, id, variant_key) : nullptr;
            for (const auto& [k, v] : g.items()) {
                if (k == key || (variant_key && k == variant_key) || k == "class") continue;
                const Json* av = a && a->contains(k) ? &a->at(k) : nullptr;
                compare(std::string(section) + "/" + id + "/" + k, v, av);
            }
        }
    }
};

} // namespace

namespace {

Json germ_json(const CurveGerm& g) {
    Json weights = Json::array(), equations = Json::array(), vars = Json::array();
    for (int w : g.weights) weights.push_back(w);
    for (const auto& e : g.equations) equations.push_back(e.str(g.vars));
    for (const auto& x : g.vars) vars.push_back(x);
    return Json{{"variables", vars}, {"weights", weights}, {"equations", equations}};
}

// Equations compare as polynomials, everything else literally.
void germ_cells(Verifier& v, const Json& golden, const Json& actual) {
    if (!golden.contains("germ")) return;
    const Json& g = golden.at("germ");
    if (g.contains("weights")) v.compare("germ/weights", g.at("weights"), &actual.at("weights"));
    if (!g.contains("equations")) return;
    auto vars = actual.at("variables").get<std::vector<std::string>>();
    const Json& eqs = g.at("equations");
    const Json& act = actual.at("equations");
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        std::string path = "germ/equations/" + std::to_string(i + 1);
        if (i >= act.size()) {
            v.compare(path, eqs[i], nullptr);
            continue;
        }
        bool equal = eqs[i].is_string() &&
                     parse_polynomial(eqs[i].get<std::string>(), vars) == parse_polynomial(act[i].get<std::string>(), vars);
        v.cell(path, eqs[i], act[i], equal);
    }
}

} // namespace

std::vector<CellResult> compare_tables(const std::string& family, const Json& golden, const Json& actual,
                                       bool accept_errata) {
    Verifier v(family, golden, accept_errata);
    germ_cells(v, golden, actual.at("germ"));
    if (golden.contains("basis")) {
        const Json& gb = golden.at("basis");
        const Json& ab = actual.at("basis");
        for (const char* k : {"dim", "closed_dim"})
            if (gb.contains(k)) v.compare(std::string("basis/") + k, gb.at(k), &ab.at(k));
        if (gb.contains("elements"))
            for (const auto& ge : gb.at("elements")) {
                std::string name = ge.at("name").get<std::string>();
                const Json* ae = Verifier::find_row(ab.at("elements"), "name", name);
                for (const auto& [k, val] : ge.items()) {
                    if (k == "name") continue;
                    v.compare("basis/" + name + "/" + k, val, ae && ae->contains(k) ? &ae->at(k) : nullptr);
                }
            }
    }
    if (golden.contains("action_table")) {
        const Json& af = actual.at("action_table").at("fields");
        for (const auto& gf : golden.at("action_table").at("fields")) {
            std::string label = gf.at("label").get<std::string>();
            const Json* a = Verifier::find_row(af, "label", label);
            for (const char* k : {"generator", "degree"})
                if (gf.contains(k))
                    v.compare("action_table/" + label + "/" + k, gf.at(k), a ? &a->at(k) : nullptr);
            for (const auto& [theta, img] : gf.at("images").items()) {
                const Json* ai = a && a->at("images").contains(theta) ? &a->at("images").at(theta) : nullptr;
                v.compare("action_table/" + label + "/" + theta, img, ai);
            }
        }
    }
    v.rows("classification", "class", nullptr, actual);
    v.rows("tangency", "class", "variant", actual);
    v.rows("geometry", "normal_form", nullptr, actual);
    return v.cells;
}

std::vector<CellResult> verify_family(const std::string& family, const Json& golden, const VerifyOptions& o) {
    GermRecord rec = make_record(family, o.equations);
    std::shared_ptr<const GermContext> ctx;
    std::string failure;
    try {
        ctx = (o.equations.empty() && o.bound == RestrictionSpace::default_bound) ? catalog(family)
                                                                                  : build_context(rec, o.bound);
    } catch (const CheckError& e) {
        failure = e.what();
    } catch (const InputError& e) {
        failure = e.what();
    }
    if (!failure.empty()) {
        Verifier v(family, golden, o.accept_errata);
        germ_cells(v, golden, germ_json(rec.germ));
        v.cells.push_back({family + "/load", "ok", failure, "fail", "load-time check failed"});
        return v.cells;
    }
    TableOptions to{o.seed, o.lt, o.parallel};
    return compare_tables(family, golden, family_tables(*ctx, to), o.accept_errata);
}

bool cells_pass(const std::vector<CellResult>& cells) {
    for (const auto& c : cells)
        if (c.status != "pass" && c.status != "erratum-accepted") return false;
    return true;
}

Json verify_results(const std::vector<CellResult>& cells) {
    Json list = Json::array();
    std::size_t pass = 0, fail = 0, erratum = 0, accepted = 0;
    for (const auto& c : cells) {
        Json j{{"cell", c.cell}, {"expected", c.expected}, {"actual", c.actual}, {"status", c.status}};
        if (!c.note.empty()) j["note"] = c.note;
        list.push_back(j);
        if (c.status == "pass") ++pass;
        else if (c.status == "erratum") ++erratum;
        else if (c.status == "erratum-accepted") ++accepted;
        else ++fail;
    }
    return Json{{"summary",
                 {{"cells", cells.size()},
                  {"pass", pass},
                  {"fail", fail},
                  {"erratum", erratum},
                  {"erratum_accepted", accepted},
                  {"ok", cells_pass(cells)}}},
                {"cells", list}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("'" + path + "': " + e.what());
    }
}

std::string default_golden_dir() {
    if (const char* env = std::getenv("ALGRES_DATA_DIR")) return std::string(env) + "/golden";
    return std::string(ALGRES_DATA_DIR) + "/golden";
}

Json envelope(const std::string& command, int bound, Json results, std::vector<std::string> notes) {
    Json n = Json::array();
    for (auto& s : notes) n.push_back(s);
    return Json{{"command", command},
                {"engine", engine_version},
                {"degree_bound", bound},
                {"results", std::move(results)},
                {"notes", n}};
}

namespace {

std::string cell_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "";
    if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
    return j.dump();
}

void md_basis(std::ostringstream& out, const Json& b) {
    out << "dim [Λ²] = " << b.at("dim") << ", dim [Z²] = " << b.at("closed_dim") << "\n\n";
    out << "| name | form | degree | closed |\n|---|---|---:|:---:|\n";
    for (const auto& e : b.at("elements"))
        out << "| " << cell_text(e.at("name")) << " | " << cell_text(e.at("form")) << " | " << e.at("degree") << " | "
            << cell_text(e.at("closed")) << " |\n";
}

void md_actions(std::ostringstream& out, const Json& t) {
    const auto& fields = t.at("fields");
    if (fields.empty()) return;
    std::vector<std::string> thetas;
    for (const auto& [k, v] : fields.front().at("images").items()) thetas.push_back(k);
    out << "| L_X [θ] |";
    for (const auto& th : thetas) out << " [" << th << "] |";
    out << "\n|---|";
    for (std::size_t i = 0; i < thetas.size(); ++i) out << "---:|";
    out << "\n";
    for (const auto& f : fields) {
        out << "| " << cell_text(f.at("label")) << " = " << cell_text(f.at("generator")) << " |";
        for (const auto& th : thetas) {
            std::string s;
            for (const auto& [name, c] : f.at("images").at(th).items())
                s += (s.empty() ? "" : " + ") + cell_text(c) + "[" + name + "]";
            out << " " << (s.empty() ? "0" : s) << " |";
        }
        out << "\n";
    }
}

void md_object(std::ostringstream& out, const Json& o) {
    out << "| key | value |\n|---|---|\n";
    for (const auto& [k, v] : o.items()) {
        if (v.is_array() && !v.empty() && v.front().is_object()) continue;
        out << "| " << k << " | " << (v.is_object() || v.is_array() ? v.dump() : cell_text(v)) << " |\n";
    }
}

void md_rows(std::ostringstream& out, const Json& rows) {
    if (rows.empty()) return;
    std::vector<std::string> keys;
    for (const auto& r : rows)
        for (const auto& [k, v] : r.items())
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    out << "|";
    for (const auto& k : keys) out << " " << k << " |";
    out << "\n|";
    for (std::size_t i = 0; i < keys.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& r : rows) {
        out << "|";
        for (const auto& k : keys) {
            std::string s = r.contains(k) ? (r.at(k).is_object() ? r.at(k).dump() : cell_text(r.at(k))) : "";
            out << " " << s << " |";
        }
        out << "\n";
    }
}

} // namespace

std::string render_markdown(const Json& report) {
    std::ostringstream out;
    out << "# " << cell_text(report.at("command")) << "\n\n";
    out << "engine: " << cell_text(report.at("engine")) << ", degree bound: " << report.at("degree_bound") << "\n\n";
    const Json& r = report.at("results");
    auto section = [&](const std::string& title) { out << "## " << title << "\n\n"; };
    if (r.contains("germ") && r.at("germ").is_string()) out << "germ: " << cell_text(r.at("germ")) << "\n\n";
    if (r.contains("basis")) {
        section("Basis");
        md_basis(out, r.at("basis"));
        out << "\n";
    }
    if (r.contains("action_table")) {
        section("Infinitesimal actions");
        md_actions(out, r.at("action_table"));
        out << "\n";
    }
    for (const char* key : {"classification", "invariants", "scene"})
        if (r.contains(key) && r.at(key).is_object()) {
            section(key);
            md_object(out, r.at(key));
            if (r.at(key).contains("trace")) {
                out << "\n";
                md_rows(out, r.at(key).at("trace"));
            }
            out << "\n";
        }
    for (const char* key : {"classification", "tangency", "geometry"})
        if (r.contains(key) && r.at(key).is_array()) {
            section(key);
            md_rows(out, r.at(key));
            out << "\n";
        }
    if (r.contains("families"))
        for (const auto& f : r.at("families")) {
            section("Family " + cell_text(f.at("family")));
            md_object(out, f.at("summary"));
            out << "\n";
            Json shown = Json::array();
            for (const auto& c : f.at("cells"))
                if (c.at("status") != "pass") shown.push_back(c);
            if (shown.empty())
                out << "All cells pass.\n\n";
            else {
                md_rows(out, shown);
                out << "\n";
            }
        }
    const Json& notes = report.at("notes");
    if (!notes.empty()) {
        section("Notes");
        for (const auto& n : notes) out << "- " << cell_text(n) << "\n";
    }
    return out.str();
}

} // namespace algres
