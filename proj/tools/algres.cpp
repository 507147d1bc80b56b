#include "algres/error.hpp"
#include "algres/report.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace algres;

namespace {

const char* zero_cert_note = "every inf among Lt and the subset orders is certified by the zero restriction of the "
                             "pulled-back symplectic form";
const char* chart_cert_note = "every inf among Lt and the subset orders is certified by an exact Lagrangian chart "
                              "of jet degree ≤ 12";
const char* canonical_note = "canonicalization: artifact-defined (lead coefficient scaled to ±1, residual signs "
                             "resolved by the lexicographically smallest moduli vector)";

struct Output {
    std::string format = "json";

    void emit(const Json& report) const {
        if (format == "md")
            std::cout << render_markdown(report);
        else
            std::cout << report.dump(2) << "\n";
    }
};

std::string command_line(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) s += (i > 1 ? " " : "") + std::string(argv[i]);
    return s;
}

Vec parse_coeffs(const std::vector<std::string>& raw) {
    Vec v;
    for (const auto& s : raw) v.push_back(parse_rational(s));
    return v;
}

std::map<std::string, Q> parse_moduli(const std::vector<std::string>& raw) {
    std::map<std::string, Q> m;
    for (const auto& s : raw) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw InputError("modulus '" + s + "' is not name=value");
        m[s.substr(0, eq)] = parse_rational(s.substr(eq + 1));
    }
    return m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic restrictions and symplectic invariants of quasi-homogeneous curve germs"};
    app.require_subcommand(1);
    Output out;
    int bound = RestrictionSpace::default_bound;
    std::string germ;
    auto common = [&](CLI::App* c) {
        c->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "md"}));
        c->add_option("--degree-bound", bound, "Quasi-degree truncation bound D")->check(CLI::Range(1, 400));
    };

    auto* basis = app.add_subcommand("basis", "Bases of the restriction spaces");
    basis->add_option("--germ", germ, "U7, U8, U9 or a germ file")->required();
    common(basis);

    auto* actions = app.add_subcommand("action-table", "Infinitesimal actions of tangent fields");
    actions->add_option("--germ", germ, "U7, U8, U9 or a germ file")->required();
    common(actions);

    auto* tables = app.add_subcommand("tables", "All table sections of a catalog family in golden layout");
    tables->add_option("--germ", germ, "U7, U8 or U9")->required();
    std::uint64_t seed = 1;
    bool serial = false;
    int ceiling = LtOptions{}.ceiling;
    tables->add_option("--seed", seed, "Seed for the moduli");
    tables->add_flag("--serial", serial, "Compute rows on one thread");
    tables->add_option("--lt-ceiling", ceiling, "Tangency search ceiling");
    common(tables);

    auto* cls = app.add_subcommand("classify", "Classify a closed restriction given by its coordinates");
    std::vector<std::string> coeffs;
    cls->add_option("--germ", germ, "U7, U8, U9 or a germ file")->required();
    cls->add_option("--coeffs", coeffs, "Coordinates c1,...,ck on the closed basis")->required()->delimiter(',');
    common(cls);

    auto* inv = app.add_subcommand("invariants", "Invariants of a catalog class or a symplectic scene");
    ClassSelection sel;
    std::string variant, scene_file;
    std::vector<std::string> moduli;
    int sign = 1;
    auto* inv_germ = inv->add_option("--germ", germ, "U7, U8 or U9");
    auto* inv_class = inv->add_option("--class", sel.label, "Class label, e.g. 5 or 3,0_5");
    inv->add_option("--variant", variant, "Variant name (c1=0) or normal-form label (0_1)");
    inv->add_option("--moduli", moduli, "name=value pairs")->delimiter(',');
    inv->add_option("--sign", sign, "Sign of a ± normal form")->check(CLI::IsMember({1, -1}));
    inv->add_option("--seed", seed, "Seed for unspecified moduli");
    inv->add_option("--lt-ceiling", ceiling, "Tangency search ceiling");
    auto* inv_scene = inv->add_option("--scene", scene_file, "Scene file");
    inv_class->needs(inv_germ);
    inv_scene->excludes(inv_class);
    common(inv);

    auto* ver = app.add_subcommand("verify", "Recompute every golden table cell");
    std::string family = "all", golden_dir = default_golden_dir();
    VerifyOptions vo;
    std::vector<std::string> equations;
    ver->add_option("--family", family, "U7, U8, U9 or all")->check(CLI::IsMember({"U7", "U8", "U9", "all"}));
    ver->add_option("--seed", seed, "Seed for the moduli");
    ver->add_flag("--accept-errata", vo.accept_errata, "Accept documented corrections in place of printed values");
    ver->add_option("--golden", golden_dir, "Directory holding the golden files");
    ver->add_option("--equations", equations, "Replacement defining equations (negative controls)")->delimiter(';');
    ver->add_flag("--serial", serial, "Compute rows on one thread");
    ver->add_option("--lt-ceiling", ceiling, "Tangency search ceiling");
    common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(Status::input);
    }

    const std::string echo = command_line(argc, argv);
    LtOptions lt;
    lt.ceiling = ceiling;
    try {
        if (basis->parsed()) {
            auto ctx = load_germ(germ, bound);
            Json r{{"germ", ctx->space.germ().name}, {"basis", basis_results(ctx->space)}};
            out.emit(envelope(echo, bound, r));
        } else if (actions->parsed()) {
            auto ctx = load_germ(germ, bound);
            Json r{{"germ", ctx->space.germ().name}, {"action_table", action_results(*ctx)}};
            out.emit(envelope(echo, bound, r));
        } else if (tables->parsed()) {
            auto ctx = load_germ(germ, bound);
            TableOptions to{seed, lt, !serial};
            out.emit(envelope(echo, bound, family_tables(*ctx, to), {canonical_note}));
        } else if (cls->parsed()) {
            auto ctx = load_germ(germ, bound);
            Json r{{"germ", ctx->space.germ().name}, {"classification", classify_results(*ctx, parse_coeffs(coeffs))}};
            std::vector<std::string> notes{canonical_note};
            if (!ctx->record) notes.push_back("user germ: classes are labelled by the index of the leading coordinate");
            out.emit(envelope(echo, bound, r, notes));
        } else if (inv->parsed()) {
            if (!scene_file.empty()) {
                SceneSpec spec = parse_scene(read_json_file(scene_file));
                Json r{{"scene", scene_results(spec, bound, lt)}};
                std::vector<std::string> notes{spec.psi.empty() ? chart_cert_note : zero_cert_note};
                out.emit(envelope(echo, bound, r, notes));
            } else {
                if (sel.label.empty()) throw InputError("invariants needs --class or --scene");
                auto ctx = load_germ(germ, bound);
                sel.variant = variant;
                sel.sign = sign;
                sel.seed = seed;
                sel.moduli = parse_moduli(moduli);
                Json r{{"germ", ctx->space.germ().name}, {"invariants", invariants_results(*ctx, sel, lt)}};
                std::vector<std::string> notes{zero_cert_note};
                if (germ == "U8")
                    notes.push_back("ind2 (index of isotropy on the singular branch B3) is an artifact-extended column for U8");
                out.emit(envelope(echo, bound, r, notes));
            }
        } else if (ver->parsed()) {
            vo.seed = seed;
            vo.parallel = !serial;
            vo.lt = lt;
            vo.equations = equations;
            vo.bound = bound;
            std::vector<std::string> fams = family == "all" ? catalog_families() : std::vector<std::string>{family};
            if (!equations.empty() && fams.size() != 1) throw InputError("--equations needs a single --family");
            Json list = Json::array();
            bool ok = true;
            for (const auto& f : fams) {
                auto cells = verify_family(f, read_json_file(golden_dir + "/" + f + ".json"), vo);
                ok = ok && cells_pass(cells);
                Json fr = verify_results(cells);
                list.push_back({{"family", f}, {"summary", fr.at("summary")}, {"cells", fr.at("cells")}});
            }
            std::vector<std::string> notes{canonical_note};
            notes.push_back(vo.accept_errata ? "errata mode: documented corrections replace the printed values"
                                             : "strict mode: documented errata count as mismatches");
            out.emit(envelope(echo, bound, Json{{"ok", ok}, {"families", list}}, notes));
            return ok ? 0 : static_cast<int>(Status::mismatch);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.status());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(Status::input);
    }
    return 0;
}
