#pragma once
#include "algres/invariants.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace algres {

using Json = nlohmann::ordered_json;

inline constexpr const char* engine_version = "algres 1.0.0";

Json order_json(const Order& o);

// Catalog name (U7, U8, U9) or path to a germ file.
std::shared_ptr<const GermContext> load_germ(const std::string& name_or_file, int bound);
CurveGerm parse_germ(const Json& j);

struct SceneSpec {
    SymplecticScene scene;
    std::size_t singular = 0;
    std::vector<std::pair<std::string, std::vector<std::size_t>>> subsets;
    std::string germ;              // optional catalog name or germ file
    std::vector<std::string> psi;  // optional chart, strings in the germ variables
};
SceneSpec parse_scene(const Json& j);

Json basis_results(const RestrictionSpace& s);
Json action_results(const GermContext& ctx);
Json classify_results(const GermContext& ctx, const Vec& a);

struct ClassSelection {
    std::string label;
    std::string variant; // variant name or normal-form sub-label; "" = generic
    int sign = 1;
    std::map<std::string, Q> moduli; // missing moduli are drawn from the seed
    std::uint64_t seed = 1;
};
Json invariants_results(const GermContext& ctx, const ClassSelection& sel, const LtOptions& o);
Json scene_results(const SceneSpec& spec, int bound, const LtOptions& o);

// Table sections in golden-file layout.
struct TableOptions {
    std::uint64_t seed = 1;
    LtOptions lt;
    bool parallel = true;
};
Json family_tables(const GermContext& ctx, const TableOptions& o);

struct CellResult {
    std::string cell;
    Json expected, actual;
    std::string status; // pass, fail, erratum
    std::string note;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    bool accept_errata = false;
    bool parallel = true;
    LtOptions lt;
    std::vector<std::string> equations; // replaces the catalog equations
    int bound = RestrictionSpace::default_bound;
};

// Cell-by-cell comparison of golden data with computed tables.
std::vector<CellResult> compare_tables(const std::string& family, const Json& golden, const Json& actual,
                                       bool accept_errata);
std::vector<CellResult> verify_family(const std::string& family, const Json& golden, const VerifyOptions& o);
Json verify_results(const std::vector<CellResult>& cells);
bool cells_pass(const std::vector<CellResult>& cells);

Json read_json_file(const std::string& path);
std::string default_golden_dir();

// Full report envelope.
Json envelope(const std::string& command, int bound, Json results, std::vector<std::string> notes = {});
std::string render_markdown(const Json& report);

} // namespace algres
