#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "cmclab/ar.hpp"
#include "cmclab/classify.hpp"
#include "cmclab/compatibility.hpp"
#include "cmclab/pde_tools.hpp"
#include "cmclab/surface_patch.hpp"

namespace cmclab {

using Json = nlohmann::json;

// Arrays are row-major over (i, j) with j fastest, matching Grid::index.
// Complex fields are split into *_re / *_im arrays. Non-finite values
// serialize as null.

Json to_json(const SpaceParams& space);
Json to_json(const Grid& grid);
Json to_json(const DataPatch& d);
Json to_json(const ARField& f);
Json to_json(const ResidualReport& r);
Json to_json(const BoundConstants& b);
Json to_json(const ClassificationVerdict& v);
Json to_json(const DichotomyResult& r);

// Throws InvalidInput on missing keys or mismatched array lengths.
DataPatch data_patch_from_json(const Json& j);

// Key of a residual entry in reports and tolerance tables: "2.5" -> "eq2_5".
std::string equation_key(const std::string& id);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace cmclab
