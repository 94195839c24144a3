#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ddc/lti.hpp"

namespace ddc {

// Fields `A`, `B`, `C`, `D` as row-major nested arrays; optional `picks_w`,
// `picks_c` as 1-based index arrays into (u, y). Dimensions come from A (n),
// D (p rows, m columns); an empty `D` row list needs explicit `m` and `p`.
[[nodiscard]] StateSpaceModel parse_model_json(std::string_view text);
[[nodiscard]] StateSpaceModel load_model_json(const std::filesystem::path& path);
[[nodiscard]] std::string model_to_json(const StateSpaceModel& model);

} // namespace ddc
