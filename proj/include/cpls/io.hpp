#pragma once

#include <string>

#include "cpls/model.hpp"

namespace cpls {

// Instance file format: a JSON object with `vertices` (count), `edges`,
// `clusters`, `marked`, `mode`, `variant` and an optional `embedding` =
// {rotations, outer_face, nesting}. Unknown fields are rejected by name.
ProblemInstance load_instance(const std::string& path);
ProblemInstance parse_instance(const std::string& text);

std::string serialize_instance(const ProblemInstance& inst);
void save_instance(const ProblemInstance& inst, const std::string& path);

}  // namespace cpls
