#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ssg/activation.hpp"
#include "ssg/graph.hpp"

namespace ssg {

struct Instance {
  RootedGraph graph;
  ActivationParams params;
};

// {"vertices": [...], "root": "O", "edges": [{"id": "e1", "ends": ["O","v"], "p": 0.5}, ...]}
// Missing "p" means 1. Syntax and schema problems raise ParseError with the
// line and column of the offending spot.
Instance parse_instance(std::string_view text);
// "-" reads standard input.
Instance load_instance(const std::string& path);

nlohmann::json instance_to_json(const RootedGraph& g, const ActivationParams* params = nullptr);

// Replaces every floating-point number by its 12-significant-digit rounding,
// so dumps are stable across platforms.
nlohmann::json round_numbers(const nlohmann::json& j, int digits = 12);
std::string format_number(double x, int digits = 12);

}  // namespace ssg
