#pragma once

#include <string_view>
#include <vector>

#include "sparsedyn/harness/config.hpp"

namespace sparsedyn::harness {

struct Recipe {
  std::string_view name;
  std::string_view description;
  std::string_view text;  // config file contents
};

/// Reference experiments shipped with the tool.
const std::vector<Recipe>& bundled_recipes();

/// Parsed config of a bundled recipe; throws ConfigError for unknown names.
ExperimentConfig recipe_config(std::string_view name);

/// `recipe:<name>` selects a bundled recipe, anything else is a file path.
ExperimentConfig resolve_config(std::string_view source);

}  // namespace sparsedyn::harness
