#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finsch/io.hpp"

namespace finsch {

// Built-in example spaces. "point(R)" takes R as Q[x,y], F_7[t] or a bare
// variable list such as x,y.
std::vector<std::string> fixture_names();
std::string fixture_text(const std::string& name);
SpaceDocument fixture(const std::string& name, const std::optional<Field>& field = std::nullopt);

}  // namespace finsch
