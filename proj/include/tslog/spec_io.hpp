#pragma once

#include <string>

#include "tslog/time_scale.hpp"

namespace tslog {

// JSON form of a ScaleSpec, e.g.
//   {"kind": "qN0", "q": 2.0, "window": [1.0, 1024.0]}
//   {"kind": "custom", "components": [[0.0, 1.0], [2.0, 2.0]], "window": [0.0, 3.0]}
// eps is optional and defaults to 1e-9.
ScaleSpec scale_spec_from_json(const std::string& text);
std::string scale_spec_to_json(const ScaleSpec& spec);

std::string family_name(Family kind);
Family family_from_name(const std::string& name);

} // namespace tslog
