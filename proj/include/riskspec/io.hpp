#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "riskspec/dist.hpp"

namespace riskspec {

using Dist = std::variant<DiscreteDist, JointDiscreteDist, ContinuousTail>;

/// Parses one of the supported distribution encodings:
///   {"type":"discrete","values":[...],"probs":[...]}
///   {"type":"joint","atoms":[[x,y,p],...]}
///   {"type":"pareto","a":...,"beta":...}
///   {"type":"two_point_zero_mean","a":...,"b":...}
/// Throws ParseError on malformed input.
Dist parse_dist(const nlohmann::json& j);

Dist load_dist(const std::filesystem::path& path);

} // namespace riskspec
