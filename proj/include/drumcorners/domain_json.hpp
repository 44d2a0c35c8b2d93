#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "drumcorners/geometry.hpp"

namespace drumcorners {

/// Parses a domain description:
///   {"type":"polygon","vertices":[[x,y],...],"flat":[i,...],"tiles":[[[x,y],[x,y],[x,y]],...]}
///   {"type":"smooth","kind":"disk","radius":r} / {"type":"smooth","kind":"ellipse","a":a,"b":b}
///   {"type":"sector","gamma":g,"bc":...}
///   {"type":"preset","name":"square"|"disk"|"equilateral"|"gww1"|"gww2", "side"|"radius": ...}
/// Throws ParseError for malformed JSON and ValidationError for invalid content.
Domain load_domain_spec(std::string_view json_text);
Domain domain_from_json(const nlohmann::json& j);

/// "dirichlet" | "neumann" | {"kind":"robin","alpha":a,"beta":b} (the string "robin:a,b" is also accepted).
BoundaryCondition bc_from_json(const nlohmann::json& j);
BoundaryCondition parse_bc(std::string_view text);
nlohmann::json bc_to_json(const BoundaryCondition& bc);

/// CLI helper: a path to a JSON file, or a bare preset name.
Domain resolve_domain_arg(const std::string& arg);

}  // namespace drumcorners
