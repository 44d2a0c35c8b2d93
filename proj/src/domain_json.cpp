#include "drumcorners/domain_json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "drumcorners/errors.hpp"

namespace drumcorners {

using nlohmann::json;

namespace {

double number_field(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorKind::ValidationError, std::string("missing field '") + key + "'");
  if (!j.at(key).is_number()) fail(ErrorKind::ValidationError, std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number_field(j, key) : fallback;
}

std::vector<Point> points_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    fail(ErrorKind::ValidationError, std::string("field '") + key + "' must be an array of [x,y]");
  std::vector<Point> out;
  for (const json& p : j.at(key)) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      fail(ErrorKind::ValidationError, "vertex must be a pair of numbers");
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

// Domain construction errors from geometry are validation failures at this layer.
template <class F>
auto validated(F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ValidationError, e.what());
  }
}

Domain preset(const json& j) {
  if (!j.contains("name") || !j.at("name").is_string()) fail(ErrorKind::ValidationError, "preset needs a 'name'");
  const std::string name = j.at("name").get<std::string>();
  if (name == "square") return presets::unit_square(number_or(j, "side", 1.0));
  if (name == "equilateral") return presets::equilateral_triangle(number_or(j, "side", 1.0));
  if (name == "disk") return SmoothDomain::disk(number_or(j, "radius", 1.0));
  if (name == "gww1") return presets::gww1();
  if (name == "gww2") return presets::gww2();
  if (name == "rectangle") return presets::rectangle(number_field(j, "a"), number_field(j, "b"));
  fail(ErrorKind::ValidationError, "unknown preset '" + name + "'");
}

}  // namespace

BoundaryCondition bc_from_json(const json& j) {
  if (j.is_string()) return parse_bc(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    fail(ErrorKind::ValidationError, "boundary condition must be a string or {\"kind\":...}");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dirichlet") return BoundaryCondition::dirichlet();
  if (kind == "neumann") return BoundaryCondition::neumann();
  if (kind == "robin") return BoundaryCondition::robin(number_field(j, "alpha"), number_field(j, "beta"));
  fail(ErrorKind::ValidationError, "unknown boundary condition '" + kind + "'");
}

BoundaryCondition parse_bc(std::string_view text) {
  if (text == "dirichlet" || text == "D") return BoundaryCondition::dirichlet();
  if (text == "neumann" || text == "N") return BoundaryCondition::neumann();
  if (text.rfind("robin:", 0) == 0) {
    std::string rest(text.substr(6));
    std::replace(rest.begin(), rest.end(), ',', ' ');
    std::istringstream is(rest);
    double a = 0, b = 0;
    if (!(is >> a >> b)) fail(ErrorKind::ValidationError, "robin condition must be written robin:alpha,beta");
    return BoundaryCondition::robin(a, b);
  }
  fail(ErrorKind::ValidationError, "unknown boundary condition '" + std::string(text) + "'");
}

json bc_to_json(const BoundaryCondition& bc) {
  switch (bc.kind()) {
    case BCKind::Dirichlet: return {{"kind", "dirichlet"}};
    case BCKind::Neumann: return {{"kind", "neumann"}};
    case BCKind::Robin: return {{"kind", "robin"}, {"alpha", bc.alpha()}, {"beta", bc.beta()}};
  }
  return nullptr;
}

Domain domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    fail(ErrorKind::ValidationError, "domain must be an object with a string 'type'");
  const std::string type = j.at("type").get<std::string>();
  return validated([&]() -> Domain {
    if (type == "polygon") {
      std::vector<int> flat;
      if (j.contains("flat")) flat = j.at("flat").get<std::vector<int>>();
      Polygon poly(points_field(j, "vertices"), flat);
      if (!j.contains("tiles")) return poly;
      std::vector<Triangle> tiles;
      for (const auto& t : j.at("tiles")) {
        const auto pts = points_field(json{{"tile", t}}, "tile");
        if (pts.size() != 3) fail(ErrorKind::ValidationError, "a tile has three vertices");
        tiles.push_back({pts[0], pts[1], pts[2]});
      }
      return poly.with_tiles(std::move(tiles));
    }
    if (type == "smooth") {
      const std::string kind = j.value("kind", std::string("disk"));
      if (kind == "disk") return SmoothDomain::disk(number_field(j, "radius"));
      if (kind == "ellipse") return SmoothDomain::ellipse(number_field(j, "a"), number_field(j, "b"));
      if (kind == "custom") return SmoothDomain::custom(points_field(j, "boundary"));
      fail(ErrorKind::ValidationError, "unknown smooth kind '" + kind + "'");
    }
    if (type == "sector") {
      const BoundaryCondition bc = j.contains("bc") ? bc_from_json(j.at("bc")) : BoundaryCondition::dirichlet();
      return Sector(number_field(j, "gamma"), bc);
    }
    if (type == "halfplane") {
      return HalfPlane{j.contains("bc") ? bc_from_json(j.at("bc")) : BoundaryCondition::dirichlet()};
    }
    if (type == "preset") return preset(j);
    fail(ErrorKind::ValidationError, "unknown domain type '" + type + "'");
  });
}

Domain load_domain_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  try {
    return domain_from_json(j);
  } catch (const json::exception& e) {
    fail(ErrorKind::ValidationError, e.what());
  }
}

Domain resolve_domain_arg(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    std::ifstream in(arg);
    if (!in) fail(ErrorKind::IoError, "cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_domain_spec(ss.str());
  }
  return domain_from_json(json{{"type", "preset"}, {"name", arg}});
}

}  // namespace drumcorners
