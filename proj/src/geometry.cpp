#include "drumcorners/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "drumcorners/errors.hpp"

namespace drumcorners {

namespace {

constexpr double kPi = std::numbers::pi;

bool segments_intersect(Point a, Point b, Point c, Point d) {
  auto orient = [](Point p, Point q, Point r) { return cross(q - p, r - p); };
  auto on_segment = [](Point p, Point q, Point r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  const double d1 = orient(c, d, a), d2 = orient(c, d, b);
  const double d3 = orient(a, b, c), d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

double signed_area(const std::vector<Point>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& p = v[i];
    const Point& q = v[(i + 1) % v.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * s;
}

}  // namespace

double segment_distance(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a);
  const double s = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return distance(p, a + s * d);
}

// ---------------------------------------------------------------------------

BoundaryCondition BoundaryCondition::robin(double alpha, double beta) {
  if (beta == 0.0 || !std::isfinite(alpha / beta))
    fail(ErrorKind::RobinWithZeroBeta, "Robin condition needs beta != 0 and finite alpha/beta");
  return BoundaryCondition(BCKind::Robin, alpha, beta);
}

double BoundaryCondition::robin_coefficient() const {
  switch (kind_) {
    case BCKind::Neumann: return 0.0;
    case BCKind::Robin: return alpha_ / beta_;
    case BCKind::Dirichlet: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string BoundaryCondition::label() const {
  switch (kind_) {
    case BCKind::Dirichlet: return "dirichlet";
    case BCKind::Neumann: return "neumann";
    case BCKind::Robin: {
      std::ostringstream os;
      os << "robin(" << alpha_ << "," << beta_ << ")";
      return os.str();
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------

PolygonMetrics polygon_derived(const std::vector<Point>& input) {
  if (input.size() < 3) fail(ErrorKind::ValidationError, "polygon needs at least 3 vertices");
  const std::size_t n = input.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (input[i] == input[j]) fail(ErrorKind::DegenerateVertex, "repeated vertex");
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = input[i], b = input[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || j == (i + 1) % n) continue;
      if (segments_intersect(a, b, input[j], input[(j + 1) % n]))
        fail(ErrorKind::SelfIntersecting, "polygon edges intersect");
    }
  }
  std::vector<Point> v = input;
  double area = signed_area(v);
  double scale = 0.0;
  for (const Point& p : v) scale = std::max(scale, std::max(std::abs(p.x), std::abs(p.y)));
  if (std::abs(area) <= 1e-14 * std::max(scale * scale, 1e-300)) fail(ErrorKind::ZeroArea, "polygon has zero area");
  if (area < 0) {
    std::reverse(v.begin(), v.end());
    area = -area;
  }

  PolygonMetrics m;
  m.area = area;
  m.n = static_cast<int>(n);
  m.angles.resize(n);
  double defect_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point prev = v[(i + n - 1) % n], cur = v[i], next = v[(i + 1) % n];
    m.perimeter += distance(cur, next);
    const Point to_next = next - cur, to_prev = prev - cur;
    double theta = std::atan2(cross(to_next, to_prev), dot(to_next, to_prev));
    if (theta <= 0) theta += 2 * kPi;
    m.angles[i] = theta;
    defect_sum += kPi - theta;
  }
  if (std::abs(defect_sum - 2 * kPi) > 1e-9) fail(ErrorKind::SelfIntersecting, "turning angles do not sum to 2*pi");
  // Report angles against the caller's vertex order.
  if (signed_area(input) < 0) std::reverse(m.angles.begin(), m.angles.end());
  return m;
}

Polygon::Polygon(std::vector<Point> vertices, std::vector<int> flat) {
  metrics_ = polygon_derived(vertices);
  std::vector<bool> is_flat(vertices.size(), false);
  for (int idx : flat) {
    if (idx < 0 || idx >= static_cast<int>(vertices.size()))
      fail(ErrorKind::ValidationError, "flat vertex index out of range");
    is_flat[static_cast<std::size_t>(idx)] = true;
  }
  if (signed_area(vertices) < 0) {
    std::reverse(vertices.begin(), vertices.end());
    std::reverse(is_flat.begin(), is_flat.end());
    std::reverse(metrics_.angles.begin(), metrics_.angles.end());
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const bool straight = std::abs(metrics_.angles[i] - kPi) < 1e-12;
    if (straight && !is_flat[i]) fail(ErrorKind::DegenerateVertex, "vertex with angle pi must be flagged flat");
  }
  vertices_ = std::move(vertices);
  flat_ = std::move(is_flat);
}

Polygon Polygon::with_tiles(std::vector<Triangle> tiles) const {
  double total = 0.0;
  for (const Triangle& t : tiles) total += 0.5 * std::abs(cross(t[1] - t[0], t[2] - t[0]));
  if (std::abs(total - area()) > 1e-10 * area())
    fail(ErrorKind::ValidationError, "tile areas do not add up to the polygon area");
  Polygon out = *this;
  out.tiles_ = std::move(tiles);
  return out;
}

double Polygon::boundary_distance(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) best = std::min(best, segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
  return best;
}

bool Polygon::contains(Point p, double tol) const {
  if (boundary_distance(p) <= tol) return true;
  bool inside = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = vertices_[i], b = vertices_[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

// ---------------------------------------------------------------------------

SmoothDomain SmoothDomain::disk(double radius) {
  if (!(radius > 0)) fail(ErrorKind::ValidationError, "disk radius must be positive");
  SmoothDomain d;
  d.kind_ = SmoothKind::Disk;
  d.a_ = d.b_ = radius;
  d.area_ = kPi * radius * radius;
  d.perimeter_ = 2 * kPi * radius;
  return d;
}

SmoothDomain SmoothDomain::ellipse(double a, double b) {
  if (!(a > 0 && b > 0)) fail(ErrorKind::ValidationError, "ellipse semi-axes must be positive");
  SmoothDomain d;
  d.kind_ = SmoothKind::Ellipse;
  d.a_ = std::max(a, b);
  d.b_ = std::min(a, b);
  d.area_ = kPi * a * b;
  const double e2 = 1.0 - (d.b_ * d.b_) / (d.a_ * d.a_);
  d.perimeter_ = 4 * d.a_ * std::comp_ellint_2(std::sqrt(e2));
  return d;
}

SmoothDomain SmoothDomain::custom(std::vector<Point> samples) {
  if (samples.size() < 8) fail(ErrorKind::ValidationError, "custom boundary needs at least 8 samples");
  SmoothDomain d;
  d.kind_ = SmoothKind::Custom;
  d.area_ = std::abs(signed_area(samples));
  for (std::size_t i = 0; i < samples.size(); ++i) d.perimeter_ += distance(samples[i], samples[(i + 1) % samples.size()]);
  if (!(d.area_ > 0 && d.perimeter_ > 0)) fail(ErrorKind::ZeroArea, "custom boundary encloses no area");
  return d;
}

Sector::Sector(double g, BoundaryCondition b) : gamma(g), bc(b) {
  if (!(g > 0 && g < 2 * kPi)) fail(ErrorKind::ValidationError, "sector opening angle must lie in (0, 2*pi)");
}

std::string domain_label(const Domain& d) {
  struct Visitor {
    std::string operator()(const Polygon& p) const { return "polygon(n=" + std::to_string(p.n_vertices()) + ")"; }
    std::string operator()(const SmoothDomain& s) const {
      switch (s.kind()) {
        case SmoothKind::Disk: return "disk";
        case SmoothKind::Ellipse: return "ellipse";
        case SmoothKind::Custom: return "smooth(custom)";
      }
      return "smooth";
    }
    std::string operator()(const Sector&) const { return "sector"; }
    std::string operator()(const HalfPlane&) const { return "halfplane"; }
  };
  return std::visit(Visitor{}, d);
}

// ---------------------------------------------------------------------------

namespace presets {

Polygon rectangle(double a, double b) {
  if (!(a > 0 && b > 0)) fail(ErrorKind::InvalidDimensions, "rectangle sides must be positive");
  Polygon p({{0, 0}, {a, 0}, {a, b}, {0, b}});
  return p.with_tiles({Triangle{Point{0, 0}, Point{a, 0}, Point{a, b}}, Triangle{Point{0, 0}, Point{a, b}, Point{0, b}}});
}

Polygon unit_square(double side) { return rectangle(side, side); }

Polygon equilateral_triangle(double side) {
  const Point a{0, 0}, b{side, 0}, c{0.5 * side, 0.5 * std::sqrt(3.0) * side};
  return Polygon({a, b, c}).with_tiles({Triangle{a, b, c}});
}

namespace {
Polygon from_lattice(const std::vector<std::array<int, 2>>& outline,
                     const std::vector<std::array<std::array<int, 2>, 3>>& tiles) {
  std::vector<Point> v;
  for (const auto& q : outline) v.push_back({double(q[0]), double(q[1])});
  std::vector<Triangle> t;
  for (const auto& tri : tiles) {
    Triangle tt;
    for (int k = 0; k < 3; ++k) tt[k] = {double(tri[k][0]), double(tri[k][1])};
    t.push_back(tt);
  }
  return Polygon(std::move(v)).with_tiles(std::move(t));
}
}  // namespace

// Coordinates documented in data/gww_drums.json.
Polygon gww1() {
  return from_lattice({{0, 0}, {1, 0}, {1, 1}, {2, 1}, {3, 2}, {2, 2}, {2, 3}, {0, 1}},
                      {{{{0, 0}, {0, 1}, {1, 0}}},
                       {{{0, 1}, {1, 0}, {1, 1}}},
                       {{{0, 1}, {1, 1}, {1, 2}}},
                       {{{1, 1}, {1, 2}, {2, 1}}},
                       {{{1, 2}, {2, 1}, {2, 2}}},
                       {{{1, 2}, {2, 2}, {2, 3}}},
                       {{{2, 1}, {2, 2}, {3, 2}}}});
}

Polygon gww2() {
  return from_lattice({{0, 1}, {0, 2}, {1, 3}, {1, 2}, {2, 2}, {3, 1}, {2, 0}, {2, 1}},
                      {{{{0, 1}, {0, 2}, {1, 1}}},
                       {{{0, 2}, {1, 1}, {1, 2}}},
                       {{{0, 2}, {1, 2}, {1, 3}}},
                       {{{1, 1}, {1, 2}, {2, 2}}},
                       {{{1, 1}, {2, 1}, {2, 2}}},
                       {{{2, 0}, {2, 1}, {3, 1}}},
                       {{{2, 1}, {2, 2}, {3, 1}}}});
}

}  // namespace presets

// ---------------------------------------------------------------------------

Point Placement::to_world(Point p) const {
  const double c = std::cos(rotation), s = std::sin(rotation);
  return {origin.x + c * p.x - s * p.y, origin.y + s * p.x + c * p.y};
}

Point Placement::to_local(Point p) const {
  const double c = std::cos(rotation), s = std::sin(rotation);
  const Point d = p - origin;
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

Patch Patch::rectangle(double xmin, double xmax, double ymin, double ymax) {
  if (!(xmax > xmin && ymax > ymin)) fail(ErrorKind::ValidationError, "empty patch");
  Patch p;
  p.shape = Shape::Rectangle;
  p.xmin = xmin;
  p.xmax = xmax;
  p.ymin = ymin;
  p.ymax = ymax;
  return p;
}

Patch Patch::sector_patch(double radius) {
  if (!(radius > 0)) fail(ErrorKind::ValidationError, "sector patch radius must be positive");
  Patch p;
  p.shape = Shape::SectorPatch;
  p.radius = radius;
  return p;
}

namespace {

double patch_distance(const LocalityScenario& sc, Point w) {
  const Patch& p = sc.omega0;
  if (p.shape == Patch::Shape::Rectangle) {
    const double dx = std::max({p.xmin - w.x, 0.0, w.x - p.xmax});
    const double dy = std::max({p.ymin - w.y, 0.0, w.y - p.ymax});
    return std::hypot(dx, dy);
  }
  const Point l = sc.placement.to_local(w);
  const double r = norm(l);
  double phi = std::atan2(l.y, l.x);
  if (phi < 0) phi += 2 * kPi;
  if (phi <= sc.gamma) {
    if (r <= p.radius) return 0.0;
    return r - p.radius;
  }
  const Point e1{p.radius, 0.0}, e2{p.radius * std::cos(sc.gamma), p.radius * std::sin(sc.gamma)};
  return std::min(segment_distance(l, {0, 0}, e1), segment_distance(l, {0, 0}, e2));
}

double model_boundary_distance(const LocalityScenario& sc, Point w) {
  const Point l = sc.placement.to_local(w);
  switch (sc.model) {
    case ModelKind::FreePlane: return std::numeric_limits<double>::infinity();
    case ModelKind::HalfPlane: return std::abs(l.y);
    case ModelKind::Sector: {
      auto ray = [&](double ang) {
        const Point d{std::cos(ang), std::sin(ang)};
        const double s = std::max(0.0, dot(l, d));
        return distance(l, s * d);
      };
      return std::min(ray(0.0), ray(sc.gamma));
    }
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<Point> patch_samples(const LocalityScenario& sc, int n) {
  std::vector<Point> out;
  const Patch& p = sc.omega0;
  if (n < 2) n = 2;
  if (p.shape == Patch::Shape::Rectangle) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.push_back({p.xmin + (p.xmax - p.xmin) * i / (n - 1), p.ymin + (p.ymax - p.ymin) * j / (n - 1)});
  } else {
    for (int i = 1; i <= n; ++i)
      for (int j = 0; j < n; ++j) {
        const double r = p.radius * i / n, phi = sc.gamma * j / (n - 1);
        out.push_back(sc.placement.to_world({r * std::cos(phi), r * std::sin(phi)}));
      }
  }
  return out;
}

MatchReport check_geometric_match(const LocalityScenario& sc) {
  MatchReport rep;
  if (!(sc.alpha_sep > 0)) {
    rep.reason = "alpha_sep must be positive";
    return rep;
  }
  for (const Point& q : patch_samples(sc, 41)) {
    if (!sc.big_domain.contains(q, 1e-12)) {
      rep.reason = "omega0 is not contained in the big domain";
      return rep;
    }
  }
  constexpr double on_tol = 1e-9;
  const auto& v = sc.big_domain.vertices();
  double diam = 0.0;
  for (const Point& a : v)
    for (const Point& b : v) diam = std::max(diam, distance(a, b));
  const double step = std::min(sc.alpha_sep, diam) / 400.0;
  double separation = std::numeric_limits<double>::infinity();

  // Big-domain boundary against the model boundary.
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[i], b = v[(i + 1) % v.size()];
    const int m = std::max(2, static_cast<int>(std::ceil(distance(a, b) / step)));
    for (int k = 0; k <= m; ++k) {
      const Point q = a + (double(k) / m) * (b - a);
      if (model_boundary_distance(sc, q) > on_tol) separation = std::min(separation, patch_distance(sc, q));
    }
  }
  // Model boundary against the big-domain boundary, over a window that covers everything
  // within diam + alpha_sep of the patch.
  const double reach = diam + sc.alpha_sep + distance(sc.placement.origin, v.front()) + 1.0;
  auto scan_ray = [&](double ang, double smin, double smax) {
    const int m = std::max(2, static_cast<int>(std::ceil((smax - smin) / step)));
    for (int k = 0; k <= m; ++k) {
      const double s = smin + (smax - smin) * k / m;
      const Point q = sc.placement.to_world({s * std::cos(ang), s * std::sin(ang)});
      if (sc.big_domain.boundary_distance(q) > on_tol) separation = std::min(separation, patch_distance(sc, q));
    }
  };
  switch (sc.model) {
    case ModelKind::FreePlane: break;
    case ModelKind::HalfPlane: scan_ray(0.0, -reach, reach); break;
    case ModelKind::Sector:
      scan_ray(0.0, 0.0, reach);
      scan_ray(sc.gamma, 0.0, reach);
      break;
  }
  rep.separation = separation;
  if (separation + step < sc.alpha_sep) {
    std::ostringstream os;
    os << "unmatched boundary at distance " << separation << " < alpha_sep " << sc.alpha_sep;
    rep.reason = os.str();
    return rep;
  }
  rep.ok = true;
  return rep;
}

}  // namespace drumcorners
