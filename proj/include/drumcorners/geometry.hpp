#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace drumcorners {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
double segment_distance(Point p, Point a, Point b);

// ---------------------------------------------------------------------------
// Boundary conditions: alpha*u + beta*du/dnu = 0 with nu the outward normal.

enum class BCKind { Dirichlet, Neumann, Robin };

class BoundaryCondition {
 public:
  static BoundaryCondition dirichlet() { return BoundaryCondition(BCKind::Dirichlet, 0.0, 0.0); }
  static BoundaryCondition neumann() { return BoundaryCondition(BCKind::Neumann, 0.0, 1.0); }
  /// Throws RobinWithZeroBeta if beta == 0 or alpha/beta is not finite.
  static BoundaryCondition robin(double alpha, double beta);

  BCKind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// c = alpha/beta; zero for Neumann. Undefined (NaN) for Dirichlet.
  double robin_coefficient() const;
  /// Neumann, or Robin with alpha == 0. Operations route these through the same code path.
  bool acts_as_neumann() const { return kind_ == BCKind::Neumann || (kind_ == BCKind::Robin && alpha_ == 0.0); }
  std::string label() const;

 private:
  BoundaryCondition(BCKind k, double a, double b) : kind_(k), alpha_(a), beta_(b) {}
  BCKind kind_;
  double alpha_;
  double beta_;
};

// ---------------------------------------------------------------------------

struct PolygonMetrics {
  double area = 0.0;
  double perimeter = 0.0;
  std::vector<double> angles;  // interior angles in (0, 2*pi)
  int n = 0;
};

/// Shoelace area, perimeter and interior angles of a simple polygon. Vertex order may be
/// either orientation; results are reported for the counterclockwise ordering.
PolygonMetrics polygon_derived(const std::vector<Point>& vertices);

using Triangle = std::array<Point, 3>;

/// Simple, simply connected polygon with counterclockwise vertices.
class Polygon {
 public:
  /// `flat` lists vertex indices (in the given order) that are allowed to have angle pi.
  explicit Polygon(std::vector<Point> vertices, std::vector<int> flat = {});

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<bool>& flat() const { return flat_; }
  double area() const { return metrics_.area; }
  double perimeter() const { return metrics_.perimeter; }
  const std::vector<double>& angles() const { return metrics_.angles; }
  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int euler_char() const { return 1; }

  /// Optional coarse triangulation used for meshing (e.g. the seven-tile GWW decomposition).
  const std::vector<Triangle>& tiles() const { return tiles_; }
  Polygon with_tiles(std::vector<Triangle> tiles) const;

  bool contains(Point p, double tol = 1e-12) const;  // closed polygon
  double boundary_distance(Point p) const;

 private:
  std::vector<Point> vertices_;
  std::vector<bool> flat_;
  PolygonMetrics metrics_;
  std::vector<Triangle> tiles_;
};

enum class SmoothKind { Disk, Ellipse, Custom };

class SmoothDomain {
 public:
  static SmoothDomain disk(double radius);
  static SmoothDomain ellipse(double a, double b);
  /// Closed curve sampled densely (the last point is not repeated).
  static SmoothDomain custom(std::vector<Point> boundary_samples);

  SmoothKind kind() const { return kind_; }
  double radius() const { return a_; }
  double semi_a() const { return a_; }
  double semi_b() const { return b_; }
  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  int euler_char() const { return 1; }

 private:
  SmoothDomain() = default;
  SmoothKind kind_ = SmoothKind::Disk;
  double a_ = 0.0, b_ = 0.0;
  double area_ = 0.0, perimeter_ = 0.0;
};

struct Sector {
  Sector(double gamma, BoundaryCondition bc);
  double gamma;
  BoundaryCondition bc;
};

struct HalfPlane {
  BoundaryCondition bc;
};

using Domain = std::variant<Polygon, SmoothDomain, Sector, HalfPlane>;

std::string domain_label(const Domain& d);

namespace presets {
Polygon unit_square(double side = 1.0);
Polygon equilateral_triangle(double side = 1.0);
Polygon rectangle(double a, double b);
/// The two Gordon-Webb-Wolpert drums built from seven right isosceles triangles (legs 1).
Polygon gww1();
Polygon gww2();
}  // namespace presets

// ---------------------------------------------------------------------------
// Exact-geometric-match scenario for locality studies.

enum class ModelKind { FreePlane, HalfPlane, Sector };

/// Rigid placement of a model domain: the model's own frame (half-plane y >= 0, or the sector
/// 0 <= phi <= gamma with apex at the origin) is rotated by `rotation` and translated to `origin`.
struct Placement {
  Point origin{};
  double rotation = 0.0;

  Point to_world(Point local) const;
  Point to_local(Point world) const;
};

struct Patch {
  enum class Shape { Rectangle, SectorPatch };
  Shape shape = Shape::Rectangle;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;  // Rectangle, world coordinates
  double radius = 0.0;                                    // SectorPatch: r <= radius in the model frame

  static Patch rectangle(double xmin, double xmax, double ymin, double ymax);
  static Patch sector_patch(double radius);
};

struct LocalityScenario {
  Polygon big_domain;
  BoundaryCondition bc;  // applied on the whole big-domain boundary and on the model boundary
  ModelKind model = ModelKind::FreePlane;
  double gamma = M_PI;  // sector opening angle
  Placement placement{};
  Patch omega0{};
  double alpha_sep = 0.0;
};

struct MatchReport {
  bool ok = false;
  double separation = 0.0;  // distance from omega0 to the unmatched boundary
  std::string reason;
};

/// Checks omega0 is inside the big domain and that near omega0 (within alpha_sep) the model
/// boundary and the big-domain boundary coincide.
MatchReport check_geometric_match(const LocalityScenario& scenario);

/// Deterministic sample points of omega0: an n x n grid (rectangle) or n radii x n angles (sector).
std::vector<Point> patch_samples(const LocalityScenario& scenario, int n);

}  // namespace drumcorners
