#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "drumcorners/eigensolve.hpp"
#include "drumcorners/errors.hpp"

namespace drumcorners {

namespace {

bool point_in_triangle(Point p, Point a, Point b, Point c) {
  const double d1 = cross(b - a, p - a), d2 = cross(c - b, p - b), d3 = cross(a - c, p - c);
  return d1 >= 0 && d2 >= 0 && d3 >= 0;
}

std::vector<Triangle> ear_clip(const std::vector<Point>& poly) {
  std::vector<int> idx(poly.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<Triangle> tris;
  std::size_t guard = 0;
  while (idx.size() > 3) {
    bool clipped = false;
    const std::size_t n = idx.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = poly[idx[(i + n - 1) % n]], b = poly[idx[i]], c = poly[idx[(i + 1) % n]];
      if (cross(b - a, c - b) <= 0) continue;  // reflex or flat
      bool empty = true;
      for (std::size_t k = 0; k < n && empty; ++k) {
        if (k == i || k == (i + n - 1) % n || k == (i + 1) % n) continue;
        const Point q = poly[idx[k]];
        if (q == a || q == b || q == c) continue;
        if (point_in_triangle(q, a, b, c)) empty = false;
      }
      if (!empty) continue;
      tris.push_back({a, b, c});
      idx.erase(idx.begin() + static_cast<long>(i));
      clipped = true;
      break;
    }
    if (!clipped || ++guard > 100000) fail(ErrorKind::MeshFailure, "ear clipping failed");
  }
  const Point a = poly[idx[0]], b = poly[idx[1]], c = poly[idx[2]];
  if (std::abs(cross(b - a, c - a)) > 0) tris.push_back({a, b, c});
  return tris;
}

std::vector<Triangle> coarse_triangles(const Polygon& poly) {
  return poly.tiles().empty() ? ear_clip(poly.vertices()) : poly.tiles();
}

double longest_edge(const std::vector<Triangle>& tris) {
  double m = 0.0;
  for (const Triangle& t : tris)
    for (int k = 0; k < 3; ++k) m = std::max(m, distance(t[k], t[(k + 1) % 3]));
  return m;
}

}  // namespace

int subdivision_level(const Polygon& poly, double h_target) {
  if (!(h_target > 0)) fail(ErrorKind::MeshFailure, "mesh size must be positive");
  const double L = longest_edge(coarse_triangles(poly));
  return std::max(1, static_cast<int>(std::ceil(L / h_target - 1e-9)));
}

Mesh mesh_polygon(const Polygon& poly, double h_target) { return mesh_polygon_level(poly, subdivision_level(poly, h_target)); }

Mesh mesh_polygon_level(const Polygon& poly, int n) {
  if (n < 1) fail(ErrorKind::MeshFailure, "subdivision level must be >= 1");
  const auto coarse = coarse_triangles(poly);
  double scale = 0.0;
  for (const Point& p : poly.vertices()) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double quantum = 1e-9 * std::max(scale, 1.0);

  Mesh mesh;
  std::map<std::pair<long long, long long>, int> ids;
  auto node = [&](Point p) {
    const std::pair<long long, long long> key{std::llround(p.x / quantum), std::llround(p.y / quantum)};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(p);
    ids.emplace(key, id);
    return id;
  };
  auto add = [&](int a, int b, int c) {
    const Point pa = mesh.vertices[a], pb = mesh.vertices[b], pc = mesh.vertices[c];
    const double ar = cross(pb - pa, pc - pa);
    if (std::abs(ar) <= 1e-14 * scale * scale) fail(ErrorKind::MeshFailure, "degenerate element");
    if (ar > 0) mesh.triangles.push_back({a, b, c});
    else mesh.triangles.push_back({a, c, b});
  };
  for (const Triangle& t : coarse) {
    std::vector<std::vector<int>> lat(n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j)
        lat[i].push_back(node(t[0] + (double(i) / n) * (t[1] - t[0]) + (double(j) / n) * (t[2] - t[0])));
    for (int i = 0; i < n; ++i)
      for (int j = 0; i + j < n; ++j) {
        add(lat[i][j], lat[i + 1][j], lat[i][j + 1]);
        if (i + j + 1 < n) add(lat[i + 1][j], lat[i + 1][j + 1], lat[i][j + 1]);
      }
  }
  // Boundary edges are those used by exactly one element.
  std::map<std::pair<int, int>, int> count;
  for (const auto& tr : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      int a = tr[k], b = tr[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++count[{a, b}];
    }
  for (const auto& [e, c] : count) {
    if (c > 2) fail(ErrorKind::MeshFailure, "non-manifold edge");
    const double len = distance(mesh.vertices[e.first], mesh.vertices[e.second]);
    mesh.h = std::max(mesh.h, len);
    if (c == 1) {
      mesh.boundary_edges.push_back({e.first, e.second});
      mesh.boundary_edge_length.push_back(len);
    }
  }
  // The boundary must trace the polygon: its total length equals the perimeter.
  double blen = 0.0;
  for (double l : mesh.boundary_edge_length) blen += l;
  if (std::abs(blen - poly.perimeter()) > 1e-8 * poly.perimeter())
    fail(ErrorKind::MeshFailure, "mesh boundary does not match the polygon (non-conforming coarse triangulation?)");
  return mesh;
}

std::string mesh_to_json(const Mesh& mesh) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"h\":" << mesh.h << ",\"vertices\":[";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    os << (i ? "," : "") << "[" << mesh.vertices[i].x << "," << mesh.vertices[i].y << "]";
  os << "],\"triangles\":[";
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i)
    os << (i ? "," : "") << "[" << mesh.triangles[i][0] << "," << mesh.triangles[i][1] << "," << mesh.triangles[i][2] << "]";
  os << "],\"boundary_edges\":[";
  for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i)
    os << (i ? "," : "") << "[" << mesh.boundary_edges[i][0] << "," << mesh.boundary_edges[i][1] << "]";
  os << "]}";
  return os.str();
}

}  // namespace drumcorners
