#include "drumcorners/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>

#include "drumcorners/domain_json.hpp"
#include "drumcorners/errors.hpp"
#include "drumcorners/report_io.hpp"

namespace drumcorners {

using nlohmann::json;

namespace {

struct AxisRectangle {
  double a = 0.0, b = 0.0;
};

std::optional<AxisRectangle> as_axis_rectangle(const Polygon& poly) {
  std::vector<Point> corners;
  for (int i = 0; i < poly.n_vertices(); ++i)
    if (!poly.flat()[i]) corners.push_back(poly.vertices()[i]);
  if (corners.size() != 4) return std::nullopt;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point d = corners[(i + 1) % 4] - corners[i];
    if (std::abs(d.x) > 1e-12 * norm(d) && std::abs(d.y) > 1e-12 * norm(d)) return std::nullopt;
  }
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Point& p : corners) {
    xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
  }
  return AxisRectangle{xmax - xmin, ymax - ymin};
}

std::size_t weyl_count(double area, double lambda) {
  return static_cast<std::size_t>(area * lambda / (4 * M_PI) * 1.1) + 50;
}

Spectrum below(const Spectrum& s, double lambda_max) {
  std::vector<double> v;
  for (double x : s.eigenvalues)
    if (x <= lambda_max) v.push_back(x);
  return make_spectrum(std::move(v), s.source, lambda_max);
}

json fit_json(const TraceFit& f) {
  return {{"c_m1", f.expansion.c_m1},   {"c_mhalf", f.expansion.c_mhalf}, {"c_0", f.expansion.c_0},
          {"c_half", f.c_half},         {"c0_stderr", f.c0_stderr},       {"c0_systematic", f.c0_systematic},
          {"condition", f.condition},   {"pinned", f.pinned}};
}

json classification_json(const CornerClassification& c) {
  json j{{"verdict", to_string(c.verdict)}, {"excess", c.excess}, {"ci", c.ci}};
  if (c.fit) j["c_0"] = c.fit->expansion.c_0;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

void write_json(const RunContext& ctx, const std::string& name, const json& j, std::vector<std::string>& outputs) {
  write_text_file(ctx.out_dir + "/" + name, j.dump(2) + "\n");
  outputs.push_back(name);
}

void write_csv(const RunContext& ctx, const std::string& name, const std::string& text, std::vector<std::string>& outputs) {
  write_text_file(ctx.out_dir + "/" + name, text);
  outputs.push_back(name);
}

SpectrumRequest spectrum_request(const json& j) {
  SpectrumRequest req;
  req.count = j.value("count", std::size_t{0});
  req.lambda_max = j.value("lambda_max", 0.0);
  req.h = j.value("h", req.h);
  if (req.count == 0 && !(req.lambda_max > 0)) fail(ErrorKind::ValidationError, "spectrum needs count or lambda_max");
  return req;
}

RunOutcome run_trace_fit(const json& cfg, const RunContext& ctx) {
  const Domain dom = domain_from_json(cfg.at("domain"));
  const BoundaryCondition bc = bc_from_json(cfg.value("bc", json("dirichlet")));
  std::string method;
  const json& sj = cfg.at("spectrum");
  const Spectrum spec = sj.contains("file") ? read_spectrum_csv(sj.at("file").get<std::string>())
                                            : acquire_spectrum(dom, bc, spectrum_request(sj), ctx, &method);
  if (sj.contains("file")) method = "file";
  const auto grid = t_grid_from_json(cfg.at("t_grid"));
  const bool pinned = cfg.value("pinned", true);
  const double tail_tol = cfg.value("tail_tol", 1e-6);
  const KnownGeometry kg = known_geometry(dom, bc);
  const TraceFit fit = fit_trace_expansion(spec, grid, pinned ? std::optional<KnownGeometry>(kg) : std::nullopt, tail_tol);

  RunOutcome out;
  json& r = out.result;
  r["experiment"] = "trace_fit";
  r["domain"] = domain_label(dom);
  r["bc"] = bc.label();
  r["spectrum"] = {{"size", spec.size()}, {"cutoff", spec.cutoff}, {"method", method}};
  r["fit"] = fit_json(fit);
  const TraceExpansion exact = trace_coeffs(dom, bc);
  r["predicted"] = {{"c_m1", exact.c_m1}, {"c_mhalf", exact.c_mhalf}, {"c_0", exact.c_0}};
  if (cfg.value("classify", true)) r["classification"] = classification_json(classify_corners(spec, kg, grid));
  if (cfg.contains("expect")) {
    const double c0 = cfg.at("expect").at("c_0").get<double>(), tol = cfg.at("expect").at("tol").get<double>();
    r["expectation"] = {{"c_0", c0}, {"tol", tol}, {"met", std::abs(fit.expansion.c_0 - c0) <= tol}};
  }
  write_json(ctx, "result.json", r, out.outputs);
  write_csv(ctx, "trace_fit.csv", emit_plot_data(fit), out.outputs);
  if (cfg.value("write_spectrum", false)) write_csv(ctx, "spectrum.csv", emit_plot_data(spec), out.outputs);
  return out;
}

RunOutcome run_gww(const json& cfg, const RunContext& ctx) {
  GwwOptions o;
  o.h = cfg.value("h", o.h);
  o.count = cfg.value("count", o.count);
  if (cfg.contains("classify")) {
    const json& c = cfg.at("classify");
    o.classify_h = c.value("h", o.classify_h);
    o.classify_count = c.value("count", o.classify_count);
    o.t_min = c.value("t_min", o.t_min);
    o.t_max = c.value("t_max", o.t_max);
    o.t_points = c.value("n", o.t_points);
  }
  const GwwReport rep = gww_study(o, ctx);
  RunOutcome out;
  json& r = out.result;
  r["experiment"] = "gww_isospectral";
  json rows = json::array();
  std::vector<std::vector<double>> csv;
  for (const GwwRow& row : rep.rows) {
    rows.push_back({{"index", row.index + 1},
                    {"drum1_coarse", row.drum1_coarse},
                    {"drum2_coarse", row.drum2_coarse},
                    {"drum1_fine", row.drum1_fine},
                    {"drum2_fine", row.drum2_fine},
                    {"error_band", row.error_band}});
    csv.push_back({double(row.index + 1), row.drum1_coarse, row.drum2_coarse, row.drum1_fine, row.drum2_fine, row.error_band});
  }
  r["pairs"] = rows;
  r["max_diff_coarse"] = rep.max_diff_coarse;
  r["max_diff_fine"] = rep.max_diff_fine;
  r["roundoff_floor"] = rep.roundoff_floor;
  r["within_band"] = rep.within_band;
  r["shrinks"] = rep.shrinks;
  r["classification"] = {{"gww1", classification_json(rep.classification[0])},
                         {"gww2", classification_json(rep.classification[1])}};
  r["verdict"] = rep.verdict;
  write_json(ctx, "result.json", r, out.outputs);
  write_csv(ctx, "gww_pairs.csv",
            csv_text({"index", "drum1_coarse", "drum2_coarse", "drum1_fine", "drum2_fine", "error_band"}, csv), out.outputs);
  return out;
}

RunOutcome run_locality(const json& cfg, const RunContext& ctx) {
  const LocalityScenario sc = scenario_from_json(cfg.at("scenario"));
  LocalityOptions lo;
  lo.sample_density = cfg.value("sample_density", lo.sample_density);
  lo.skip_match_check = cfg.value("skip_match_check", false);
  const auto grid = cfg.contains("t_grid") ? t_grid_from_json(cfg.at("t_grid")) : default_locality_grid();
  const LocalityReport rep = locality_study(sc, grid, lo);
  RunOutcome out;
  json& r = out.result;
  r["experiment"] = "locality";
  r["fit"] = {{"A", rep.A}, {"c", rep.c}, {"r_squared", rep.r_squared}, {"ok", rep.fit_ok}};
  r["match"] = {{"ok", rep.match.ok}, {"separation", rep.match.separation}, {"reason", rep.match.reason}};
  r["sample_density"] = rep.sample_density;
  if (!rep.note.empty()) r["note"] = rep.note;
  write_json(ctx, "result.json", r, out.outputs);
  write_csv(ctx, "locality.csv", emit_plot_data(rep), out.outputs);
  return out;
}

Point point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::ValidationError, "a point is [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Spectrum acquire_spectrum(const Domain& domain, const BoundaryCondition& bc, const SpectrumRequest& req,
                          const RunContext& ctx, std::string* method) {
  auto note = [&](const std::string& m) {
    if (method) *method = m;
  };
  if (const auto* poly = std::get_if<Polygon>(&domain)) {
    if (const auto rect = as_axis_rectangle(*poly)) {
      note("closed form (rectangle)");
      if (req.lambda_max > 0) return eigs_rectangle_below(rect->a, rect->b, bc, req.lambda_max);
      return eigs_rectangle(rect->a, rect->b, bc, req.count);
    }
    note("P1 FEM");
    const int count = static_cast<int>(req.count ? req.count : weyl_count(poly->area(), req.lambda_max));
    FemOptions fo;
    fo.levels = 1;
    fo.lanczos.seed = ctx.seed;
    const Spectrum s = eigs_fem(*poly, bc, req.h, count, fo).spectrum;
    return req.lambda_max > 0 ? below(s, std::min(req.lambda_max, s.cutoff)) : s;
  }
  if (const auto* sm = std::get_if<SmoothDomain>(&domain)) {
    if (sm->kind() != SmoothKind::Disk) fail(ErrorKind::ValidationError, "closed-form spectra exist only for the disk");
    note("closed form (Bessel zeros)");
    if (req.count) return eigs_disk(sm->radius(), bc, req.count);
    return below(eigs_disk(sm->radius(), bc, weyl_count(sm->area(), req.lambda_max)), req.lambda_max);
  }
  fail(ErrorKind::ValidationError, "unbounded domains have no discrete spectrum");
}

KnownGeometry known_geometry(const Domain& domain, const BoundaryCondition& bc) {
  if (const auto* poly = std::get_if<Polygon>(&domain)) return {poly->area(), poly->perimeter(), poly->euler_char(), bc};
  if (const auto* sm = std::get_if<SmoothDomain>(&domain)) return {sm->area(), sm->perimeter(), sm->euler_char(), bc};
  fail(ErrorKind::ValidationError, "geometry of an unbounded domain");
}

GwwReport gww_study(const GwwOptions& o, const RunContext& ctx) {
  const BoundaryCondition bc = BoundaryCondition::dirichlet();
  const std::array<Polygon, 2> drums{presets::gww1(), presets::gww2()};
  FemOptions fo;
  fo.levels = 2;
  fo.lanczos.seed = ctx.seed;
  FemOptions fc;
  fc.levels = 1;
  fc.lanczos.seed = ctx.seed;
  const auto grid = geometric_grid(o.t_min, o.t_max, o.t_points);

  auto study = [&](int d) {
    const FemResult refine = eigs_fem(drums[d], bc, o.h, o.count, fo);
    const Spectrum spec = eigs_fem(drums[d], bc, o.classify_h, o.classify_count, fc).spectrum;
    const KnownGeometry kg{drums[d].area(), drums[d].perimeter(), 1, bc};
    return std::make_pair(refine, classify_corners(spec, kg, grid));
  };
  std::array<std::pair<FemResult, CornerClassification>, 2> res;
  if (ctx.threads > 1) {
    auto second = std::async(std::launch::async, study, 1);
    res[0] = study(0);
    res[1] = second.get();
  } else {
    res[0] = study(0);
    res[1] = study(1);
  }

  GwwReport rep;
  rep.within_band = true;
  double lam_max = 0.0;
  for (int i = 0; i < o.count; ++i) {
    const RefinementRow& a = res[0].first.refinement[i];
    const RefinementRow& b = res[1].first.refinement[i];
    GwwRow row{i, a.coarse, b.coarse, a.fine, b.fine, std::max(a.error_band, b.error_band)};
    const double dc = std::abs(a.coarse - b.coarse), df = std::abs(a.fine - b.fine);
    rep.max_diff_coarse = std::max(rep.max_diff_coarse, dc);
    rep.max_diff_fine = std::max(rep.max_diff_fine, df);
    rep.within_band = rep.within_band && dc <= row.error_band && df <= row.error_band;
    lam_max = std::max({lam_max, a.coarse, b.coarse});
    rep.rows.push_back(row);
  }
  // Both drums are meshed from congruent tiles, so their discrete spectra coincide up to the
  // eigensolver tolerance; below this floor "shrinking" cannot be resolved and is not required.
  rep.roundoff_floor = 1e-9 * lam_max;
  rep.shrinks = rep.max_diff_fine < rep.max_diff_coarse || rep.max_diff_fine <= rep.roundoff_floor;
  rep.classification = {res[0].second, res[1].second};
  rep.verdict = rep.within_band && rep.shrinks ? "isospectral within FEM error" : "not isospectral within FEM error";
  return rep;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<double> t_grid_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<double> g = j.get<std::vector<double>>();
    if (g.empty()) fail(ErrorKind::ValidationError, "empty t grid");
    return g;
  }
  const double a = j.at("min").get<double>(), b = j.at("max").get<double>();
  const int n = j.value("n", 12);
  if (!(a > 0 && b > a && n >= 2)) fail(ErrorKind::ValidationError, "t grid needs 0 < min < max and n >= 2");
  return geometric_grid(a, b, n);
}

LocalityScenario scenario_from_json(const json& j) {
  const Domain big = domain_from_json(j.at("big_domain"));
  const auto* poly = std::get_if<Polygon>(&big);
  if (!poly) fail(ErrorKind::ValidationError, "big_domain must be a polygon");
  LocalityScenario sc{*poly, bc_from_json(j.value("bc", json("dirichlet")))};
  const json& m = j.at("model");
  const std::string kind = m.is_string() ? m.get<std::string>() : m.at("kind").get<std::string>();
  if (kind == "free") sc.model = ModelKind::FreePlane;
  else if (kind == "halfplane") sc.model = ModelKind::HalfPlane;
  else if (kind == "sector") {
    sc.model = ModelKind::Sector;
    sc.gamma = m.at("gamma").get<double>();
    if (!(sc.gamma > 0 && sc.gamma < 2 * M_PI)) fail(ErrorKind::ValidationError, "sector gamma must lie in (0, 2 pi)");
  } else {
    fail(ErrorKind::ValidationError, "unknown model '" + kind + "'");
  }
  if (j.contains("placement")) {
    sc.placement.origin = point_from_json(j.at("placement").at("origin"));
    sc.placement.rotation = j.at("placement").value("rotation", 0.0);
  }
  const json& o = j.at("omega0");
  if (o.contains("rectangle")) {
    const auto r = o.at("rectangle").get<std::vector<double>>();
    if (r.size() != 4) fail(ErrorKind::ValidationError, "omega0.rectangle is [xmin, xmax, ymin, ymax]");
    sc.omega0 = Patch::rectangle(r[0], r[1], r[2], r[3]);
  } else {
    sc.omega0 = Patch::sector_patch(o.at("sector_radius").get<double>());
  }
  sc.alpha_sep = j.at("alpha_sep").get<double>();
  if (!(sc.alpha_sep > 0)) fail(ErrorKind::ValidationError, "alpha_sep must be positive");
  return sc;
}

void write_manifest(const RunContext& ctx, const std::string& command, const std::string& input_hash,
                    const std::vector<std::string>& outputs, const json& status) {
  const json m{{"tool", "drumcorners"},
               {"version", kVersion},
               {"command", command},
               {"input_hash", "fnv1a64:" + input_hash},
               {"context", {{"tol", ctx.tol}, {"threads", ctx.threads}, {"seed", ctx.seed}}},
               {"outputs", outputs},
               {"status", status}};
  write_text_file(ctx.out_dir + "/run.json", m.dump(2) + "\n");
}

RunOutcome run_experiment_json(const json& cfg, const RunContext& ctx) {
  try {
    if (!cfg.is_object()) fail(ErrorKind::ValidationError, "config must be a JSON object");
    const std::string kind = cfg.at("experiment").get<std::string>();
    if (kind == "trace_fit") return run_trace_fit(cfg, ctx);
    if (kind == "gww_isospectral") return run_gww(cfg, ctx);
    if (kind == "locality") return run_locality(cfg, ctx);
    fail(ErrorKind::ValidationError, "unknown experiment '" + kind + "'");
  } catch (const json::exception& e) {
    fail(ErrorKind::ValidationError, std::string("config: ") + e.what());
  }
}

RunOutcome run_experiment(const std::string& config_path, const RunContext& ctx) {
  const std::string text = read_text_file(config_path);
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, config_path + ": " + e.what());
  }
  return run_experiment_json(cfg, ctx);
}

}  // namespace drumcorners
