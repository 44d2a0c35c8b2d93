#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "drumcorners/domain_json.hpp"
#include "drumcorners/eigensolve.hpp"
#include "drumcorners/errors.hpp"
#include "drumcorners/experiment.hpp"
#include "drumcorners/report_io.hpp"
#include "drumcorners/sector.hpp"
#include "drumcorners/trace.hpp"

using namespace drumcorners;
using nlohmann::json;

namespace {

struct SpectrumArgs {
  std::string domain;
  std::string bc = "dirichlet";
  std::string spectrum_file;
  std::size_t count = 0;
  double lambda_max = 0.0;
  double h = 1.0 / 32;
};

struct FitArgs {
  double t_min = 2e-4, t_max = 5e-3;
  int n = 12;
  bool unpinned = false;
  double tail_tol = 1e-6;
};

struct SectorArgs {
  double gamma = M_PI / 2;
  std::string bc = "dirichlet";
  double r = 1.0, phi = 0.5, r0 = 1.0, phi0 = 0.5;
  double s = 1.0, t = 0.1;
};

void add_spectrum_options(CLI::App* sub, SpectrumArgs& a) {
  sub->add_option("--domain", a.domain, "Domain JSON file or preset name")->required();
  sub->add_option("--bc", a.bc, "dirichlet | neumann | robin:alpha,beta");
  sub->add_option("--spectrum", a.spectrum_file, "Eigenvalue CSV instead of computing one");
  sub->add_option("--count", a.count, "Number of eigenvalues");
  sub->add_option("--lambda-max", a.lambda_max, "All eigenvalues up to this value");
  sub->add_option("--h", a.h, "FEM mesh size for polygons without a closed form");
}

void add_fit_options(CLI::App* sub, FitArgs& f) {
  sub->add_option("--t-min", f.t_min);
  sub->add_option("--t-max", f.t_max);
  sub->add_option("--n", f.n, "Number of geometric t points");
  sub->add_flag("--unpinned", f.unpinned, "Fit the area and perimeter terms too");
  sub->add_option("--tail-tol", f.tail_tol, "Largest tolerated truncation error of the trace");
}

void add_sector_options(CLI::App* sub, SectorArgs& a, bool heat) {
  sub->add_option("--gamma", a.gamma, "Opening angle in (0, 2 pi)");
  sub->add_option("--bc", a.bc);
  sub->add_option("--r", a.r);
  sub->add_option("--phi", a.phi);
  sub->add_option("--r0", a.r0);
  sub->add_option("--phi0", a.phi0);
  if (heat) sub->add_option("--t", a.t, "Time > 0");
  else sub->add_option("--s", a.s, "Spectral parameter > 0");
}

Spectrum get_spectrum(const SpectrumArgs& a, const RunContext& ctx, std::string& method) {
  if (!a.spectrum_file.empty()) {
    method = "file";
    return read_spectrum_csv(a.spectrum_file);
  }
  if (a.count == 0 && !(a.lambda_max > 0)) fail(ErrorKind::ValidationError, "give --count, --lambda-max or --spectrum");
  return acquire_spectrum(resolve_domain_arg(a.domain), parse_bc(a.bc), {a.count, a.lambda_max, a.h}, ctx, &method);
}

int exit_code_for(ErrorKind k) {
  return k == ErrorKind::ParseError || k == ErrorKind::ValidationError ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat kernels, heat-trace asymptotics and spectra of planar drums"};
  // "--h" is the mesh size, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", kVersion);
  RunContext ctx;
  app.add_option("--out", ctx.out_dir, "Output directory")->capture_default_str();
  app.add_option("--tol", ctx.tol, "Relative tolerance for quadrature and eigensolvers")->capture_default_str();
  app.add_option("--threads", ctx.threads, "Worker threads")->capture_default_str();
  app.add_option("--seed", ctx.seed, "Seed for randomized starts")->capture_default_str();
  app.require_subcommand(1);

  SpectrumArgs sa;
  FitArgs fa;
  SectorArgs sec;
  std::string config_path, emit_mesh;
  int levels = 1;
  bool force_fem = false;

  auto* eigs = app.add_subcommand("eigs", "Eigenvalues (closed form, root finding or FEM)");
  add_spectrum_options(eigs, sa);
  eigs->add_option("--levels", levels, "FEM refinement levels (1-3)");
  eigs->add_flag("--fem", force_fem, "Use FEM even when a closed form exists");
  eigs->add_option("--emit-mesh", emit_mesh, "Write the FEM mesh as JSON");
  auto* coeffs = app.add_subcommand("trace-coeffs", "Exact heat-trace coefficients");
  coeffs->add_option("--domain", sa.domain)->required();
  coeffs->add_option("--bc", sa.bc);
  auto* fit = app.add_subcommand("fit-trace", "Fit the short-time heat-trace expansion to a spectrum");
  add_spectrum_options(fit, sa);
  add_fit_options(fit, fa);
  auto* cls = app.add_subcommand("classify", "Decide from a spectrum whether the drum has corners");
  add_spectrum_options(cls, sa);
  add_fit_options(cls, fa);
  auto* green = app.add_subcommand("sector-green", "Green's function of Delta + s on a sector");
  add_sector_options(green, sec, false);
  auto* heat = app.add_subcommand("sector-heat", "Heat kernel on a sector");
  add_sector_options(heat, sec, true);
  auto* loc = app.add_subcommand("locality", "Locality decay study from a scenario JSON");
  loc->add_option("config", config_path, "Scenario or locality experiment JSON")->required();
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Experiment JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string joined;
  for (int i = 1; i < argc; ++i) joined += std::string(argv[i]) + '\x1f';
  const std::string command = app.get_subcommands().front()->get_name();
  std::vector<std::string> outputs;
  std::string input_hash = hex64(fnv1a64(joined));

  try {
    json result;
    if (eigs->parsed()) {
      const Domain dom = resolve_domain_arg(sa.domain);
      const BoundaryCondition bc = parse_bc(sa.bc);
      const auto* poly = std::get_if<Polygon>(&dom);
      Spectrum spec;
      std::string method;
      if (poly && (force_fem || levels > 1 || !emit_mesh.empty())) {
        if (sa.count == 0) fail(ErrorKind::ValidationError, "FEM needs --count");
        FemOptions fo;
        fo.levels = levels;
        fo.lanczos.seed = ctx.seed;
        fo.lanczos.tol = ctx.tol;
        const FemResult fr = eigs_fem(*poly, bc, sa.h, static_cast<int>(sa.count), fo);
        spec = fr.spectrum;
        method = "P1 FEM";
        result["h_used"] = fr.h_used;
        if (!fr.refinement.empty()) {
          std::vector<std::vector<double>> rows;
          for (const auto& r : fr.refinement) rows.push_back({double(r.index + 1), r.coarse, r.fine, r.finer, r.ratio, r.error_band});
          write_text_file(ctx.out_dir + "/refinement.csv",
                          csv_text({"index", "coarse", "fine", "finer", "ratio", "error_band"}, rows));
          outputs.push_back("refinement.csv");
        }
        if (!emit_mesh.empty()) write_text_file(emit_mesh, mesh_to_json(mesh_polygon(*poly, sa.h)) + "\n");
      } else {
        spec = get_spectrum(sa, ctx, method);
      }
      write_text_file(ctx.out_dir + "/eigs.csv", emit_plot_data(spec));
      outputs.push_back("eigs.csv");
      result.update({{"method", method}, {"size", spec.size()}, {"cutoff", spec.cutoff}, {"source", to_string(spec.source)}});
      if (!spec.empty()) result["first"] = spec.eigenvalues.front();
    } else if (coeffs->parsed()) {
      const TraceExpansion e = trace_coeffs(resolve_domain_arg(sa.domain), parse_bc(sa.bc));
      result = {{"c_m1", e.c_m1}, {"c_mhalf", e.c_mhalf}, {"c_0", e.c_0}};
    } else if (fit->parsed() || cls->parsed()) {
      std::string method;
      const Spectrum spec = get_spectrum(sa, ctx, method);
      const KnownGeometry kg = known_geometry(resolve_domain_arg(sa.domain), parse_bc(sa.bc));
      const auto grid = geometric_grid(fa.t_min, fa.t_max, fa.n);
      result["spectrum"] = {{"size", spec.size()}, {"cutoff", spec.cutoff}, {"method", method}};
      if (fit->parsed()) {
        const TraceFit f = fit_trace_expansion(spec, grid, fa.unpinned ? std::nullopt : std::optional(kg), fa.tail_tol);
        result["fit"] = {{"c_m1", f.expansion.c_m1}, {"c_mhalf", f.expansion.c_mhalf}, {"c_0", f.expansion.c_0},
                         {"c_half", f.c_half}, {"c0_stderr", f.c0_stderr}, {"c0_systematic", f.c0_systematic},
                         {"pinned", f.pinned}};
        write_text_file(ctx.out_dir + "/trace_fit.csv", emit_plot_data(f));
        outputs.push_back("trace_fit.csv");
      } else {
        const CornerClassification c = classify_corners(spec, kg, grid);
        result["verdict"] = to_string(c.verdict);
        result["excess"] = c.excess;
        result["ci"] = c.ci;
        if (!c.note.empty()) result["note"] = c.note;
      }
    } else if (green->parsed() || heat->parsed()) {
      const Sector s(sec.gamma, parse_bc(sec.bc));
      QuadratureBudget budget;
      budget.rel_tol = ctx.tol;
      const SectorPoint p{sec.r, sec.phi}, p0{sec.r0, sec.phi0};
      if (green->parsed()) {
        const SectorGreenResult g = green_sector(sec.s, s, p, p0, budget);
        result = {{"value", g.value}, {"tail_bound", g.tail_bound}};
      } else {
        const SectorHeatResult hres = heat_sector(sec.t, s, p, p0, budget);
        result = {{"value", hres.value}, {"free_part", hres.free_part}, {"regular_stehfest", hres.regular_stehfest},
                  {"regular_gwr", hres.regular_gwr}, {"disagreement", hres.disagreement}};
      }
    } else {
      const std::string text = read_text_file(config_path);
      input_hash = hex64(fnv1a64(text));
      json cfg;
      try {
        cfg = json::parse(text);
      } catch (const json::parse_error& e) {
        fail(ErrorKind::ParseError, config_path + ": " + e.what());
      }
      if (loc->parsed() && cfg.is_object() && !cfg.contains("experiment"))
        cfg = json{{"experiment", "locality"}, {"scenario", cfg}};
      RunOutcome out = run_experiment_json(cfg, ctx);
      result = out.result;
      outputs = out.outputs;
    }
    if (command != "run" && command != "locality") {
      write_text_file(ctx.out_dir + "/result.json", result.dump(2) + "\n");
      outputs.insert(outputs.begin(), "result.json");
    }
    write_manifest(ctx, command, input_hash, outputs, {{"ok", true}});
    std::cout << result.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    const json err{{"ok", false}, {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    try {
      write_manifest(ctx, command, input_hash, outputs, err);
    } catch (const Error&) {
    }
    return exit_code_for(e.kind());
  }
}
