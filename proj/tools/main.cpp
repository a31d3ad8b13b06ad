#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "svg.hpp"
#include "vortexsphere/catalog.hpp"
#include "vortexsphere/checks.hpp"
#include "vortexsphere/dynamics.hpp"
#include "vortexsphere/errors.hpp"
#include "vortexsphere/orbits.hpp"
#include "vortexsphere/reduction.hpp"

namespace fs = std::filesystem;
using namespace vortexsphere;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Output files are re-read and checked before a success exit.
nlohmann::json validate_json_file(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error("output " + path.string() + " failed validation: " + e.what());
  }
}

void validate_csv_file(const fs::path& path, const std::string& header) {
  const std::string text = read_file(path);
  if (text.compare(0, header.size(), header) != 0)
    throw Error("output " + path.string() + " failed validation: bad header");
}

std::string scheme_slug(const SymmetryScheme& s) {
  std::string base = s.group.kind == GroupKind::Dihedral
                         ? "D" + std::to_string(s.group.n)
                         : std::string("T");
  switch (s.fixed_choice) {
    case FixedChoice::None: return base;
    case FixedChoice::Poles: return base + "_poles";
    case FixedChoice::Cube: return base + "_cube";
  }
  return base;
}

// Optional JSON config file; flags take precedence, unknown keys are
// rejected.
class ConfigFile {
 public:
  void load(const std::string& path, const std::vector<std::string>& allowed) {
    if (path.empty()) return;
    try {
      cfg_ = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!cfg_.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : cfg_.items()) {
      (void)value;
      bool ok = false;
      for (const auto& a : allowed) ok = ok || key == a;
      if (!ok) throw ConfigError("unknown config key: " + key);
    }
  }

  bool has(const std::string& key) const { return cfg_.contains(key); }

  template <typename T>
  void fill(const CLI::Option* opt, const std::string& key, T& var) const {
    if (opt->count() > 0 || !cfg_.contains(key)) return;
    try {
      var = cfg_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("config key " + key + " has the wrong type");
    }
  }

 private:
  nlohmann::json cfg_ = nlohmann::json::object();
};

SymmetryScheme scheme_from_flags(const std::string& group, int n, bool n_given,
                                 const std::string& fixed) {
  FixedChoice fc;
  if (fixed == "none")
    fc = FixedChoice::None;
  else if (fixed == "poles")
    fc = FixedChoice::Poles;
  else if (fixed == "cube")
    fc = FixedChoice::Cube;
  else
    throw ConfigError("--fixed must be none, poles, or cube");
  if (group == "Dn") {
    if (!n_given) throw ConfigError("--n is required with --group Dn");
    return make_scheme(GroupKind::Dihedral, n, fc);
  }
  if (group == "T") {
    if (n_given) throw ConfigError("--n applies to dihedral schemes only");
    return make_scheme(GroupKind::Tetrahedral, 0, fc);
  }
  throw ConfigError("--group must be Dn or T");
}

UnitVector3 parse_u0(const std::string& text) {
  double x, y, z;
  if (std::sscanf(text.c_str(), " %lf , %lf , %lf", &x, &y, &z) != 3)
    throw ConfigError("--u0 must be three comma-separated numbers");
  return UnitVector3(Vec3{x, y, z});
}

void parse_grid(const std::string& text, int& rows, int& cols) {
  if (std::sscanf(text.c_str(), "%dx%d", &rows, &cols) != 2 || rows < 1 || cols < 1)
    throw ConfigError("--grid must look like 24x24");
}

Configuration read_configuration_csv(const fs::path& path) {
  std::istringstream in(read_file(path));
  Configuration v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    double x, y, z;
    if (std::sscanf(line.c_str(), " %lf , %lf , %lf", &x, &y, &z) != 3)
      throw ConfigError(path.string() + ": line " + std::to_string(lineno) +
                        " is not an x, y, z row");
    const double nrm = std::sqrt(x * x + y * y + z * z);
    if (std::abs(nrm - 1.0) > 1e-6)
      throw ConfigError(path.string() + ": line " + std::to_string(lineno) +
                        " is not a unit vector");
    v.positions.emplace_back(Vec3{x, y, z});
  }
  if (v.size() < 2) throw ConfigError(path.string() + ": need at least two vortices");
  return v;
}

int cmd_equilibria(const SymmetryScheme& s, const std::string& out_dir) {
  const auto records = catalog_for(s);
  const std::string table = catalog_to_table(records);
  std::fputs(table.c_str(), stdout);

  fs::create_directories(out_dir);
  const std::string slug = scheme_slug(s);
  const fs::path json_path = fs::path(out_dir) / ("catalog_" + slug + ".json");
  const fs::path txt_path = fs::path(out_dir) / ("catalog_" + slug + ".txt");
  write_file(json_path, catalog_to_json(records));
  write_file(txt_path, table);

  const nlohmann::json parsed = validate_json_file(json_path);
  if (!parsed.is_array() || parsed.size() != records.size())
    throw Error("catalog JSON does not match the record list");
  for (const auto& rec : parsed)
    if (!rec.contains("name") || !rec.contains("kind") || !rec.contains("point"))
      throw Error("catalog JSON record is missing required keys");
  return 0;
}

int cmd_portrait(const SymmetryScheme& s, const PortraitSpec& spec, char view,
                 const std::string& out_dir) {
  const PhasePortrait portrait = sample_portrait(s, spec);
  const auto records = catalog_for(s);

  fs::create_directories(out_dir);
  const std::string slug = scheme_slug(s);
  const fs::path manifest_path = fs::path(out_dir) / ("portrait_" + slug + ".json");
  write_file(manifest_path, portrait_to_json(s, spec, portrait));

  char buf[64];
  for (size_t i = 0; i < portrait.curves.size(); ++i) {
    std::snprintf(buf, sizeof buf, "curve_%s_%04zu.csv", slug.c_str(), i);
    std::string csv = "x, y, z\n";
    for (const auto& p : portrait.curves[i].points) {
      char row[96];
      std::snprintf(row, sizeof row, "%.17g, %.17g, %.17g\n", p.x(), p.y(), p.z());
      csv += row;
    }
    write_file(fs::path(out_dir) / buf, csv);
  }

  const fs::path svg_path = fs::path(out_dir) / ("portrait_" + slug + ".svg");
  write_file(svg_path, tools::render_portrait_svg(portrait, records, view));

  const nlohmann::json manifest = validate_json_file(manifest_path);
  if (!manifest.contains("curves") ||
      manifest.at("curves").size() != portrait.curves.size())
    throw Error("portrait manifest does not match the curve list");
  for (size_t i = 0; i < portrait.curves.size(); ++i) {
    std::snprintf(buf, sizeof buf, "curve_%s_%04zu.csv", slug.c_str(), i);
    validate_csv_file(fs::path(out_dir) / buf, "x, y, z\n");
  }
  if (read_file(svg_path).compare(0, 4, "<svg") != 0)
    throw Error("portrait SVG failed validation");

  std::printf("portrait %s: %zu curves -> %s\n", slug.c_str(),
              portrait.curves.size(), out_dir.c_str());
  return 0;
}

int cmd_simulate(const Configuration& v0, double tspan, double tol, double stride,
                 const std::string& out_dir) {
  const Trajectory tr = integrate(v0, tspan, tol, stride);

  double dh = 0.0;
  double dj = 0.0;
  double drift = 0.0;
  for (size_t k = 0; k < tr.states.size(); ++k) {
    dh = std::max(dh, std::abs(tr.energies[k] - tr.energy0));
    const Vec3 j = tr.momenta[k] - tr.momentum0;
    dj = std::max({dj, std::abs(j.x), std::abs(j.y), std::abs(j.z)});
    for (int i = 0; i < tr.states[k].size(); ++i)
      drift = std::max(drift,
                       distance(tr.states[k].positions[i], tr.states[0].positions[i]));
  }
  const double dh_rel = dh / std::max(std::abs(tr.energy0), 1e-300);

  fs::create_directories(out_dir);
  const fs::path csv_path = fs::path(out_dir) / "trajectory.csv";
  write_file(csv_path, trajectory_to_csv(tr));

  nlohmann::json report = {{"samples", tr.times.size()},
                           {"t_end", tr.times.back()},
                           {"energy_drift_rel", dh_rel},
                           {"momentum_drift_max", dj},
                           {"max_position_drift", drift},
                           {"min_pairwise_distance", tr.min_distance},
                           {"near_collision", tr.near_collision}};
  const fs::path report_path = fs::path(out_dir) / "conservation.json";
  write_file(report_path, report.dump(2));

  validate_csv_file(csv_path, "t, ");
  validate_json_file(report_path);

  std::printf("samples: %zu\n", tr.times.size());
  std::printf("energy drift |dH|/|H|: %.3e\n", dh_rel);
  std::printf("momentum drift max component: %.3e\n", dj);
  std::printf("max position drift: %.3e\n", drift);
  std::printf("min pairwise distance: %.6f\n", tr.min_distance);
  return 0;
}

int cmd_verify(const std::string& section, std::uint64_t seed, int jobs,
               const std::string& out_dir) {
  const std::vector<checks::CheckResult> results =
      section.empty() ? checks::run_all(seed, jobs)
                      : checks::run_section(section, seed);
  const std::string text = checks::report_text(results);
  std::fputs(text.c_str(), stdout);

  fs::create_directories(out_dir);
  const fs::path json_path = fs::path(out_dir) / "verify.json";
  const fs::path txt_path = fs::path(out_dir) / "verify.txt";
  write_file(json_path, checks::report_json(results));
  write_file(txt_path, text);

  const nlohmann::json parsed = validate_json_file(json_path);
  if (!parsed.is_array() || parsed.size() != results.size())
    throw Error("verify JSON does not match the result list");

  return checks::all_pass(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point-vortex dynamics on the sphere with finite symmetry groups"};
  app.require_subcommand(1);

  std::string config_path;

  auto* eq = app.add_subcommand("equilibria", "print and export the equilibrium catalog");
  std::string eq_group, eq_fixed = "none", eq_out = ".";
  int eq_n = 0;
  auto* eq_group_opt = eq->add_option("--group", eq_group, "Dn or T");
  auto* eq_n_opt = eq->add_option("--n", eq_n, "dihedral order");
  auto* eq_fixed_opt = eq->add_option("--fixed", eq_fixed, "none, poles, or cube");
  auto* eq_out_opt = eq->add_option("--out", eq_out, "output directory");
  eq->add_option("--config", config_path, "JSON config merged under the flags");

  auto* po = app.add_subcommand("portrait", "sample a phase portrait and render it");
  std::string po_group = "Dn", po_fixed = "none", po_out = ".", po_grid = "24x24",
              po_view = "z";
  int po_n = 2, po_jobs = 1;
  double po_tspan = 200.0, po_tol = 1e-10;
  auto* po_group_opt = po->add_option("--group", po_group, "Dn or T");
  auto* po_n_opt = po->add_option("--n", po_n, "dihedral order");
  auto* po_fixed_opt = po->add_option("--fixed", po_fixed, "none, poles, or cube");
  auto* po_grid_opt = po->add_option("--grid", po_grid, "seed grid, rows x cols");
  auto* po_tspan_opt = po->add_option("--tspan", po_tspan, "per-seed time budget");
  auto* po_tol_opt = po->add_option("--tol", po_tol, "integrator tolerance");
  auto* po_jobs_opt = po->add_option("--jobs", po_jobs, "worker threads");
  auto* po_view_opt = po->add_option("--view", po_view, "projection axis: x, y, or z");
  auto* po_out_opt = po->add_option("--out", po_out, "output directory");
  po->add_option("--config", config_path, "JSON config merged under the flags");

  auto* si = app.add_subcommand("simulate", "integrate the full system and report conservation");
  std::string si_group, si_fixed = "none", si_out = ".", si_u0, si_init;
  int si_n = 0;
  double si_tspan = 10.0, si_tol = 1e-10, si_stride = 0.0;
  auto* si_group_opt = si->add_option("--group", si_group, "Dn or T");
  auto* si_n_opt = si->add_option("--n", si_n, "dihedral order");
  auto* si_fixed_opt = si->add_option("--fixed", si_fixed, "none, poles, or cube");
  auto* si_u0_opt = si->add_option("--u0", si_u0, "free vortex position x,y,z");
  auto* si_init_opt =
      si->add_option("--init", si_init, "CSV of initial positions, one x, y, z row per vortex");
  auto* si_tspan_opt = si->add_option("--tspan", si_tspan, "integration time");
  auto* si_tol_opt = si->add_option("--tol", si_tol, "integrator tolerance");
  auto* si_stride_opt = si->add_option("--stride", si_stride, "sample stride, 0 = tspan/512");
  auto* si_out_opt = si->add_option("--out", si_out, "output directory");
  si->add_option("--config", config_path, "JSON config merged under the flags");

  auto* ve = app.add_subcommand("verify", "run the verification suite");
  std::string ve_section, ve_out = ".";
  std::uint64_t ve_seed = 0;
  int ve_jobs = 1;
  auto* ve_section_opt = ve->add_option("--section", ve_section, "run a single section");
  auto* ve_seed_opt = ve->add_option("--seed", ve_seed, "seed for randomized checks");
  auto* ve_jobs_opt = ve->add_option("--jobs", ve_jobs, "worker threads");
  auto* ve_out_opt = ve->add_option("--out", ve_out, "output directory");
  ve->add_option("--config", config_path, "JSON config merged under the flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eq->parsed()) {
      ConfigFile cfg;
      cfg.load(config_path, {"group", "n", "fixed", "out"});
      cfg.fill(eq_group_opt, "group", eq_group);
      cfg.fill(eq_n_opt, "n", eq_n);
      cfg.fill(eq_fixed_opt, "fixed", eq_fixed);
      cfg.fill(eq_out_opt, "out", eq_out);
      const bool n_given = eq_n_opt->count() > 0 || cfg.has("n");
      return cmd_equilibria(scheme_from_flags(eq_group, eq_n, n_given, eq_fixed),
                            eq_out);
    }
    if (po->parsed()) {
      ConfigFile cfg;
      cfg.load(config_path,
               {"group", "n", "fixed", "grid", "tspan", "tol", "jobs", "view", "out"});
      cfg.fill(po_group_opt, "group", po_group);
      cfg.fill(po_n_opt, "n", po_n);
      cfg.fill(po_fixed_opt, "fixed", po_fixed);
      cfg.fill(po_grid_opt, "grid", po_grid);
      cfg.fill(po_tspan_opt, "tspan", po_tspan);
      cfg.fill(po_tol_opt, "tol", po_tol);
      cfg.fill(po_jobs_opt, "jobs", po_jobs);
      cfg.fill(po_view_opt, "view", po_view);
      cfg.fill(po_out_opt, "out", po_out);
      const bool group_defaulted = po_group_opt->count() == 0 && !cfg.has("group");
      const bool n_given = po_n_opt->count() > 0 || cfg.has("n") || group_defaulted;
      const SymmetryScheme s = scheme_from_flags(po_group, po_n, n_given, po_fixed);
      PortraitSpec spec;
      parse_grid(po_grid, spec.rows, spec.cols);
      spec.t_span = po_tspan;
      spec.tol = po_tol;
      spec.jobs = po_jobs;
      if (po_view.size() != 1) throw ConfigError("--view must be x, y, or z");
      return cmd_portrait(s, spec, po_view[0], po_out);
    }
    if (si->parsed()) {
      ConfigFile cfg;
      cfg.load(config_path, {"group", "n", "fixed", "u0", "init", "tspan", "tol",
                             "stride", "out"});
      cfg.fill(si_group_opt, "group", si_group);
      cfg.fill(si_n_opt, "n", si_n);
      cfg.fill(si_fixed_opt, "fixed", si_fixed);
      cfg.fill(si_u0_opt, "u0", si_u0);
      cfg.fill(si_init_opt, "init", si_init);
      cfg.fill(si_tspan_opt, "tspan", si_tspan);
      cfg.fill(si_tol_opt, "tol", si_tol);
      cfg.fill(si_stride_opt, "stride", si_stride);
      cfg.fill(si_out_opt, "out", si_out);
      Configuration v0;
      if (!si_init.empty()) {
        if (!si_group.empty() || !si_u0.empty())
          throw ConfigError("--init and --group/--u0 are mutually exclusive");
        v0 = read_configuration_csv(si_init);
      } else {
        if (si_group.empty() || si_u0.empty())
          throw ConfigError("simulate needs either --init or --group with --u0");
        const bool n_given = si_n_opt->count() > 0 || cfg.has("n");
        const SymmetryScheme s = scheme_from_flags(si_group, si_n, n_given, si_fixed);
        v0 = embed(parse_u0(si_u0), s);
      }
      return cmd_simulate(v0, si_tspan, si_tol, si_stride, si_out);
    }
    ConfigFile cfg;
    cfg.load(config_path, {"section", "seed", "jobs", "out"});
    cfg.fill(ve_section_opt, "section", ve_section);
    cfg.fill(ve_seed_opt, "seed", ve_seed);
    cfg.fill(ve_jobs_opt, "jobs", ve_jobs);
    cfg.fill(ve_out_opt, "out", ve_out);
    return cmd_verify(ve_section, ve_seed, ve_jobs, ve_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const UnsupportedGroup& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
