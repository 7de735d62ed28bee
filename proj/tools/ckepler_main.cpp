#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ckepler/analytic.hpp"
#include "ckepler/json_io.hpp"
#include "ckepler/oracle.hpp"
#include "ckepler/verify.hpp"
#include "ckepler/version.hpp"
#include "ckepler/wavefn.hpp"

namespace {

using ckepler::json_io::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string space = "s3";
  double e = 0.0;
  double m = 1.0;
  int j2 = 1;
  int parity = 1;
  int points = 20001;
  double x_max = 0.0;  // 0 = space default
  std::string scheme = "richardson";
  double tol = 1e-10;
};

ckepler::SpaceModel parse_space(const std::string& name, double rho) {
  if (name == "flat") return ckepler::SpaceModel::flat();
  if (name == "s3") return ckepler::SpaceModel::spherical(rho);
  if (name == "h3") return ckepler::SpaceModel::hyperbolic(rho);
  throw std::invalid_argument("unknown space '" + name + "' (flat, s3, h3)");
}

ckepler::GridSpec make_grid(const ckepler::SpaceModel& space, const CommonOpts& c,
                            double e_est) {
  const double b = c.x_max > 0.0 && space.kind != ckepler::SpaceKind::Spherical
                       ? c.x_max
                       : ckepler::default_x_max(space, c.m, e_est);
  const auto scheme = c.scheme == "fd2" ? ckepler::FdScheme::FD2
                                        : ckepler::FdScheme::FD2Richardson;
  return ckepler::GridSpec::interior(0.0, b, c.points, scheme);
}

std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

ordered_json entry_to_json(const ckepler::SpectrumEntry& s) {
  ordered_json j;
  j["n"] = s.n;
  j["N_x2"] = s.principal_x2;
  j["energy"] = s.energy;
  j["valid"] = s.valid;
  j["notes"] = s.notes;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

int cmd_spectrum(const CommonOpts& c, int levels, const std::string& mode,
                 const std::string& format, std::optional<double> rho,
                 std::optional<double> q_sq) {
  const bool dimensionful = rho.has_value() || q_sq.has_value();
  if (dimensionful && (!rho || !q_sq))
    throw std::invalid_argument("--rho and --q2 must be given together");
  if (dimensionful && c.space == "flat")
    throw std::invalid_argument(
        "dimensionful mode applies to the curved spaces; pass the flat "
        "coupling through --e");

  const ckepler::SpaceModel space = parse_space(c.space, rho.value_or(1.0));
  const ckepler::ChannelSpec ch(c.j2, c.parity);
  if (levels < 1) throw std::invalid_argument("--levels must be at least 1");

  double e = c.e;
  double energy_unit = 1.0;
  if (dimensionful) {
    const auto conv = ckepler::to_dimensionless(*q_sq, c.m, *rho);
    e = conv.e;
    energy_unit = conv.energy_unit;
  }
  if (space.kind == ckepler::SpaceKind::Flat && e <= 0.0)
    throw std::invalid_argument("no bound states for alpha=" + fmt15(e));

  std::vector<ckepler::SpectrumEntry> entries;
  if (mode == "analytic") {
    for (int n = 0; n < levels; ++n) {
      switch (space.kind) {
        case ckepler::SpaceKind::Flat:
          entries.push_back(ckepler::flat_spectrum(ch, c.m, e, n));
          break;
        case ckepler::SpaceKind::Spherical:
          if (ch.delta > 0)
            entries.push_back(ckepler::s3_spectrum(e, ch.j2, n));
          else if (e == 0.0)
            entries.push_back(ckepler::s3_free_spectrum(ch, c.m, n));
          else
            throw std::invalid_argument(
                "no closed form for the spherical parity -1 Coulomb channel; "
                "use --mode oracle");
          break;
        case ckepler::SpaceKind::Hyperbolic:
          if (ch.delta > 0)
            entries.push_back(ckepler::h3_spectrum(e, ch.j2, n));
          else
            throw std::invalid_argument(
                "no closed form for the hyperbolic parity -1 channel; use "
                "--mode oracle");
          break;
      }
    }
  } else if (mode == "oracle") {
    const double e_est = space.kind == ckepler::SpaceKind::Flat
                             ? ckepler::flat_spectrum(ch, c.m, e, levels - 1).energy
                             : 1.0;
    entries = ckepler::fd_eigensolve(space, ch, e, c.m, make_grid(space, c, e_est),
                                     levels);
  } else {
    throw std::invalid_argument("unknown mode '" + mode + "' (analytic, oracle)");
  }

  if (dimensionful)
    for (auto& s : entries) s.energy *= energy_unit;

  const ckepler::GridSpec grid = make_grid(space, c, 1.0);
  if (format == "json") {
    ordered_json out;
    out["space"] = c.space;
    out["e"] = e;
    out["m"] = c.m;
    out["j2"] = c.j2;
    out["parity"] = c.parity;
    out["method"] = mode;
    ordered_json lv = ordered_json::array();
    for (const auto& s : entries) lv.push_back(entry_to_json(s));
    out["levels"] = std::move(lv);
    ordered_json meta;
    ordered_json gj;
    gj["points"] = grid.points;
    gj["x_min"] = grid.x_min;
    gj["x_max"] = grid.x_max;
    gj["scheme"] = c.scheme;
    meta["grid"] = std::move(gj);
    meta["tol"] = c.tol;
    meta["version"] = ckepler::kVersion;
    if (dimensionful) {
      ordered_json units;
      units["rho"] = *rho;
      units["q2"] = *q_sq;
      units["e"] = e;
      units["energy_unit"] = energy_unit;
      meta["units"] = std::move(units);
    }
    out["meta"] = std::move(meta);
    std::cout << ckepler::json_io::dump(out) << "\n";
  } else if (format == "csv") {
    std::cout << "space,e,m,j2,parity,method,n,N_x2,energy,valid,notes\n";
    for (const auto& s : entries)
      std::cout << c.space << ',' << fmt15(e) << ',' << fmt15(c.m) << ',' << c.j2
                << ',' << c.parity << ',' << mode << ',' << s.n << ','
                << s.principal_x2 << ',' << fmt15(s.energy) << ','
                << (s.valid ? "true" : "false") << ',' << csv_escape(s.notes)
                << "\n";
  } else {
    throw std::invalid_argument("unknown format '" + format + "' (json, csv)");
  }
  return kExitOk;
}

int cmd_wavefunction(const CommonOpts& c, int n, const std::string& out_path) {
  const ckepler::SpaceModel space = parse_space(c.space, 1.0);
  const ckepler::ChannelSpec ch(c.j2, c.parity);
  if (space.kind == ckepler::SpaceKind::Flat && c.e <= 0.0)
    throw std::invalid_argument("no bound states for alpha=" + fmt15(c.e));

  const ckepler::GridSpec grid = make_grid(
      space, c,
      space.kind == ckepler::SpaceKind::Flat
          ? ckepler::flat_spectrum(ch, c.m, c.e, n).energy
          : 1.0);
  const ckepler::BoundState bs =
      ckepler::bound_state(space, ch, c.e, c.m, n, &grid);

  ordered_json side;
  side["space"] = c.space;
  side["e"] = c.e;
  side["m"] = c.m;
  side["j2"] = c.j2;
  side["parity"] = c.parity;
  side["n"] = n;
  side["energy"] = bs.entry.energy;
  side["nodes"] = bs.solution.nodes;
  side["norm"] = bs.solution.norm;
  side["points"] = bs.solution.grid.points;
  side["x_min"] = bs.solution.grid.x_min;
  side["x_max"] = bs.solution.grid.x_max;
  side["notes"] = bs.entry.notes;

  const auto& sol = bs.solution;
  auto write_csv = [&](std::ostream& os) {
    os << "x,f,g\n";
    for (int i = 0; i < sol.grid.points; ++i)
      os << fmt15(sol.grid.x(i)) << ',' << fmt15(sol.f[static_cast<size_t>(i)])
         << ',' << fmt15(sol.g[static_cast<size_t>(i)]) << "\n";
  };

  if (out_path.empty()) {
    write_csv(std::cout);
    std::cerr << ckepler::json_io::dump(side) << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw std::invalid_argument("cannot open " + out_path);
    write_csv(os);
    std::ofstream js(out_path + ".json");
    js << ckepler::json_io::dump(side) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& only, const std::string& rho_list,
               const std::string& report_path) {
  ckepler::verify::Options opts;
  opts.only = only;
  if (!rho_list.empty()) {
    opts.rho_values.clear();
    std::string token;
    std::istringstream is(rho_list);
    while (std::getline(is, token, ','))
      if (!token.empty()) opts.rho_values.push_back(std::stod(token));
  }
  opts.log = [](const std::string& line) { std::cerr << line << "\n"; };

  const auto results = ckepler::verify::run(opts);

  ordered_json out;
  out["version"] = ckepler::kVersion;
  out["pass"] = ckepler::verify::all_pass(results);
  ordered_json checks = ordered_json::array();
  for (const auto& r : results) {
    ordered_json cj;
    cj["id"] = r.id;
    cj["slug"] = r.slug;
    cj["title"] = r.title;
    cj["pass"] = r.pass;
    cj["seconds"] = r.seconds;
    ordered_json cases = ordered_json::array();
    for (const auto& c : r.cases) {
      ordered_json k;
      k["name"] = c.name;
      k["pass"] = c.pass;
      k["expected"] = c.expected;
      k["measured"] = c.measured;
      k["gap"] = c.gap;
      k["tol"] = c.tol;
      k["detail"] = c.detail;
      cases.push_back(std::move(k));
    }
    cj["cases"] = std::move(cases);
    checks.push_back(std::move(cj));
  }
  out["checks"] = std::move(checks);

  const std::string payload = ckepler::json_io::dump(out);
  std::cout << payload << "\n";
  if (!report_path.empty()) {
    std::ofstream os(report_path);
    if (!os) throw std::invalid_argument("cannot open " + report_path);
    os << payload << "\n";
  }
  return ckepler::verify::all_pass(results) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of the spin-1/2 Kepler problem in flat, spherical "
               "and hyperbolic 3-spaces (Pauli approximation)"};
  app.set_version_flag("--version", ckepler::kVersion);
  if (const char* cfg = std::getenv("CKEPLER_CONFIG"))
    app.set_config("--config", cfg, "configuration file", false);
  else
    app.set_config("--config", "", "configuration file", false);
  app.require_subcommand(1);

  CommonOpts c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--space", c.space, "flat | s3 | h3")->capture_default_str();
    sub->add_option("--e", c.e, "dimensionless Coulomb constant (alpha in flat space)")
        ->capture_default_str();
    sub->add_option("--m", c.m, "particle mass")->capture_default_str();
    sub->add_option("--j2", c.j2, "doubled angular momentum (odd)")
        ->capture_default_str();
    sub->add_option("--parity", c.parity, "+1 or -1")->capture_default_str();
    sub->add_option("--points", c.points, "grid points")->capture_default_str();
    sub->add_option("--x-max", c.x_max, "truncation radius (flat/h3)")
        ->capture_default_str();
    sub->add_option("--scheme", c.scheme, "fd2 | richardson")->capture_default_str();
    sub->add_option("--tol", c.tol, "solver tolerance")->capture_default_str();
  };

  auto* spectrum = app.add_subcommand("spectrum", "compute bound levels");
  int levels = 3;
  std::string mode = "analytic", format = "json";
  double rho_in = 0.0, q2_in = 0.0;
  add_common(spectrum);
  spectrum->add_option("--levels", levels, "number of levels")->capture_default_str();
  spectrum->add_option("--mode", mode, "analytic | oracle")->capture_default_str();
  spectrum->add_option("--format", format, "json | csv")->capture_default_str();
  auto* rho_opt = spectrum->add_option("--rho", rho_in, "curvature radius (dimensionful mode)");
  auto* q2_opt = spectrum->add_option("--q2", q2_in, "charge squared (dimensionful mode)");

  auto* wavefn = app.add_subcommand("wavefunction", "compute one bound profile");
  int n_level = 0;
  std::string out_path;
  add_common(wavefn);
  wavefn->add_option("--n", n_level, "radial quantum number")->capture_default_str();
  wavefn->add_option("--out", out_path,
                     "CSV output path (JSON sidecar written alongside); stdout "
                     "if omitted");

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  std::vector<std::string> only;
  std::string rho_list, report_path;
  verify->add_option("--only", only, "subset of checks (comma separated)")
      ->delimiter(',');
  verify->add_option("--rho", rho_list, "curvature radii for the flat-limit check");
  verify->add_option("--report", report_path, "also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (spectrum->parsed())
      return cmd_spectrum(c, levels, mode, format,
                          rho_opt->count() ? std::optional<double>(rho_in)
                                           : std::nullopt,
                          q2_opt->count() ? std::optional<double>(q2_in)
                                          : std::nullopt);
    if (wavefn->parsed()) return cmd_wavefunction(c, n_level, out_path);
    if (verify->parsed()) return cmd_verify(only, rho_list, report_path);
  } catch (const ckepler::solver_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
