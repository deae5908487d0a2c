#include "greenexp/cli_run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "greenexp/config_parse.hpp"
#include "greenexp/fd_operator.hpp"
#include "greenexp/grid.hpp"
#include "greenexp/laplace_inverse.hpp"
#include "greenexp/oracles.hpp"
#include "greenexp/parametrix.hpp"
#include "greenexp/presets.hpp"
#include "greenexp/probes.hpp"
#include "greenexp/remainder.hpp"
#include "greenexp/serialize.hpp"
#include "greenexp/verify.hpp"

namespace greenexp {

namespace {

namespace fs = std::filesystem;

// Raised for invalid flag combinations and values; mapped to exit code 2.
struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(csv);
  while (std::getline(is, cur, ',')) parts.push_back(cur);
  return parts;
}

Rational exact_number(const std::string& text) {
  GradedFunction<Rational> p(2);
  try {
    p = parse_polynomial(text, 2);
  } catch (const ConfigError& e) {
    throw ConfigFailure("base point component \"" + text + "\": " + e.what());
  }
  for (const auto& t : p.terms())
    if (t.alpha.order() != 0 || t.radial_power != 0 || t.log_power != 0)
      throw ConfigFailure("base point component is not a number: " + text);
  return p.coefficient_of(MultiIndex(2), 0, 0);
}

std::vector<Rational> parse_point_exact(const std::string& csv, int n) {
  const auto parts = split_csv(csv);
  if (static_cast<int>(parts.size()) != n)
    throw ConfigFailure("base point needs " + std::to_string(n) + " comma-separated values, got " +
                        std::to_string(parts.size()));
  std::vector<Rational> y;
  y.reserve(parts.size());
  for (const auto& p : parts) y.push_back(exact_number(p));
  return y;
}

std::vector<double> to_double_point(const std::vector<Rational>& y) {
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& v : y) out.push_back(v.to_double());
  return out;
}

ProblemSpec resolve_spec(const RunConfig& cfg) {
  if (!cfg.spec_path.empty() && !cfg.preset_name.empty())
    throw ConfigFailure("--spec and --preset are mutually exclusive");
  if (!cfg.spec_path.empty()) return parse_spec_file(cfg.spec_path);
  if (!cfg.preset_name.empty()) return preset(cfg.preset_name);
  throw ConfigFailure("one of --spec or --preset is required");
}

void validate_common(const RunConfig& cfg) {
  if (cfg.order < 0) throw ConfigFailure("--l must be nonnegative");
  if (cfg.grid < 33) throw ConfigFailure("--grid must be at least 33");
  if (cfg.backend != "exact" && cfg.backend != "float")
    throw ConfigFailure("--backend must be exact or float");
  if (cfg.tol < 0) throw ConfigFailure("--tol must be positive when given");
}

void require_planar(const ProblemSpec& spec) {
  if (spec.K.dimension() != 2)
    throw ConfigFailure("numeric commands support dimension 2 only (spec has n=" +
                        std::to_string(spec.K.dimension()) + ")");
}

std::string point_str(const std::vector<double>& y) {
  std::string s = "(";
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i) s += ", ";
    s += format_double_value(y[i]);
  }
  return s + ")";
}

void check_inside(const ProblemSpec& spec, const std::vector<double>& y) {
  if (!spec.domain.contains(y))
    throw ConfigFailure("base point " + point_str(y) + " lies outside the domain " +
                        spec.domain.str());
}

// ---------------------------------------------------------------------------

int cmd_expand(const RunConfig& cfg) {
  const auto spec = resolve_spec(cfg);
  const int n = spec.K.dimension();
  std::string default_y = "0";
  for (int i = 1; i < n; ++i) default_y += ",0";
  const auto y_exact = parse_point_exact(cfg.y_csv.empty() ? default_y : cfg.y_csv, n);
  const auto y = to_double_point(y_exact);
  check_inside(spec, y);

  json artifact;
  std::string listing;
  const std::string title = "expansion for \"" + spec.name + "\" at y = " + point_str(y) +
                            ", order " + std::to_string(cfg.order);
  if (cfg.backend == "exact") {
    const auto res = build_expansion<Rational>(spec.K, y_exact, cfg.order);
    artifact = expansion_json(res, cfg.backend);
    listing = expansion_listing(res, title);
  } else {
    const auto res = build_expansion<double>(spec.K, y, cfg.order);
    artifact = expansion_json(res, cfg.backend);
    listing = expansion_listing(res, title);
  }
  std::cout << listing;

  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    write_json(cfg.out_dir + "/expansion.json", artifact);
    write_text(cfg.out_dir + "/listing.txt", listing);
    write_manifest(cfg.out_dir, cfg.command,
                   {{"expansion.json", "expansion"}, {"listing.txt", "listing"}});
  }
  return 0;
}

json solver_json(const SolveReport& rep) {
  return {{"method", rep.method},
          {"iterations", rep.iterations},
          {"relative_residual", rep.relative_residual},
          {"converged", rep.converged}};
}

int cmd_green(const RunConfig& cfg) {
  const auto spec = resolve_spec(cfg);
  require_planar(spec);
  const auto y = to_double_point(parse_point_exact(cfg.y_csv.empty() ? "0,0" : cfg.y_csv, 2));
  check_inside(spec, y);

  const auto grid = Grid::build(spec.domain, cfg.grid);
  if (boundary_distance(spec.domain, y) < 4 * grid->h())
    throw ConfigFailure("base point " + point_str(y) + " is closer than 4h to the boundary");

  const DivergenceOperator op(spec.K, grid);
  const auto exp = build_expansion<double>(spec.K, y, cfg.order);
  const auto method = cfg.tol > 0 ? SolveMethod::cg : SolveMethod::direct;
  const auto rem = remainder_solve(op, exp, method, cfg.tol > 0 ? cfg.tol : 1e-10);
  auto g = green_reconstruct(exp, rem);
  g.label = "green";
  g.base_point = y;

  std::printf("green: \"%s\", y = %s, l = %d, grid %dx%d (h = %.6g)\n", spec.name.c_str(),
              point_str(y).c_str(), cfg.order, grid->nx(), grid->ny(), grid->h());
  std::printf("solver: %s, %d iterations, relative residual %.3g (%.2f s)\n",
              rem.report.method.c_str(), rem.report.iterations, rem.report.relative_residual,
              rem.report.seconds);
  std::printf("regular part at the base point H(y,y) = %.10g\n", rem.regular_at_base);
  std::printf("Robin value R(y) = %.10g\n", rem.robin);

  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    write_field_csv(cfg.out_dir + "/green.csv", g);
    write_field_binary(cfg.out_dir + "/green.bin", g);
    write_json(cfg.out_dir + "/expansion.json", expansion_json(exp, "float"));
    json rep;
    rep["schema_version"] = 1;
    rep["kind"] = "green_report";
    rep["spec"] = spec.name;
    rep["y"] = y;
    rep["order"] = cfg.order;
    rep["grid"] = {{"resolution", cfg.grid}, {"nx", grid->nx()}, {"ny", grid->ny()}, {"h", grid->h()}};
    rep["solver"] = solver_json(rem.report);
    rep["field"] = field_summary_json(g);
    rep["regular_at_base"] = rem.regular_at_base;
    rep["robin"] = rem.robin;
    write_json(cfg.out_dir + "/green_report.json", rep);
    write_manifest(cfg.out_dir, cfg.command,
                   {{"green.csv", "field-csv"},
                    {"green.bin", "field-binary"},
                    {"expansion.json", "expansion"},
                    {"green_report.json", "report"}});
  }
  return 0;
}

int cmd_robin(const RunConfig& cfg) {
  const auto spec = resolve_spec(cfg);
  require_planar(spec);
  if (cfg.order < 1) throw ConfigFailure("robin requires --l at least 1");

  const auto grid = Grid::build(spec.domain, cfg.grid);
  const DivergenceOperator op(spec.K, grid);

  // Base points: an explicit --y, or a centered lattice spanning 5/8 of the
  // domain's shortest extent.
  std::vector<std::vector<double>> pts;
  bool lattice = cfg.y_csv.empty();
  int lattice_m = 9;
  double lattice_lo[2] = {0, 0}, lattice_step = 0;
  if (!lattice) {
    const auto y = to_double_point(parse_point_exact(cfg.y_csv, 2));
    check_inside(spec, y);
    pts.push_back(y);
  } else {
    double lo0 = -1, lo1 = -1, hi0 = 1, hi1 = 1;
    if (spec.domain.kind != Domain::Kind::unit_disk) {
      lo0 = spec.domain.box_lo()[0];
      lo1 = spec.domain.box_lo()[1];
      hi0 = spec.domain.box_hi()[0];
      hi1 = spec.domain.box_hi()[1];
    }
    const double span = std::min(hi0 - lo0, hi1 - lo1);
    lattice_step = 0.625 * span / (lattice_m - 1);
    lattice_lo[0] = 0.5 * (lo0 + hi0) - 0.3125 * span;
    lattice_lo[1] = 0.5 * (lo1 + hi1) - 0.3125 * span;
    for (int i = 0; i < lattice_m; ++i)
      for (int j = 0; j < lattice_m; ++j)
        pts.push_back({lattice_lo[0] + i * lattice_step, lattice_lo[1] + j * lattice_step});
  }
  for (const auto& p : pts)
    if (boundary_distance(spec.domain, p) < 4 * grid->h())
      throw ConfigFailure("base point " + point_str(p) + " is closer than 4h to the boundary");

  const auto samples = robin_scan(spec.K, op, pts, cfg.order);
  for (const auto& s : samples)
    std::printf("R%s = %.10g\n", point_str(s.y).c_str(), s.value);

  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    std::string csv = "x,y,robin,regular\n";
    char buf[128];
    for (const auto& s : samples) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", s.y[0], s.y[1], s.value,
                    s.regular);
      csv += buf;
    }
    write_text(cfg.out_dir + "/robin.csv", csv);

    json rep;
    rep["schema_version"] = 1;
    rep["kind"] = "robin_report";
    rep["spec"] = spec.name;
    rep["order"] = cfg.order;
    rep["grid"] = {{"resolution", cfg.grid}, {"h", grid->h()}};
    json values = json::array(), points = json::array();
    for (const auto& s : samples) {
      points.push_back(s.y);
      values.push_back(s.value);
    }
    rep["points"] = points;
    rep["robin"] = values;
    if (lattice) {
      rep["lattice"] = {{"m", lattice_m},
                        {"lo", {lattice_lo[0], lattice_lo[1]}},
                        {"step", lattice_step}};
      std::vector<double> vals;
      vals.reserve(samples.size());
      for (const auto& s : samples) vals.push_back(s.value);
      rep["first_differences"] = lattice_first_differences(vals, lattice_m, lattice_step);
      rep["second_differences"] = lattice_second_differences(vals, lattice_m, lattice_step);
    }
    write_json(cfg.out_dir + "/robin_report.json", rep);
    write_manifest(cfg.out_dir, cfg.command,
                   {{"robin.csv", "table-csv"}, {"robin_report.json", "report"}});
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const auto results = run_suite(cfg.suite, std::cout);
  int passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  std::printf("%d/%zu criteria passed\n", passed, results.size());

  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    json rep;
    rep["schema_version"] = 1;
    rep["kind"] = "verify_report";
    rep["suite"] = cfg.suite;
    json criteria = json::array();
    for (const auto& r : results)
      criteria.push_back(
          {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    rep["criteria"] = criteria;
    rep["all_passed"] = passed == static_cast<int>(results.size());
    write_json(cfg.out_dir + "/verify_report.json", rep);
    write_manifest(cfg.out_dir, cfg.command, {{"verify_report.json", "report"}});
  }
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

int cmd_selftest(const RunConfig&) {
  int checks = 0, failed = 0;
  auto check = [&](const char* what, bool ok) {
    ++checks;
    if (!ok) {
      ++failed;
      std::printf("selftest: FAILED %s\n", what);
    }
  };

  for (const auto& name : preset_names()) {
    const auto spec = preset(name);
    const auto text = serialize_spec(spec);
    check("spec round-trip", serialize_spec(parse_spec_text(text)) == text);
  }

  {
    const auto f = GradedFunction<Rational>::single(2, Rational(1), MultiIndex({1, 0}), 2, 0);
    const auto expect = GradedFunction<Rational>::single(2, Rational(1, 2), MultiIndex({1, 0}), 0, 1);
    check("log lift of x1/r^2", solve_graded(f) == expect);
    check("inverse identity", laplacian(solve_graded(f)) == f);
  }

  {
    const auto spec = parse_spec_text("name = st\ndimension = 2\ndomain = unit-square\n");
    const auto grid = Grid::build(spec.domain, 33);
    const DivergenceOperator op(spec.K, grid);
    auto bilinear = [](double x, double y) { return x * y; };
    const auto u = op.solve(std::vector<double>(static_cast<std::size_t>(grid->unknown_count()), 0.0),
                            bilinear, SolveMethod::direct);
    double worst = 0;
    for (int j = 0; j < grid->ny(); ++j)
      for (int i = 0; i < grid->nx(); ++i)
        if (grid->kind(i, j) == NodeKind::interior)
          worst = std::max(worst, std::abs(u.at(i, j) - bilinear(grid->x_of(i), grid->y_of(j))));
    check("harmonic bilinear reproduction", worst <= 1e-10);
  }

  std::printf("selftest: %d/%d checks passed\n", checks - failed, checks);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    validate_common(cfg);
    if (cfg.command == "expand") return cmd_expand(cfg);
    if (cfg.command == "green") return cmd_green(cfg);
    if (cfg.command == "robin") return cmd_robin(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "selftest") return cmd_selftest(cfg);
    throw ConfigFailure("unknown command \"" + cfg.command +
                        "\" (expand, green, robin, verify, selftest)");
  } catch (const ConfigFailure& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace greenexp
