#include "greenexp/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "greenexp/coefficient.hpp"
#include "greenexp/config_parse.hpp"
#include "greenexp/fd_operator.hpp"
#include "greenexp/graded.hpp"
#include "greenexp/grid.hpp"
#include "greenexp/laplace_inverse.hpp"
#include "greenexp/oracles.hpp"
#include "greenexp/parametrix.hpp"
#include "greenexp/presets.hpp"
#include "greenexp/probes.hpp"
#include "greenexp/remainder.hpp"
#include "greenexp/spaces.hpp"
#include "greenexp/transform.hpp"

namespace greenexp {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

double max_abs_coeff(const GradedFunction<double>& f) {
  double m = 0;
  for (const auto& t : f.terms()) m = std::max(m, std::abs(t.coeff));
  return m;
}

// ---------------------------------------------------------------------------
// Random graded inputs shared by the inverse-identity and classification runs.

struct RandomCase {
  int n = 2;
  int m = 0;
  int k = 1;
  bool pure_singular = true;  // no polynomial and no log content mixed in
  GradedFunction<Rational> f{2};
};

Rational random_coeff(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  int a = num(rng);
  if (a == 0) a = 1;
  return Rational(a, den(rng));
}

MultiIndex random_alpha(std::mt19937& rng, int n, int order) {
  std::vector<int> parts(static_cast<std::size_t>(n), 0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int i = 0; i < order; ++i) parts[static_cast<std::size_t>(pick(rng))]++;
  return MultiIndex(parts);
}

RandomCase random_case(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> kd(1, 5), md(0, 2), cnt(1, 4);
  RandomCase rc;
  rc.n = n;
  rc.k = kd(rng);
  rc.m = md(rng);
  rc.f = GradedFunction<Rational>::zero(n);

  // Singular stratum: radial exponent n + 2m - 2t, order k + 2m - 2t.
  const int terms = cnt(rng);
  std::uniform_int_distribution<int> td(0, rc.m);
  for (int i = 0; i < terms; ++i) {
    const int t = td(rng);
    rc.f += GradedFunction<Rational>::single(n, random_coeff(rng),
                                             random_alpha(rng, n, rc.k + 2 * rc.m - 2 * t),
                                             n + 2 * rc.m - 2 * t, 0);
  }

  // Even dimension at or above the polynomial threshold: log content.
  if (n % 2 == 0 && rc.k >= n && (rng() & 1u) != 0) {
    const int budget = rc.k - n;
    for (int t = 0; 2 * t <= budget; ++t) {
      if ((rng() & 1u) != 0 && t > 0) continue;
      rc.f += GradedFunction<Rational>::single(n, random_coeff(rng),
                                               random_alpha(rng, n, budget - 2 * t), -2 * t, 1);
      rc.pure_singular = false;
    }
  }

  // Occasionally a plain polynomial chunk.
  if (rng() % 3 == 0) {
    std::uniform_int_distribution<int> dd(0, 2);
    rc.f += GradedFunction<Rational>::monomial(n, random_coeff(rng),
                                               random_alpha(rng, n, dd(rng)));
    rc.pure_singular = false;
  }
  return rc;
}

std::vector<RandomCase> inverse_cases() {
  std::mt19937 rng(8811);
  std::vector<RandomCase> cases;
  cases.reserve(1000);
  for (int i = 0; i < 1000; ++i) cases.push_back(random_case(rng, 2 + i % 4));
  return cases;
}

// ---------------------------------------------------------------------------
// Criterion bodies. Each returns pass/fail plus a short deterministic detail.

struct Outcome {
  bool passed = false;
  std::string detail;
};

Outcome criterion_inverse_identity() {
  const auto cases = inverse_cases();
  int failures = 0;
  for (const auto& rc : cases) {
    const auto g = solve_graded(rc.f);
    if (!(laplacian(g) == rc.f)) ++failures;
  }
  Outcome out;
  out.passed = failures == 0;
  out.detail = std::to_string(cases.size()) + " random inputs over n=2..5, " +
               (failures == 0 ? std::string("all inverted exactly")
                              : std::to_string(failures) + " exact mismatches");
  return out;
}

Outcome criterion_classification() {
  const auto cases = inverse_cases();
  int bad_input = 0, bad_output = 0;
  for (const auto& rc : cases) {
    const bool strict = rc.pure_singular && rc.n % 2 == 1;
    const SpaceTag in_tag(rc.n, rc.m, rc.k,
                          strict ? SpaceFamily::E_singular : SpaceFamily::E_tilde);
    const SpaceTag out_tag(rc.n, rc.m + 1, rc.k + 2,
                           strict ? SpaceFamily::E_singular : SpaceFamily::E_tilde);
    if (!classify(rc.f, in_tag)) ++bad_input;
    if (!classify(solve_graded(rc.f), out_tag)) ++bad_output;
  }
  Outcome out;
  out.passed = bad_input == 0 && bad_output == 0;
  out.detail = std::to_string(cases.size()) + " solves, " +
               (out.passed ? std::string("every output lands in its promised space")
                           : std::to_string(bad_input) + " input / " +
                                 std::to_string(bad_output) + " output escapes");
  return out;
}

Outcome criterion_conjugation() {
  std::mt19937 rng(1733);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  double worst = 0;
  for (int c = 0; c < 100; ++c) {
    const int n = 2 + c % 2;
    SquareMatrix<double> a(n), k0(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = ud(rng);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = i == j ? 0.3 : 0.0;
        for (int l = 0; l < n; ++l) s += a(l, i) * a(l, j);
        k0(i, j) = s;
      }
    const auto tr = spd_inverse_sqrt(k0);
    const auto g = random_case(rng, n).f.cast<double>();

    GradedFunction<double> pulled = GradedFunction<double>::zero(n);
    for (int i = 0; i < n; ++i) {
      const auto gi = partial_in_x(i, g, tr.forward);
      for (int j = 0; j < n; ++j)
        pulled += partial_in_x(j, gi, tr.forward).scaled(k0(i, j));
    }
    const auto lap = laplacian(g);
    const auto diff = pulled - lap;
    const double scale = std::max({1.0, max_abs_coeff(lap), max_abs_coeff(pulled)});
    worst = std::max(worst, max_abs_coeff(diff) / scale);
  }
  Outcome out;
  out.passed = worst <= 1e-10;
  out.detail = "100 random frames, worst relative coefficient defect " + fmt(worst);
  return out;
}

Outcome criterion_parametrix() {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  out.passed = true;
  std::string notes;
  for (const std::string name :
       {"anisotropic-linear", "anisotropic-linear-3d", "diagonal-quadratic"}) {
    const auto spec = preset(name);
    const int n = spec.K.dimension();
    for (int l = 0; l <= 2; ++l) {
      const auto res =
          build_expansion<Rational>(spec.K, std::vector<Rational>(static_cast<std::size_t>(n)), l);
      if (!res.residual.is_zero() && res.residual.min_homogeneity() < l) {
        out.passed = false;
        notes += " " + name + "/l=" + std::to_string(l) + ": low residual term;";
      }
      if (l >= 1 && name != "diagonal-quadratic") {
        GradedFunction<Rational> expect =
            n == 2 ? GradedFunction<Rational>::single(2, Rational(1, 2), MultiIndex({1, 0}), 0, 1)
                   : GradedFunction<Rational>::single(3, Rational(-1, 2), MultiIndex({1, 0, 0}), 1,
                                                      0);
        bool found = false;
        for (const auto& g : res.groups)
          if (g.index == 1) found = g.phi == expect;
        if (!found) {
          out.passed = false;
          notes += " " + name + "/l=" + std::to_string(l) + ": first correction off;";
        }
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > 10.0) {
    out.passed = false;
    notes += " over the 10 s budget;";
  }
  out.detail = out.passed
                   ? "3 presets x l=0..2: residual graded, first corrections exact"
                   : "defects:" + notes;
  return out;
}

Outcome criterion_disk_images() {
  const auto spec = preset("identity");
  const auto grid = Grid::build(spec.domain, 257);
  const DivergenceOperator op(spec.K, grid);
  const double h = grid->h();
  Outcome out;
  out.passed = true;
  std::string parts;
  for (const std::vector<double> y : {std::vector<double>{0.0, 0.0},
                                      std::vector<double>{0.3, 0.0},
                                      std::vector<double>{0.4, 0.4}}) {
    const auto exp = build_expansion<double>(spec.K, y, 1);
    const auto rem = remainder_solve(op, exp);
    const auto g = green_reconstruct(exp, rem);
    double max_diff = 0, max_oracle = 0;
    for (int j = 0; j < grid->ny(); ++j)
      for (int i = 0; i < grid->nx(); ++i) {
        if (grid->kind(i, j) != NodeKind::interior) continue;
        const double dx = grid->x_of(i) - y[0], dy = grid->y_of(j) - y[1];
        if (std::sqrt(dx * dx + dy * dy) <= 4 * h) continue;
        const double oracle = disk_green_oracle({grid->x_of(i), grid->y_of(j)}, y);
        max_diff = std::max(max_diff, std::abs(g.at(i, j) - oracle));
        max_oracle = std::max(max_oracle, std::abs(oracle));
      }
    const double rel = max_diff / max_oracle;
    if (rel > 1e-3) out.passed = false;
    if (!parts.empty()) parts += ", ";
    parts += "y=(" + fmt(y[0]) + "," + fmt(y[1]) + "): " + fmt(rel);
  }
  out.detail = "relative error vs reflection formula " + parts;
  return out;
}

Outcome criterion_disk_robin() {
  const auto spec = preset("identity");
  const auto grid = Grid::build(spec.domain, 257);
  const DivergenceOperator op(spec.K, grid);
  std::vector<std::vector<double>> pts;
  for (const auto& p : square_lattice(-0.625, 0.15625, 9))
    if (std::hypot(p[0], p[1]) <= 0.7 + 1e-12) pts.push_back(p);
  const auto samples = robin_scan(spec.K, op, pts, 1);
  double worst = 0;
  for (const auto& s : samples)
    worst = std::max(worst, std::abs(s.value - disk_robin_oracle(s.y)));
  Outcome out;
  out.passed = worst <= 2e-3;
  out.detail = std::to_string(samples.size()) +
               " base points with |y| <= 0.7, worst Robin error " + fmt(worst);
  return out;
}

Outcome criterion_transform_equivalence() {
  const auto sq = parse_spec_text(
      "name = square-diag\ndimension = 2\ndomain = unit-square\nK11 = 4\nK22 = 1\n");
  const auto rect = parse_spec_text(
      "name = rect-identity\ndimension = 2\ndomain = box 0,0 0.5,1\n");
  const auto gsq = Grid::build(sq.domain, 257);
  const auto grect = Grid::build(rect.domain, 513);
  const DivergenceOperator osq(sq.K, gsq), orect(rect.K, grect);

  const auto exp_sq = build_expansion<double>(sq.K, {0.5, 0.5}, 1);
  const auto gd = green_reconstruct(exp_sq, remainder_solve(osq, exp_sq));
  const auto exp_rect = build_expansion<double>(rect.K, {0.25, 0.5}, 1);
  const auto gr = green_reconstruct(exp_rect, remainder_solve(orect, exp_rect));
  const double h = gsq->h();
  double worst = 0;
  for (int j = 0; j < gsq->ny(); ++j)
    for (int i = 0; i < gsq->nx(); ++i) {
      if (gsq->kind(i, j) != NodeKind::interior) continue;
      const double dx = gsq->x_of(i) - 0.5, dy = gsq->y_of(j) - 0.5;
      if (std::sqrt(dx * dx + dy * dy) <= 4 * h) continue;
      worst = std::max(worst, std::abs(gd.at(i, j) - 0.5 * gr.at(i, 2 * j)));
    }
  Outcome out;
  out.passed = worst <= 1e-3;
  out.detail = "direct vs pulled-back Laplace solve, max discrepancy " + fmt(worst);
  return out;
}

Outcome criterion_truncation_benefit() {
  const auto spec = preset("anisotropic-linear");
  const auto grid = Grid::build(spec.domain, 257);
  const DivergenceOperator op(spec.K, grid);
  const auto gd = delta_green(op, {0.0, 0.0});
  const auto exp = build_expansion<double>(spec.K, {0.0, 0.0}, 2);
  const double h = grid->h();

  std::vector<double> osc;
  for (int l = 0; l <= 2; ++l) {
    ExpansionEvaluator ev;
    ev.n = 2;
    ev.y = {0.0, 0.0};
    ev.forward = exp.transform.forward;
    ev.total = truncated_total(exp, exp.n + l - 2);
    ev.unit = exp.unit.to_double();

    auto d = make_field(grid, "defect");
    for (int j = 0; j < grid->ny(); ++j)
      for (int i = 0; i < grid->nx(); ++i)
        if (grid->kind(i, j) == NodeKind::interior)
          d.values[static_cast<std::size_t>(grid->index(i, j))] =
              gd.at(i, j) - ev({grid->x_of(i), grid->y_of(j)});
    osc.push_back(annulus_oscillation(d, {0.0, 0.0}, 4 * h, 0.05).oscillation);
  }
  Outcome out;
  out.passed = osc[0] > osc[1] && osc[1] > osc[2];
  out.detail = "defect oscillation on (4h, 0.05]: l=0: " + fmt(osc[0]) +
               ", l=1: " + fmt(osc[1]) + ", l=2: " + fmt(osc[2]);
  return out;
}

Outcome criterion_robin_richardson() {
  const auto spec = preset("diagonal-quadratic");
  const auto pts = square_lattice(-0.625, 0.15625, 9);
  std::vector<std::vector<double>> d2;
  for (const int res : {129, 257}) {
    const auto grid = Grid::build(spec.domain, res);
    const DivergenceOperator op(spec.K, grid);
    const auto samples = robin_scan(spec.K, op, pts, 1);
    std::vector<double> values;
    values.reserve(samples.size());
    for (const auto& s : samples) values.push_back(s.value);
    d2.push_back(lattice_second_differences(values, 9, 0.15625));
  }
  double err = 0, scale = 0;
  for (std::size_t i = 0; i < d2[1].size(); ++i) {
    err = std::max(err, std::abs(d2[0][i] - d2[1][i]));
    scale = std::max(scale, std::abs(d2[1][i]));
  }
  Outcome out;
  out.passed = err <= 0.2 * scale;
  out.detail = "second differences at 129 vs 257: max drift " + fmt(err) +
               " against scale " + fmt(scale);
  return out;
}

Outcome criterion_symmetry() {
  const auto spec = preset("diagonal-quadratic");
  const auto grid = Grid::build(spec.domain, 257);
  const DivergenceOperator op(spec.K, grid);

  std::mt19937 rng(4127);
  std::uniform_int_distribution<int> id(0, 256);
  auto draw = [&]() {
    for (;;) {
      const int i = id(rng), j = id(rng);
      if (grid->kind(i, j) != NodeKind::interior) continue;
      const std::vector<double> p{grid->x_of(i), grid->y_of(j)};
      if (boundary_distance(spec.domain, p) < 0.15) continue;
      return std::pair<std::pair<int, int>, std::vector<double>>({i, j}, p);
    }
  };

  auto green_at = [&](const std::vector<double>& y, int i, int j) {
    const auto exp = build_expansion<double>(spec.K, y, 1);
    const auto rem = remainder_solve(op, exp);
    return green_reconstruct(exp, rem).at(i, j);
  };

  double worst = 0;
  for (int c = 0; c < 20; ++c) {
    auto a = draw();
    auto b = draw();
    while (std::hypot(a.second[0] - b.second[0], a.second[1] - b.second[1]) < 0.2) b = draw();
    const double gab = green_at(a.second, b.first.first, b.first.second);
    const double gba = green_at(b.second, a.first.first, a.first.second);
    worst = std::max(worst, std::abs(gab - gba));
  }
  Outcome out;
  out.passed = worst <= 1e-3;
  out.detail = "20 random pairs, worst |G(x,y) - G(y,x)| = " + fmt(worst);
  return out;
}

struct Entry {
  const char* name;
  Outcome (*fn)();
};

const std::map<int, Entry>& registry() {
  static const std::map<int, Entry> reg{
      {1, {"exact inverse of the Laplacian on graded functions", criterion_inverse_identity}},
      {2, {"graded-space classification of solve outputs", criterion_classification}},
      {3, {"frozen-frame conjugation identity", criterion_conjugation}},
      {4, {"parametrix residual grading and first corrections", criterion_parametrix}},
      {5, {"disk Green's function against the reflection oracle", criterion_disk_images}},
      {6, {"Robin's function against the disk oracle", criterion_disk_robin}},
      {7, {"constant-coefficient change of variables equivalence", criterion_transform_equivalence}},
      {8, {"expansion truncation benefit near the pole", criterion_truncation_benefit}},
      {9, {"Robin curvature consistency under grid refinement", criterion_robin_richardson}},
      {10, {"symmetry of the reconstructed Green's function", criterion_symmetry}},
  };
  return reg;
}

}  // namespace

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  if (suite == "symbolic") return {1, 2, 3, 4};
  if (suite == "numeric") return {5, 6, 7, 8, 9, 10};
  if (suite == "disk-identity") return {5, 6};
  throw std::invalid_argument("unknown suite \"" + suite +
                              "\" (available: all, symbolic, numeric, disk-identity)");
}

CriterionResult run_criterion(int id) {
  const auto it = registry().find(id);
  if (it == registry().end())
    throw std::invalid_argument("unknown criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = it->second.name;
  const auto start = std::chrono::steady_clock::now();
  const Outcome o = it->second.fn();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = o.passed;
  r.detail = o.detail;
  return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite, std::ostream& log) {
  std::vector<CriterionResult> results;
  for (const int id : suite_criteria(suite)) {
    auto r = run_criterion(id);
    std::ostringstream line;
    line << '[' << std::setw(2) << r.id << "] " << (r.passed ? "PASS" : "FAIL") << "  " << r.name
         << " — " << r.detail << "  (" << std::fixed << std::setprecision(2) << r.seconds
         << " s)";
    log << line.str() << '\n';
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace greenexp
