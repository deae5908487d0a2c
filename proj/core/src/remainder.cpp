#include "greenexp/remainder.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace greenexp {

namespace {

ExpansionEvaluator with_function(const ExpansionResult<double>& exp, GradedFunction<double> f) {
  ExpansionEvaluator ev = make_evaluator(exp);
  ev.total = std::move(f);
  return ev;
}

std::pair<int, int> base_node(const Grid& grid, const std::vector<double>& y) {
  auto [pi, pj] = grid.nearest_node(y[0], y[1]);
  if (grid.kind(pi, pj) != NodeKind::interior)
    throw std::invalid_argument("base point does not map to an interior grid node");
  return {pi, pj};
}

}  // namespace

double boundary_distance(const Domain& dom, const std::vector<double>& x) {
  if (dom.kind == Domain::Kind::unit_disk) {
    double r2 = 0;
    for (double v : x) r2 += v * v;
    return 1.0 - std::sqrt(r2);
  }
  auto lo = dom.box_lo();
  auto hi = dom.box_hi();
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    d = std::min({d, x[i] - lo[i], hi[i] - x[i]});
  return d;
}

RemainderResult remainder_solve(const DivergenceOperator& op, const ExpansionResult<double>& exp,
                                SolveMethod method, double rel_tol) {
  const Grid& grid = op.grid();
  if (exp.n != 2) throw std::invalid_argument("remainder solve requires a planar expansion");
  if (boundary_distance(grid.domain(), exp.y) < 4.0 * grid.h())
    throw std::invalid_argument("base point must lie at least 4h inside the boundary");

  const auto rho = with_function(exp, exp.residual);
  const auto total = make_evaluator(exp);
  auto [pi, pj] = base_node(grid, exp.y);

  std::vector<double> f(grid.unknown_count());
  for (int r = 0; r < grid.unknown_count(); ++r) {
    auto [i, j] = grid.node_of_unknown(r);
    f[r] = rho({grid.x_of(i), grid.y_of(j)});
  }
  // The residual blows up only at the base point: its node takes the average
  // of the four axis neighbors instead.
  {
    const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    double acc = 0;
    for (auto [dx, dy] : dirs) acc += rho({grid.x_of(pi + dx), grid.y_of(pj + dy)});
    f[grid.unknown(pi, pj)] = 0.25 * acc;
  }

  RemainderResult out;
  out.w = op.solve(
      f, [&](double bx, double by) { return -total({bx, by}); }, method, rel_tol, &out.report);
  out.w.label = "remainder";
  out.w.base_point = exp.y;
  out.smooth_origin = exp.unit.to_double() * smooth_part_at_origin(exp);
  out.regular_at_base = out.smooth_origin + out.w.at(pi, pj);
  out.robin = -out.regular_at_base;
  return out;
}

GridField delta_green(const DivergenceOperator& op, const std::vector<double>& y,
                      SolveMethod method, double rel_tol, SolveReport* report) {
  const Grid& grid = op.grid();
  auto [pi, pj] = base_node(grid, y);
  std::vector<double> f(grid.unknown_count(), 0.0);
  f[grid.unknown(pi, pj)] = 1.0 / (grid.h() * grid.h());
  GridField g = op.solve(
      f, [](double, double) { return 0.0; }, method, rel_tol, report);
  g.label = "lattice-green";
  g.base_point = y;
  return g;
}

GridField green_reconstruct(const ExpansionResult<double>& exp, const RemainderResult& rem) {
  const auto& grid = *rem.w.grid;
  const auto total = make_evaluator(exp);
  GridField g = make_field(rem.w.grid, "green");
  g.base_point = exp.y;
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      if (grid.kind(i, j) == NodeKind::exterior) continue;
      g.at(i, j) = total({grid.x_of(i), grid.y_of(j)}) + rem.w.at(i, j);
    }
  auto [pi, pj] = base_node(grid, exp.y);
  g.at(pi, pj) = 0.25 * (g.at(pi + 1, pj) + g.at(pi - 1, pj) + g.at(pi, pj + 1) + g.at(pi, pj - 1));
  return g;
}

std::vector<RobinSample> robin_scan(const CoefficientField& K, const DivergenceOperator& op,
                                    const std::vector<std::vector<double>>& points, int order) {
  std::vector<RobinSample> out;
  out.reserve(points.size());
  for (const auto& y : points) {
    const auto exp = build_expansion<double>(K, y, order);
    const auto rem = remainder_solve(op, exp, SolveMethod::direct);
    out.push_back({y, rem.robin, rem.regular_at_base});
  }
  return out;
}

ConstantEquivalence constant_coefficient_equivalence(const ProblemSpec& spec,
                                                     const std::vector<double>& y,
                                                     int resolution) {
  const auto& K = spec.K;
  if (K.dimension() != 2 || !K.is_constant())
    throw std::invalid_argument("constant_coefficient_equivalence: constant 2-D K required");
  if (spec.domain.kind == Domain::Kind::unit_disk)
    throw std::invalid_argument("constant_coefficient_equivalence: box domain required");
  const auto k0 = K.eval(std::vector<double>(2, 0.0));
  if (k0(0, 1) != 0.0)
    throw std::invalid_argument("constant_coefficient_equivalence: diagonal K required");

  const auto grid = Grid::build(spec.domain, resolution);
  const double h = grid->h();
  const double s1 = 1.0 / std::sqrt(k0(0, 0)), s2 = 1.0 / std::sqrt(k0(1, 1));

  // Transformed box T(domain) with T = diag(s1, s2); its lattice must contain
  // the image of every direct-grid node.
  const auto lo = spec.domain.box_lo(), hi = spec.domain.box_hi();
  const std::vector<double> tlo{s1 * lo[0], s2 * lo[1]}, thi{s1 * hi[0], s2 * hi[1]};
  const double ht = h * std::min(s1, s2);
  const double m1 = h * s1 / ht, m2 = h * s2 / ht;
  if (std::abs(m1 - std::round(m1)) > 1e-9 || std::abs(m2 - std::round(m2)) > 1e-9)
    throw std::invalid_argument(
        "constant_coefficient_equivalence: axis scale ratios are not commensurate");
  const int f1 = static_cast<int>(std::round(m1)), f2 = static_cast<int>(std::round(m2));
  const double span = std::max(thi[0] - tlo[0], thi[1] - tlo[1]);
  const int tres = static_cast<int>(std::round(span / ht)) + 1;

  auto pipeline = [](const ProblemSpec& sp, const std::shared_ptr<const Grid>& g,
                     const std::vector<double>& base) {
    const DivergenceOperator op(sp.K, g);
    const auto exp = build_expansion<double>(sp.K, base, 0);
    return green_reconstruct(exp, remainder_solve(op, exp));
  };

  ConstantEquivalence out{pipeline(spec, grid, y), 0.0};

  ProblemSpec lap;
  lap.name = spec.name + "-transformed";
  lap.K = CoefficientField::identity(2);
  lap.domain = Domain::make_box(tlo, thi);
  const std::vector<double> ty{s1 * y[0], s2 * y[1]};
  const auto tfield = pipeline(lap, Grid::build(lap.domain, tres), ty);

  const double det = s1 * s2;
  for (int j = 0; j < grid->ny(); ++j)
    for (int i = 0; i < grid->nx(); ++i) {
      if (grid->kind(i, j) != NodeKind::interior) continue;
      const double dx = grid->x_of(i) - y[0], dy = grid->y_of(j) - y[1];
      if (std::sqrt(dx * dx + dy * dy) <= 4 * h) continue;
      out.max_discrepancy = std::max(
          out.max_discrepancy, std::abs(out.direct.at(i, j) - det * tfield.at(f1 * i, f2 * j)));
    }
  return out;
}

}  // namespace greenexp
