#include "greenexp/fd_operator.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace greenexp {

namespace {

using Triplet = Eigen::Triplet<double>;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

DivergenceOperator::DivergenceOperator(const CoefficientField& K,
                                       std::shared_ptr<const Grid> grid)
    : grid_(std::move(grid)) {
  if (K.dimension() != 2)
    throw std::invalid_argument("assembled operator requires a two-dimensional coefficient");
  const Grid& g = *grid_;
  const double h = g.h();
  const double inv_h2 = 1.0 / (h * h);
  const bool mixed = !K.entry(0, 1).is_zero();

  const int n = g.unknown_count();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * (mixed ? 9 : 5));

  // Node samples of the coefficient entries over the whole lattice (the
  // polynomial entries extend past a curved boundary); face values are the
  // arithmetic mean of the two face-adjacent node values.
  const std::size_t lattice = static_cast<std::size_t>(g.nx()) * g.ny();
  std::vector<double> k11(lattice), k22(lattice), k12(mixed ? lattice : 0);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const std::vector<double> p = {g.x_of(i), g.y_of(j)};
      k11[g.index(i, j)] = K.entry(0, 0).eval(p);
      k22[g.index(i, j)] = K.entry(1, 1).eval(p);
      if (mixed) k12[g.index(i, j)] = K.entry(0, 1).eval(p);
    }

  for (int row = 0; row < n; ++row) {
    auto [i, j] = g.node_of_unknown(row);
    double diag = 0.0;

    // Axis links: K11 across x-faces, K22 across y-faces.
    const int axis_dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (auto [dx, dy] : axis_dirs) {
      const double theta = g.theta(i, j, dx, dy);
      const auto& entry = (dx != 0) ? k11 : k22;
      const double k = 0.5 * (entry[g.index(i, j)] + entry[g.index(i + dx, j + dy)]);
      const double w = k * inv_h2 / theta;
      diag += w;
      if (g.is_interior(i + dx, j + dy)) {
        triplets.emplace_back(row, g.unknown(i + dx, j + dy), -w);
      } else {
        auto [bx, by] = g.link_boundary_point(i, j, dx, dy);
        boundary_links_.push_back({row, w, bx, by});
      }
    }

    // Off-diagonal entry via the rotated pair of lattice diagonals: the
    // mixed part of the operator splits into a difference of one-dimensional
    // flux terms along (1,1) and (1,-1), each with spacing sqrt(2) h.
    if (mixed) {
      const double inv_s2 = 0.5 * inv_h2;  // 1/(sqrt(2) h)^2
      const int diag_dirs[4][3] = {{1, 1, +1}, {-1, -1, +1}, {1, -1, -1}, {-1, 1, -1}};
      for (auto [dx, dy, sign] : diag_dirs) {
        const double theta = g.theta(i, j, dx, dy);
        const double k = 0.5 * (k12[g.index(i, j)] + k12[g.index(i + dx, j + dy)]);
        const double w = sign * k * inv_s2 / theta;
        diag += w;
        if (g.is_interior(i + dx, j + dy)) {
          triplets.emplace_back(row, g.unknown(i + dx, j + dy), -w);
        } else {
          auto [bx, by] = g.link_boundary_point(i, j, dx, dy);
          boundary_links_.push_back({row, w, bx, by});
        }
      }
    }

    triplets.emplace_back(row, row, diag);
  }

  matrix_.resize(n, n);
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  matrix_.makeCompressed();
}

Eigen::VectorXd DivergenceOperator::assemble_rhs(const std::vector<double>& f,
                                                 const BoundaryData& g) const {
  if (static_cast<int>(f.size()) != unknowns())
    throw std::invalid_argument("load vector size does not match the unknown count");
  Eigen::VectorXd rhs(unknowns());
  for (int r = 0; r < unknowns(); ++r) rhs[r] = f[r];
  for (const auto& link : boundary_links_) rhs[link.row] += link.weight * g(link.bx, link.by);
  return rhs;
}

GridField DivergenceOperator::wrap_solution(const Eigen::VectorXd& u,
                                            const BoundaryData& g) const {
  GridField out = make_field(grid_, "solution");
  const Grid& gr = *grid_;
  for (int r = 0; r < unknowns(); ++r) {
    auto [i, j] = gr.node_of_unknown(r);
    out.at(i, j) = u[r];
  }
  for (int j = 0; j < gr.ny(); ++j)
    for (int i = 0; i < gr.nx(); ++i)
      if (gr.kind(i, j) == NodeKind::boundary) out.at(i, j) = g(gr.x_of(i), gr.y_of(j));
  return out;
}

GridField DivergenceOperator::solve(const std::vector<double>& f, const BoundaryData& g,
                                    SolveMethod method, double rel_tol,
                                    SolveReport* report) const {
  const Eigen::VectorXd rhs = assemble_rhs(f, g);
  const double t0 = now_seconds();
  Eigen::VectorXd u;
  SolveReport rep;
  if (method == SolveMethod::cg) {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(rel_tol);
    cg.setMaxIterations(40000);
    cg.compute(matrix_);
    u = cg.solve(rhs);
    rep.method = "cg";
    rep.iterations = static_cast<int>(cg.iterations());
    rep.relative_residual = cg.error();
    rep.converged = cg.info() == Eigen::Success;
  } else {
    if (!ldlt_) {
      ldlt_ = std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
      ldlt_->compute(matrix_);
      if (ldlt_->info() != Eigen::Success)
        throw std::runtime_error("sparse factorization of the assembled operator failed");
    }
    u = ldlt_->solve(rhs);
    rep.method = "direct";
    const double rhs_norm = rhs.norm();
    rep.relative_residual =
        rhs_norm > 0 ? (matrix_ * u - rhs).norm() / rhs_norm : (matrix_ * u).norm();
    rep.converged = ldlt_->info() == Eigen::Success;
  }
  rep.seconds = now_seconds() - t0;
  if (!rep.converged)
    throw std::runtime_error("linear solve did not converge (method " + rep.method + ", residual " +
                             std::to_string(rep.relative_residual) + ")");
  if (report) *report = rep;
  return wrap_solution(u, g);
}

}  // namespace greenexp
