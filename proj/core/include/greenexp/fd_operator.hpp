#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "greenexp/coefficient.hpp"
#include "greenexp/grid.hpp"

namespace greenexp {

enum class SolveMethod { cg, direct };

struct SolveReport {
  std::string method;
  int iterations = 0;
  double relative_residual = 0.0;
  double seconds = 0.0;
  bool converged = false;
};

// Flux-form discretization of u -> -div(K grad u) with Dirichlet data on the
// true boundary. Diagonal entries of K use face averages on the axis links;
// the off-diagonal entry is carried by the two lattice diagonals, which keeps
// the matrix symmetric. Boundary couplings are stored separately so one
// assembly serves many Dirichlet data sets.
class DivergenceOperator {
public:
  using BoundaryData = std::function<double(double, double)>;

  DivergenceOperator(const CoefficientField& K, std::shared_ptr<const Grid> grid);

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  int unknowns() const { return grid_->unknown_count(); }
  const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }

  // Load vector for interior-node samples f plus the boundary contribution of g.
  Eigen::VectorXd assemble_rhs(const std::vector<double>& f, const BoundaryData& g) const;

  // Solves A u = rhs; the returned field holds the solution at interior nodes
  // and g evaluated at boundary nodes. rel_tol applies to the cg path.
  GridField solve(const std::vector<double>& f, const BoundaryData& g, SolveMethod method,
                  double rel_tol = 1e-10, SolveReport* report = nullptr) const;

private:
  struct BoundaryLink {
    int row;
    double weight;
    double bx, by;
  };

  GridField wrap_solution(const Eigen::VectorXd& u, const BoundaryData& g) const;

  std::shared_ptr<const Grid> grid_;
  Eigen::SparseMatrix<double> matrix_;
  std::vector<BoundaryLink> boundary_links_;
  mutable std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt_;
};

}  // namespace greenexp
