#pragma once

#include <vector>

#include "greenexp/fd_operator.hpp"
#include "greenexp/parametrix.hpp"

namespace greenexp {

// Output of one numeric remainder solve against a truncated expansion:
// -div(K grad w) = residual of the expansion, w = -S on the boundary, so that
// G = S + w and the regular part at the diagonal is smooth part + w.
struct RemainderResult {
  GridField w;
  SolveReport report;
  double smooth_origin = 0;    // expansion's polynomial part at the base point
  double regular_at_base = 0;  // H(y, y)
  double robin = 0;            // -H(y, y)
};

// The operator must be assembled for the same coefficient field on a grid of
// the expansion's domain; the base point must sit at least 4h inside.
RemainderResult remainder_solve(const DivergenceOperator& op, const ExpansionResult<double>& exp,
                                SolveMethod method = SolveMethod::direct, double rel_tol = 1e-10);

// Lattice Green field: solves with a discrete delta load (1/h^2 at the node
// nearest y) and zero boundary data.
GridField delta_green(const DivergenceOperator& op, const std::vector<double>& y,
                      SolveMethod method = SolveMethod::direct, double rel_tol = 1e-10,
                      SolveReport* report = nullptr);

// G = S + w on the closure; the node nearest the base point is replaced by
// the average of its axis neighbors (S is singular there).
GridField green_reconstruct(const ExpansionResult<double>& exp, const RemainderResult& rem);

struct RobinSample {
  std::vector<double> y;
  double value = 0;    // R_K(y)
  double regular = 0;  // H(y, y)
};

// Robin's function over a set of base points. One assembly and one
// factorization serve the whole scan; only the load and boundary data change
// per point.
std::vector<RobinSample> robin_scan(const CoefficientField& K, const DivergenceOperator& op,
                                    const std::vector<std::vector<double>>& points, int order);

// Shortest distance from x to the domain boundary (nonnegative inside).
double boundary_distance(const Domain& dom, const std::vector<double>& x);

// Constant-coefficient equivalence probe: G for a constant diagonal SPD K on
// a box domain computed two ways — the direct pipeline, and the Laplace
// problem on the transformed box pulled back with the determinant factor.
// Requires the two lattices to share mapped nodes (axis scale ratios
// commensurate with the grid); discrepancy is the max over direct-grid
// interior nodes farther than 4h from the base point.
struct ConstantEquivalence {
  GridField direct;
  double max_discrepancy = 0;
};
ConstantEquivalence constant_coefficient_equivalence(const ProblemSpec& spec,
                                                     const std::vector<double>& y, int resolution);

}  // namespace greenexp
