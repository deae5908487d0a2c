#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "greenexp/coefficient.hpp"

namespace greenexp {

enum class NodeKind : std::uint8_t { exterior = 0, interior = 1, boundary = 2 };

// Uniform two-dimensional lattice over the domain's bounding box. Interior
// nodes carry unknowns; boundary nodes hold Dirichlet data. For the disk the
// boundary is not node-aligned: links leaving the domain are cut at the
// circle, and theta() reports the fraction of the link inside.
class Grid {
public:
  // resolution = node count along the longest bounding-box side; the box
  // extents must be commensurate with the resulting spacing.
  static std::shared_ptr<const Grid> build(const Domain& dom, int resolution);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  const Domain& domain() const { return domain_; }

  int index(int i, int j) const { return j * nx_ + i; }
  double x_of(int i) const { return x0_ + i * h_; }
  double y_of(int j) const { return y0_ + j * h_; }

  NodeKind kind(int i, int j) const { return kind_[index(i, j)]; }
  bool is_interior(int i, int j) const {
    return i >= 0 && i < nx_ && j >= 0 && j < ny_ && kind(i, j) == NodeKind::interior;
  }

  int unknown(int i, int j) const { return unknown_[index(i, j)]; }
  int unknown_count() const { return unknown_count_; }
  std::pair<int, int> node_of_unknown(int u) const { return nodes_[u]; }

  std::pair<int, int> nearest_node(double x, double y) const;

  // Fraction in (0,1] of the link from interior node (i,j) toward
  // (i+dx, j+dy) that lies inside the domain; 1 for links between nodes of
  // the closure. Clamped below to keep the ghost weights bounded.
  double theta(int i, int j, int dx, int dy) const;

  // Endpoint of the (possibly cut) link: the Dirichlet point used when the
  // neighbor is not an unknown.
  std::pair<double, double> link_boundary_point(int i, int j, int dx, int dy) const;

private:
  Grid() = default;

  int nx_ = 0, ny_ = 0;
  double h_ = 0, x0_ = 0, y0_ = 0;
  Domain domain_;
  std::vector<NodeKind> kind_;
  std::vector<int> unknown_;
  std::vector<std::pair<int, int>> nodes_;
  int unknown_count_ = 0;
};

// Values over a grid's nodes (exterior slots zero), with a label and the base
// point the field refers to, when any.
struct GridField {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
  std::string label;
  std::vector<double> base_point;

  double at(int i, int j) const { return values[grid->index(i, j)]; }
  double& at(int i, int j) { return values[grid->index(i, j)]; }
  bool finite_on_domain() const;
};

GridField make_field(std::shared_ptr<const Grid> grid, std::string label);

}  // namespace greenexp
