#include "greenexp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace greenexp {

namespace {

constexpr double kInsideTolerance = 1e-12;
constexpr double kThetaFloor = 1e-2;

bool inside_disk(double x, double y) { return x * x + y * y < 1.0 - kInsideTolerance; }

}  // namespace

std::shared_ptr<const Grid> Grid::build(const Domain& dom, int resolution) {
  if (dom.n != 2)
    throw std::invalid_argument("grid numerics are two-dimensional; got dimension " +
                                std::to_string(dom.n));
  if (resolution < 9) throw std::invalid_argument("grid resolution must be at least 9 nodes");

  auto lo = dom.box_lo();
  auto hi = dom.box_hi();
  const double ext_x = hi[0] - lo[0];
  const double ext_y = hi[1] - lo[1];
  const double longest = std::max(ext_x, ext_y);
  const double h = longest / (resolution - 1);

  auto node_count = [&](double extent) {
    const double cells = extent / h;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
      throw std::invalid_argument("box extents are not commensurate with the grid spacing");
    return static_cast<int>(rounded) + 1;
  };

  auto grid = std::shared_ptr<Grid>(new Grid());
  grid->nx_ = node_count(ext_x);
  grid->ny_ = node_count(ext_y);
  grid->h_ = h;
  grid->x0_ = lo[0];
  grid->y0_ = lo[1];
  grid->domain_ = dom;

  const int nx = grid->nx_, ny = grid->ny_;
  grid->kind_.assign(static_cast<std::size_t>(nx) * ny, NodeKind::exterior);
  grid->unknown_.assign(static_cast<std::size_t>(nx) * ny, -1);

  if (dom.kind == Domain::Kind::unit_disk) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        if (inside_disk(grid->x_of(i), grid->y_of(j)))
          grid->kind_[grid->index(i, j)] = NodeKind::interior;
    // Nodes of the closure adjacent (including diagonally) to an interior
    // node anchor cut links.
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        if (grid->kind_[grid->index(i, j)] != NodeKind::exterior) continue;
        bool touches = false;
        for (int dj = -1; dj <= 1 && !touches; ++dj)
          for (int di = -1; di <= 1 && !touches; ++di)
            touches = grid->is_interior(i + di, j + dj);
        if (touches) grid->kind_[grid->index(i, j)] = NodeKind::boundary;
      }
  } else {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        grid->kind_[grid->index(i, j)] =
            (i > 0 && i < nx - 1 && j > 0 && j < ny - 1) ? NodeKind::interior : NodeKind::boundary;
  }

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (grid->kind_[grid->index(i, j)] == NodeKind::interior) {
        grid->unknown_[grid->index(i, j)] = grid->unknown_count_++;
        grid->nodes_.emplace_back(i, j);
      }
  return grid;
}

std::pair<int, int> Grid::nearest_node(double x, double y) const {
  int i = static_cast<int>(std::lround((x - x0_) / h_));
  int j = static_cast<int>(std::lround((y - y0_) / h_));
  i = std::clamp(i, 0, nx_ - 1);
  j = std::clamp(j, 0, ny_ - 1);
  return {i, j};
}

double Grid::theta(int i, int j, int dx, int dy) const {
  if (is_interior(i + dx, j + dy)) return 1.0;
  if (domain_.kind != Domain::Kind::unit_disk) return 1.0;
  // Cut fraction: |P + t h d|^2 = 1 with P strictly inside, t in (0,1].
  const double px = x_of(i), py = y_of(j);
  const double a = h_ * h_ * (dx * dx + dy * dy);
  const double b = 2.0 * h_ * (px * dx + py * dy);
  const double c = px * px + py * py - 1.0;
  const double disc = b * b - 4.0 * a * c;
  const double t = (-b + std::sqrt(std::max(disc, 0.0))) / (2.0 * a);
  return std::clamp(t, kThetaFloor, 1.0);
}

std::pair<double, double> Grid::link_boundary_point(int i, int j, int dx, int dy) const {
  const double t = theta(i, j, dx, dy);
  return {x_of(i) + t * h_ * dx, y_of(j) + t * h_ * dy};
}

bool GridField::finite_on_domain() const {
  for (int j = 0; j < grid->ny(); ++j)
    for (int i = 0; i < grid->nx(); ++i)
      if (grid->kind(i, j) != NodeKind::exterior && !std::isfinite(at(i, j))) return false;
  return true;
}

GridField make_field(std::shared_ptr<const Grid> grid, std::string label) {
  GridField f;
  f.values.assign(static_cast<std::size_t>(grid->nx()) * grid->ny(), 0.0);
  f.grid = std::move(grid);
  f.label = std::move(label);
  return f;
}

}  // namespace greenexp
