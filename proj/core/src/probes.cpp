#include "greenexp/probes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace greenexp {

namespace {

constexpr double kPi = std::numbers::pi;

template <class Visit>
void for_annulus(const GridField& f, const std::vector<double>& c, double r_inner, double r_outer,
                 Visit&& visit) {
  const Grid& g = *f.grid;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (g.kind(i, j) != NodeKind::interior) continue;
      const double d = std::hypot(g.x_of(i) - c[0], g.y_of(j) - c[1]);
      if (d > r_inner && d <= r_outer) visit(i, j);
    }
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on the
// recurrence; classic and adequate for fixed small orders.
void legendre_rule(int k, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(k);
  weights.resize(k);
  for (int i = 0; i < k; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1 - x * x) * dp * dp);
  }
}

}  // namespace

OscillationReport annulus_oscillation(const GridField& f, const std::vector<double>& center,
                                      double r_inner, double r_outer) {
  OscillationReport rep;
  bool first = true;
  for_annulus(f, center, r_inner, r_outer, [&](int i, int j) {
    const double v = f.at(i, j);
    if (first) {
      rep.min_value = rep.max_value = v;
      first = false;
    }
    rep.min_value = std::min(rep.min_value, v);
    rep.max_value = std::max(rep.max_value, v);
    rep.max_abs = std::max(rep.max_abs, std::abs(v));
    ++rep.nodes;
  });
  if (rep.nodes == 0) throw std::invalid_argument("annulus_oscillation: no nodes in the annulus");
  rep.oscillation = rep.max_value - rep.min_value;
  return rep;
}

DifferenceReport annulus_differences(const GridField& f, const std::vector<double>& center,
                                     double r_inner, double r_outer) {
  DifferenceReport rep;
  const Grid& g = *f.grid;
  const double h = g.h();
  for_annulus(f, center, r_inner, r_outer, [&](int i, int j) {
    bool interior_stencil = true;
    for (int dj = -1; dj <= 1 && interior_stencil; ++dj)
      for (int di = -1; di <= 1 && interior_stencil; ++di)
        interior_stencil = g.is_interior(i + di, j + dj);
    if (!interior_stencil) return;
    const double gx = (f.at(i + 1, j) - f.at(i - 1, j)) / (2 * h);
    const double gy = (f.at(i, j + 1) - f.at(i, j - 1)) / (2 * h);
    const double hxx = (f.at(i + 1, j) - 2 * f.at(i, j) + f.at(i - 1, j)) / (h * h);
    const double hyy = (f.at(i, j + 1) - 2 * f.at(i, j) + f.at(i, j - 1)) / (h * h);
    const double hxy = (f.at(i + 1, j + 1) - f.at(i + 1, j - 1) - f.at(i - 1, j + 1) +
                        f.at(i - 1, j - 1)) /
                       (4 * h * h);
    rep.max_gradient = std::max(rep.max_gradient, std::hypot(gx, gy));
    rep.max_hessian = std::max({rep.max_hessian, std::abs(hxx), std::abs(hyy), std::abs(hxy)});
    ++rep.nodes;
  });
  if (rep.nodes == 0) throw std::invalid_argument("annulus_differences: no usable nodes");
  return rep;
}

double fundamental_flux(const ExpansionResult<double>& exp, double radius, int points) {
  const int n = exp.n;
  if (n != 2 && n != 3)
    throw std::invalid_argument("fundamental_flux supports dimensions 2 and 3");
  const auto& forward = exp.transform.forward;
  const auto k_at_y = exp.transform.inverse * exp.transform.inverse;
  const double unit = exp.unit.to_double();

  std::vector<GradedFunction<double>> grad;
  for (int i = 0; i < n; ++i) grad.push_back(partial_in_x(i, exp.phi0, forward));

  auto k_grad_dot_nu = [&](const std::vector<double>& x, const std::vector<double>& nu) {
    std::vector<double> u(n);
    for (int k = 0; k < n; ++k) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += forward(k, j) * (x[j] - exp.y[j]);
      u[k] = s;
    }
    double acc = 0;
    for (int i = 0; i < n; ++i) {
      double flux_i = 0;
      for (int j = 0; j < n; ++j) flux_i += k_at_y(i, j) * unit * grad[j].eval(u);
      acc += flux_i * nu[i];
    }
    return acc;
  };

  if (n == 2) {
    double acc = 0;
    for (int m = 0; m < points; ++m) {
      const double phi = 2 * kPi * m / points;
      const std::vector<double> nu = {std::cos(phi), std::sin(phi)};
      acc += k_grad_dot_nu({exp.y[0] + radius * nu[0], exp.y[1] + radius * nu[1]}, nu);
    }
    return acc * (2 * kPi * radius / points);
  }

  std::vector<double> nodes, weights;
  legendre_rule(32, nodes, weights);
  const int m_phi = 64;
  double acc = 0;
  for (int k = 0; k < 32; ++k) {
    const double t = nodes[k];
    const double s = std::sqrt(1 - t * t);
    double ring = 0;
    for (int m = 0; m < m_phi; ++m) {
      const double phi = 2 * kPi * m / m_phi;
      const std::vector<double> nu = {s * std::cos(phi), s * std::sin(phi), t};
      ring += k_grad_dot_nu(
          {exp.y[0] + radius * nu[0], exp.y[1] + radius * nu[1], exp.y[2] + radius * nu[2]}, nu);
    }
    acc += weights[k] * ring * (2 * kPi / m_phi);
  }
  return acc * radius * radius;
}

std::vector<std::vector<double>> square_lattice(double lo, double step, int m) {
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) pts.push_back({lo + i * step, lo + j * step});
  return pts;
}

std::vector<double> lattice_first_differences(const std::vector<double>& values, int m,
                                              double step) {
  if (static_cast<int>(values.size()) != m * m)
    throw std::invalid_argument("lattice_first_differences: value count is not m*m");
  std::vector<double> out;
  const double inv = 1.0 / (2.0 * step);
  for (int i = 1; i + 1 < m; ++i)
    for (int j = 0; j < m; ++j)
      out.push_back((values[(i + 1) * m + j] - values[(i - 1) * m + j]) * inv);
  for (int i = 0; i < m; ++i)
    for (int j = 1; j + 1 < m; ++j)
      out.push_back((values[i * m + j + 1] - values[i * m + j - 1]) * inv);
  return out;
}

std::vector<double> lattice_second_differences(const std::vector<double>& values, int m,
                                               double step) {
  if (static_cast<int>(values.size()) != m * m)
    throw std::invalid_argument("lattice_second_differences: value count is not m*m");
  std::vector<double> out;
  const double inv = 1.0 / (step * step);
  for (int i = 1; i + 1 < m; ++i)
    for (int j = 0; j < m; ++j)
      out.push_back((values[(i + 1) * m + j] - 2 * values[i * m + j] + values[(i - 1) * m + j]) *
                    inv);
  for (int i = 0; i < m; ++i)
    for (int j = 1; j + 1 < m; ++j)
      out.push_back((values[i * m + j + 1] - 2 * values[i * m + j] + values[i * m + j - 1]) * inv);
  return out;
}

}  // namespace greenexp
