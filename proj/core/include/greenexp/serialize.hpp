#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "greenexp/grid.hpp"
#include "greenexp/parametrix.hpp"
#include "greenexp/remainder.hpp"

namespace greenexp {

using json = nlohmann::json;

// "1/(4pi)"-style rendering of q * pi^(-pi_power) with exact q.
std::string format_rational_value(const Rational& q, int pi_power);
std::string format_double_value(double v);

// Human-readable term with the normalization folded into the coefficient,
// e.g. "1/(4π) · x1 · log r".
template <class S>
std::string pretty_term(const GradedTerm<S>& t, const NormalizationUnit& unit) {
  std::string value;
  if constexpr (scalar_traits<S>::exact)
    value = format_rational_value(t.coeff * unit.factor, unit.pi_power);
  else
    value = format_double_value(t.coeff * unit.to_double());
  std::vector<std::string> parts = {value};
  for (int i = 0; i < t.alpha.dimension(); ++i) {
    if (t.alpha[i] == 0) continue;
    const int e = t.alpha[i];
    parts.push_back(e == 1 ? "x" + std::to_string(i + 1)
                           : "x" + std::to_string(i + 1) + "^" + std::to_string(e));
  }
  const int r_exp = -t.radial_power;
  if (r_exp != 0) parts.push_back(r_exp == 1 ? "r" : "r^" + std::to_string(r_exp));
  if (t.log_power == 1)
    parts.push_back("log r");
  else if (t.log_power > 1)
    parts.push_back("log^" + std::to_string(t.log_power) + " r");
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " · ";
    out += parts[i];
  }
  return out;
}

template <class S>
json term_json(const GradedTerm<S>& t, const NormalizationUnit& unit) {
  json alpha = json::array();
  for (int i = 0; i < t.alpha.dimension(); ++i) alpha.push_back(t.alpha[i]);
  return json{{"coeff", scalar_traits<S>::str(t.coeff)},
              {"value", scalar_traits<S>::to_double(t.coeff) * unit.to_double()},
              {"alpha", alpha},
              {"r_exponent", -t.radial_power},
              {"log_power", t.log_power}};
}

template <class S>
json function_json(const GradedFunction<S>& f, const NormalizationUnit& unit) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back(term_json(t, unit));
  return terms;
}

template <class S>
json expansion_json(const ExpansionResult<S>& res, const std::string& backend) {
  json j;
  j["schema_version"] = 1;
  j["kind"] = "expansion";
  j["backend"] = backend;
  j["n"] = res.n;
  j["order"] = res.order;
  json y = json::array();
  for (const auto& v : res.y) y.push_back(scalar_traits<S>::to_double(v));
  j["y"] = y;
  j["unit"] = {{"factor", res.unit.factor.str()},
               {"pi_power", res.unit.pi_power},
               {"value", res.unit.to_double()}};
  auto matrix_json = [&](const SquareMatrix<S>& m) {
    json rows = json::array();
    for (int i = 0; i < res.n; ++i) {
      json row = json::array();
      for (int k = 0; k < res.n; ++k) row.push_back(scalar_traits<S>::to_double(m(i, k)));
      rows.push_back(row);
    }
    return rows;
  };
  j["transform"] = {{"forward", matrix_json(res.transform.forward)},
                    {"inverse", matrix_json(res.transform.inverse)},
                    {"det_factor", scalar_traits<S>::to_double(res.transform.det_factor)}};
  j["phi0"] = function_json(res.phi0, res.unit);
  json groups = json::array();
  for (const auto& g : res.groups)
    groups.push_back(json{{"index", g.index},
                          {"space", g.tag.str()},
                          {"terms", function_json(g.phi, res.unit)}});
  j["groups"] = groups;
  j["smooth_part"] = function_json(res.smooth_part, res.unit);
  j["residual"] = {{"terms", function_json(res.residual, res.unit)},
                   {"min_homogeneity",
                    res.residual.is_zero() ? json(nullptr) : json(res.residual.min_homogeneity())}};
  return j;
}

template <class S>
std::string expansion_listing(const ExpansionResult<S>& res, const std::string& title) {
  std::string out = title + "\n";
  out += "unit: " + format_rational_value(res.unit.factor, res.unit.pi_power) + "\n";
  out += "Phi_0:\n";
  for (const auto& t : res.phi0.terms()) out += "  " + pretty_term(t, res.unit) + "\n";
  for (const auto& g : res.groups) {
    out += "Phi_" + std::to_string(g.index) + "  [" + g.tag.str() + "]:\n";
    for (const auto& t : g.phi.terms()) out += "  " + pretty_term(t, res.unit) + "\n";
  }
  if (!res.smooth_part.is_zero()) {
    out += "smooth part:\n";
    for (const auto& t : res.smooth_part.terms()) out += "  " + pretty_term(t, res.unit) + "\n";
  }
  if (res.residual.is_zero())
    out += "residual: 0\n";
  else
    out += "residual: " + std::to_string(res.residual.term_count()) +
           " terms, minimum homogeneity " + std::to_string(res.residual.min_homogeneity()) + "\n";
  return out;
}

// Field export: CSV rows x,y,value over nodes of the closure, and a binary
// column format (magic GXF1, node counts, spacing, origin, node mask bytes,
// then values).
void write_field_csv(const std::string& path, const GridField& f);
void write_field_binary(const std::string& path, const GridField& f);
json field_summary_json(const GridField& f);

void write_text(const std::string& path, const std::string& content);
void write_json(const std::string& path, const json& j);

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::string kind;
};
void write_manifest(const std::string& out_dir, const std::string& command,
                    const std::vector<ManifestEntry>& files);

}  // namespace greenexp
