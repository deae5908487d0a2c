#include "greenexp/serialize.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace greenexp {

std::string scalar_traits<double>::str(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_rational_value(const Rational& q, int pi_power) {
  if (q.is_zero()) return "0";
  if (pi_power == 0) return q.str();
  const bool negative = q.sign() < 0;
  const Rational mag = negative ? -q : q;
  const std::string num = mag.numerator().get_str();
  const std::string den = mag.denominator().get_str();
  const std::string pi = pi_power == 1 ? "π" : "π^" + std::to_string(pi_power);
  std::string out = negative ? "-" : "";
  out += num;
  out += "/";
  out += den == "1" ? pi : "(" + den + pi + ")";
  return out;
}

std::string format_double_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_field_csv(const std::string& path, const GridField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "x,y,value\n";
  const Grid& g = *f.grid;
  char buf[96];
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (g.kind(i, j) == NodeKind::exterior) continue;
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", g.x_of(i), g.y_of(j), f.at(i, j));
      out << buf;
    }
}

void write_field_binary(const std::string& path, const GridField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const Grid& g = *f.grid;
  const char magic[4] = {'G', 'X', 'F', '1'};
  out.write(magic, 4);
  const std::int32_t nx = g.nx(), ny = g.ny();
  out.write(reinterpret_cast<const char*>(&nx), sizeof(nx));
  out.write(reinterpret_cast<const char*>(&ny), sizeof(ny));
  const double geom[3] = {g.h(), g.x0(), g.y0()};
  out.write(reinterpret_cast<const char*>(geom), sizeof(geom));
  std::vector<std::uint8_t> mask;
  mask.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) mask.push_back(static_cast<std::uint8_t>(g.kind(i, j)));
  out.write(reinterpret_cast<const char*>(mask.data()), static_cast<std::streamsize>(mask.size()));
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

json field_summary_json(const GridField& f) {
  const Grid& g = *f.grid;
  double lo = 0, hi = 0;
  bool first = true;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (g.kind(i, j) == NodeKind::exterior) continue;
      const double v = f.at(i, j);
      if (first) {
        lo = hi = v;
        first = false;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  json j{{"label", f.label},
         {"nx", g.nx()},
         {"ny", g.ny()},
         {"h", g.h()},
         {"min", lo},
         {"max", hi}};
  if (!f.base_point.empty()) j["base_point"] = f.base_point;
  return j;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_manifest(const std::string& out_dir, const std::string& command,
                    const std::vector<ManifestEntry>& files) {
  json entries = json::array();
  for (const auto& f : files) entries.push_back(json{{"path", f.path}, {"kind", f.kind}});
  write_json((std::filesystem::path(out_dir) / "manifest.json").string(),
             json{{"schema_version", 1}, {"command", command}, {"files", entries}});
}

}  // namespace greenexp
