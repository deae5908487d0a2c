#include "greenexp/config_parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "greenexp/multi_index.hpp"

namespace greenexp {

namespace {

std::string position_message(const std::string& message, int line, int column) {
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": " << message;
  return out.str();
}

// Recursive-descent parser over a single polynomial string.
class PolyParser {
public:
  PolyParser(const std::string& text, int n, int line) : text_(text), n_(n), line_(line) {}

  GradedFunction<Rational> parse() {
    skip_ws();
    auto f = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(message, line_, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  GradedFunction<Rational> expression() {
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    auto acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  GradedFunction<Rational> term() {
    auto acc = factor();
    while (eat('*')) acc = mul_poly(acc, factor());
    return acc;
  }

  GradedFunction<Rational> factor() {
    auto base = atom();
    if (eat('^')) {
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a nonnegative integer exponent after '^'");
      long e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + (text_[pos_] - '0');
        if (e > 64) fail("exponent too large");
        ++pos_;
      }
      auto acc = GradedFunction<Rational>::constant(n_, Rational(1));
      for (long i = 0; i < e; ++i) acc = mul_poly(acc, base);
      return acc;
    }
    return base;
  }

  GradedFunction<Rational> atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expression();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') return variable();
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    fail(std::string("unexpected character '") + c + "'");
  }

  GradedFunction<Rational> variable() {
    ++pos_;  // 'x'
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected a variable index after 'x'");
    int idx = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      idx = idx * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    if (idx < 1 || idx > n_)
      fail("variable x" + std::to_string(idx) + " out of range for dimension " +
           std::to_string(n_));
    MultiIndex alpha(n_);
    alpha = alpha.bumped(idx - 1, 1);
    return GradedFunction<Rational>::monomial(n_, Rational(1), alpha);
  }

  GradedFunction<Rational> number() {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits += text_[pos_++];
    Rational value;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::string frac;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        frac += text_[pos_++];
      if (frac.empty()) fail("expected digits after the decimal point");
      mpz_class num(digits + frac);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      value = Rational(mpq_class(num, den));
    } else if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::string den;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        den += text_[pos_++];
      if (den.empty()) fail("expected digits after '/'");
      if (mpz_class(den) == 0) fail("zero denominator");
      value = Rational(mpq_class(mpz_class(digits), mpz_class(den)));
    } else {
      value = Rational(mpq_class(mpz_class(digits)));
    }
    return GradedFunction<Rational>::constant(n_, value);
  }

  const std::string& text_;
  int n_;
  int line_;
  std::size_t pos_ = 0;
};

std::string rational_literal(const Rational& v) {
  return v.str();  // "a" or "a/b", parseable by the polynomial grammar
}

struct RawLine {
  int number;
  std::string key;
  std::string value;
};

std::vector<RawLine> split_key_values(const std::string& text) {
  std::vector<RawLine> lines;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value'", number, static_cast<int>(first) + 1);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    RawLine raw;
    raw.number = number;
    raw.key = trim(line.substr(0, eq));
    raw.value = trim(line.substr(eq + 1));
    if (raw.key.empty()) throw ConfigError("empty key", number, 1);
    lines.push_back(std::move(raw));
  }
  return lines;
}

std::vector<double> parse_number_list(const std::string& text, int line) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(piece, &used));
      while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used]))) ++used;
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw ConfigError("expected a comma-separated list of numbers", line, 1);
    }
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::string message, int line, int column)
    : std::runtime_error(position_message(message, line, column)), line_(line), column_(column) {}

GradedFunction<Rational> parse_polynomial(const std::string& text, int n, int line) {
  return PolyParser(text, n, line).parse();
}

std::string polynomial_to_string(const GradedFunction<Rational>& p) {
  const int n = p.dimension();
  std::map<std::vector<int>, Rational> monomials;
  for (const auto& t : p.monomial_expansion()) {
    std::vector<int> exps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) exps[static_cast<std::size_t>(i)] = t.alpha[i];
    auto [it, fresh] = monomials.try_emplace(std::move(exps), t.coeff);
    if (!fresh) it->second = it->second + t.coeff;
  }
  std::string out;
  bool first = true;
  for (const auto& [exps, coeff] : monomials) {
    if (coeff == Rational(0)) continue;
    const bool negative = coeff.sign() < 0;
    const Rational mag = negative ? -coeff : coeff;
    if (first) {
      if (negative) out += "-";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    std::vector<std::string> factors;
    if (!(mag == Rational(1))) factors.push_back(rational_literal(mag));
    for (int i = 0; i < n; ++i)
      if (exps[static_cast<std::size_t>(i)] > 0)
        factors.push_back(
            exps[static_cast<std::size_t>(i)] == 1
                ? "x" + std::to_string(i + 1)
                : "x" + std::to_string(i + 1) + "^" +
                      std::to_string(exps[static_cast<std::size_t>(i)]));
    if (factors.empty()) factors.push_back(rational_literal(mag));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += "*";
      out += factors[i];
    }
  }
  return out.empty() ? "0" : out;
}

ProblemSpec parse_spec_text(const std::string& text) {
  const auto lines = split_key_values(text);

  int n = 2;
  bool n_seen = false;
  for (const auto& raw : lines)
    if (raw.key == "dimension") {
      try {
        n = std::stoi(raw.value);
      } catch (const std::exception&) {
        throw ConfigError("dimension must be an integer", raw.number, 1);
      }
      if (n < kMinDimension || n > kMaxDimension)
        throw ConfigError("dimension must be between " + std::to_string(kMinDimension) + " and " +
                              std::to_string(kMaxDimension),
                          raw.number, 1);
      n_seen = true;
    }
  (void)n_seen;

  std::string name = "custom";
  Domain domain = Domain::unit_disk(n);
  bool domain_seen = false;
  double lambda_min = 1e-8, lambda_max = 1e12;
  std::map<std::pair<int, int>, std::pair<GradedFunction<Rational>, int>> entries;

  for (const auto& raw : lines) {
    if (raw.key == "dimension") continue;
    if (raw.key == "name") {
      name = raw.value;
    } else if (raw.key == "domain") {
      std::istringstream in(raw.value);
      std::string kind;
      in >> kind;
      if (kind == "unit-disk") {
        domain = Domain::unit_disk(n);
      } else if (kind == "unit-square") {
        domain = Domain::unit_square(n);
      } else if (kind == "box") {
        std::string lo_text, hi_text;
        if (!(in >> lo_text >> hi_text))
          throw ConfigError("box domain needs 'box lo1,lo2 hi1,hi2'", raw.number, 1);
        auto lo = parse_number_list(lo_text, raw.number);
        auto hi = parse_number_list(hi_text, raw.number);
        if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
          throw ConfigError("box corner dimension mismatch", raw.number, 1);
        for (int i = 0; i < n; ++i)
          if (!(lo[i] < hi[i])) throw ConfigError("box corners must satisfy lo < hi", raw.number, 1);
        domain = Domain::make_box(lo, hi);
      } else {
        throw ConfigError("unknown domain '" + kind + "'", raw.number, 1);
      }
      domain_seen = true;
    } else if (raw.key == "lambda") {
      auto vals = parse_number_list(raw.value, raw.number);
      if (vals.size() != 2 || !(vals[0] > 0) || !(vals[0] < vals[1]))
        throw ConfigError("lambda needs 'min,max' with 0 < min < max", raw.number, 1);
      lambda_min = vals[0];
      lambda_max = vals[1];
    } else if (raw.key.size() >= 3 && raw.key[0] == 'K') {
      const std::string ij = raw.key.substr(1);
      if (ij.size() != 2 || !std::isdigit(static_cast<unsigned char>(ij[0])) ||
          !std::isdigit(static_cast<unsigned char>(ij[1])))
        throw ConfigError("matrix keys look like K11, K12, ...", raw.number, 1);
      const int i = ij[0] - '1', j = ij[1] - '1';
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw ConfigError("entry " + raw.key + " outside the " + std::to_string(n) + "x" +
                              std::to_string(n) + " matrix",
                          raw.number, 1);
      auto poly = parse_polynomial(raw.value, n, raw.number);
      auto key = std::make_pair(std::min(i, j), std::max(i, j));
      auto found = entries.find(key);
      if (found != entries.end()) {
        if (!(found->second.first == poly))
          throw ConfigError("entry " + raw.key + " conflicts with its symmetric partner given on line " +
                                std::to_string(found->second.second),
                            raw.number, 1);
      } else {
        entries.emplace(key, std::make_pair(std::move(poly), raw.number));
      }
    } else {
      throw ConfigError("unknown key '" + raw.key + "'", raw.number, 1);
    }
  }
  if (!domain_seen) domain = Domain::unit_disk(n);

  std::vector<GradedFunction<Rational>> matrix;
  matrix.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto key = std::make_pair(std::min(i, j), std::max(i, j));
      auto found = entries.find(key);
      if (found != entries.end())
        matrix.push_back(found->second.first);
      else
        matrix.push_back(GradedFunction<Rational>::constant(n, Rational(i == j ? 1 : 0)));
    }

  ProblemSpec spec{name, CoefficientField(n, std::move(matrix)), domain, lambda_min, lambda_max};
  validate_ellipticity(spec);
  return spec;
}

ProblemSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str());
}

std::string serialize_spec(const ProblemSpec& spec) {
  const int n = spec.K.dimension();
  std::ostringstream out;
  out << "name = " << spec.name << "\n";
  out << "dimension = " << n << "\n";
  out << "domain = ";
  if (spec.domain.kind == Domain::Kind::unit_disk) {
    out << "unit-disk";
  } else if (spec.domain.kind == Domain::Kind::unit_square) {
    out << "unit-square";
  } else {
    out << "box ";
    for (int i = 0; i < n; ++i) out << (i ? "," : "") << spec.domain.lo[i];
    out << " ";
    for (int i = 0; i < n; ++i) out << (i ? "," : "") << spec.domain.hi[i];
  }
  out << "\n";
  out << "lambda = " << spec.lambda_min << "," << spec.lambda_max << "\n";
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      out << "K" << (i + 1) << (j + 1) << " = " << polynomial_to_string(spec.K.entry(i, j))
          << "\n";
  return out.str();
}

}  // namespace greenexp
