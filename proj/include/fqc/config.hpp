// Job configuration: a single JSON document describing the curve, the
// matrix L, the window and run parameters.  Numeric tokens may be plain
// JSON numbers or strings in a small exact-value grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := NUMBER | 'sqrt' '(' expr ')' | '(' expr ')' | '-' factor
// covering "sqrt(2)", "1/3", "sqrt(2)/2", "1+2*sqrt(5)", "exp(1)/6" style
// inputs are not supported (decimals suffice for those).
#pragma once

#include <cctype>
#include <fstream>

#include <json.hpp>

#include "fqc/curve.hpp"
#include "fqc/varcomb.hpp"

namespace fqc {

using Json = nlohmann::json;

namespace detail {

class TokenParser {
public:
  explicit TokenParser(const std::string& s) : s_(s) {}

  double parse() {
    double v = expr();
    skipWs();
    if (pos_ != s_.size()) throw ConfigError("trailing characters in numeric token '" + s_ + "'");
    return v;
  }

private:
  void skipWs() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    skipWs();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    while (true) {
      if (consume('+'))
        v += term();
      else if (consume('-'))
        v -= term();
      else
        return v;
    }
  }
  double term() {
    double v = factor();
    while (true) {
      if (consume('*'))
        v *= factor();
      else if (consume('/')) {
        double w = factor();
        if (w == 0.0) throw ConfigError("division by zero in numeric token");
        v /= w;
      } else
        return v;
    }
  }
  double factor() {
    skipWs();
    if (consume('-')) return -factor();
    if (pos_ + 4 < s_.size() && s_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!consume('(')) throw ConfigError("expected '(' after sqrt");
      double v = expr();
      if (!consume(')')) throw ConfigError("expected ')' in sqrt");
      if (v < 0) throw ConfigError("sqrt of a negative value");
      return std::sqrt(v);
    }
    if (consume('(')) {
      double v = expr();
      if (!consume(')')) throw ConfigError("expected ')'");
      return v;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
            s_[pos_] == 'e' || s_[pos_] == 'E' ||
            ((s_[pos_] == '+' || s_[pos_] == '-') && pos_ > start &&
             (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
      ++pos_;
    if (pos_ == start) throw ConfigError("expected a number in token '" + s_ + "'");
    try {
      return std::stod(s_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      throw ConfigError("bad number in token '" + s_ + "'");
    }
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline double parseNumericToken(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return detail::TokenParser(j.get<std::string>()).parse();
  throw ConfigError("numeric token must be a number or a string");
}

struct CurveSpec {
  enum class Kind { MobiusDeg1, Rational, Product };
  Kind kind = Kind::MobiusDeg1;
  std::vector<RealRationalFunction> factors;  // for MobiusDeg1 / Rational
  std::vector<CurveSpec> blocks;              // for Product
};

inline CurveSpec parseCurveSpec(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw ConfigError("curve spec needs a 'type'");
  std::string type = j.at("type").get<std::string>();
  CurveSpec spec;
  if (type == "mobius_deg1") {
    spec.kind = CurveSpec::Kind::MobiusDeg1;
    if (!j.contains("shifts")) throw ConfigError("mobius_deg1 needs 'shifts'");
    for (auto& tok : j.at("shifts")) {
      double a = parseNumericToken(tok);
      spec.factors.push_back(RealRationalFunction({-a, 1.0}, {1.0}));
    }
    if (spec.factors.size() < 2) throw ConfigError("need at least two shifts");
  } else if (type == "rational") {
    spec.kind = CurveSpec::Kind::Rational;
    if (!j.contains("factors")) throw ConfigError("rational curve needs 'factors'");
    for (auto& f : j.at("factors")) {
      Poly num, den;
      for (auto& tok : f.at("num")) num.push_back(parseNumericToken(tok));
      for (auto& tok : f.at("den")) den.push_back(parseNumericToken(tok));
      spec.factors.push_back(RealRationalFunction(num, den));
    }
    if (spec.factors.size() < 2) throw ConfigError("need at least two factors");
  } else if (type == "product") {
    spec.kind = CurveSpec::Kind::Product;
    if (!j.contains("blocks")) throw ConfigError("product curve needs 'blocks'");
    for (auto& b : j.at("blocks")) spec.blocks.push_back(parseCurveSpec(b));
    if (spec.blocks.empty()) throw ConfigError("product needs at least one block");
  } else {
    throw ConfigError("unknown curve type '" + type + "'");
  }
  return spec;
}

struct JobConfig {
  CurveSpec curve;
  Mat matrix;
  Box window;
  std::uint64_t seed = kDefaultSeed;
  std::string outDir = ".";
  double residualTol = 1e-9;

  bool isProduct() const { return curve.kind == CurveSpec::Kind::Product; }

  LeeYangCurve buildCurve() const {
    if (isProduct()) throw ConfigError("config describes a product curve");
    LeeYangCurve::Options opts;
    opts.seed = seed;
    return LeeYangCurve::build(curve.factors, opts);
  }
  ProductCurve buildProduct() const {
    if (!isProduct()) {
      return productCurve({buildCurve()});
    }
    std::vector<LeeYangCurve> blocks;
    LeeYangCurve::Options opts;
    opts.seed = seed;
    for (auto& b : curve.blocks) blocks.push_back(LeeYangCurve::build(b.factors, opts));
    return productCurve(std::move(blocks));
  }
  PositiveMatrix buildMatrix() const { return PositiveMatrix::fromMatrix(matrix); }
};

inline JobConfig parseConfig(const Json& j) {
  JobConfig cfg;
  if (!j.contains("curve")) throw ConfigError("missing 'curve'");
  cfg.curve = parseCurveSpec(j.at("curve"));
  if (!j.contains("matrix")) throw ConfigError("missing 'matrix'");
  {
    auto& rows = j.at("matrix");
    if (!rows.is_array() || rows.empty()) throw ConfigError("'matrix' must be a nonempty array");
    std::size_t n = rows.size(), d = rows.at(0).size();
    cfg.matrix = Mat(n, d);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows.at(i).size() != d) throw ConfigError("ragged matrix rows");
      for (std::size_t c = 0; c < d; ++c) cfg.matrix(i, c) = parseNumericToken(rows.at(i).at(c));
    }
  }
  if (j.contains("window")) {
    for (auto& pair : j.at("window")) {
      if (pair.size() != 2) throw ConfigError("window entries are [lo, hi] pairs");
      cfg.window.range.push_back({parseNumericToken(pair.at(0)), parseNumericToken(pair.at(1))});
    }
    if (cfg.window.empty()) throw ConfigError("window must be nonempty");
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out")) cfg.outDir = j.at("out").get<std::string>();
  if (j.contains("tolerances") && j.at("tolerances").contains("residual"))
    cfg.residualTol = j.at("tolerances").at("residual").get<double>();
  if (const char* env = std::getenv("FQC_OUT")) cfg.outDir = env;

  // n/d consistency between curve and matrix
  std::size_t n = cfg.matrix.rows, d = cfg.matrix.cols;
  std::size_t curveN = 0, curveCodim = 0;
  if (cfg.isProduct()) {
    for (auto& b : cfg.curve.blocks) {
      curveN += b.factors.size();
      curveCodim += b.factors.size() - 1;
    }
  } else {
    curveN = cfg.curve.factors.size();
    curveCodim = curveN - 1;
  }
  if (curveN != n || curveCodim != d)
    throw ConfigError("curve (n=" + std::to_string(curveN) + ", d=" + std::to_string(curveCodim) +
                      ") and matrix (" + std::to_string(n) + "x" + std::to_string(d) +
                      ") are inconsistent");
  if (!cfg.window.range.empty() && cfg.window.dim() != d)
    throw ConfigError("window dimension must equal d");
  return cfg;
}

inline JobConfig loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parseConfig(j);
}

}  // namespace fqc
