// Shared numeric utilities, small dense linear algebra, and the error
// hierarchy used across the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqc {

using Vec = std::vector<double>;
using Cplx = std::complex<double>;
using IVec = std::vector<long>;

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
constexpr std::uint64_t kDefaultSeed = 0x5EED;

// Error categories map onto the CLI exit-code contract:
// config errors -> 1, validation errors -> 2, numeric errors -> 3.
enum class ErrorKind { Config, Validation, Numeric };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}
  ErrorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

private:
  ErrorKind kind_;
  std::string name_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, "ConfigParse", what) {}
};

struct ValidationError : Error {
  ValidationError(std::string name, const std::string& what)
      : Error(ErrorKind::Validation, std::move(name), what) {}
};

struct NumericError : Error {
  NumericError(std::string name, const std::string& what)
      : Error(ErrorKind::Numeric, std::move(name), what) {}
};

inline int signum(double x) { return (x > 0.0) - (x < 0.0); }

// Neumaier compensated summation.
class CompensatedSum {
public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Row-major dense matrix, sized for the tiny systems this library solves
// (n <= 8 throughout).
struct Mat {
  std::size_t rows = 0, cols = 0;
  Vec a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  Mat transposed() const {
    Mat t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
};

inline Vec matVec(const Mat& m, const Vec& x) {
  Vec y(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    CompensatedSum s;
    for (std::size_t j = 0; j < m.cols; ++j) s.add(m(i, j) * x[j]);
    y[i] = s.value();
  }
  return y;
}

inline Vec matTVec(const Mat& m, const Vec& x) {
  Vec y(m.cols, 0.0);
  for (std::size_t j = 0; j < m.cols; ++j) {
    CompensatedSum s;
    for (std::size_t i = 0; i < m.rows; ++i) s.add(m(i, j) * x[i]);
    y[j] = s.value();
  }
  return y;
}

inline double dot(const Vec& a, const Vec& b) {
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
  return s.value();
}

inline double norm2(const Vec& a) { return std::sqrt(std::max(0.0, dot(a, a))); }

// Gaussian elimination with partial pivoting; throws on (numerically)
// singular systems.
inline Vec solveLinear(Mat m, Vec b) {
  const std::size_t n = m.rows;
  if (m.cols != n || b.size() != n) throw std::invalid_argument("solveLinear: shape");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (std::abs(m(piv, col)) < 1e-14) throw NumericError("SingularSystem", "pivot underflow");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = m(r, col) / m(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
      b[r] -= f * b[col];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

inline double determinant(Mat m) {
  const std::size_t n = m.rows;
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (m(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

// Axis-aligned box in R^d.
struct Box {
  std::vector<std::pair<double, double>> range;

  std::size_t dim() const { return range.size(); }
  bool contains(const Vec& x, double tol = 0.0) const {
    for (std::size_t i = 0; i < range.size(); ++i)
      if (x[i] < range[i].first - tol || x[i] > range[i].second + tol) return false;
    return true;
  }
  double diameter() const {
    double s = 0.0;
    for (auto& [lo, hi] : range) s += (hi - lo) * (hi - lo);
    return std::sqrt(s);
  }
  Vec center() const {
    Vec c;
    for (auto& [lo, hi] : range) c.push_back(0.5 * (lo + hi));
    return c;
  }
  Box eroded(double margin) const {
    Box b = *this;
    for (auto& [lo, hi] : b.range) {
      lo += margin;
      hi -= margin;
    }
    return b;
  }
  bool empty() const {
    for (auto& [lo, hi] : range)
      if (lo >= hi) return true;
    return range.empty();
  }
};

inline double volumeOfBall(std::size_t d, double r) {
  // vol(B_r) in R^d
  double v = 1.0;
  switch (d) {
    case 1: v = 2.0 * r; break;
    case 2: v = kPi * r * r; break;
    case 3: v = 4.0 / 3.0 * kPi * r * r * r; break;
    default: {
      v = std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0) * std::pow(r, double(d));
    }
  }
  return v;
}

// Union-find used for point dedup clustering.
class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t i, std::size_t j) { parent_[find(i)] = find(j); }

private:
  std::vector<std::size_t> parent_;
};

using Rng = std::mt19937_64;

}  // namespace fqc
