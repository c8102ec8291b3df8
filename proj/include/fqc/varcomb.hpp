// Sign-variation combinatorics and positive-Grassmannian linear algebra.
//
// var(b) counts sign changes after discarding zeros; varbar(b) assigns signs
// to the zero entries adversarially.  A PositiveMatrix caches the Pluecker
// coordinates (all d x d minors, required strictly positive) of an n x d
// matrix together with a basis of its left kernel.
#pragma once

#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "fqc/common.hpp"

namespace fqc {

// Entries may be +-infinity; their sign is well defined.
inline int var(const Vec& b) {
  int changes = 0, last = 0;
  for (double x : b) {
    int s = signum(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline int varOfSigns(const std::vector<int>& s) {
  int changes = 0, last = 0;
  for (int cur : s) {
    if (cur == 0) continue;
    if (last != 0 && cur != last) ++changes;
    last = cur;
  }
  return changes;
}

// Dynamic program over the sign of the last processed entry.  The all-zero
// vector of length n yields n-1 (alternating assignment).
inline int varbar(const Vec& b) {
  constexpr int kNeg = std::numeric_limits<int>::min() / 2;
  int best[2] = {kNeg, kNeg};  // [0] last sign -, [1] last sign +
  bool first = true;
  for (double x : b) {
    int s = signum(x);
    int next[2] = {kNeg, kNeg};
    for (int choice : {-1, +1}) {
      if (s != 0 && choice != s) continue;
      int idx = (choice + 1) / 2;
      if (first) {
        next[idx] = 0;
      } else {
        int same = best[idx];
        int flip = best[1 - idx] == kNeg ? kNeg : best[1 - idx] + 1;
        next[idx] = std::max(same, flip);
      }
    }
    best[0] = next[0];
    best[1] = next[1];
    first = false;
  }
  if (first) return 0;
  return std::max(best[0], best[1]);
}

// All d-subsets of {0,...,n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsetsOfSize(int n, int d) {
  std::vector<std::vector<int>> out;
  if (d < 0 || d > n) return out;
  std::vector<int> cur(d);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = d - 1;
    while (i >= 0 && cur[i] == n - d + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < d; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// s(I) with e_I ^ e_{[n]\I} = s(I) e_{[n]}; I is a 0-based sorted subset.
// Equals the parity of the number of inversions of the shuffle permutation.
inline int signOfSubset(const std::vector<int>& subset, int n) {
  const int d = int(subset.size());
  for (int i = 0; i < d; ++i) {
    if (subset[i] < 0 || subset[i] >= n) throw std::invalid_argument("signOfSubset: out of range");
    if (i > 0 && subset[i] <= subset[i - 1])
      throw std::invalid_argument("signOfSubset: not sorted/distinct");
  }
  long sum = 0;
  for (int i : subset) sum += i;
  long inversions = sum - long(d) * (d - 1) / 2;
  return (inversions % 2 == 0) ? +1 : -1;
}

namespace detail {

// Minor by Laplace expansion along the first row (d <= 4), with compensated
// accumulation of the cofactor terms.
inline double minorLaplace(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const std::size_t d = rows.size();
  if (d == 1) return m(rows[0], cols[0]);
  if (d == 2) {
    return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
  }
  CompensatedSum s;
  std::vector<int> subRows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<int> subCols;
    for (std::size_t l = 0; l < d; ++l)
      if (l != j) subCols.push_back(cols[l]);
    double cof = minorLaplace(m, subRows, subCols);
    s.add(((j % 2 == 0) ? 1.0 : -1.0) * m(rows[0], cols[j]) * cof);
  }
  return s.value();
}

// Bareiss fraction-free elimination, used for d >= 5.
inline double minorBareiss(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const std::size_t d = rows.size();
  Mat a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = m(rows[i], cols[j]);
  double prev = 1.0;
  double sign = 1.0;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    if (a(k, k) == 0.0) {
      std::size_t piv = k;
      for (std::size_t r = k + 1; r < d; ++r)
        if (a(r, k) != 0.0) {
          piv = r;
          break;
        }
      if (piv == k) return 0.0;
      for (std::size_t j = 0; j < d; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < d; ++i)
      for (std::size_t j = k + 1; j < d; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(d - 1, d - 1);
}

}  // namespace detail

struct NonPositiveMinor : ValidationError {
  NonPositiveMinor(const std::vector<int>& subset, double value)
      : ValidationError("NonPositiveMinor", describe(subset, value)), subset(subset), value(value) {}
  static std::string describe(const std::vector<int>& s, double v) {
    std::ostringstream os;
    os << "minor L_{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
    os << "} = " << v << " is not positive";
    return os.str();
  }
  std::vector<int> subset;
  double value;
};

struct RankDeficient : ValidationError {
  RankDeficient() : ValidationError("RankDeficient", "matrix does not have full column rank") {}
};

// An n x d matrix with strictly positive d x d minors, its Pluecker
// coordinates and a left-kernel basis (rows of `leftKernel`).  First nonzero
// entry of every kernel generator is positive; generators are unit norm.
class PositiveMatrix {
public:
  static PositiveMatrix fromMatrix(const Mat& entries) { return PositiveMatrix(entries); }

  std::size_t rows() const { return entries_.rows; }
  std::size_t cols() const { return entries_.cols; }
  const Mat& matrix() const { return entries_; }

  double minor(const std::vector<int>& subset) const {
    auto it = plucker_.find(subset);
    if (it == plucker_.end()) throw std::invalid_argument("PositiveMatrix::minor: bad subset");
    return it->second;
  }
  const std::map<std::vector<int>, double>& plucker() const { return plucker_; }
  const std::vector<Vec>& leftKernel() const { return kernel_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Minors of the d x d top block are positive, so the leading block is
  // always invertible; used to recover x from lifted phases downstream.
  Vec solveTopBlock(const Vec& rhs) const {
    const std::size_t d = cols();
    Mat top(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) top(i, j) = entries_(i, j);
    return solveLinear(top, rhs);
  }

  Vec apply(const Vec& x) const { return matVec(entries_, x); }
  Vec applyTranspose(const Vec& y) const { return matTVec(entries_, y); }

private:
  explicit PositiveMatrix(const Mat& entries) : entries_(entries) {
    const int n = int(entries.rows);
    const int d = int(entries.cols);
    if (n < 1 || d < 1 || d > n) throw RankDeficient();
    double maxEntry = 0.0;
    for (double v : entries.a) maxEntry = std::max(maxEntry, std::abs(v));
    const double floor = 1e-12 * std::pow(maxEntry, double(d));
    for (auto& subset : subsetsOfSize(n, d)) {
      std::vector<int> cols(d);
      std::iota(cols.begin(), cols.end(), 0);
      double m = (d <= 4) ? detail::minorLaplace(entries, subset, cols)
                          : detail::minorBareiss(entries, subset, cols);
      if (m < floor) throw NonPositiveMinor(subset, m);
      if (m < 10.0 * floor) {
        std::ostringstream os;
        os << "minor " << NonPositiveMinor::describe(subset, m)
           << " is within 10x of the positivity threshold " << floor;
        warnings_.push_back(os.str());
      }
      plucker_[subset] = m;
    }
    computeLeftKernel();
  }

  void computeLeftKernel() {
    const std::size_t n = rows(), d = cols();
    // Nullspace of L^t (d x n) via Gauss-Jordan with partial pivoting.
    Mat a = entries_.transposed();
    std::vector<int> pivotCol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < d; ++c) {
      std::size_t piv = r;
      for (std::size_t i = r + 1; i < d; ++i)
        if (std::abs(a(i, c)) > std::abs(a(piv, c))) piv = i;
      if (std::abs(a(piv, c)) < 1e-13) continue;
      if (piv != r)
        for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(r, j));
      double p = a(r, c);
      for (std::size_t j = 0; j < n; ++j) a(r, j) /= p;
      for (std::size_t i = 0; i < d; ++i) {
        if (i == r) continue;
        double f = a(i, c);
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(r, j);
      }
      pivotCol.push_back(int(c));
      ++r;
    }
    if (r < d) throw RankDeficient();
    std::vector<bool> isPivot(n, false);
    for (int c : pivotCol) isPivot[c] = true;
    for (std::size_t freeC = 0; freeC < n; ++freeC) {
      if (isPivot[freeC]) continue;
      Vec w(n, 0.0);
      w[freeC] = 1.0;
      for (std::size_t i = 0; i < pivotCol.size(); ++i) w[pivotCol[i]] = -a(i, freeC);
      double nrm = norm2(w);
      for (double& x : w) x /= nrm;
      for (double x : w) {
        if (x != 0.0) {
          if (x < 0.0)
            for (double& y : w) y = -y;
          break;
        }
      }
      kernel_.push_back(std::move(w));
    }
  }

  Mat entries_;
  std::map<std::vector<int>, double> plucker_;
  std::vector<Vec> kernel_;
  std::vector<std::string> warnings_;
};

// Both sides of det(A L) = sum_I A_I L_I (Cauchy-Binet); used as a self-test
// oracle throughout the test suite.
inline std::pair<double, double> cauchyBinetCheck(const PositiveMatrix& L, const Mat& A) {
  const std::size_t d = L.cols(), n = L.rows();
  if (A.rows != d || A.cols != n) throw std::invalid_argument("cauchyBinetCheck: shape");
  Mat AL(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      CompensatedSum s;
      for (std::size_t l = 0; l < n; ++l) s.add(A(i, l) * L.matrix()(l, j));
      AL(i, j) = s.value();
    }
  double lhs = determinant(AL);
  CompensatedSum rhs;
  std::vector<int> allRows(d);
  std::iota(allRows.begin(), allRows.end(), 0);
  for (auto& [subset, LI] : L.plucker()) {
    double AI = (d <= 4) ? detail::minorLaplace(A, allRows, subset)
                         : detail::minorBareiss(A, allRows, subset);
    rhs.add(AI * LI);
  }
  return {lhs, rhs.value()};
}

struct PrecisionTooLow : NumericError {
  PrecisionTooLow()
      : NumericError("PrecisionTooLow",
                     "requested precision exceeds double working precision minus 10 digits") {}
};

struct IntegerRelation {
  bool found = false;
  std::vector<long long> coefficients;  // sum_i c_i v_i ~ 0 when found
  double residual = 0.0;
};

namespace detail {

// Textbook LLL (delta = 0.99) on the rows of `basis`; enough for the small,
// well-conditioned lattices the heuristic builds.
inline void lllReduce(std::vector<Vec>& basis) {
  const std::size_t m = basis.size();
  auto mu = std::vector<Vec>(m, Vec(m, 0.0));
  std::vector<Vec> star(m);
  Vec normSq(m, 0.0);
  auto gramSchmidt = [&]() {
    for (std::size_t i = 0; i < m; ++i) {
      star[i] = basis[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = normSq[j] > 0 ? dot(basis[i], star[j]) / normSq[j] : 0.0;
        for (std::size_t l = 0; l < star[i].size(); ++l) star[i][l] -= mu[i][j] * star[j][l];
      }
      normSq[i] = dot(star[i], star[i]);
    }
  };
  gramSchmidt();
  const double delta = 0.99;
  std::size_t k = 1;
  int guard = 0;
  while (k < m && ++guard < 100000) {
    for (std::size_t j = k; j-- > 0;) {
      double r = std::round(mu[k][j]);
      if (r != 0.0) {
        for (std::size_t l = 0; l < basis[k].size(); ++l) basis[k][l] -= r * basis[j][l];
        gramSchmidt();
      }
    }
    if (normSq[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * normSq[k - 1]) {
      ++k;
    } else {
      std::swap(basis[k], basis[k - 1]);
      gramSchmidt();
      k = std::max<std::size_t>(1, k - 1);
    }
  }
}

}  // namespace detail

// Lattice-reduction search for an integer relation among `values`.
// "no relation found" is heuristic evidence only; callers must treat it as
// advisory (the CLI prints it as a warning, never a failure).
inline IntegerRelation qIndependenceHeuristic(const Vec& values, int precisionDigits = 5,
                                              double heightBound = 1e6) {
  if (precisionDigits > 5) throw PrecisionTooLow();
  if (precisionDigits < 1) throw std::invalid_argument("precision must be >= 1 digit");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("qIndependenceHeuristic: non-finite value");
  const std::size_t m = values.size();
  IntegerRelation rel;
  if (m < 2) return rel;
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) {
    rel.found = true;
    rel.coefficients.assign(m, 0);
    rel.coefficients[0] = 1;
    return rel;
  }
  const double weight = std::pow(10.0, precisionDigits + 6) / scale;
  std::vector<Vec> basis(m, Vec(m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    basis[i][i] = 1.0;
    basis[i][m] = weight * values[i];
  }
  detail::lllReduce(basis);
  // A genuine relation leaves a roundoff-level residual (~eps * height *
  // scale); pigeonhole near-misses at height H sit near scale/H^2, orders of
  // magnitude above.  Testing at roundoff level separates the two.
  for (auto& row : basis) {
    std::vector<long long> coef(m);
    double height = 0.0;
    bool nonzero = false;
    for (std::size_t i = 0; i < m; ++i) {
      coef[i] = std::llround(row[i]);
      height = std::max(height, std::abs(double(coef[i])));
      nonzero = nonzero || coef[i] != 0;
    }
    if (!nonzero || height > heightBound) continue;
    CompensatedSum s;
    for (std::size_t i = 0; i < m; ++i) s.add(double(coef[i]) * values[i]);
    double resid = std::abs(s.value());
    const double tol = scale * std::max(2e-14, 1e-14 * height);
    if (resid < tol) {
      rel.found = true;
      rel.coefficients = coef;
      rel.residual = resid;
      return rel;
    }
  }
  return rel;
}

}  // namespace fqc
