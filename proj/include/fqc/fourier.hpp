// Fourier transforms of the coordinate-volume measures on the torus part of
// a Lee-Yang curve, the minor-weighted coefficients c_{L,k}, per-site
// coefficients c_xi, and the Poisson-style summation check.
//
// For a curve (c = 1) the working formula, in terms of the honest lift phi
// (see curve.hpp), is
//
//   mhat_{i}(k) = (-1)^i  int_0^1  e^{-2 pi i <phi(u), k>} phi_i'(u) du
//
// with i counted 1-based; the (-1)^i absorbs the permutation sign s({i})
// together with the traversal orientation, so that mhat_{i}(0) = deg f_i
// is positive, pinning the orientation the multidegree integrals assume.
// Quadrature is the periodic trapezoid rule with node doubling; the
// integrand is analytic and 1-periodic, so convergence is spectral.
//
// For curves whose factors are all degree-one polynomials the same integral
// is a rational contour integral evaluated exactly by residues, closing the
// line in whichever half-plane holds fewer poles.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "fqc/curve.hpp"
#include "fqc/spectrum.hpp"

namespace fqc {

struct QuadratureStall : NumericError {
  QuadratureStall(double err, int nodes)
      : NumericError("QuadratureStall", describe(err, nodes)) {}
  static std::string describe(double err, int nodes) {
    std::ostringstream os;
    os << "node-doubling plateaued at error " << err << " with " << nodes << " nodes";
    return os.str();
  }
};

struct UnsupportedDegree : ValidationError {
  UnsupportedDegree()
      : ValidationError("UnsupportedDegree",
                        "residue oracle requires every factor to be a degree-one polynomial") {}
};

struct TorusCoefficient {
  std::vector<int> I;  // 0-based index set, |I| = codimension
  IVec k;
  Cplx value;
  std::string method;  // "quadrature" | "residue" | "product"
  double err = 0.0;
};

namespace detail {

// All n coordinate integrals for one k at once (they share the phase
// factor), by trapezoid sums on the shared lift grids.
struct MhatQuad {
  std::vector<Cplx> values;
  double err = 0.0;
  int nodes = 0;
};

inline MhatQuad mhatQuadratureAll(const LeeYangCurve& curve, const IVec& k,
                                  double target = 1e-12) {
  const std::size_t n = curve.ambient();
  const PhaseLift& pl = curve.lift();
  long maxAbsK = 0;
  for (long kj : k) maxAbsK = std::max(maxAbsK, std::labs(kj));
  double n0 = 256.0 * std::sqrt(1.0 + double(curve.totalWinding()) * double(maxAbsK));
  // round up to 256 * 2^m so doubling chains coincide across k and the
  // shared lift grids get reused
  int N = 256;
  while (N < n0) N *= 2;
  // beyond this size stream lift evaluations instead of caching full grids
  const int maxCachedNodes = 1 << 18;
  auto evalAt = [&](int nodes) {
    std::vector<Cplx> acc(n, Cplx(0, 0));
    if (nodes <= maxCachedNodes) {
      auto grid = pl.grid(nodes);
      for (int l = 0; l < nodes; ++l) {
        double phase = 0.0;
        for (std::size_t j = 0; j < n; ++j) phase += grid->phi[j][l] * double(k[j]);
        Cplx e = std::polar(1.0, -kTwoPi * phase);
        for (std::size_t j = 0; j < n; ++j) acc[j] += e * grid->dphi[j][l];
      }
    } else {
      for (int l = 0; l < nodes; ++l) {
        double u = double(l) / nodes;
        double phase = 0.0;
        Vec dphi(n);
        for (std::size_t j = 0; j < n; ++j) {
          phase += pl.lift(j, u) * double(k[j]);
          dphi[j] = pl.liftPrime(j, u);
        }
        Cplx e = std::polar(1.0, -kTwoPi * phase);
        for (std::size_t j = 0; j < n; ++j) acc[j] += e * dphi[j];
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      acc[j] /= double(nodes);
      if (j % 2 == 0) acc[j] = -acc[j];  // (-1)^i, i = j+1 one-based
    }
    return acc;
  };
  std::vector<Cplx> prev = evalAt(N);
  double err = std::numeric_limits<double>::infinity();
  int stalls = 0;
  const int maxNodes = 1 << 22;
  while (true) {
    int N2 = 2 * N;
    if (N2 > maxNodes) {
      if (err > 1e-9) throw QuadratureStall(err, N);
      break;
    }
    std::vector<Cplx> next = evalAt(N2);
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(next[j] - prev[j]));
    bool improved = diff < 0.5 * err;
    double prevErr = err;
    err = diff;
    prev = std::move(next);
    N = N2;
    if (err < target) break;
    if (!improved && prevErr < std::numeric_limits<double>::infinity()) {
      if (++stalls >= 3) {
        if (err > 1e-9) throw QuadratureStall(err, N);
        break;
      }
    } else {
      stalls = 0;
    }
  }
  return {std::move(prev), err, N};
}

// ---- residue oracle -------------------------------------------------------

using BigRational = boost::multiprecision::cpp_rational;

// Gaussian rational a + b i, exact field arithmetic.
struct QI {
  BigRational re, im;
  QI() = default;
  QI(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}
  static QI fromInt(long v) { return {BigRational(v), BigRational(0)}; }
  QI operator+(const QI& o) const { return {re + o.re, im + o.im}; }
  QI operator-(const QI& o) const { return {re - o.re, im - o.im}; }
  QI operator*(const QI& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  QI operator/(const QI& o) const {
    BigRational n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  QI operator-() const { return {-re, -im}; }
  bool isZero() const { return re == 0 && im == 0; }
  Cplx toComplex() const { return {double(re), double(im)}; }
};

template <typename F>
F fieldFromLong(long v);
template <>
inline Cplx fieldFromLong<Cplx>(long v) {
  return Cplx(double(v), 0.0);
}
template <>
inline QI fieldFromLong<QI>(long v) {
  return QI::fromInt(v);
}

inline bool fieldIsZero(const Cplx& v) { return std::abs(v) < 1e-12; }
inline bool fieldIsZero(const QI& v) { return v.isZero(); }
inline Cplx fieldToComplex(const Cplx& v) { return v; }
inline Cplx fieldToComplex(const QI& v) { return v.toComplex(); }
inline int fieldImSign(const Cplx& v) { return signum(v.imag()); }
inline int fieldImSign(const QI& v) { return v.im > 0 ? 1 : (v.im < 0 ? -1 : 0); }

template <typename F>
F fieldPow(F base, long e) {
  if (e < 0) return fieldFromLong<F>(1) / fieldPow(base, -e);
  F out = fieldFromLong<F>(1);
  while (e > 0) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

// Residue at `pole` (order `order`) of  prod_l (t - root_l)^{exp_l}  where
// the pole itself is excluded from the product: the coefficient of
// s^(order-1) in the Taylor expansion of the remaining product at the pole.
template <typename F>
F residueOfProduct(const std::vector<std::pair<F, long>>& factors, const F& pole, long order) {
  std::vector<F> series(order, fieldFromLong<F>(0));
  series[0] = fieldFromLong<F>(1);
  for (auto& [root, e] : factors) {
    // (base + s)^e with base = pole - root, as a truncated binomial series
    F base = pole - root;
    std::vector<F> bin(order, fieldFromLong<F>(0));
    bin[0] = fieldPow(base, e);
    F c = bin[0];
    for (long idx = 1; idx < order; ++idx) {
      c = c * fieldFromLong<F>(e - idx + 1) / fieldFromLong<F>(idx) / base;
      bin[idx] = c;
    }
    std::vector<F> out(order, fieldFromLong<F>(0));
    for (long x = 0; x < order; ++x)
      for (long y = 0; x + y < order; ++y) out[x + y] = out[x + y] + series[x] * bin[y];
    series = std::move(out);
  }
  return series[order - 1];
}

template <typename F>
struct LinearFactorRoots {
  F zero, pole;  // root of g_j and pole of g_j
};

// Sum over the chosen half-plane of the residues of
//   prod_j g_j^{-k_j} * (g_i'/g_i)
// split as term(zero_i) - term(pole_i); both terms must close in the same
// half-plane (their 1/t arcs cancel only jointly).
template <typename F>
Cplx residueMhat(const std::vector<LinearFactorRoots<F>>& roots, std::size_t i, const IVec& k,
                 int iOneBased) {
  const std::size_t n = roots.size();
  // Shared factor list of prod_j g_j^{-k_j}, exponents merged per location.
  std::vector<std::pair<F, long>> shared;
  auto addFactor = [&](std::vector<std::pair<F, long>>& list, const F& loc, long e) {
    for (auto& [l, le] : list)
      if (fieldIsZero(l - loc)) {
        le += e;
        return;
      }
    list.emplace_back(loc, e);
  };
  for (std::size_t j = 0; j < n; ++j) {
    if (k[j] == 0) continue;
    addFactor(shared, roots[j].zero, -k[j]);
    addFactor(shared, roots[j].pole, +k[j]);
  }
  // g_i'/g_i splits the integrand into two terms with an extra simple pole.
  struct Term {
    std::vector<std::pair<F, long>> factors;
    double coef;
  };
  std::vector<Term> terms;
  for (auto [extra, coef] : {std::pair<F, double>{roots[i].zero, +1.0}, {roots[i].pole, -1.0}}) {
    Term t;
    t.factors = shared;
    addFactor(t.factors, extra, -1);
    t.coef = coef;
    terms.push_back(std::move(t));
  }
  // Each term decays only like 1/t, so both must close in the SAME
  // half-plane (the two arc contributions cancel jointly).  Pick the side
  // with fewer poles, counted with multiplicity; ties go to the lower one.
  long upper = 0, lower = 0;
  for (auto& t : terms)
    for (auto& [loc, e] : t.factors)
      if (e < 0) (fieldImSign(loc) > 0 ? upper : lower) += -e;
  const bool useUpper = upper < lower;
  Cplx total(0, 0);
  for (auto& t : terms) {
    for (std::size_t l = 0; l < t.factors.size(); ++l) {
      auto& [loc, e] = t.factors[l];
      if (e >= 0) continue;
      int hs = fieldImSign(loc);
      if ((useUpper && hs <= 0) || (!useUpper && hs >= 0)) continue;
      std::vector<std::pair<F, long>> others;
      for (std::size_t l2 = 0; l2 < t.factors.size(); ++l2)
        if (l2 != l) others.push_back(t.factors[l2]);
      F res = residueOfProduct(others, loc, -e);
      total += t.coef * fieldToComplex(res);
    }
  }
  double orient = (iOneBased % 2 == 0) ? 1.0 : -1.0;  // (-1)^i
  if (!useUpper) orient = -orient;                    // clockwise closure
  return orient * total;
}

}  // namespace detail

// mhat_{{i}}(k) by adaptive quadrature; i is 0-based in the API.
inline TorusCoefficient mhat(const LeeYangCurve& curve, std::size_t i, const IVec& k) {
  auto q = detail::mhatQuadratureAll(curve, k);
  TorusCoefficient tc;
  tc.I = {int(i)};
  tc.k = k;
  tc.value = q.values[i];
  tc.method = "quadrature";
  tc.err = q.err;
  return tc;
}

inline std::vector<Cplx> mhatAll(const LeeYangCurve& curve, const IVec& k, double* errOut = nullptr) {
  auto q = detail::mhatQuadratureAll(curve, k);
  if (errOut) *errOut = q.err;
  return q.values;
}

// Exact contour-integral evaluation for curves whose factors are degree-one
// polynomials c t + b (constant denominator).  Uses Gaussian-rational
// arithmetic when every coefficient is a small integer, doubles otherwise.
inline Cplx mhatResidueOracle(const LeeYangCurve& curve, std::size_t i, const IVec& k) {
  const std::size_t n = curve.ambient();
  bool integral = true;
  std::vector<std::pair<double, double>> linear;  // (b, c): f = c t + b
  for (std::size_t j = 0; j < n; ++j) {
    const auto& f = curve.factors()[j];
    if (polyDegree(f.num) != 1 || polyDegree(f.den) != 0) throw UnsupportedDegree();
    double b = f.num[0] / f.den[0];
    double c = f.num[1] / f.den[0];
    linear.emplace_back(b, c);
    if (b != std::floor(b) || c != std::floor(c) || std::abs(b) > 1e6 || std::abs(c) > 1e6)
      integral = false;
  }
  const int iOne = int(i) + 1;
  if (integral) {
    using detail::QI;
    std::vector<detail::LinearFactorRoots<QI>> roots(n);
    for (std::size_t j = 0; j < n; ++j) {
      auto [b, c] = linear[j];
      detail::BigRational a = detail::BigRational(-(long long)(b)) / (long long)(c);
      detail::BigRational invc = detail::BigRational(1) / (long long)(c);
      detail::BigRational s = (j % 2 == 0) ? invc : -invc;  // sigma_j / c_j
      roots[j].zero = QI(a, -s);
      roots[j].pole = QI(a, s);
    }
    return detail::residueMhat(roots, i, k, iOne);
  }
  std::vector<detail::LinearFactorRoots<Cplx>> roots(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto [b, c] = linear[j];
    double a = -b / c;
    double s = ((j % 2 == 0) ? 1.0 : -1.0) / c;
    roots[j].zero = Cplx(a, -s);
    roots[j].pole = Cplx(a, s);
  }
  return detail::residueMhat(roots, i, k, iOne);
}

// Blockwise mhat for a product curve, c = r = number of blocks.  Factors
// across blocks by Fubini; vanishes when two indices land in one block.
inline Cplx mhatProduct(const ProductCurve& pc, const std::vector<int>& I, const IVec& k) {
  if (I.size() != pc.blockCount())
    throw std::invalid_argument("mhatProduct: |I| must equal the number of blocks");
  std::vector<int> perBlock(pc.blockCount(), -1);
  for (int idx : I) {
    int b = pc.blockOfIndex(idx);
    if (perBlock[b] != -1) return Cplx(0, 0);
    perBlock[b] = pc.localIndex(idx);
  }
  Cplx out(1, 0);
  int offset = 0;
  for (std::size_t b = 0; b < pc.blockCount(); ++b) {
    const auto& blk = pc.block(b);
    IVec kb(k.begin() + offset, k.begin() + offset + blk.ambient());
    out *= mhatAll(blk, kb)[perBlock[b]];
    offset += int(blk.ambient());
  }
  return out;
}

// c_{L,k} = sum_I L_I mhat_{[n] \ I}(k); zero immediately when var(k) >= d.
inline Cplx cLk(const LeeYangCurve& curve, const PositiveMatrix& L, const IVec& k,
                double* errOut = nullptr) {
  Vec kd(k.begin(), k.end());
  if (var(kd) >= int(L.cols())) {
    if (errOut) *errOut = 0.0;
    return Cplx(0, 0);
  }
  double err = 0.0;
  auto values = mhatAll(curve, k, &err);
  const int n = int(curve.ambient());
  Cplx out(0, 0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> I;  // [n] minus {i}
    for (int j = 0; j < n; ++j)
      if (j != i) I.push_back(j);
    out += L.minor(I) * values[i];
  }
  if (errOut) {
    double minorSum = 0;
    for (auto& [s, v] : L.plucker()) minorSum += v;
    *errOut = err * minorSum;
  }
  return out;
}

inline Cplx cLkProduct(const ProductCurve& pc, const PositiveMatrix& L, const IVec& k) {
  Vec kd(k.begin(), k.end());
  const int n = pc.ambient(), d = int(L.cols());
  if (var(kd) >= d) return Cplx(0, 0);
  Cplx out(0, 0);
  for (auto& I : subsetsOfSize(n, d)) {
    std::vector<int> comp;
    for (int j = 0; j < n; ++j)
      if (std::find(I.begin(), I.end(), j) == I.end()) comp.push_back(j);
    out += L.minor(I) * mhatProduct(pc, comp, k);
  }
  return out;
}

// Density c_0 = sum_I L_I d_I from the multidegree alone.
inline double densityFromMultidegree(const LeeYangCurve& curve, const PositiveMatrix& L) {
  const int n = int(curve.ambient());
  CompensatedSum s;
  for (int i = 0; i < n; ++i) {
    std::vector<int> I;
    for (int j = 0; j < n; ++j)
      if (j != i) I.push_back(j);
    s.add(L.minor(I) * curve.multidegreeByFreeIndex(i));
  }
  return s.value();
}

inline double densityFromMultidegree(const ProductCurve& pc, const PositiveMatrix& L) {
  CompensatedSum s;
  for (auto& [I, LI] : L.plucker()) s.add(LI * pc.multidegree(I));
  return s.value();
}

struct SpectrumAtomWithCoefficient {
  Vec xi;
  std::vector<IVec> contributors;
  std::vector<Cplx> perContributor;
  Cplx c;
  bool numericallyZero = false;  // |c| < 1e-10: kept, marked, not fabricated
  std::string method;
  double err = 0.0;
};

// c_xi by summing c_{L,k} over the (usually singleton) preimage list; atoms
// sorted by |xi| with lexicographic ties.
template <typename CurveLike, typename CoefFn>
std::vector<SpectrumAtomWithCoefficient> coefficientsOnWindowImpl(const CurveLike&,
                                                                  const SpectrumSupport& support,
                                                                  CoefFn&& coef) {
  std::vector<SpectrumAtomWithCoefficient> out;
  std::vector<bool> used(support.atoms.size(), false);
  std::vector<std::vector<std::size_t>> groups;
  for (auto& g : support.collisions) {
    groups.push_back(g);
    for (auto idx : g) used[idx] = true;
  }
  for (std::size_t i = 0; i < support.atoms.size(); ++i)
    if (!used[i]) groups.push_back({i});
  for (auto& g : groups) {
    SpectrumAtomWithCoefficient atom;
    atom.xi = support.atoms[g.front()].xi;
    Cplx sum(0, 0);
    double err = 0.0;
    for (auto idx : g) {
      double e = 0.0;
      Cplx c = coef(support.atoms[idx].k, &e);
      atom.contributors.push_back(support.atoms[idx].k);
      atom.perContributor.push_back(c);
      sum += c;
      err += e;
    }
    atom.c = sum;
    atom.err = err;
    atom.numericallyZero = std::abs(sum) < 1e-10;
    out.push_back(std::move(atom));
  }
  std::sort(out.begin(), out.end(),
            [](const SpectrumAtomWithCoefficient& a, const SpectrumAtomWithCoefficient& b) {
              double na = 0, nb = 0;
              for (double v : a.xi) na += v * v;
              for (double v : b.xi) nb += v * v;
              if (na != nb) return na < nb;
              return a.xi < b.xi;
            });
  return out;
}

inline std::vector<SpectrumAtomWithCoefficient> coefficientsOnWindow(
    const LeeYangCurve& curve, const PositiveMatrix& L, const SpectrumSupport& support) {
  return coefficientsOnWindowImpl(curve, support, [&](const IVec& k, double* e) {
    return cLk(curve, L, k, e);
  });
}

inline std::vector<SpectrumAtomWithCoefficient> coefficientsOnWindow(
    const ProductCurve& pc, const PositiveMatrix& L, const SpectrumSupport& support) {
  return coefficientsOnWindowImpl(pc, support, [&](const IVec& k, double* e) {
    if (e) *e = 0.0;
    return cLkProduct(pc, L, k);
  });
}

}  // namespace fqc
