// Genus-zero strict Lee-Yang curves built from separating rational functions
// (factors f_j with alternating signs h_j = (-1)^(j-1) f_j, composed with the
// Moebius map z -> (z+i)/(z-i)), and the continuous phase lift of the torus
// parametrization.
//
// Conventions, fixed once here and relied on everywhere downstream:
//  * circle coordinate u in [0,1), t(u) = tan(pi(u-1/2)) = -cot(pi u);
//    u = 0 is the point at infinity, t increases with u on (0,1).
//  * psi_j(t) = (h_j + i)/(h_j - i) evaluated homogeneously as
//    (sigma_j P + i Q)/(sigma_j P - i Q) for f_j = P/Q.
//  * lift(u) is the honest lift: exp(2*pi*i*lift(u)) = psi(t(u)) exactly.
//    Its components alternate monotonicity; component j has signed winding
//    -sigma_j * deg f_j.  That alternation is intrinsic: the covering
//    orientation makes coordinate windings alternate, which is what the
//    permutation sign s(I) compensates for in the Fourier integrals.
//  * theta(u) is the componentwise increasing normalization
//    theta_j = -sigma_j * lift_j + const, anchored theta_j(0) in [0,1),
//    with winding deg f_j and theta_j' > 0.
#pragma once

#include <memory>
#include <mutex>
#include <sstream>

#include "fqc/rational.hpp"
#include "fqc/varcomb.hpp"

namespace fqc {

struct InjectivityFailure : ValidationError {
  InjectivityFailure(double t1, double t2)
      : ValidationError("InjectivityFailure", describe(t1, t2)), t1(t1), t2(t2) {}
  static std::string describe(double a, double b) {
    std::ostringstream os;
    os << "psi(t1) = psi(t2) for t1 = " << a << ", t2 = " << b;
    return os.str();
  }
  double t1, t2;
};

struct OffTorusVariationFailure : ValidationError {
  OffTorusVariationFailure(Cplx t, int observed, int expected)
      : ValidationError("OffTorusVariationFailure", describe(t, observed, expected)) {}
  static std::string describe(Cplx t, int observed, int expected) {
    std::ostringstream os;
    os << "var(log|psi(t)|) = " << observed << " != " << expected << " at t = (" << t.real() << ", "
       << t.imag() << "i)";
    return os.str();
  }
};

inline double tOfU(double u) { return -std::cos(kPi * u) / std::sin(kPi * u); }
inline double uOfT(double t) { return 0.5 + std::atan(t) / kPi; }

namespace detail {

// One factor prepared for phase evaluation.  pstar/qstar are the reversed
// polynomials P*(s) = sum_i p_i (-1)^i s^(m-i) with m = max(deg P, deg Q),
// so that f(t) = P*(s)/Q*(s) under s = -1/t; they keep evaluation stable on
// the half of the circle where |t| > 1.
struct FactorData {
  Poly p, q;          // f = p/q
  Poly dp, dq;        // derivatives
  Poly pstar, qstar;  // reversed at common degree m
  Poly dpstar, dqstar;
  double sigma = 1.0;  // (-1)^(j-1)
  int degree = 0;
  std::vector<double> polesU;  // finite poles of f mapped to u, sorted

  static Poly reverseAt(const Poly& p, int m) {
    Poly out(m + 1, 0.0);
    for (int i = 0; i < int(p.size()); ++i) {
      double c = (i % 2 == 0) ? p[i] : -p[i];
      out[m - i] = c;
    }
    return polyTrim(out);
  }

  void prepare() {
    int m = std::max(polyDegree(p), polyDegree(q));
    degree = m;
    dp = polyDerivative(p);
    dq = polyDerivative(q);
    pstar = reverseAt(p, m);
    qstar = reverseAt(q, m);
    dpstar = polyDerivative(pstar);
    dqstar = polyDerivative(qstar);
  }

  // (x, y) ~ (h(t), 1) up to positive scale, in whichever coordinate patch
  // is stable; beta = atan2-angle/pi in [0,1], jumping only at poles of h.
  void xy(double u, double& x, double& y) const {
    if (u > 0.25 && u < 0.75) {
      double t = tOfU(u);
      x = sigma * polyEval(p, t);
      y = polyEval(q, t);
    } else {
      double s = std::tan(kPi * u);  // s = -1/t, small on this patch
      double flip = ((degree % 2 == 1) && s < 0.0) ? -1.0 : 1.0;
      x = flip * sigma * polyEval(pstar, s);
      y = flip * polyEval(qstar, s);
    }
    if (y < 0.0 || (y == 0.0 && x * sigma < 0.0)) {
      x = -x;
      y = -y;
    }
  }

  double beta(double u) const {
    double x, y;
    xy(u, x, y);
    if (y == 0.0) return sigma > 0 ? 0.0 : 1.0;  // exactly at a pole of h
    return std::atan2(y, x) / kPi;
  }

  // d(lift_j)/du = -sigma * (P'Q - PQ')(t) (1+t^2) / (P^2 + Q^2); the starred
  // form is the same expression in s.  Finite everywhere, including u = 0.
  double liftPrime(double u) const {
    if (u > 0.25 && u < 0.75) {
      double t = tOfU(u);
      double P = polyEval(p, t), Q = polyEval(q, t);
      double W = polyEval(dp, t) * Q - P * polyEval(dq, t);
      return -sigma * W * (1.0 + t * t) / (P * P + Q * Q);
    }
    double s = std::tan(kPi * u);
    double P = polyEval(pstar, s), Q = polyEval(qstar, s);
    double W = polyEval(dpstar, s) * Q - P * polyEval(dqstar, s);
    return -sigma * W * (1.0 + s * s) / (P * P + Q * Q);
  }

  int polesBefore(double u) const {
    return int(std::lower_bound(polesU.begin(), polesU.end(), u) - polesU.begin());
  }

  // Continuous on (0,1): beta with the pole-crossing counter.
  double liftInterior(double u) const { return beta(u) - sigma * polesBefore(u); }

  Cplx psi(Cplx t) const {
    Cplx P, Q;
    if (std::abs(t) > 1.0) {
      Cplx s = -1.0 / t;
      P = polyEval(pstar, s);
      Q = polyEval(qstar, s);
    } else {
      P = polyEval(p, t);
      Q = polyEval(q, t);
    }
    Cplx h = sigma * P;
    return (h + Cplx(0, 1) * Q) / (h - Cplx(0, 1) * Q);
  }

  Cplx psiAtU(double u) const {
    double x, y;
    xy(u, x, y);
    double r = std::hypot(x, y);
    // (x + iy)/(x - iy), normalized: exactly unit modulus
    Cplx num(x / r, y / r);
    return num * num;
  }
};

}  // namespace detail

class PhaseLift;

// A validated one-dimensional strict Lee-Yang curve in (P^1)^n.
class LeeYangCurve {
public:
  struct Options {
    int offTorusSamples = 200;
    std::uint64_t seed = kDefaultSeed;
    bool skipChecks = false;  // for deliberately invalid fixtures in tests
  };

  static LeeYangCurve build(const std::vector<RealRationalFunction>& factors,
                            const Options& opts);
  static LeeYangCurve build(const std::vector<RealRationalFunction>& factors) {
    return build(factors, Options{});
  }

  std::size_t ambient() const { return factors_.size(); }
  const std::vector<RealRationalFunction>& factors() const { return factors_; }
  const std::vector<SeparatingCertificate>& certificates() const { return certs_; }
  double sigma(std::size_t j) const { return data_[j].sigma; }

  // d_{[n] \ {i}} = deg f_i (0-based i)
  int multidegreeByFreeIndex(std::size_t i) const { return data_[i].degree; }
  std::vector<int> multidegree() const {
    std::vector<int> d;
    for (auto& f : data_) d.push_back(f.degree);
    return d;
  }
  int totalWinding() const {
    int s = 0;
    for (auto& f : data_) s += f.degree;
    return s;
  }

  Cplx psi(std::size_t j, Cplx t) const { return data_[j].psi(t); }
  Cplx psiAtU(std::size_t j, double u) const { return data_[j].psiAtU(u); }

  const PhaseLift& lift() const { return *lift_; }

  struct OffTorusReport {
    int samples = 0;
    int failures = 0;
  };
  OffTorusReport offTorusVarCheck(int samples, std::uint64_t seed, bool throwOnFailure = true) const;

  const detail::FactorData& factorData(std::size_t j) const { return data_[j]; }

private:
  friend class PhaseLift;
  LeeYangCurve() = default;

  void runInjectivityCheck() const;

  std::vector<RealRationalFunction> factors_;
  std::vector<SeparatingCertificate> certs_;
  std::vector<detail::FactorData> data_;
  std::shared_ptr<PhaseLift> lift_;
};

// Continuous phase lift of the torus parametrization, with cached value
// grids shared across quadratures and root solves.  Owns a copy of the
// factor data, so curves stay freely copyable.
class PhaseLift {
public:
  struct Grid {
    int size = 0;
    // phi[j][l], dphi[j][l] at u = l/size
    std::vector<Vec> phi, dphi;
  };

  explicit PhaseLift(std::vector<detail::FactorData> data) : data_(std::move(data)) {
    n_ = data_.size();
    anchor_.resize(n_);
    offset_.resize(n_);
    signedWinding_.resize(n_);
    thetaShift_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      signedWinding_[j] = -data_[j].sigma * data_[j].degree;
      double a = limitAtZero(j);
      offset_[j] = (a >= 1.0) ? 1.0 : 0.0;
      anchor_[j] = a - offset_[j];
      double th = -data_[j].sigma * anchor_[j];
      thetaShift_[j] = -std::floor(th);
    }
    anchorPrime_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) anchorPrime_[j] = data_[j].liftPrime(0.0);
  }

  std::size_t size() const { return n_; }

  // Honest lift: exp(2 pi i lift(u)) = psi(t(u)); component j is strictly
  // monotone with slope sign -sigma_j and winding -sigma_j deg f_j.
  double lift(std::size_t j, double u) const {
    double wrap = std::floor(u);
    double v = u - wrap;
    double base = (v == 0.0) ? anchor_[j] : data_[j].liftInterior(v) - offset_[j];
    return base + wrap * signedWinding_[j];
  }
  Vec lift(double u) const {
    Vec out(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = lift(j, u);
    return out;
  }
  double liftPrime(std::size_t j, double u) const {
    double v = u - std::floor(u);
    return (v == 0.0) ? anchorPrime_[j] : data_[j].liftPrime(v);
  }
  Vec liftPrime(double u) const {
    Vec out(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = liftPrime(j, u);
    return out;
  }
  const Vec& signedWinding() const { return signedWinding_; }

  // Increasing normalization: theta_j(0) in [0,1), theta_j' > 0, winding
  // deg f_j.  exp(2 pi i theta_j) equals psi_j for even j and its conjugate
  // for odd j; the honest lift above is what the Fourier integrals use.
  double theta(std::size_t j, double u) const {
    return -data_[j].sigma * lift(j, u) + thetaShift_[j];
  }
  double thetaPrime(std::size_t j, double u) const {
    return -data_[j].sigma * liftPrime(j, u);
  }
  std::vector<int> winding() const {
    std::vector<int> w;
    for (auto& f : data_) w.push_back(f.degree);
    return w;
  }

  std::shared_ptr<const Grid> grid(int N) const {
    {
      std::lock_guard<std::mutex> lock(cacheMutex_);
      auto it = cache_.find(N);
      if (it != cache_.end()) return it->second;
    }
    auto g = std::make_shared<Grid>();
    g->size = N;
    g->phi.assign(n_, Vec(N));
    g->dphi.assign(n_, Vec(N));
    for (int l = 0; l < N; ++l) {
      double u = double(l) / N;
      for (std::size_t j = 0; j < n_; ++j) {
        g->phi[j][l] = lift(j, u);
        g->dphi[j][l] = liftPrime(j, u);
      }
    }
    std::lock_guard<std::mutex> lock(cacheMutex_);
    auto [it, inserted] = cache_.emplace(N, g);
    return it->second;
  }

private:
  double limitAtZero(std::size_t j) const {
    // beta as u -> 0+, i.e. t -> -infinity and s = -1/t -> 0+ (no patch
    // flip for positive s).  When Q*(0) = 0 (pole of f at infinity) the
    // first-order behavior y ~ Q*'(0) s decides the branch.
    const auto& f = data_[j];
    double x = f.sigma * polyEval(f.pstar, 0.0);
    double y = polyEval(f.qstar, 0.0);
    if (y > 0.0) return std::atan2(y, x) / kPi;
    if (y < 0.0) return std::atan2(-y, -x) / kPi;
    double y1 = polyEval(polyDerivative(f.qstar), 0.0);
    double xeff = (y1 >= 0.0) ? x : -x;
    return xeff > 0.0 ? 0.0 : 1.0;
  }

  std::vector<detail::FactorData> data_;
  std::size_t n_ = 0;
  Vec anchor_, anchorPrime_, offset_, signedWinding_, thetaShift_;
  mutable std::mutex cacheMutex_;
  mutable std::map<int, std::shared_ptr<const Grid>> cache_;
};

inline LeeYangCurve LeeYangCurve::build(const std::vector<RealRationalFunction>& factors,
                                        const Options& opts) {
  if (factors.size() < 2)
    throw ValidationError("TooFewFactors", "a Lee-Yang curve needs n >= 2 factors");
  LeeYangCurve c;
  c.factors_ = factors;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    auto cert = validateSeparating(factors[j]);
    if (cert.orientation < 0)
      throw ValidationError("NotSeparating",
                            "factor " + std::to_string(j + 1) +
                                " has Im f(i) < 0; negate it so that f itself is separating");
    c.certs_.push_back(cert);
    detail::FactorData fd;
    fd.p = factors[j].num;
    fd.q = factors[j].den;
    fd.sigma = (j % 2 == 0) ? 1.0 : -1.0;
    fd.prepare();
    for (double q : cert.poles) fd.polesU.push_back(uOfT(q));
    std::sort(fd.polesU.begin(), fd.polesU.end());
    c.data_.push_back(std::move(fd));
  }
  c.lift_ = std::make_shared<PhaseLift>(c.data_);
  if (!opts.skipChecks) {
    c.runInjectivityCheck();
    c.offTorusVarCheck(opts.offTorusSamples, opts.seed);
  }
  return c;
}

// Sampled injectivity check of psi on R u {oo}.  If some factor has degree
// one, that coordinate alone is injective on the circle and the check is
// exact.  Otherwise: 2-D Newton on the first two lift components from a
// 200 x 200 seed grid of pairs; a converged collision that matches every
// coordinate modulo Z is a failure.
inline void LeeYangCurve::runInjectivityCheck() const {
  for (auto& f : data_)
    if (f.degree == 1) return;
  const PhaseLift& pl = *lift_;
  const int G = 200;
  const double minSep = 1e-6;
  for (int i1 = 0; i1 < G; ++i1) {
    for (int i2 = i1 + 1; i2 < G; ++i2) {
      double u1 = (i1 + 0.3) / G, u2 = (i2 + 0.7) / G;
      double k1 = std::round(pl.lift(0, u2) - pl.lift(0, u1));
      double k2 = std::round(pl.lift(1, u2) - pl.lift(1, u1));
      bool converged = false;
      for (int it = 0; it < 25; ++it) {
        double F1 = pl.lift(0, u2) - pl.lift(0, u1) - k1;
        double F2 = pl.lift(1, u2) - pl.lift(1, u1) - k2;
        if (std::abs(F1) + std::abs(F2) < 1e-12) {
          converged = true;
          break;
        }
        double a = -pl.liftPrime(0, u1), b = pl.liftPrime(0, u2);
        double cjac = -pl.liftPrime(1, u1), d = pl.liftPrime(1, u2);
        double det = a * d - b * cjac;
        if (std::abs(det) < 1e-14) break;
        double s1 = (d * F1 - b * F2) / det;
        double s2 = (-cjac * F1 + a * F2) / det;
        double damp = 1.0;
        double lim = std::max(std::abs(s1), std::abs(s2));
        if (lim > 0.02) damp = 0.02 / lim;
        u1 -= damp * s1;
        u2 -= damp * s2;
      }
      if (!converged) continue;
      double sep = std::abs(u2 - u1);
      sep = std::min(sep - std::floor(sep), 1.0 - (sep - std::floor(sep)));
      if (sep <= minSep) continue;
      bool allMatch = true;
      for (std::size_t j = 0; j < data_.size(); ++j) {
        double diff = pl.lift(j, u2) - pl.lift(j, u1);
        if (std::abs(diff - std::round(diff)) > 1e-6) {
          allMatch = false;
          break;
        }
      }
      if (allMatch) throw InjectivityFailure(tOfU(u1 - std::floor(u1)), tOfU(u2 - std::floor(u2)));
    }
  }
}

inline LeeYangCurve::OffTorusReport LeeYangCurve::offTorusVarCheck(int samples, std::uint64_t seed,
                                                                   bool throwOnFailure) const {
  Rng rng(seed);
  std::uniform_real_distribution<double> re(-1e3, 1e3);
  std::uniform_real_distribution<double> im(1e-3, 1e3);
  OffTorusReport report;
  const int expected = int(ambient()) - 1;
  for (int s = 0; s < samples; ++s) {
    double x = re(rng);
    double y = im(rng) * (s % 2 == 0 ? 1.0 : -1.0);
    Cplx t(x, y);
    Vec logabs(ambient());
    for (std::size_t j = 0; j < ambient(); ++j) logabs[j] = std::log(std::abs(psi(j, t)));
    ++report.samples;
    if (var(logabs) != expected) {
      ++report.failures;
      if (throwOnFailure) throw OffTorusVariationFailure(t, var(logabs), expected);
    }
  }
  return report;
}

// Product of strict Lee-Yang curve blocks; a Lee-Yang variety of codimension
// sum (n_i - 1).  Multidegree vanishes on index sets that fail to leave
// exactly one free coordinate per block.
class ProductCurve {
public:
  explicit ProductCurve(std::vector<LeeYangCurve> blocks) : blocks_(std::move(blocks)) {
    offsets_.push_back(0);
    for (auto& b : blocks_) offsets_.push_back(offsets_.back() + int(b.ambient()));
  }

  std::size_t blockCount() const { return blocks_.size(); }
  const LeeYangCurve& block(std::size_t i) const { return blocks_[i]; }
  int ambient() const { return offsets_.back(); }
  int codimension() const { return ambient() - int(blocks_.size()); }
  int blockOfIndex(int j) const {
    for (std::size_t i = 0; i + 1 < offsets_.size(); ++i)
      if (j < offsets_[i + 1]) return int(i);
    throw std::out_of_range("blockOfIndex");
  }
  int localIndex(int j) const { return j - offsets_[blockOfIndex(j)]; }

  // d_J for J a d-subset of [n] (0-based).  Nonzero exactly when the
  // complement has one index per block; then it is the product of the
  // per-block degrees at the free index.
  int multidegree(const std::vector<int>& J) const {
    std::vector<bool> inJ(ambient(), false);
    for (int j : J) inJ[j] = true;
    long val = 1;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      int freeCount = 0, freeIdx = -1;
      for (int j = offsets_[b]; j < offsets_[b + 1]; ++j)
        if (!inJ[j]) {
          ++freeCount;
          freeIdx = j - offsets_[b];
        }
      if (freeCount != 1) return 0;
      val *= blocks_[b].multidegreeByFreeIndex(freeIdx);
    }
    return int(val);
  }

private:
  std::vector<LeeYangCurve> blocks_;
  std::vector<int> offsets_;
};

inline ProductCurve productCurve(std::vector<LeeYangCurve> blocks) {
  if (blocks.empty()) throw ValidationError("EmptyProduct", "need at least one block");
  return ProductCurve(std::move(blocks));
}

}  // namespace fqc
