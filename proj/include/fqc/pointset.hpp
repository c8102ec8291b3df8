// Enumeration of Lambda(X, L) = { x : exp(2 pi i L x) in X } inside a
// window, plus Delone statistics, line probes and almost-period scans.
//
// A point corresponds to a solution of  L x = lift(u) + k  with k integer:
// for the curve case (d = n-1) the left-kernel generator w of L reduces
// each candidate k to the scalar equation g_k(u) = <w, lift(u) + k> = 0 on
// u in [0,1).  Because w alternates strictly (var w = n-1) and the lift
// slopes alternate the opposite way, every term of <w, lift'> has the same
// sign: g_k is strictly monotone and drops by exactly the density c_0 per
// period, so grid bracketing plus bisection-Newton finds every root.
#pragma once

#include "fqc/curve.hpp"
#include "fqc/varcomb.hpp"

namespace fqc {

struct ResidualFailure : NumericError {
  ResidualFailure(double residual, double tol)
      : NumericError("ResidualFailure", describe(residual, tol)) {}
  static std::string describe(double r, double tol) {
    std::ostringstream os;
    os << "solved root has residual " << r << " above tolerance " << tol
       << " (conditioning problem)";
    return os.str();
  }
};

struct TooFewPoints : NumericError {
  TooFewPoints() : NumericError("TooFewPoints", "need at least 2 points") {}
};

struct QuasicrystalPoint {
  Vec x;
  double residual = 0.0;
  IVec k;
  double u = 0.0;   // curve parameter (first block parameter for products)
  double u2 = 0.0;  // second block parameter (products only)
};

struct QuasicrystalWindow {
  std::vector<QuasicrystalPoint> points;  // sorted lexicographically by x
  Box window;
  double minGap = 0.0;
  double coveringRadiusEstimate = 0.0;
  std::vector<std::string> warnings;
};

struct EnumerateOptions {
  double residualTol = 1e-9;
  int gridMin = 256;
  int gridPerWinding = 64;
};

namespace detail {

inline double pointResidual(const LeeYangCurve& curve, const PositiveMatrix& L, const Vec& x,
                            double u) {
  Vec lx = L.apply(x);
  double v = u - std::floor(u);
  double worst = 0.0;
  for (std::size_t j = 0; j < curve.ambient(); ++j) {
    Cplx lhs = std::polar(1.0, kTwoPi * lx[j]);
    worst = std::max(worst, std::abs(lhs - curve.psiAtU(j, v)));
  }
  return worst;
}

// lexicographic sort + union-find dedup at tol * diam(window)
inline void dedupeAndSort(QuasicrystalWindow& qw) {
  auto& pts = qw.points;
  std::sort(pts.begin(), pts.end(),
            [](const QuasicrystalPoint& a, const QuasicrystalPoint& b) { return a.x < b.x; });
  if (pts.empty()) return;
  const double tol = 1e-8 * qw.window.diameter();
  UnionFind uf(pts.size());
  // neighbors in lexicographic order are enough: cluster radius << minGap
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size() && pts[j].x[0] - pts[i].x[0] <= tol; ++j) {
      double dist = 0;
      for (std::size_t c = 0; c < pts[i].x.size(); ++c)
        dist = std::max(dist, std::abs(pts[i].x[c] - pts[j].x[c]));
      if (dist <= tol) uf.unite(i, j);
    }
  }
  std::vector<QuasicrystalPoint> out;
  std::map<std::size_t, std::size_t> clusterSize;
  for (std::size_t i = 0; i < pts.size(); ++i) ++clusterSize[uf.find(i)];
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::size_t root = uf.find(i);
    if (root == i) {
      out.push_back(pts[i]);
      if (clusterSize[root] > 2) {
        std::ostringstream os;
        os << "dedup cluster of size " << clusterSize[root] << " near (";
        for (std::size_t c = 0; c < pts[i].x.size(); ++c) os << (c ? "," : "") << pts[i].x[c];
        os << ")";
        qw.warnings.push_back(os.str());
      }
    }
  }
  pts = std::move(out);
}

// componentwise interval of (L x) over the window box
inline std::vector<std::pair<double, double>> imageIntervals(const PositiveMatrix& L,
                                                             const Box& window) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t j = 0; j < L.rows(); ++j) {
    double lo = 0, hi = 0;
    for (std::size_t c = 0; c < L.cols(); ++c) {
      double a = L.matrix()(j, c);
      lo += std::min(a * window.range[c].first, a * window.range[c].second);
      hi += std::max(a * window.range[c].first, a * window.range[c].second);
    }
    out.push_back({lo, hi});
  }
  return out;
}

}  // namespace detail

inline QuasicrystalWindow enumeratePoints(const LeeYangCurve& curve, const PositiveMatrix& L,
                                          const Box& window, const EnumerateOptions& opts = {}) {
  const int n = int(L.rows());
  const int d = int(L.cols());
  if (d != n - 1)
    throw std::invalid_argument("enumeratePoints: requires codimension d = n-1 (curve case)");
  if (int(curve.ambient()) != n) throw std::invalid_argument("enumeratePoints: curve/L mismatch");
  if (int(window.dim()) != d) throw std::invalid_argument("enumeratePoints: window dim");

  const PhaseLift& pl = curve.lift();
  const Vec& w = L.leftKernel().at(0);

  QuasicrystalWindow qw;
  qw.window = window;

  // lift range over [0,1): componentwise interval [min(phi0, phi0+W), max]
  Vec phi0 = pl.lift(0.0);
  const Vec& W = pl.signedWinding();
  std::vector<std::pair<double, double>> phiRange(n);
  for (int j = 0; j < n; ++j) {
    phiRange[j] = {std::min(phi0[j], phi0[j] + W[j]), std::max(phi0[j], phi0[j] + W[j])};
  }
  auto img = detail::imageIntervals(L, window);
  std::vector<long> kLo(n), kHi(n);
  for (int j = 0; j < n; ++j) {
    kLo[j] = long(std::floor(img[j].first - phiRange[j].second)) - 1;
    kHi[j] = long(std::ceil(img[j].second - phiRange[j].first)) + 1;
  }

  // g_k has a root iff  -<w,k>  lies in the range of <w, lift(u)>
  double wphi0 = dot(w, phi0);
  double drop = dot(w, W);  // = -(density) up to the kernel normalization
  double gLo = std::min(wphi0, wphi0 + drop) - 1e-9;
  double gHi = std::max(wphi0, wphi0 + drop) + 1e-9;

  const int N = std::max(opts.gridMin, opts.gridPerWinding * curve.totalWinding());
  auto grid = pl.grid(N);
  Vec wphi(N);
  for (int l = 0; l < N; ++l) {
    double s = 0;
    for (int j = 0; j < n; ++j) s += w[j] * grid->phi[j][l];
    wphi[l] = s;
  }

  // odometer over the first n-1 coordinates of k; the last coordinate
  // range comes from the slab condition on <w, k> (w_n != 0: strict
  // alternation guarantees it)
  std::vector<long> cur(kLo.begin(), kLo.end() - 1);
  bool done = false;
  while (!done) {
    double partial = 0;
    for (int j = 0; j < n - 1; ++j) partial += w[j] * double(cur[j]);
    double wn = w[n - 1];
    double a = (-gHi - partial) / wn, b = (-gLo - partial) / wn;
    if (a > b) std::swap(a, b);
    long lastLo = std::max(kLo[n - 1], long(std::floor(a)));
    long lastHi = std::min(kHi[n - 1], long(std::ceil(b)));
    for (long last = lastLo; last <= lastHi; ++last) {
      IVec k(cur.begin(), cur.end());
      k.push_back(last);
      double wk = partial + wn * double(last);
      // bracket the (single, by monotonicity) sign change of g_k on the grid
      double prev = wphi[0] + wk;
      double uRoot = -1.0;
      for (int l = 1; l <= N; ++l) {
        double next = (l == N) ? wphi0 + drop + wk : wphi[l] + wk;
        if (prev == 0.0) {
          uRoot = double(l - 1) / N;
        } else if ((prev > 0) != (next > 0)) {
          // bisection + Newton refinement on [l-1, l]/N
          double lo = double(l - 1) / N, hi = double(l) / N;
          double glo = prev;
          for (int it = 0; it < 60 && hi - lo > 1e-16; ++it) {
            double mid = 0.5 * (lo + hi);
            double gm = dot(w, pl.lift(mid)) + wk;
            if ((gm > 0) == (glo > 0)) {
              lo = mid;
              glo = gm;
            } else {
              hi = mid;
            }
          }
          double u = 0.5 * (lo + hi);
          for (int it = 0; it < 4; ++it) {
            double g = dot(w, pl.lift(u)) + wk;
            double dg = dot(w, pl.liftPrime(u));
            if (dg == 0.0) break;
            double nu = u - g / dg;
            if (nu <= lo - (hi - lo) || nu >= hi + (hi - lo)) break;
            u = nu;
          }
          uRoot = u;
        }
        prev = next;
        if (uRoot < 0) continue;
        // recover x from the top (n-1) x (n-1) block
        Vec rhs(d);
        for (int j = 0; j < d; ++j) rhs[j] = pl.lift(std::size_t(j), uRoot) + double(k[j]);
        Vec x = L.solveTopBlock(rhs);
        if (window.contains(x, 1e-12)) {
          double resid = detail::pointResidual(curve, L, x, uRoot);
          if (resid > opts.residualTol) throw ResidualFailure(resid, opts.residualTol);
          QuasicrystalPoint pt;
          pt.x = std::move(x);
          pt.residual = resid;
          pt.k = k;
          pt.u = uRoot - std::floor(uRoot);
          qw.points.push_back(std::move(pt));
        }
        uRoot = -1.0;
      }
    }
    int j = 0;
    while (j < n - 1 && ++cur[j] > kHi[j]) {
      cur[j] = kLo[j];
      ++j;
    }
    if (j == n - 1) done = true;
  }

  detail::dedupeAndSort(qw);
  return qw;
}

// Product case, r = 2 blocks: two kernel equations in (u1, u2), solved by
// damped Newton seeded from grid cells where both kernel forms change sign.
inline QuasicrystalWindow enumeratePointsProduct(const ProductCurve& pc, const PositiveMatrix& L,
                                                 const Box& window,
                                                 const EnumerateOptions& opts = {});

struct DeloneStats {
  double minGap = 0.0;
  double coveringRadiusEstimate = 0.0;
  double densityEstimate = 0.0;
  double inscribedRadius = 0.0;
};

namespace detail {

// cell-hash accelerated nearest-point queries in dimension d
class PointGridIndex {
public:
  PointGridIndex(const std::vector<QuasicrystalPoint>& pts, double cell) : cell_(cell), pts_(pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) cells_[keyOf(pts[i].x)].push_back(i);
  }

  double nearestDistance(const Vec& q) const {
    double best = std::numeric_limits<double>::infinity();
    // expanding ring search; a point in ring r is at distance >= (r-1) cell
    for (int ring = 0; ring <= 512; ++ring) {
      visitRing(q, ring, [&](std::size_t i) {
        double dd = 0;
        for (std::size_t c = 0; c < q.size(); ++c) {
          double diff = pts_[i].x[c] - q[c];
          dd += diff * diff;
        }
        best = std::min(best, std::sqrt(dd));
      });
      if (best < cell_ * (ring - 1)) break;
    }
    return best;
  }

  bool hasWithin(const Vec& q, double r) const {
    bool found = false;
    int rings = int(std::ceil(r / cell_)) + 1;
    for (int ring = 0; ring <= rings && !found; ++ring) {
      visitRing(q, ring, [&](std::size_t i) {
        double dd = 0;
        for (std::size_t c = 0; c < q.size(); ++c) {
          double diff = pts_[i].x[c] - q[c];
          dd += diff * diff;
        }
        if (dd <= r * r) found = true;
      });
    }
    return found;
  }

  long countWithin(const Vec& q, double r) const {
    long cnt = 0;
    int rings = int(std::ceil(r / cell_)) + 1;
    for (int ring = 0; ring <= rings; ++ring) {
      visitRing(q, ring, [&](std::size_t i) {
        double dd = 0;
        for (std::size_t c = 0; c < q.size(); ++c) {
          double diff = pts_[i].x[c] - q[c];
          dd += diff * diff;
        }
        if (dd <= r * r) ++cnt;
      });
    }
    return cnt;
  }

private:
  std::vector<long> keyOf(const Vec& x) const {
    std::vector<long> key;
    for (double v : x) key.push_back(long(std::floor(v / cell_)));
    return key;
  }

  template <typename F>
  bool visitRing(const Vec& q, int ring, F&& f) const {
    auto center = keyOf(q);
    const std::size_t dim = center.size();
    bool any = false;
    // iterate cells with Chebyshev distance == ring from center
    std::vector<long> offset(dim, -ring);
    while (true) {
      long cheb = 0;
      for (long o : offset) cheb = std::max(cheb, std::labs(o));
      if (cheb == ring) {
        std::vector<long> key(dim);
        for (std::size_t c = 0; c < dim; ++c) key[c] = center[c] + offset[c];
        auto it = cells_.find(key);
        if (it != cells_.end()) {
          any = true;
          for (std::size_t i : it->second) f(i);
        }
      }
      std::size_t c = 0;
      while (c < dim && ++offset[c] > ring) {
        offset[c] = -ring;
        ++c;
      }
      if (c == dim) break;
    }
    return any;
  }

  double cell_;
  const std::vector<QuasicrystalPoint>& pts_;
  std::map<std::vector<long>, std::vector<std::size_t>> cells_;
};

}  // namespace detail

inline DeloneStats deloneStats(const QuasicrystalWindow& qw, int probeGridPerDim = 100) {
  if (qw.points.size() < 2) throw TooFewPoints();
  const std::size_t d = qw.points.front().x.size();
  DeloneStats st;
  // min pairwise gap: sweep over lexicographically sorted points
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < qw.points.size(); ++i) {
    for (std::size_t j = i + 1; j < qw.points.size(); ++j) {
      double dx0 = qw.points[j].x[0] - qw.points[i].x[0];
      if (dx0 >= best) break;
      double dd = 0;
      for (std::size_t c = 0; c < d; ++c) {
        double diff = qw.points[j].x[c] - qw.points[i].x[c];
        dd += diff * diff;
      }
      best = std::min(best, std::sqrt(dd));
    }
  }
  st.minGap = best;

  detail::PointGridIndex index(qw.points, std::max(best, 1e-6));
  // covering radius over a probe grid on the eroded window
  Box probe = qw.window.eroded(0.05 * qw.window.diameter());
  double worst = 0.0;
  std::vector<int> idx(d, 0);
  while (true) {
    Vec q(d);
    for (std::size_t c = 0; c < d; ++c) {
      auto [lo, hi] = probe.range[c];
      q[c] = lo + (hi - lo) * (idx[c] + 0.5) / probeGridPerDim;
    }
    worst = std::max(worst, index.nearestDistance(q));
    std::size_t c = 0;
    while (c < d && ++idx[c] >= probeGridPerDim) {
      idx[c] = 0;
      ++c;
    }
    if (c == d) break;
  }
  st.coveringRadiusEstimate = worst;

  // density over the largest inscribed ball centered at the window center
  Vec center = qw.window.center();
  double r = std::numeric_limits<double>::infinity();
  for (auto& [lo, hi] : qw.window.range) r = std::min(r, 0.5 * (hi - lo));
  st.inscribedRadius = r;
  long cnt = 0;
  for (auto& p : qw.points) {
    double dd = 0;
    for (std::size_t c = 0; c < d; ++c) {
      double diff = p.x[c] - center[c];
      dd += diff * diff;
    }
    if (dd <= r * r) ++cnt;
  }
  st.densityEstimate = double(cnt) / volumeOfBall(d, r);
  return st;
}

// count of j in [-jRange, jRange] with a + j b in the point set (within tol)
inline long lineProbe(const QuasicrystalWindow& qw, const Vec& a, const Vec& b, int jRange,
                      double tol = 1e-8) {
  if (norm2(b) == 0.0) throw std::invalid_argument("lineProbe: b must be nonzero");
  if (qw.points.empty()) return 0;
  const std::size_t d = a.size();
  // cell size ~ mean spacing keeps the membership query O(1)
  double winVol = 1.0;
  for (auto& [lo, hi] : qw.window.range) winVol *= hi - lo;
  double spacing = std::pow(winVol / double(qw.points.size()), 1.0 / double(d));
  detail::PointGridIndex index(qw.points, std::max(spacing, 1e-6));
  long hits = 0;
  for (int j = -jRange; j <= jRange; ++j) {
    Vec q(d);
    for (std::size_t c = 0; c < d; ++c) q[c] = a[c] + double(j) * b[c];
    if (!qw.window.contains(q)) continue;
    if (index.hasWithin(q, tol)) ++hits;
  }
  return hits;
}

struct AlmostPeriod {
  Vec tau;
  double distLtauToZ = 0.0;     // dist(L tau, Z^n)
  double hausdorff = 0.0;       // window Hausdorff distance on eroded window
};

// Scan a grid of shifts tau, keep those with dist(L tau, Z^n) small, then
// verify the Hausdorff distance of Lambda and Lambda + tau directly on a
// window eroded by the covering radius (suppresses boundary artifacts).
inline std::vector<AlmostPeriod> almostPeriodProbe(const QuasicrystalWindow& qw,
                                                   const PositiveMatrix& L, double eps,
                                                   const Box& searchBox, int gridPerDim = 60,
                                                   double candidateTol = 0.05) {
  const std::size_t d = L.cols();
  if (qw.points.size() < 2) throw TooFewPoints();
  DeloneStats st = deloneStats(qw, 40);
  Box eroded = qw.window.eroded(st.coveringRadiusEstimate + 1.0);
  detail::PointGridIndex index(qw.points, std::max(st.minGap, 1e-6));

  auto hausdorffShift = [&](const Vec& tau) {
    // sup over x in Lambda ^ eroded of dist(x + tau, Lambda), symmetrized
    double worst = 0.0;
    for (auto& p : qw.points) {
      Vec q(d);
      bool inA = true, inB = true;
      for (std::size_t c = 0; c < d; ++c) {
        q[c] = p.x[c] + tau[c];
        if (!(p.x[c] >= eroded.range[c].first && p.x[c] <= eroded.range[c].second)) inA = false;
        double back = p.x[c] - tau[c];
        if (!(back >= eroded.range[c].first && back <= eroded.range[c].second)) inB = false;
      }
      if (inA) worst = std::max(worst, index.nearestDistance(q));
      if (inB) {
        Vec qb(d);
        for (std::size_t c = 0; c < d; ++c) qb[c] = p.x[c] - tau[c];
        worst = std::max(worst, index.nearestDistance(qb));
      }
    }
    return worst;
  };

  std::vector<AlmostPeriod> out;
  std::vector<int> idx(d, 0);
  while (true) {
    Vec tau(d);
    for (std::size_t c = 0; c < d; ++c) {
      auto [lo, hi] = searchBox.range[c];
      tau[c] = lo + (hi - lo) * double(idx[c]) / std::max(1, gridPerDim - 1);
    }
    Vec ltau = L.apply(tau);
    double dist = 0.0;
    for (double v : ltau) dist = std::max(dist, std::abs(v - std::round(v)));
    if (dist <= candidateTol) {
      double hd = hausdorffShift(tau);
      if (hd <= eps) out.push_back({tau, dist, hd});
    }
    std::size_t c = 0;
    while (c < d && ++idx[c] >= gridPerDim) {
      idx[c] = 0;
      ++c;
    }
    if (c == d) break;
  }
  std::sort(out.begin(), out.end(), [](const AlmostPeriod& a, const AlmostPeriod& b) {
    if (a.hausdorff != b.hausdorff) return a.hausdorff < b.hausdorff;
    return a.tau < b.tau;
  });
  return out;
}

inline QuasicrystalWindow enumeratePointsProduct(const ProductCurve& pc, const PositiveMatrix& L,
                                                 const Box& window, const EnumerateOptions& opts) {
  if (pc.blockCount() == 1) {
    return enumeratePoints(pc.block(0), L, window, opts);
  }
  if (pc.blockCount() != 2)
    throw ValidationError("UnsupportedBlockCount", "points-product supports r <= 2 blocks");
  const int n = pc.ambient();
  const int d = pc.codimension();
  if (int(L.cols()) != d || int(L.rows()) != n)
    throw std::invalid_argument("enumeratePointsProduct: L shape");
  if (int(window.dim()) != d) throw std::invalid_argument("enumeratePointsProduct: window dim");
  if (L.leftKernel().size() != 2)
    throw std::invalid_argument("enumeratePointsProduct: kernel dimension != 2");

  const LeeYangCurve& b1 = pc.block(0);
  const LeeYangCurve& b2 = pc.block(1);
  const int n1 = int(b1.ambient());
  const int n2 = int(b2.ambient());
  const PhaseLift& pl1 = b1.lift();
  const PhaseLift& pl2 = b2.lift();

  QuasicrystalWindow qw;
  qw.window = window;

  auto liftFull = [&](double u1, double u2) {
    Vec phi(n);
    for (int j = 0; j < n1; ++j) phi[j] = pl1.lift(std::size_t(j), u1);
    for (int j = 0; j < n2; ++j) phi[n1 + j] = pl2.lift(std::size_t(j), u2);
    return phi;
  };
  auto liftPrimeFull = [&](double u1, double u2, Vec& d1, Vec& d2) {
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    for (int j = 0; j < n1; ++j) d1[j] = pl1.liftPrime(std::size_t(j), u1);
    for (int j = 0; j < n2; ++j) d2[n1 + j] = pl2.liftPrime(std::size_t(j), u2);
  };

  const Vec& w1 = L.leftKernel()[0];
  const Vec& w2 = L.leftKernel()[1];

  // k ranges, as in the curve case
  Vec phi0 = liftFull(0.0, 0.0);
  Vec Wfull(n);
  for (int j = 0; j < n1; ++j) Wfull[j] = pl1.signedWinding()[j];
  for (int j = 0; j < n2; ++j) Wfull[n1 + j] = pl2.signedWinding()[j];
  auto img = detail::imageIntervals(L, window);
  std::vector<long> kLo(n), kHi(n);
  for (int j = 0; j < n; ++j) {
    double pLo = std::min(phi0[j], phi0[j] + Wfull[j]);
    double pHi = std::max(phi0[j], phi0[j] + Wfull[j]);
    kLo[j] = long(std::floor(img[j].first - pHi)) - 1;
    kHi[j] = long(std::ceil(img[j].second - pLo)) + 1;
  }

  // shared (G+1)x(G+1) seed grid of <w_l, lift(u1,u2)> including the wrap row
  const int G = 64;
  std::vector<Vec> s1(G + 1, Vec(G + 1)), s2(G + 1, Vec(G + 1));
  double s1lo = 1e300, s1hi = -1e300, s2lo = 1e300, s2hi = -1e300;
  for (int i1 = 0; i1 <= G; ++i1)
    for (int i2 = 0; i2 <= G; ++i2) {
      Vec phi = liftFull(double(i1) / G, double(i2) / G);
      s1[i1][i2] = dot(w1, phi);
      s2[i1][i2] = dot(w2, phi);
      s1lo = std::min(s1lo, s1[i1][i2]);
      s1hi = std::max(s1hi, s1[i1][i2]);
      s2lo = std::min(s2lo, s2[i1][i2]);
      s2hi = std::max(s2hi, s2[i1][i2]);
    }

  long seedMisses = 0, seedCells = 0;

  auto newtonSolve = [&](double u1, double u2, double c1, double c2, double& o1, double& o2) {
    for (int it = 0; it < 60; ++it) {
      Vec phi = liftFull(u1, u2);
      double F1 = dot(w1, phi) + c1;
      double F2 = dot(w2, phi) + c2;
      if (std::abs(F1) + std::abs(F2) < 1e-13) {
        o1 = u1;
        o2 = u2;
        return true;
      }
      Vec d1, d2;
      liftPrimeFull(u1, u2, d1, d2);
      double a = dot(w1, d1), b = dot(w1, d2);
      double c = dot(w2, d1), e = dot(w2, d2);
      double det = a * e - b * c;
      if (std::abs(det) < 1e-13) return false;
      double step1 = (e * F1 - b * F2) / det;
      double step2 = (-c * F1 + a * F2) / det;
      double lim = std::max(std::abs(step1), std::abs(step2));
      double damp = lim > 0.5 / G ? (0.5 / G) / lim : 1.0;
      u1 -= damp * step1;
      u2 -= damp * step2;
    }
    return false;
  };

  std::vector<long> cur(kLo.begin(), kLo.end());
  while (true) {
    IVec k(cur.begin(), cur.end());
    Vec kd(k.begin(), k.end());
    double c1 = dot(w1, kd), c2 = dot(w2, kd);
    // quick slab rejection
    if (!(s1lo + c1 <= 1e-9 && s1hi + c1 >= -1e-9 && s2lo + c2 <= 1e-9 && s2hi + c2 >= -1e-9)) {
      // advance odometer
    } else {
      std::vector<std::pair<double, double>> rootsForK;
      for (int i1 = 0; i1 < G; ++i1) {
        for (int i2 = 0; i2 < G; ++i2) {
          // seed Newton only from cells where both kernel forms change sign
          double a00 = s1[i1][i2] + c1, a10 = s1[i1 + 1][i2] + c1;
          double a01 = s1[i1][i2 + 1] + c1, a11 = s1[i1 + 1][i2 + 1] + c1;
          double b00 = s2[i1][i2] + c2, b10 = s2[i1 + 1][i2] + c2;
          double b01 = s2[i1][i2 + 1] + c2, b11 = s2[i1 + 1][i2 + 1] + c2;
          bool varyA = !((a00 > 0) == (a10 > 0) && (a00 > 0) == (a01 > 0) && (a00 > 0) == (a11 > 0));
          bool varyB = !((b00 > 0) == (b10 > 0) && (b00 > 0) == (b01 > 0) && (b00 > 0) == (b11 > 0));
          if (!varyA || !varyB) continue;
          ++seedCells;
          double u1, u2;
          if (!newtonSolve((i1 + 0.5) / G, (i2 + 0.5) / G, c1, c2, u1, u2)) {
            ++seedMisses;
            continue;
          }
          // adjacent cells often converge to the same root: dedupe mod 1
          bool dup = false;
          for (auto& [r1, r2] : rootsForK) {
            double d1 = std::abs(u1 - r1), d2 = std::abs(u2 - r2);
            d1 = std::min(d1 - std::floor(d1), 1.0 - (d1 - std::floor(d1)));
            d2 = std::min(d2 - std::floor(d2), 1.0 - (d2 - std::floor(d2)));
            if (d1 < 1e-7 && d2 < 1e-7) {
              dup = true;
              break;
            }
          }
          if (dup) continue;
          rootsForK.push_back({u1, u2});
          Vec phi = liftFull(u1, u2);
          Vec rhs(d);
          for (int j = 0; j < d; ++j) rhs[j] = phi[j] + double(k[j]);
          Vec x = L.solveTopBlock(rhs);
          if (!window.contains(x, 1e-12)) continue;
          // full residual against both block parametrizations
          Vec lx = L.apply(x);
          double worst = 0.0;
          for (int j = 0; j < n1; ++j)
            worst = std::max(worst,
                             std::abs(std::polar(1.0, kTwoPi * lx[j]) - b1.psiAtU(std::size_t(j), u1 - std::floor(u1))));
          for (int j = 0; j < n2; ++j)
            worst = std::max(
                worst, std::abs(std::polar(1.0, kTwoPi * lx[n1 + j]) -
                                b2.psiAtU(std::size_t(j), u2 - std::floor(u2))));
          if (worst > opts.residualTol) throw ResidualFailure(worst, opts.residualTol);
          QuasicrystalPoint pt;
          pt.x = std::move(x);
          pt.residual = worst;
          pt.k = k;
          pt.u = u1 - std::floor(u1);
          pt.u2 = u2 - std::floor(u2);
          qw.points.push_back(std::move(pt));
        }
      }
    }
    int j = 0;
    while (j < n && ++cur[j] > kHi[j]) {
      cur[j] = kLo[j];
      ++j;
    }
    if (j == n) break;
  }

  if (seedMisses > 0) {
    std::ostringstream os;
    os << "SeedGridExhausted: Newton failed on " << seedMisses << " of " << seedCells
       << " candidate cells (coverage " << 100.0 * double(seedCells - seedMisses) / seedCells
       << "%)";
    qw.warnings.push_back(os.str());
  }
  detail::dedupeAndSort(qw);
  return qw;
}

}  // namespace fqc
