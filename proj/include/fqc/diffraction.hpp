// Diffraction diagnostics on an enumerated window: exponential sums
// S_R(xi) = sum_{x in Lambda ^ B_R} e^{2 pi i <xi, x>}, number variance over
// random ball centers, and a binned autocorrelation estimate.  All limits
// are reported as finite-R sweeps, never as extrapolated values.
#pragma once

#include "fqc/pointset.hpp"

namespace fqc {

struct WindowTooSmall : NumericError {
  WindowTooSmall(double need, double have)
      : NumericError("WindowTooSmall", "radius " + std::to_string(need) +
                                           " exceeds the inscribed window radius " +
                                           std::to_string(have)) {}
};

struct ExpSumRow {
  Vec xi;
  double R = 0;
  Cplx S;
  double volBall = 0;
  Cplx ratio;  // S / vol(B_R)
};

namespace detail {

inline double inscribedRadius(const Box& w) {
  double r = std::numeric_limits<double>::infinity();
  for (auto& [lo, hi] : w.range) r = std::min(r, std::min(-lo, hi));
  return r;
}

}  // namespace detail

inline std::vector<ExpSumRow> expSumSweep(const QuasicrystalWindow& qw,
                                          const std::vector<Vec>& xis, const Vec& Rs) {
  const double rw = detail::inscribedRadius(qw.window);
  for (double R : Rs)
    if (R > rw + 1e-9) throw WindowTooSmall(R, rw);
  const std::size_t d = qw.window.dim();
  std::vector<ExpSumRow> rows;
  for (auto& xi : xis) {
    for (double R : Rs) {
      CompensatedSum re, im;
      for (auto& p : qw.points) {
        if (dot(p.x, p.x) > R * R) continue;
        double phase = kTwoPi * dot(xi, p.x);
        re.add(std::cos(phase));
        im.add(std::sin(phase));
      }
      ExpSumRow row;
      row.xi = xi;
      row.R = R;
      row.S = Cplx(re.value(), im.value());
      row.volBall = volumeOfBall(d, R);
      row.ratio = row.S / row.volBall;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// Least-squares fit S_R ~ alpha vol(B_R) + beta R^{d-1} over an R sweep;
// alpha estimates the diffraction amplitude (conj c_xi), beta the boundary
// drift.
struct ExpSumFit {
  Cplx alpha;
  Cplx beta;
};

inline ExpSumFit fitExpSum(const std::vector<ExpSumRow>& rows) {
  // 2x2 normal equations with complex right-hand side
  double a11 = 0, a12 = 0, a22 = 0;
  Cplx b1(0, 0), b2(0, 0);
  for (auto& r : rows) {
    double v = r.volBall;
    double w = std::pow(r.R, double(r.xi.size()) - 1.0);
    a11 += v * v;
    a12 += v * w;
    a22 += w * w;
    b1 += v * r.S;
    b2 += w * r.S;
  }
  double det = a11 * a22 - a12 * a12;
  ExpSumFit fit;
  fit.alpha = (a22 * b1 - a12 * b2) / det;
  fit.beta = (-a12 * b1 + a11 * b2) / det;
  return fit;
}

struct VarianceRow {
  double R = 0;
  double variance = 0;         // Var over centers of N_R(x) / vol(B_R)
  double reducedVariance = 0;  // Var over centers of N_R(x) / vol(B_R): times vol
  double supDev = 0;           // sup |N_R(x) - c0 vol(B_R)|
  double supDevOverRpow = 0;   // supDev / R^{d-1}
};

// Empirical number variance over random centers drawn inside the window
// eroded by R; deterministic for a fixed seed.
inline VarianceRow numberVariance(const QuasicrystalWindow& qw, double R, int centers,
                                  std::uint64_t seed, double c0) {
  Box inner = qw.window.eroded(R);
  if (inner.empty()) throw WindowTooSmall(R, detail::inscribedRadius(qw.window));
  const std::size_t d = qw.window.dim();
  Rng rng(seed);
  std::vector<std::uniform_real_distribution<double>> dist;
  for (auto& [lo, hi] : inner.range) dist.emplace_back(lo, hi);
  detail::PointGridIndex index(qw.points, std::max(0.5, R / 8.0));
  const double vol = volumeOfBall(d, R);
  CompensatedSum sum, sumSq;
  double supDev = 0.0;
  for (int s = 0; s < centers; ++s) {
    Vec q(d);
    for (std::size_t c = 0; c < d; ++c) q[c] = dist[c](rng);
    double nr = double(index.countWithin(q, R));
    sum.add(nr / vol);
    sumSq.add((nr / vol) * (nr / vol));
    supDev = std::max(supDev, std::abs(nr - c0 * vol));
  }
  double mean = sum.value() / centers;
  VarianceRow row;
  row.R = R;
  row.variance = std::max(0.0, sumSq.value() / centers - mean * mean);
  row.reducedVariance = row.variance * vol;
  row.supDev = supDev;
  row.supDevOverRpow = supDev / std::pow(R, double(d) - 1.0);
  return row;
}

// point sets for control experiments
inline QuasicrystalWindow poissonControl(const Box& window, double density, std::uint64_t seed) {
  QuasicrystalWindow qw;
  qw.window = window;
  const std::size_t d = window.dim();
  double vol = 1.0;
  for (auto& [lo, hi] : window.range) vol *= hi - lo;
  Rng rng(seed);
  std::poisson_distribution<long> howMany(density * vol);
  long count = howMany(rng);
  std::vector<std::uniform_real_distribution<double>> dist;
  for (auto& [lo, hi] : window.range) dist.emplace_back(lo, hi);
  for (long i = 0; i < count; ++i) {
    QuasicrystalPoint p;
    p.x.resize(d);
    for (std::size_t c = 0; c < d; ++c) p.x[c] = dist[c](rng);
    qw.points.push_back(std::move(p));
  }
  std::sort(qw.points.begin(), qw.points.end(),
            [](const QuasicrystalPoint& a, const QuasicrystalPoint& b) { return a.x < b.x; });
  return qw;
}

inline QuasicrystalWindow latticeControl(const Box& window, double density) {
  QuasicrystalWindow qw;
  qw.window = window;
  const std::size_t d = window.dim();
  double spacing = std::pow(1.0 / density, 1.0 / double(d));
  std::vector<long> lo(d), hi(d);
  for (std::size_t c = 0; c < d; ++c) {
    lo[c] = long(std::ceil(window.range[c].first / spacing));
    hi[c] = long(std::floor(window.range[c].second / spacing));
  }
  std::vector<long> cur(lo);
  while (true) {
    QuasicrystalPoint p;
    p.x.resize(d);
    for (std::size_t c = 0; c < d; ++c) p.x[c] = spacing * double(cur[c]);
    qw.points.push_back(std::move(p));
    std::size_t c = 0;
    while (c < d && ++cur[c] > hi[c]) {
      cur[c] = lo[c];
      ++c;
    }
    if (c == d) break;
  }
  std::sort(qw.points.begin(), qw.points.end(),
            [](const QuasicrystalPoint& a, const QuasicrystalPoint& b) { return a.x < b.x; });
  return qw;
}

struct AutocorrelationBin {
  Vec center;
  double mass = 0;
};

// Binned estimate of the difference set within a cutoff; includes the
// diagonal x = y mass at the origin bin.  Visual/diagnostic output only.
inline std::vector<AutocorrelationBin> autocorrelationEstimate(const QuasicrystalWindow& qw,
                                                               int binsPerDim, double cutoff) {
  if (cutoff >= 0.5 * qw.window.diameter())
    throw std::invalid_argument("autocorrelation cutoff must be < window diameter / 2");
  const std::size_t d = qw.window.dim();
  const double bin = 2.0 * cutoff / binsPerDim;
  std::map<std::vector<long>, double> hist;
  double volNorm = 1.0;
  for (auto& [lo, hi] : qw.window.range) volNorm *= hi - lo;
  auto add = [&](const Vec& diff) {
    std::vector<long> key(d);
    for (std::size_t c = 0; c < d; ++c) key[c] = long(std::floor(diff[c] / bin + 0.5));
    hist[key] += 1.0 / volNorm;
  };
  for (std::size_t i = 0; i < qw.points.size(); ++i) {
    add(Vec(d, 0.0));  // diagonal term
    for (std::size_t j = i + 1; j < qw.points.size(); ++j) {
      Vec diff(d);
      bool inCut = true;
      for (std::size_t c = 0; c < d; ++c) {
        diff[c] = qw.points[j].x[c] - qw.points[i].x[c];
        if (std::abs(diff[c]) > cutoff) inCut = false;
      }
      if (qw.points[j].x[0] - qw.points[i].x[0] > cutoff) break;
      if (!inCut) continue;
      add(diff);
      Vec neg(d);
      for (std::size_t c = 0; c < d; ++c) neg[c] = -diff[c];
      add(neg);
    }
  }
  std::vector<AutocorrelationBin> out;
  for (auto& [key, mass] : hist) {
    AutocorrelationBin b;
    b.center.resize(d);
    for (std::size_t c = 0; c < d; ++c) b.center[c] = bin * double(key[c]);
    b.mass = mass;
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace fqc
