// Verification of the summation formula
//   sum_{x in Lambda} fhat(x) = sum_{k : var(k) < d} mhat_L(k) f(L^t k)
// with Gaussian test functions f(xi) = exp(-|xi - mu|^2 / (2 sigma^2)),
// whose transform is (2 pi sigma^2)^{d/2} e^{-2 pi^2 sigma^2 |x|^2}
// e^{-2 pi i <x, mu>}.  Both truncation tails are bounded explicitly: the
// Lambda side with the density c_0, the spectrum side with the polytope
// growth vol(P) R^n.
#pragma once

#include "fqc/fourier.hpp"
#include "fqc/pointset.hpp"

namespace fqc {

struct TruncationInsufficient : NumericError {
  TruncationInsufficient(double bound)
      : NumericError("TruncationInsufficient",
                     "truncation tail bound " + std::to_string(bound) +
                         " exceeds 1e-8; enlarge the window/spectrum radius") {}
};

struct GaussianTest {
  Vec mu;
  double sigma = 1.0;
};

struct SummationReport {
  Cplx lhs;
  Cplx rhs;
  double absDiff = 0.0;
  double tailBound = 0.0;  // lambda-side + spectrum-side bounds combined
  double lambdaTail = 0.0;
  double spectrumTail = 0.0;
};

namespace detail {

// Shell-sum bound on sum_{|x| > R} N-weighted g(|x|) with shell counts
// bounded by margin * density * vol(B_{m+1} \ B_m).
template <typename G>
double shellTail(double density, std::size_t dim, double fromRadius, double margin, G&& g) {
  double sum = 0.0;
  for (long m = long(std::floor(fromRadius)); m < 100000; ++m) {
    double shell = volumeOfBall(dim, double(m + 1)) - volumeOfBall(dim, double(m));
    double term = margin * density * shell * g(double(m));
    sum += term;
    if (term < 1e-22 && m > fromRadius + 3) break;
  }
  return sum;
}

}  // namespace detail

// lhs from the enumerated window, rhs from atoms with coefficients; both
// sides of the identity plus explicit truncation bounds.  c0 and volP are
// the density and the var-polytope volume of (curve, L).
inline SummationReport verifySummation(const QuasicrystalWindow& qw,
                                       const std::vector<SpectrumAtomWithCoefficient>& atoms,
                                       const GaussianTest& gaussian, double c0, double volP,
                                       std::size_t nAmbient, double spectrumRadius,
                                       bool throwOnInsufficient = true) {
  const std::size_t d = qw.window.dim();
  const double sigma = gaussian.sigma;
  const double fhatScale = std::pow(kTwoPi * sigma * sigma, 0.5 * double(d));

  SummationReport rep;
  // lhs = sum fhat(x) over enumerated points
  CompensatedSum lhsRe, lhsIm;
  for (auto& p : qw.points) {
    double r2 = dot(p.x, p.x);
    double amp = fhatScale * std::exp(-2.0 * kPi * kPi * sigma * sigma * r2);
    double phase = -kTwoPi * dot(p.x, gaussian.mu);
    lhsRe.add(amp * std::cos(phase));
    lhsIm.add(amp * std::sin(phase));
  }
  rep.lhs = Cplx(lhsRe.value(), lhsIm.value());

  // rhs = sum c_xi f(xi) over atoms (grouped preimages already summed)
  CompensatedSum rhsRe, rhsIm;
  for (auto& a : atoms) {
    double r2 = 0;
    for (std::size_t c = 0; c < d; ++c) {
      double diff = a.xi[c] - gaussian.mu[c];
      r2 += diff * diff;
    }
    double f = std::exp(-r2 / (2.0 * sigma * sigma));
    rhsRe.add(a.c.real() * f);
    rhsIm.add(a.c.imag() * f);
  }
  rep.rhs = Cplx(rhsRe.value(), rhsIm.value());
  rep.absDiff = std::abs(rep.lhs - rep.rhs);

  // Lambda-side tail: |fhat| decays as exp(-2 pi^2 sigma^2 r^2) beyond the
  // inscribed radius of the window around the origin.
  double rw = std::numeric_limits<double>::infinity();
  for (auto& [lo, hi] : qw.window.range) rw = std::min(rw, std::min(-lo, hi));
  rep.lambdaTail = detail::shellTail(c0, d, rw, 3.0, [&](double r) {
    return fhatScale * std::exp(-2.0 * kPi * kPi * sigma * sigma * r * r);
  });

  // Spectrum-side tail: |c_{L,k}| <= c0 and shell counts grow like
  // vol(P) R^n; atoms cover |xi| <= spectrumRadius, i.e. distance
  // spectrumRadius - |mu| from the Gaussian center.
  double muNorm = norm2(gaussian.mu);
  double reff = std::max(0.0, spectrumRadius - muNorm);
  double sum = 0.0;
  for (long m = long(std::floor(reff)); m < 100000; ++m) {
    double outer = std::pow(double(m) + muNorm + 2.0, double(nAmbient));
    double inner = std::pow(std::max(0.0, double(m) + muNorm + 1.0), double(nAmbient));
    double shellCount = 2.0 * volP * (outer - inner) + 2.0;
    double term = c0 * shellCount * std::exp(-double(m) * double(m) / (2.0 * sigma * sigma));
    sum += term;
    if (term < 1e-22 && m > reff + 3) break;
  }
  rep.spectrumTail = sum;

  rep.tailBound = rep.lambdaTail + rep.spectrumTail;
  if (throwOnInsufficient && rep.tailBound > 1e-8) throw TruncationInsufficient(rep.tailBound);
  return rep;
}

// Window/radius auto-selection for a target tail, used by the CLI driver:
// smallest integer radii with reported bounds below `target`.
inline std::pair<double, double> summationRadii(double c0, double volP, std::size_t d,
                                                std::size_t n, const GaussianTest& g,
                                                double target = 1e-9) {
  const double fhatScale = std::pow(kTwoPi * g.sigma * g.sigma, 0.5 * double(d));
  double rw = 1.0;
  while (rw < 64.0) {
    double tail = detail::shellTail(c0, d, rw, 3.0, [&](double r) {
      return fhatScale * std::exp(-2.0 * kPi * kPi * g.sigma * g.sigma * r * r);
    });
    if (tail < 0.5 * target) break;
    rw += 1.0;
  }
  double muNorm = norm2(g.mu);
  double rs = std::ceil(muNorm) + 1.0;
  while (rs < 256.0) {
    double reff = rs - muNorm;
    double sum = 0.0;
    for (long m = long(std::floor(reff)); m < 100000; ++m) {
      double outer = std::pow(double(m) + muNorm + 2.0, double(n));
      double inner = std::pow(std::max(0.0, double(m) + muNorm + 1.0), double(n));
      double term = c0 * (2.0 * volP * (outer - inner) + 2.0) *
                    std::exp(-double(m) * double(m) / (2.0 * g.sigma * g.sigma));
      sum += term;
      if (term < 1e-22 && m > reff + 3) break;
    }
    if (sum < 0.5 * target) break;
    rs += 1.0;
  }
  return {rw, rs};
}

}  // namespace fqc
