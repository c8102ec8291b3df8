// Real rational functions on the projective line and the separating-function
// certificate: real root isolation by Sturm sign counting, interlacing of
// zeros and poles on the circle R u {oo}, and the half-plane orientation
// read off from Im f(i).
#pragma once

#include <optional>
#include <sstream>

#include "fqc/common.hpp"

namespace fqc {

// Dense real polynomial, coefficients in ascending degree order.
using Poly = Vec;

inline int polyDegree(const Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0.0) return int(i);
  return -1;  // zero polynomial
}

inline Poly polyTrim(Poly p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  return p;
}

inline double polyEval(const Poly& p, double t) {
  double v = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
  return v;
}

inline Cplx polyEval(const Poly& p, Cplx t) {
  Cplx v = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
  return v;
}

inline Poly polyDerivative(const Poly& p) {
  if (p.size() <= 1) return Poly{0.0};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = double(i) * p[i];
  return d;
}

inline Poly polyMul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

namespace detail {

// Remainder of a by b, both nonzero; result scaled only by exact division.
inline Poly polyRem(Poly a, const Poly& b) {
  int db = polyDegree(b);
  double lb = b[db];
  while (true) {
    int da = polyDegree(a);
    if (da < db || da < 0) break;
    double f = a[da] / lb;
    for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    a[da] = 0.0;  // cancel exactly
  }
  return polyTrim(a);
}

struct SturmChain {
  std::vector<Poly> chain;
  bool gcdNontrivial = false;

  int signChangesAt(double x) const {
    int last = 0, changes = 0;
    for (const Poly& p : chain) {
      int s = signum(polyEval(p, x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }
  // Sign changes at +-infinity come from leading coefficients.
  int signChangesAtInf(int dir) const {
    int last = 0, changes = 0;
    for (const Poly& p : chain) {
      int d = polyDegree(p);
      if (d < 0) continue;
      int s = signum(p[d]);
      if (dir < 0 && d % 2 == 1) s = -s;
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }
};

inline SturmChain sturmChain(const Poly& p) {
  SturmChain sc;
  Poly p0 = polyTrim(p);
  double scale = 0.0;
  for (double c : p0) scale = std::max(scale, std::abs(c));
  sc.chain.push_back(p0);
  Poly p1 = polyDerivative(p0);
  if (polyDegree(p1) < 0) return sc;
  sc.chain.push_back(p1);
  while (true) {
    const Poly& a = sc.chain[sc.chain.size() - 2];
    const Poly& b = sc.chain.back();
    if (polyDegree(b) <= 0) break;
    Poly r = polyRem(a, b);
    double rn = 0.0;
    for (double c : r) rn = std::max(rn, std::abs(c));
    if (rn <= 1e-12 * scale) {
      // numerically zero remainder: gcd(p, p') is nonconstant
      sc.gcdNontrivial = true;
      break;
    }
    for (double& c : r) c = -c;
    // normalize to unit max coefficient to keep the chain well scaled
    double m = 0.0;
    for (double c : r) m = std::max(m, std::abs(c));
    for (double& c : r) c /= m;
    sc.chain.push_back(std::move(r));
  }
  return sc;
}

}  // namespace detail

struct MultipleRoot : ValidationError {
  explicit MultipleRoot(const std::string& where)
      : ValidationError("MultipleRoot", "multiple root detected " + where) {}
};

struct NonRealRoots : ValidationError {
  explicit NonRealRoots(const std::string& which)
      : ValidationError("NonRealRoots", which + " has non-real roots") {}
};

struct InterlacingViolation : ValidationError {
  explicit InterlacingViolation(const std::string& where)
      : ValidationError("InterlacingViolation", "zeros and poles fail to interlace at " + where) {}
};

// All real roots of p, isolated by Sturm counts on bisected intervals and
// refined by bisection plus a Newton polish to ~1e-13.  Throws MultipleRoot
// when gcd(p, p') is nonconstant; reports the distinct real root count.
inline std::vector<double> realRoots(const Poly& p, bool requireSimple = true) {
  Poly q = polyTrim(p);
  int deg = polyDegree(q);
  if (deg <= 0) return {};
  if (deg == 1) return {-q[0] / q[1]};
  auto sc = detail::sturmChain(q);
  if (sc.gcdNontrivial && requireSimple) throw MultipleRoot("among finite roots");
  double bound = 0.0;
  for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(q[i] / q[deg]));
  bound += 1.0;
  int total = sc.signChangesAtInf(-1) - sc.signChangesAtInf(+1);
  std::vector<double> roots;
  if (total == 0) return roots;

  struct Interval {
    double a, b;
    int count;
  };
  std::vector<Interval> stack{{-bound, bound, total}};
  Poly dq = polyDerivative(q);
  while (!stack.empty()) {
    auto [a, b, count] = stack.back();
    stack.pop_back();
    if (count == 0) continue;
    if (count == 1) {
      // bisection on the Sturm bracket, then Newton polish
      double lo = a, hi = b;
      int vlo = sc.signChangesAt(lo);
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        if (sc.signChangesAt(mid) == vlo)
          lo = mid;
        else
          hi = mid;
      }
      double x = 0.5 * (lo + hi);
      for (int it = 0; it < 8; ++it) {
        double f = polyEval(q, x), df = polyEval(dq, x);
        if (df == 0.0) break;
        double step = f / df;
        double nx = x - step;
        if (nx < a || nx > b) break;
        x = nx;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
      }
      roots.push_back(x);
      continue;
    }
    double mid = 0.5 * (a + b);
    int vm = sc.signChangesAt(mid);
    int leftCount = sc.signChangesAt(a) - vm;
    int rightCount = vm - sc.signChangesAt(b);
    stack.push_back({a, mid, leftCount});
    stack.push_back({mid, b, rightCount});
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// A real rational function num/den with real coefficients (ascending order).
struct RealRationalFunction {
  Poly num;
  Poly den;

  RealRationalFunction(Poly n, Poly d) : num(polyTrim(std::move(n))), den(polyTrim(std::move(d))) {
    if (polyDegree(den) < 0) throw ValidationError("ZeroDenominator", "denominator is identically zero");
    if (polyDegree(num) < 0) throw ValidationError("ZeroNumerator", "numerator is identically zero");
  }

  int degree() const { return std::max(polyDegree(num), polyDegree(den)); }

  double operator()(double t) const { return polyEval(num, t) / polyEval(den, t); }
  Cplx operator()(Cplx t) const { return polyEval(num, t) / polyEval(den, t); }

  double derivative(double t) const {
    double n = polyEval(num, t), d = polyEval(den, t);
    double dn = polyEval(polyDerivative(num), t), dd = polyEval(polyDerivative(den), t);
    return (dn * d - n * dd) / (d * d);
  }
};

// Zeros and poles of f on R u {oo}, certified strictly alternating, plus the
// half-plane orientation: +1 when f itself is separating (Im f(i) > 0), -1
// when -f is.
struct SeparatingCertificate {
  std::vector<double> zeros;  // finite zeros, sorted
  std::vector<double> poles;  // finite poles, sorted
  bool zeroAtInfinity = false;
  bool poleAtInfinity = false;
  int orientation = 0;  // sign of Im f(i)
  int degree = 0;
};

inline SeparatingCertificate validateSeparating(const RealRationalFunction& f) {
  const int dn = polyDegree(f.num);
  const int dd = polyDegree(f.den);
  const int m = std::max(dn, dd);
  if (m == 0) throw ValidationError("ConstantFunction", "separating functions must be nonconstant");

  SeparatingCertificate cert;
  cert.degree = m;
  cert.zeros = realRoots(f.num);
  cert.poles = realRoots(f.den);
  if (int(cert.zeros.size()) < dn) throw NonRealRoots("numerator");
  if (int(cert.poles.size()) < dd) throw NonRealRoots("denominator");
  if (std::abs(dn - dd) >= 2) throw MultipleRoot("at infinity (|deg num - deg den| >= 2)");
  cert.zeroAtInfinity = dd > dn;
  cert.poleAtInfinity = dn > dd;

  // no real common root (f given in lowest terms over R)
  for (double z : cert.zeros)
    for (double q : cert.poles)
      if (std::abs(z - q) <= 1e-9 * std::max(1.0, std::abs(z))) {
        std::ostringstream os;
        os << "t = " << z << " (common zero/pole)";
        throw InterlacingViolation(os.str());
      }

  // Cyclic alternation of zeros and poles on R u {oo}.  Exactly one of the
  // two infinity flags can be set; a set flag contributes the event "at oo"
  // between +oo and -oo on the circle.
  struct Event {
    double t;
    bool isZero;
  };
  std::vector<Event> ev;
  for (double z : cert.zeros) ev.push_back({z, true});
  for (double q : cert.poles) ev.push_back({q, false});
  std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
  if (cert.zeroAtInfinity) ev.push_back({std::numeric_limits<double>::infinity(), true});
  if (cert.poleAtInfinity) ev.push_back({std::numeric_limits<double>::infinity(), false});
  if (int(ev.size()) != 2 * m)
    throw InterlacingViolation("counting (zeros + poles != 2 deg f)");
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const Event& a = ev[i];
    const Event& b = ev[(i + 1) % ev.size()];
    if (a.isZero == b.isZero) {
      std::ostringstream os;
      os << "t = " << a.t;
      throw InterlacingViolation(os.str());
    }
  }

  Cplx fi = f(Cplx(0.0, 1.0));
  cert.orientation = signum(fi.imag());
  // Interlacing certifies that f or -f is separating, so Im f(i) != 0.
  if (cert.orientation == 0)
    throw ValidationError("OrientationDegenerate", "Im f(i) = 0 despite interlacing");
  return cert;
}

}  // namespace fqc
