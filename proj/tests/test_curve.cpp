#include <catch2/catch_amalgamated.hpp>

#include "fqc/curve.hpp"

using namespace fqc;

namespace {

LeeYangCurve runningExample() {
  std::vector<RealRationalFunction> fs{{{-1, 1}, {1}}, {{0, 1}, {1}}, {{1, 1}, {1}}};
  return LeeYangCurve::build(fs);
}

LeeYangCurve notCompleteIntersection() {
  Poly n1 = polyMul({-1, -1, 1}, {-1, 1, 1});
  Poly d1 = polyMul({0, 2}, {-3, 0, 2});
  // f2 = -(t^4 + 3t^3 - 3t^2 - 5t + 1) / (2 (t-1)(t^3 - t^2 - 5t - 2))
  Poly n2{-1, 5, 3, -3, -1};
  Poly d2 = polyMul({-2, 2}, {-2, -5, -1, 1});
  // f3 = (2t^4 - 5t^2 + 1) / (2t (3t^2 - 4))
  Poly n3{1, 0, -5, 0, 2};
  Poly d3 = polyMul({0, 2}, {-4, 0, 3});
  return LeeYangCurve::build({{n1, d1}, {n2, d2}, {n3, d3}});
}

}  // namespace

TEST_CASE("running example builds with the published parametrization") {
  auto curve = runningExample();
  CHECK(curve.ambient() == 3);
  CHECK(curve.multidegree() == std::vector<int>{1, 1, 1});

  // psi(t) = ((-1+i+t)/(-1-i+t), (-i+t)/(i+t), (1+i+t)/(1-i+t))
  for (double t : {-2.3, -0.7, 0.0, 0.4, 1.9, 55.0}) {
    Cplx tc(t, 0.0);
    Cplx g1 = (tc - 1.0 + Cplx(0, 1)) / (tc - 1.0 - Cplx(0, 1));
    Cplx g2 = (tc - Cplx(0, 1)) / (tc + Cplx(0, 1));
    Cplx g3 = (tc + 1.0 + Cplx(0, 1)) / (tc + 1.0 - Cplx(0, 1));
    CHECK(std::abs(curve.psi(0, tc) - g1) < 1e-12);
    CHECK(std::abs(curve.psi(1, tc) - g2) < 1e-12);
    CHECK(std::abs(curve.psi(2, tc) - g3) < 1e-12);
  }
}

TEST_CASE("psi maps the circle into the torus") {
  auto curve = runningExample();
  for (int l = 0; l < 10000; ++l) {
    double u = double(l) / 10000;
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::abs(std::abs(curve.psiAtU(j, u)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("involution invariance psi(conj t) = 1/conj(psi(t))") {
  auto curve = notCompleteIntersection();
  Rng rng(3);
  std::uniform_real_distribution<double> re(-5, 5), im(0.01, 5);
  for (int s = 0; s < 200; ++s) {
    Cplx t(re(rng), im(rng) * (s % 2 ? 1 : -1));
    for (std::size_t j = 0; j < curve.ambient(); ++j) {
      Cplx lhs = curve.psi(j, std::conj(t));
      Cplx rhs = 1.0 / std::conj(curve.psi(j, t));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("honest lift satisfies exp(2 pi i lift(u)) = psi(t(u))") {
  auto curve = notCompleteIntersection();
  const PhaseLift& pl = curve.lift();
  for (int l = 0; l < 2000; ++l) {
    double u = (l + 0.5) / 2000;
    for (std::size_t j = 0; j < curve.ambient(); ++j) {
      Cplx lhs = std::exp(Cplx(0, kTwoPi) * pl.lift(j, u));
      Cplx rhs = curve.psiAtU(j, u);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("phase lift windings equal the multidegree") {
  for (auto& curve : {runningExample(), notCompleteIntersection()}) {
    const PhaseLift& pl = curve.lift();
    auto md = curve.multidegree();
    for (std::size_t j = 0; j < curve.ambient(); ++j) {
      double w = pl.theta(j, 1.0) - pl.theta(j, 0.0);
      CHECK(std::abs(w - md[j]) <= 1e-9);
      double hw = pl.lift(j, 1.0) - pl.lift(j, 0.0);
      double expect = -curve.sigma(j) * md[j];
      CHECK(std::abs(hw - expect) <= 1e-9);
      CHECK(pl.theta(j, 0.0) >= 0.0);
      CHECK(pl.theta(j, 0.0) < 1.0);
    }
  }
}

TEST_CASE("theta is strictly increasing; closed form matches finite differences") {
  auto curve = notCompleteIntersection();
  const PhaseLift& pl = curve.lift();
  for (int l = 0; l < 10000; ++l) {
    double u = (l + 0.5) / 10000;
    for (std::size_t j = 0; j < curve.ambient(); ++j) {
      CHECK(pl.thetaPrime(j, u) > 0.0);
    }
  }
  const double h = 1e-6;
  for (int l = 0; l < 200; ++l) {
    double u = (l + 0.5) / 200;
    for (std::size_t j = 0; j < curve.ambient(); ++j) {
      double fd = (pl.theta(j, u + h) - pl.theta(j, u - h)) / (2 * h);
      CHECK(pl.thetaPrime(j, u) == Catch::Approx(fd).epsilon(1e-6).margin(1e-8));
    }
  }
}

TEST_CASE("phase at t = 0 for the factor f = t is one half") {
  std::vector<RealRationalFunction> fs{{{0, 1}, {1}}, {{0, 1}, {1}}};
  auto curve = LeeYangCurve::build(fs);
  // g(0) = (0+i)/(0-i) = -1, phase 1/2 mod 1; t = 0 is u = 1/2
  double phase = curve.lift().lift(0, 0.5);
  double frac = phase - std::floor(phase);
  CHECK(frac == Catch::Approx(0.5).margin(1e-9));
  CHECK(std::abs(curve.psiAtU(0, 0.5) - Cplx(-1.0, 0.0)) < 1e-9);
}

TEST_CASE("off-torus sign variation at t = i for the running example") {
  auto curve = runningExample();
  Cplx t(0, 1);
  Vec logs(3);
  for (int j = 0; j < 3; ++j) logs[j] = std::log(std::abs(curve.psi(j, t)));
  CHECK(logs[0] > 0.0);
  CHECK(logs[1] < -30.0);  // psi_2(i) = 0, log -> -inf numerically
  CHECK(logs[2] > 0.0);
  CHECK(var(logs) == 2);
}

TEST_CASE("off-torus sampling check passes on valid curves") {
  auto curve = runningExample();
  auto report = curve.offTorusVarCheck(500, kDefaultSeed);
  CHECK(report.samples == 500);
  CHECK(report.failures == 0);
}

TEST_CASE("repeated shifts f = (t, t) are accepted (injective, multidegree (1,1))") {
  std::vector<RealRationalFunction> fs{{{0, 1}, {1}}, {{0, 1}, {1}}};
  auto curve = LeeYangCurve::build(fs);
  CHECK(curve.multidegree() == std::vector<int>{1, 1});
}

TEST_CASE("notcompleteintersection is accepted with multidegree (4,4,4)") {
  auto curve = notCompleteIntersection();
  CHECK(curve.multidegree() == std::vector<int>{4, 4, 4});
}

TEST_CASE("build rejects factors oriented the wrong way") {
  std::vector<RealRationalFunction> fs{{{1, -1}, {1}}, {{0, 1}, {1}}};
  CHECK_THROWS_AS(LeeYangCurve::build(fs), ValidationError);
}

TEST_CASE("product curve multidegree for product2") {
  auto block = [] {
    std::vector<RealRationalFunction> fs{{{0, 1}, {1}}, {{0, 2}, {1}}};
    return LeeYangCurve::build(fs);
  };
  auto prod = productCurve({block(), block()});
  CHECK(prod.ambient() == 4);
  CHECK(prod.codimension() == 2);
  // (d12, d13, d14, d23, d24, d34) = (0,1,1,1,1,0); multidegree takes J
  CHECK(prod.multidegree({0, 1}) == 0);
  CHECK(prod.multidegree({0, 2}) == 1);
  CHECK(prod.multidegree({0, 3}) == 1);
  CHECK(prod.multidegree({1, 2}) == 1);
  CHECK(prod.multidegree({1, 3}) == 1);
  CHECK(prod.multidegree({2, 3}) == 0);
}

TEST_CASE("single-block product wraps the curve unchanged") {
  auto prod = productCurve({runningExample()});
  CHECK(prod.ambient() == 3);
  CHECK(prod.codimension() == 2);
  CHECK(prod.multidegree({0, 1}) == 1);  // free index 3
  CHECK(prod.multidegree({0, 2}) == 1);
  CHECK(prod.multidegree({1, 2}) == 1);
}
