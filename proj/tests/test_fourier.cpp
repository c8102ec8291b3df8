#include <catch2/catch_amalgamated.hpp>

#include "fqc/fourier.hpp"
#include "fqc/summation.hpp"

using namespace fqc;

namespace {

LeeYangCurve runningExample() {
  std::vector<RealRationalFunction> fs{{{-1, 1}, {1}}, {{0, 1}, {1}}, {{1, 1}, {1}}};
  return LeeYangCurve::build(fs);
}

PositiveMatrix runningL() {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  Mat m(3, 2);
  m(0, 0) = 1;
  m(0, 1) = 0;
  m(1, 0) = 0;
  m(1, 1) = 1;
  m(2, 0) = -s2;
  m(2, 1) = s3;
  return PositiveMatrix::fromMatrix(m);
}

}  // namespace

TEST_CASE("mhat at k = 0 equals the multidegree") {
  auto curve = runningExample();
  for (std::size_t i = 0; i < 3; ++i) {
    auto tc = mhat(curve, i, {0, 0, 0});
    CHECK(std::abs(tc.value - Cplx(1.0, 0.0)) < 1e-10);
  }
}

TEST_CASE("mhat vanishes when var(k) >= d") {
  auto curve = runningExample();
  for (std::size_t i = 0; i < 3; ++i) {
    auto tc = mhat(curve, i, {1, -1, 1});
    CHECK(std::abs(tc.value) < 1e-10);
  }
  // 200 random k with var >= 2
  Rng rng(kDefaultSeed);
  std::uniform_int_distribution<long> entry(-6, 6);
  int tested = 0;
  while (tested < 200) {
    IVec k{entry(rng), entry(rng), entry(rng)};
    Vec kd(k.begin(), k.end());
    if (var(kd) < 2) continue;
    ++tested;
    auto values = mhatAll(curve, k);
    for (auto v : values) CHECK(std::abs(v) <= 1e-9);
  }
}

TEST_CASE("mhat conjugation symmetry") {
  auto curve = runningExample();
  Rng rng(5);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    IVec k{entry(rng), entry(rng), entry(rng)};
    IVec mk{-k[0], -k[1], -k[2]};
    auto a = mhatAll(curve, k);
    auto b = mhatAll(curve, mk);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(b[i] - std::conj(a[i])) < 1e-12);
  }
}

TEST_CASE("residue oracle on the running example") {
  auto curve = runningExample();
  // multidegree at k = 0
  for (std::size_t i = 0; i < 3; ++i) {
    Cplx v = mhatResidueOracle(curve, i, {0, 0, 0});
    CHECK(std::abs(v - Cplx(1.0, 0.0)) < 1e-14);
  }
  // var(k) >= d: exactly zero (no poles in the chosen half-plane)
  for (std::size_t i = 0; i < 3; ++i) {
    Cplx v = mhatResidueOracle(curve, i, {1, -1, 1});
    CHECK(v == Cplx(0.0, 0.0));
  }
  // cross-validation against quadrature
  Cplx q = mhatAll(curve, {0, 1, -1})[0];
  Cplx r = mhatResidueOracle(curve, 0, {0, 1, -1});
  CHECK(std::abs(q - r) <= 1e-11);
}

TEST_CASE("residue oracle rejects non-linear factors") {
  Poly n1 = polyMul({-1, -1, 1}, {-1, 1, 1});
  Poly d1 = polyMul({0, 2}, {-3, 0, 2});
  Poly n2{-1, 5, 3, -3, -1};
  Poly d2 = polyMul({-2, 2}, {-2, -5, -1, 1});
  Poly n3{1, 0, -5, 0, 2};
  Poly d3 = polyMul({0, 2}, {-4, 0, 3});
  auto curve = LeeYangCurve::build({{n1, d1}, {n2, d2}, {n3, d3}});
  CHECK_THROWS_AS(mhatResidueOracle(curve, 0, {0, 0, 0}), UnsupportedDegree);
}

TEST_CASE("oracle equivalence over max|k| <= 3 (unit-test slice)") {
  auto curve = runningExample();
  for (long k1 = -3; k1 <= 3; ++k1)
    for (long k2 = -3; k2 <= 3; ++k2)
      for (long k3 = -3; k3 <= 3; ++k3) {
        IVec k{k1, k2, k3};
        auto q = mhatAll(curve, k);
        for (std::size_t i = 0; i < 3; ++i) {
          Cplx r = mhatResidueOracle(curve, i, k);
          CAPTURE(k1, k2, k3, i);
          CHECK(std::abs(q[i] - r) <= 1e-10);
        }
      }
}

TEST_CASE("c0 equals 1 + sqrt2 + sqrt3 by quadrature and by multidegree") {
  auto curve = runningExample();
  auto L = runningL();
  const double golden = 1.0 + std::sqrt(2.0) + std::sqrt(3.0);
  Cplx c0 = cLk(curve, L, {0, 0, 0});
  CHECK(std::abs(c0 - Cplx(golden, 0.0)) < 1e-10);
  CHECK(densityFromMultidegree(curve, L) == Catch::Approx(golden).epsilon(1e-14));
}

TEST_CASE("golden coefficient at xi = (sqrt2 - 1, -sqrt3 - 1)") {
  auto curve = runningExample();
  auto L = runningL();
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);

  // Recover the integer preimage of xi via enumerateSpectrum and confirm it
  // is unique: the paper states the value of c_xi but not k.
  Vec xi{s2 - 1.0, -s3 - 1.0};
  Box window{{{xi[0] - 0.5, xi[0] + 0.5}, {xi[1] - 0.5, xi[1] + 0.5}}};
  auto support = enumerateSpectrum(L, window, 4.0);
  IVec preimage;
  int found = 0;
  for (auto& atom : support.atoms) {
    if (std::abs(atom.xi[0] - xi[0]) < 1e-9 && std::abs(atom.xi[1] - xi[1]) < 1e-9) {
      preimage = atom.k;
      ++found;
    }
  }
  REQUIRE(found == 1);
  CHECK(preimage == IVec{-1, -1, -1});
  CHECK(support.collisions.empty());

  // paper value: (4/25) i ((-2+i) + (2+i) sqrt2 + 2 i sqrt3)
  Cplx golden = Cplx(0, 4.0 / 25.0) * (Cplx(-2, 1) + Cplx(2, 1) * s2 + Cplx(0, 2) * s3);
  CHECK(std::abs(golden - Cplx(-0.94053, 0.132548)) < 1e-5);

  Cplx c = cLk(curve, L, preimage);
  CHECK(std::abs(c - golden) < 1e-10);
}

TEST_CASE("Hermitian symmetry and boundedness of c_{L,k}") {
  auto curve = runningExample();
  auto L = runningL();
  const double c0 = 1.0 + std::sqrt(2.0) + std::sqrt(3.0);
  Rng rng(17);
  std::uniform_int_distribution<long> entry(-5, 5);
  for (int trial = 0; trial < 60; ++trial) {
    IVec k{entry(rng), entry(rng), entry(rng)};
    IVec mk{-k[0], -k[1], -k[2]};
    Cplx a = cLk(curve, L, k);
    Cplx b = cLk(curve, L, mk);
    CHECK(std::abs(b - std::conj(a)) <= 1e-10);
    CHECK(std::abs(a) <= c0 + 1e-10);
  }
}

TEST_CASE("blockwise mhat factorization reproduces the product2 multidegree") {
  auto block = [] {
    std::vector<RealRationalFunction> fs{{{0, 1}, {1}}, {{0, 2}, {1}}};
    return LeeYangCurve::build(fs);
  };
  auto pc = productCurve({block(), block()});
  IVec zero{0, 0, 0, 0};
  // (d12, d13, d14, d23, d24, d34) = (0,1,1,1,1,0); d_J = mhat_{[n]\J}(0)
  std::map<std::vector<int>, double> expected{{{0, 1}, 0}, {{0, 2}, 1}, {{0, 3}, 1},
                                              {{1, 2}, 1}, {{1, 3}, 1}, {{2, 3}, 0}};
  for (auto& [J, dJ] : expected) {
    std::vector<int> comp;
    for (int j = 0; j < 4; ++j)
      if (std::find(J.begin(), J.end(), j) == J.end()) comp.push_back(j);
    Cplx v = mhatProduct(pc, comp, zero);
    CHECK(std::abs(v - Cplx(dJ, 0)) < 1e-10);
    CHECK(pc.multidegree(J) == int(dJ));
  }
}

TEST_CASE("coefficientsOnWindow keeps c0 and sorts by |xi|") {
  auto curve = runningExample();
  auto L = runningL();
  Box window{{{-2.0, 2.0}, {-2.0, 2.0}}};
  auto support = enumerateSpectrum(L, window, 3.0);
  auto atoms = coefficientsOnWindow(curve, L, support);
  REQUIRE_FALSE(atoms.empty());
  // first atom is xi = 0 with coefficient c0 > 0
  CHECK(norm2(atoms.front().xi) < 1e-12);
  CHECK(atoms.front().c.real() ==
        Catch::Approx(1.0 + std::sqrt(2.0) + std::sqrt(3.0)).epsilon(1e-9));
  CHECK_FALSE(atoms.front().numericallyZero);
  for (std::size_t i = 1; i < atoms.size(); ++i)
    CHECK(norm2(atoms[i - 1].xi) <= norm2(atoms[i].xi) + 1e-12);
}

TEST_CASE("summation rejects insufficient truncation") {
  auto curve = runningExample();
  auto L = runningL();
  GaussianTest g{Vec{0.0, 0.0}, 1.0};
  QuasicrystalWindow qw;
  qw.window = Box{{{-0.5, 0.5}, {-0.5, 0.5}}};  // far too small for sigma = 1
  std::vector<SpectrumAtomWithCoefficient> atoms;
  double c0 = densityFromMultidegree(curve, L);
  CHECK_THROWS_AS(verifySummation(qw, atoms, g, c0, 2.1487, 3, 1.0), TruncationInsufficient);
}

TEST_CASE("mhat(0) equals the multidegree on a degree-4 curve") {
  Poly n1 = polyMul({-1, -1, 1}, {-1, 1, 1});
  Poly d1 = polyMul({0, 2}, {-3, 0, 2});
  Poly n2{-1, 5, 3, -3, -1};
  Poly d2 = polyMul({-2, 2}, {-2, -5, -1, 1});
  Poly n3{1, 0, -5, 0, 2};
  Poly d3 = polyMul({0, 2}, {-4, 0, 3});
  auto curve = LeeYangCurve::build({{n1, d1}, {n2, d2}, {n3, d3}});
  for (std::size_t i = 0; i < 3; ++i) {
    auto tc = mhat(curve, i, {0, 0, 0});
    CHECK(std::abs(tc.value - Cplx(4.0, 0.0)) < 1e-10);
  }
}

TEST_CASE("Q-dependent rows produce spectrum collisions with summed coefficients") {
  // L = [[1,0],[0,1],[-1,1]] has positive minors {1,1,1} but rational rows,
  // so k -> L^t k is not injective on Z^n_{var<2}: xi = (1,0) has the two
  // preimages (1,0,0) and (0,1,-1).
  auto curve = runningExample();
  Mat m(3, 2);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 0) = -1;
  m(2, 1) = 1;
  auto L = PositiveMatrix::fromMatrix(m);
  Box window{{{-1.5, 1.5}, {-1.5, 1.5}}};
  auto sup = enumerateSpectrum(L, window, 2.0);
  REQUIRE_FALSE(sup.collisions.empty());

  bool foundPair = false;
  for (auto& group : sup.collisions) {
    std::set<IVec> ks;
    for (auto idx : group) ks.insert(sup.atoms[idx].k);
    if (ks.count(IVec{1, 0, 0}) && ks.count(IVec{0, 1, -1})) foundPair = true;
  }
  CHECK(foundPair);

  auto atoms = coefficientsOnWindow(curve, L, sup);
  Cplx direct = cLk(curve, L, {1, 0, 0}) + cLk(curve, L, {0, 1, -1});
  bool checked = false;
  for (auto& a : atoms)
    if (std::abs(a.xi[0] - 1.0) < 1e-12 && std::abs(a.xi[1]) < 1e-12) {
      REQUIRE(a.contributors.size() == 2);
      CHECK(std::abs(a.c - direct) < 1e-10);
      checked = true;
    }
  CHECK(checked);
}
