// The spectrum support Lambda' = { L^t k : k integer, var(k) < d }, the
// polytope P = { y : var(y) < d, L^t y in [-1,1]^d } that governs its R^n
// growth law, and the brute-force growth table.
//
// P decomposes into orthant pieces P_sigma over sign vectors sigma with
// var(sigma) < d.  Each piece is a bounded H-polytope; vertices come from
// brute-force intersection of n-subsets of its n + 2d bounding hyperplanes
// and the volume from a recursive facet decomposition anchored at the
// centroid.
#pragma once

#include <set>

#include "fqc/varcomb.hpp"

namespace fqc {

struct SpectrumAtom {
  Vec xi;
  IVec k;
};

struct SpectrumSupport {
  std::vector<SpectrumAtom> atoms;  // sorted by xi lexicographically
  Box window;
  // groups of atom indices whose xi coincide within 1e-10
  std::vector<std::vector<std::size_t>> collisions;
  std::vector<std::string> warnings;  // near-collisions in (1e-10, 1e-6)
};

namespace detail {

// H-polytope {x : A x <= b}; tiny instances only (dim <= 6, <= ~16 rows).
struct HPolytope {
  Mat A;
  Vec b;
};

inline std::vector<Vec> enumerateVertices(const HPolytope& hp, double tol = 1e-9) {
  const std::size_t nrows = hp.A.rows, dim = hp.A.cols;
  std::vector<Vec> verts;
  for (auto& subset : subsetsOfSize(int(nrows), int(dim))) {
    Mat sys(dim, dim);
    Vec rhs(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) sys(r, c) = hp.A(subset[r], c);
      rhs[r] = hp.b[subset[r]];
    }
    if (std::abs(determinant(sys)) < 1e-12) continue;
    Vec x = solveLinear(sys, rhs);
    bool feasible = true;
    for (std::size_t r = 0; r < nrows && feasible; ++r) {
      double lhs = 0;
      for (std::size_t c = 0; c < dim; ++c) lhs += hp.A(r, c) * x[c];
      if (lhs > hp.b[r] + tol) feasible = false;
    }
    if (!feasible) continue;
    bool dup = false;
    for (auto& v : verts) {
      double dist = 0;
      for (std::size_t c = 0; c < dim; ++c) dist = std::max(dist, std::abs(v[c] - x[c]));
      if (dist < 1e-8) {
        dup = true;
        break;
      }
    }
    if (!dup) verts.push_back(std::move(x));
  }
  return verts;
}

// Volume of conv(points) in R^m, recursing over facets: each facet lies on
// an active constraint; vol = sum over facets of (1/m) * dist(centroid,
// facet plane) * vol_{m-1}(facet), facets projected to an orthonormal basis
// of their hyperplane.
inline double hullVolumeRecursive(const std::vector<Vec>& pts,
                                  const std::vector<std::vector<int>>& activeSets, int nConstraints,
                                  std::size_t dim) {
  if (pts.size() < dim + 1) return 0.0;
  if (dim == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }
  Vec centroid(dim, 0.0);
  for (auto& p : pts)
    for (std::size_t c = 0; c < dim; ++c) centroid[c] += p[c] / double(pts.size());
  double vol = 0.0;
  for (int h = 0; h < nConstraints; ++h) {
    std::vector<std::size_t> onFacet;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (std::find(activeSets[i].begin(), activeSets[i].end(), h) != activeSets[i].end())
        onFacet.push_back(i);
    if (onFacet.size() < dim) continue;
    // orthonormal basis of the facet's affine hull via Gram-Schmidt
    const Vec& origin = pts[onFacet[0]];
    std::vector<Vec> basis;
    for (std::size_t i = 1; i < onFacet.size() && basis.size() < dim - 1; ++i) {
      Vec v(dim);
      for (std::size_t c = 0; c < dim; ++c) v[c] = pts[onFacet[i]][c] - origin[c];
      for (auto& e : basis) {
        double proj = dot(v, e);
        for (std::size_t c = 0; c < dim; ++c) v[c] -= proj * e[c];
      }
      double nv = norm2(v);
      if (nv > 1e-9) {
        for (double& x : v) x /= nv;
        basis.push_back(std::move(v));
      }
    }
    if (basis.size() != dim - 1) continue;  // facet is lower-dimensional
    // distance from centroid to the facet's hyperplane
    Vec cd(dim);
    for (std::size_t c = 0; c < dim; ++c) cd[c] = centroid[c] - origin[c];
    Vec proj = cd;
    for (auto& e : basis) {
      double pe = dot(cd, e);
      for (std::size_t c = 0; c < dim; ++c) proj[c] -= pe * e[c];
    }
    double dist = norm2(proj);
    if (dist < 1e-12) continue;
    // project facet points into the basis and recurse
    std::vector<Vec> sub;
    std::vector<std::vector<int>> subActive;
    for (std::size_t i : onFacet) {
      Vec q(dim - 1);
      Vec diff(dim);
      for (std::size_t c = 0; c < dim; ++c) diff[c] = pts[i][c] - origin[c];
      for (std::size_t e = 0; e < basis.size(); ++e) q[e] = dot(diff, basis[e]);
      sub.push_back(std::move(q));
      std::vector<int> act;
      for (int hh : activeSets[i])
        if (hh != h) act.push_back(hh);
      subActive.push_back(std::move(act));
    }
    vol += dist * hullVolumeRecursive(sub, subActive, nConstraints, dim - 1) / double(dim);
  }
  return vol;
}

inline double polytopeVolume(const HPolytope& hp, const std::vector<Vec>& verts) {
  const std::size_t dim = hp.A.cols;
  std::vector<std::vector<int>> active(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t r = 0; r < hp.A.rows; ++r) {
      double lhs = 0;
      for (std::size_t c = 0; c < dim; ++c) lhs += hp.A(r, c) * verts[i][c];
      if (std::abs(lhs - hp.b[r]) < 1e-8) active[i].push_back(int(r));
    }
  }
  return hullVolumeRecursive(verts, active, int(hp.A.rows), dim);
}

inline HPolytope orthantPiece(const PositiveMatrix& L, const std::vector<int>& sigma) {
  const std::size_t n = L.rows(), d = L.cols();
  HPolytope hp;
  hp.A = Mat(n + 2 * d, n);
  hp.b = Vec(n + 2 * d, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    hp.A(j, j) = -double(sigma[j]);  // sigma_j y_j >= 0
    hp.b[j] = 0.0;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      hp.A(n + 2 * i, j) = L.matrix()(j, i);
      hp.A(n + 2 * i + 1, j) = -L.matrix()(j, i);
    }
    hp.b[n + 2 * i] = 1.0;
    hp.b[n + 2 * i + 1] = 1.0;
  }
  return hp;
}

}  // namespace detail

struct VarPolytope {
  struct Piece {
    std::vector<int> sigma;
    std::vector<Vec> vertices;
    double volume = 0.0;
  };
  std::vector<Piece> pieces;
  double totalVolume = 0.0;

  // componentwise bounding box of all pieces (box of P itself)
  Vec boundingBox() const {
    if (pieces.empty()) return {};
    std::size_t n = pieces.front().sigma.size();
    Vec box(n, 0.0);
    for (auto& p : pieces)
      for (auto& v : p.vertices)
        for (std::size_t j = 0; j < n; ++j) box[j] = std::max(box[j], std::abs(v[j]));
    return box;
  }
};

// All sign vectors sigma in {+-1}^n with var(sigma) < d.
inline std::vector<std::vector<int>> validOrthants(int n, int d) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<int> sigma(n);
    Vec v(n);
    for (int j = 0; j < n; ++j) {
      sigma[j] = (mask >> j) & 1 ? 1 : -1;
      v[j] = sigma[j];
    }
    if (var(v) < d) out.push_back(std::move(sigma));
  }
  return out;
}

inline VarPolytope varPolytopeVolume(const PositiveMatrix& L) {
  const int n = int(L.rows()), d = int(L.cols());
  VarPolytope out;
  for (auto& sigma : validOrthants(n, d)) {
    auto hp = detail::orthantPiece(L, sigma);
    VarPolytope::Piece piece;
    piece.sigma = sigma;
    piece.vertices = detail::enumerateVertices(hp);
    piece.volume = piece.vertices.size() > std::size_t(n)
                       ? detail::polytopeVolume(hp, piece.vertices)
                       : 0.0;  // empty interior: legal, volume 0
    out.totalVolume += piece.volume;
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

// Monte Carlo cross-check of vol(P) over the bounding box; returns the
// estimate and its standard error.
inline std::pair<double, double> varPolytopeVolumeMonteCarlo(const PositiveMatrix& L,
                                                             const Vec& box, long samples,
                                                             std::uint64_t seed) {
  const int n = int(L.rows()), d = int(L.cols());
  Rng rng(seed);
  double boxVol = 1.0;
  std::vector<std::uniform_real_distribution<double>> dists;
  for (int j = 0; j < n; ++j) {
    boxVol *= 2.0 * box[j];
    dists.emplace_back(-box[j], box[j]);
  }
  long hits = 0;
  Vec y(n);
  for (long s = 0; s < samples; ++s) {
    for (int j = 0; j < n; ++j) y[j] = dists[j](rng);
    if (var(y) >= d) continue;
    Vec lty = L.applyTranspose(y);
    bool in = true;
    for (double v : lty)
      if (std::abs(v) > 1.0) in = false;
    if (in) ++hits;
  }
  double p = double(hits) / double(samples);
  double est = p * boxVol;
  double se = boxVol * std::sqrt(std::max(p * (1.0 - p), 1e-300) / double(samples));
  return {est, se};
}

// Integer points of R*P with L^t k in `window`; orthant-by-orthant bounding
// box scan with the var filter.
inline SpectrumSupport enumerateSpectrum(const PositiveMatrix& L, const Box& window, double R,
                                         const VarPolytope* precomputed = nullptr) {
  const int n = int(L.rows()), d = int(L.cols());
  if (int(window.dim()) != d) throw std::invalid_argument("enumerateSpectrum: window dim");
  for (auto& [lo, hi] : window.range)
    if (lo < -R - 1e-9 || hi > R + 1e-9)
      throw std::invalid_argument("enumerateSpectrum: window must sit inside [-R,R]^d");
  VarPolytope poly = precomputed ? *precomputed : varPolytopeVolume(L);
  Vec box = poly.boundingBox();
  std::vector<long> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    lo[j] = long(std::floor(-R * box[j] - 1.0));
    hi[j] = long(std::ceil(R * box[j] + 1.0));
  }
  SpectrumSupport out;
  out.window = window;
  Vec kd(n, 0.0);
  // odometer scan
  std::vector<long> cur(lo);
  while (true) {
    for (int j = 0; j < n; ++j) kd[j] = double(cur[j]);
    if (var(kd) < d) {
      Vec xi = L.applyTranspose(kd);
      if (window.contains(xi, 1e-12)) {
        SpectrumAtom atom;
        atom.xi = xi;
        atom.k.assign(cur.begin(), cur.end());
        out.atoms.push_back(std::move(atom));
      }
    }
    int j = 0;
    while (j < n && ++cur[j] > hi[j]) {
      cur[j] = lo[j];
      ++j;
    }
    if (j == n) break;
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const SpectrumAtom& a, const SpectrumAtom& b) { return a.xi < b.xi; });
  // collision groups (exact within 1e-10) and near-collision warnings
  auto xiDist = [](const Vec& a, const Vec& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  };
  std::size_t i = 0;
  while (i < out.atoms.size()) {
    std::size_t j = i + 1;
    while (j < out.atoms.size() && xiDist(out.atoms[i].xi, out.atoms[j].xi) <= 1e-10) ++j;
    if (j - i > 1) {
      std::vector<std::size_t> group;
      for (std::size_t l = i; l < j; ++l) group.push_back(l);
      out.collisions.push_back(std::move(group));
    }
    if (j < out.atoms.size()) {
      double gap = xiDist(out.atoms[j - 1].xi, out.atoms[j].xi);
      if (gap > 1e-10 && gap < 1e-6) {
        std::ostringstream os;
        os << "near-collision: adjacent spectrum sites " << gap << " apart (not merged)";
        out.warnings.push_back(os.str());
      }
    }
    i = j;
  }
  return out;
}

struct GrowthRow {
  double R = 0;
  long count = 0;
  double normalized = 0;  // count / R^n
};

inline std::vector<GrowthRow> growthCheck(const PositiveMatrix& L, const Vec& Rs) {
  const int n = int(L.rows()), d = int(L.cols());
  auto poly = varPolytopeVolume(L);
  Vec box = poly.boundingBox();
  std::vector<GrowthRow> rows;
  for (double R : Rs) {
    std::vector<long> lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
      lo[j] = long(std::floor(-R * box[j] - 1.0));
      hi[j] = long(std::ceil(R * box[j] + 1.0));
    }
    long count = 0;
    std::vector<long> cur(lo);
    Vec kd(n);
    while (true) {
      for (int j = 0; j < n; ++j) kd[j] = double(cur[j]);
      if (var(kd) < d) {
        Vec xi = L.applyTranspose(kd);
        bool in = true;
        for (double v : xi)
          if (std::abs(v) > R + 1e-12) in = false;
        if (in) ++count;
      }
      int j = 0;
      while (j < n && ++cur[j] > hi[j]) {
        cur[j] = lo[j];
        ++j;
      }
      if (j == n) break;
    }
    rows.push_back({R, count, double(count) / std::pow(R, n)});
  }
  return rows;
}

}  // namespace fqc
