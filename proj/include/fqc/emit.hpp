// CSV / JSON / SVG emission.  All floating point output uses 17 significant
// digits so runs are byte-identical for identical configs and seeds.
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fqc/diffraction.hpp"
#include "fqc/fourier.hpp"
#include "fqc/pointset.hpp"

namespace fqc {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header, bool asJson = false)
      : asJson_(asJson), header_(header) {
    out_.open(path);
    if (!out_) throw NumericError("OutputError", "cannot open '" + path + "' for writing");
    if (asJson_) {
      out_ << "[\n";
    } else {
      for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
      out_ << "\n";
    }
  }
  ~CsvWriter() {
    if (asJson_) out_ << (first_ ? "]\n" : "\n]\n");
  }

  void row(const std::vector<std::string>& cells) {
    if (asJson_) {
      out_ << (first_ ? "" : ",\n") << "  {";
      for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << (i ? "," : "") << "\"" << header_[i] << "\":" << cells[i];
      out_ << "}";
      first_ = false;
      return;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

private:
  bool asJson_ = false;
  bool first_ = true;
  std::vector<std::string> header_;
  std::ofstream out_;
};

// points.csv: x1,...,xd,residual,k1,...,kn,u
inline void emitPoints(const QuasicrystalWindow& qw, const std::string& path, bool asJson = false) {
  const std::size_t d = qw.window.dim();
  const std::size_t n = qw.points.empty() ? 0 : qw.points.front().k.size();
  std::vector<std::string> header;
  for (std::size_t c = 0; c < d; ++c) header.push_back("x" + std::to_string(c + 1));
  header.push_back("residual");
  for (std::size_t c = 0; c < n; ++c) header.push_back("k" + std::to_string(c + 1));
  header.push_back("u");
  CsvWriter w(path, header, asJson);
  for (auto& p : qw.points) {
    std::vector<std::string> cells;
    for (double x : p.x) cells.push_back(fmt17(x));
    cells.push_back(fmt17(p.residual));
    for (long k : p.k) cells.push_back(std::to_string(k));
    cells.push_back(fmt17(p.u));
    w.row(cells);
  }
}

// spectrum.csv: xi1,...,xid,k1,...,kn
inline void emitSpectrum(const SpectrumSupport& sup, const std::string& path, bool asJson = false) {
  const std::size_t d = sup.window.dim();
  const std::size_t n = sup.atoms.empty() ? 0 : sup.atoms.front().k.size();
  std::vector<std::string> header;
  for (std::size_t c = 0; c < d; ++c) header.push_back("xi" + std::to_string(c + 1));
  for (std::size_t c = 0; c < n; ++c) header.push_back("k" + std::to_string(c + 1));
  CsvWriter w(path, header, asJson);
  for (auto& a : sup.atoms) {
    std::vector<std::string> cells;
    for (double x : a.xi) cells.push_back(fmt17(x));
    for (long k : a.k) cells.push_back(std::to_string(k));
    w.row(cells);
  }
}

// coeffs.csv: xi1,...,xid,k1,...,kn,re_c,im_c,abs_c,method,err
// one row per contributing k (atoms with several preimages emit several rows)
inline void emitCoefficients(const std::vector<SpectrumAtomWithCoefficient>& atoms,
                             std::size_t d, const std::string& path, bool asJson = false,
                             const std::string& method = "quadrature") {
  std::size_t n = 0;
  for (auto& a : atoms)
    if (!a.contributors.empty()) n = a.contributors.front().size();
  std::vector<std::string> header;
  for (std::size_t c = 0; c < d; ++c) header.push_back("xi" + std::to_string(c + 1));
  for (std::size_t c = 0; c < n; ++c) header.push_back("k" + std::to_string(c + 1));
  header.insert(header.end(), {"re_c", "im_c", "abs_c", "method", "err"});
  CsvWriter w(path, header, asJson);
  for (auto& a : atoms) {
    for (std::size_t l = 0; l < a.contributors.size(); ++l) {
      std::vector<std::string> cells;
      for (double x : a.xi) cells.push_back(fmt17(x));
      for (long k : a.contributors[l]) cells.push_back(std::to_string(k));
      Cplx c = a.perContributor[l];
      cells.push_back(fmt17(c.real()));
      cells.push_back(fmt17(c.imag()));
      cells.push_back(fmt17(std::abs(c)));
      cells.push_back(asJson ? "\"" + method + "\"" : method);
      cells.push_back(fmt17(a.err));
      w.row(cells);
    }
  }
}

// diffraction.csv: xi1,...,xid,R,re_S,im_S,abs_S,vol_ball,ratio
inline void emitDiffraction(const std::vector<ExpSumRow>& rows, std::size_t d,
                            const std::string& path, bool asJson = false) {
  std::vector<std::string> header;
  for (std::size_t c = 0; c < d; ++c) header.push_back("xi" + std::to_string(c + 1));
  header.insert(header.end(), {"R", "re_S", "im_S", "abs_S", "vol_ball", "ratio"});
  CsvWriter w(path, header, asJson);
  for (auto& r : rows) {
    std::vector<std::string> cells;
    for (double x : r.xi) cells.push_back(fmt17(x));
    cells.push_back(fmt17(r.R));
    cells.push_back(fmt17(r.S.real()));
    cells.push_back(fmt17(r.S.imag()));
    cells.push_back(fmt17(std::abs(r.S)));
    cells.push_back(fmt17(r.volBall));
    cells.push_back(fmt17(std::abs(r.ratio)));
    w.row(cells);
  }
}

// variance.csv: R,variance,sup_dev,sup_dev_over_R_pow
inline void emitVariance(const std::vector<VarianceRow>& rows, const std::string& path,
                         bool asJson = false) {
  CsvWriter w(path, {"R", "variance", "sup_dev", "sup_dev_over_R_pow"}, asJson);
  for (auto& r : rows)
    w.row({fmt17(r.R), fmt17(r.variance), fmt17(r.supDev), fmt17(r.supDevOverRpow)});
}

// ---- SVG ----

class SvgPlot {
public:
  SvgPlot(const Box& window, int widthPx = 760) : window_(window) {
    const double w = window.range[0].second - window.range[0].first;
    const double h = window.range.size() > 1 ? window.range[1].second - window.range[1].first : w;
    scale_ = (widthPx - 2.0 * pad_) / w;
    width_ = widthPx;
    height_ = int(h * scale_ + 2 * pad_);
  }

  void circle(double x, double y, double r, const std::string& fill) {
    auto [px, py] = toPx(x, y);
    body_ << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"" << r << "\" fill=\"" << fill
          << "\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
    if (pts.size() < 2) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"0.6\" points=\"";
    for (auto& [x, y] : pts) {
      auto [px, py] = toPx(x, y);
      body_ << px << "," << py << " ";
    }
    body_ << "\"/>\n";
  }

  void save(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw NumericError("OutputError", "cannot open '" + path + "'");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
  }

private:
  std::pair<double, double> toPx(double x, double y) const {
    double px = pad_ + (x - window_.range[0].first) * scale_;
    double py = height_ - pad_ - (y - window_.range[1].first) * scale_;
    return {px, py};
  }

  Box window_;
  double scale_ = 1.0;
  double pad_ = 12.0;
  int width_ = 0, height_ = 0;
  std::ostringstream body_;
};

// Points as dots, optionally overlaying the zero curves of the defining
// trigonometric equations: for each coordinate pair (i, j) the parametric
// family x(u; k) solving rows i, j of L x = lift(u) + k.
inline void plotPoints(const QuasicrystalWindow& qw, const LeeYangCurve* curve,
                       const PositiveMatrix* L, bool overlay, const std::string& path) {
  SvgPlot svg(qw.window);
  if (overlay && curve && L && qw.window.dim() == 2) {
    const PhaseLift& pl = curve->lift();
    const int n = int(L->rows());
    const char* colors[] = {"#6f9bd1", "#76b07a", "#d79b56"};
    int colorIdx = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        // invert the 2x2 system of rows i and j
        Mat sys(2, 2);
        sys(0, 0) = L->matrix()(i, 0);
        sys(0, 1) = L->matrix()(i, 1);
        sys(1, 0) = L->matrix()(j, 0);
        sys(1, 1) = L->matrix()(j, 1);
        const std::string color = colors[colorIdx++ % 3];
        // k ranges from the window image
        auto img = detail::imageIntervals(*L, qw.window);
        for (long ki = long(std::floor(img[i].first)) - 2; ki <= long(std::ceil(img[i].second)) + 2;
             ++ki) {
          for (long kj = long(std::floor(img[j].first)) - 2;
               kj <= long(std::ceil(img[j].second)) + 2; ++kj) {
            std::vector<std::pair<double, double>> seg;
            for (int s = 0; s <= 400; ++s) {
              double u = double(s) / 400;
              Vec rhs{pl.lift(std::size_t(i), u) + double(ki),
                      pl.lift(std::size_t(j), u) + double(kj)};
              Vec x = solveLinear(sys, rhs);
              bool in = qw.window.contains(x, 0.2);
              if (in) {
                seg.push_back({x[0], x[1]});
              } else if (!seg.empty()) {
                svg.polyline(seg, color);
                seg.clear();
              }
            }
            svg.polyline(seg, color);
          }
        }
      }
    }
  }
  for (auto& p : qw.points) svg.circle(p.x[0], p.x[1], 2.2, "#1f3b73");
  svg.save(path);
}

// Spectrum sites as dots scaled by |c_xi|.
inline void plotSpectrum(const std::vector<SpectrumAtomWithCoefficient>& atoms, const Box& window,
                         const std::string& path) {
  SvgPlot svg(window);
  double maxAbs = 1e-300;
  for (auto& a : atoms) maxAbs = std::max(maxAbs, std::abs(a.c));
  for (auto& a : atoms) {
    if (a.numericallyZero) continue;
    double r = 1.0 + 4.0 * std::sqrt(std::abs(a.c) / maxAbs);
    svg.circle(a.xi[0], a.xi.size() > 1 ? a.xi[1] : 0.0, r, "#a03030");
  }
  svg.save(path);
}

}  // namespace fqc
