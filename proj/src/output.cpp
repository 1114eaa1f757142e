#include "ptmcom/output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "ptmcom/config.hpp"
#include "ptmcom/errors.hpp"

namespace ptmcom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Rgb {
  double r, g, b;
};

constexpr std::array<Rgb, 3> kRamp{{{0x44, 0x01, 0x54}, {0x21, 0x90, 0x8d}, {0xfd, 0xe7, 0x25}}};

std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double s = t * (kRamp.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(s), kRamp.size() - 2);
  const double f = s - static_cast<double>(i);
  auto mix = [&](double a, double b) { return static_cast<int>(std::lround(a + f * (b - a))); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(kRamp[i].r, kRamp[i + 1].r),
                mix(kRamp[i].g, kRamp[i + 1].g), mix(kRamp[i].b, kRamp[i + 1].b));
  return buf;
}

void svg_open(std::ostream& out, int width, int height) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
         "patternTransform=\"rotate(45)\"><rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#888888\" stroke-width=\"2\"/>"
         "</pattern></defs>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

struct Frame {
  double left = 80, top = 30, width = 480, height = 400;
};

enum class CellFill { value, hatched, grey };

struct Cell {
  CellFill fill;
  double value;
};

void draw_grid(std::ostream& out, const Frame& f, std::size_t rows, std::size_t cols,
               const std::vector<Cell>& cells, double lo, double hi) {
  // axis1 runs along x, axis2 along y (upwards).
  const double cw = f.width / static_cast<double>(rows);
  const double ch = f.height / static_cast<double>(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const Cell& c = cells[i * cols + j];
      const double x = f.left + static_cast<double>(i) * cw;
      const double y = f.top + f.height - static_cast<double>(j + 1) * ch;
      std::string fill;
      switch (c.fill) {
        case CellFill::hatched: fill = "url(#hatch)"; break;
        case CellFill::grey: fill = "#cccccc"; break;
        case CellFill::value: fill = ramp(hi > lo ? (c.value - lo) / (hi - lo) : 0.0); break;
      }
      out << "<rect class=\"cell\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cw)
          << "\" height=\"" << num(ch) << "\" fill=\"" << fill << "\" shape-rendering=\"crispEdges\"/>\n";
    }
  }
}

void draw_axes(std::ostream& out, const Frame& f, const std::string& xl, double x0, double x1,
               const std::string& yl, double y0, double y1) {
  out << "<rect x=\"" << f.left << "\" y=\"" << f.top << "\" width=\"" << f.width << "\" height=\""
      << f.height << "\" fill=\"none\" stroke=\"#000000\"/>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<text x=\"" << f.left << "\" y=\"" << f.top + f.height + 16 << "\">" << num(x0)
      << "</text>\n";
  out << "<text x=\"" << f.left + f.width << "\" y=\"" << f.top + f.height + 16
      << "\" text-anchor=\"end\">" << num(x1) << "</text>\n";
  out << "<text x=\"" << f.left + f.width / 2 << "\" y=\"" << f.top + f.height + 34
      << "\" text-anchor=\"middle\">" << escape(xl) << "</text>\n";
  out << "<text x=\"" << f.left - 6 << "\" y=\"" << f.top + f.height << "\" text-anchor=\"end\">"
      << num(y0) << "</text>\n";
  out << "<text x=\"" << f.left - 6 << "\" y=\"" << f.top + 10 << "\" text-anchor=\"end\">"
      << num(y1) << "</text>\n";
  out << "<text x=\"" << f.left - 50 << "\" y=\"" << f.top + f.height / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << f.left - 50 << ' '
      << f.top + f.height / 2 << ")\">" << escape(yl) << "</text>\n";
  out << "</g>\n";
}

void draw_colorbar(std::ostream& out, const Frame& f, const std::string& label, double lo,
                   double hi) {
  const double x = f.left + f.width + 30;
  constexpr int steps = 64;
  const double h = f.height / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = (k + 0.5) / steps;
    out << "<rect x=\"" << x << "\" y=\"" << num(f.top + f.height - (k + 1) * h)
        << "\" width=\"20\" height=\"" << num(h) << "\" fill=\"" << ramp(t)
        << "\" shape-rendering=\"crispEdges\"/>\n";
  }
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<text class=\"colorbar-max\" x=\"" << x + 24 << "\" y=\"" << f.top + 10 << "\">max "
      << num(hi) << "</text>\n"
      << "<text class=\"colorbar-min\" x=\"" << x + 24 << "\" y=\"" << f.top + f.height << "\">min "
      << num(lo) << "</text>\n"
      << "<text x=\"" << x << "\" y=\"" << f.top - 10 << "\">" << escape(label) << "</text>\n"
      << "</g>\n";
}

void write_row(std::ostream& out, double a1, std::optional<double> a2, bool stable,
               const std::optional<ChannelSet>& channels, double intensity, std::size_t branches) {
  out << num(a1) << ',' << (a2 ? num(*a2) : std::string()) << ',' << (stable ? 1 : 0);
  for (Channel chn : kAllChannels) out << ',' << (channels ? num((*channels)[chn]) : std::string());
  out << ',' << num(intensity) << ',' << branches << '\n';
}

}  // namespace

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records)
    write_row(out, r.axis1, r.axis2, r.stable, r.channels, r.intensity_c, r.branch_count);
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  auto out = open_output(path);
  write_csv(out, records);
  if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

void write_csv(std::ostream& out, const StabilityMap& map) {
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < map.values1.size(); ++i)
    for (std::size_t j = 0; j < map.values2.size(); ++j) {
      const StabilityCell& c = map.at(i, j);
      write_row(out, map.values1[i], map.values2[j], c.stable, std::nullopt, c.intensity_c,
                c.branch_count);
    }
}

void write_ep_csv(std::ostream& out, const std::vector<double>& j1_values,
                  const std::vector<PtPhase>& phases) {
  out << "j1,discriminant,phase,re_plus,im_plus,re_minus,im_minus\n";
  for (std::size_t k = 0; k < phases.size(); ++k) {
    const PtPhase& p = phases[k];
    out << num(j1_values[k]) << ',' << num(p.discriminant) << ',' << to_string(p.phase) << ','
        << num(p.lambda_plus.real()) << ',' << num(p.lambda_plus.imag()) << ','
        << num(p.lambda_minus.real()) << ',' << num(p.lambda_minus.imag()) << '\n';
  }
}

void write_svg_heatmap(std::ostream& out, const SweepGrid& grid, Channel channel) {
  if (!grid.two_dimensional())
    throw ArgumentError("write_svg_heatmap: grid is one-dimensional; use a line plot");
  const std::size_t rows = grid.values1.size();
  const std::size_t cols = grid.values2.size();
  std::vector<Cell> cells;
  cells.reserve(grid.records.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& r : grid.records) {
    if (!r.stable) {
      cells.push_back({CellFill::hatched, kNaN});
    } else if (!r.channels || !std::isfinite((*r.channels)[channel])) {
      cells.push_back({CellFill::grey, kNaN});
    } else {
      const double v = (*r.channels)[channel];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      cells.push_back({CellFill::value, v});
    }
  }
  if (!(lo <= hi)) lo = hi = 0.0;
  const Frame f;
  svg_open(out, 700, 480);
  draw_grid(out, f, rows, cols, cells, lo, hi);
  draw_axes(out, f, std::string(parameter_info(grid.axis1.parameter).key), grid.values1.front(),
            grid.values1.back(), std::string(parameter_info(grid.axis2->parameter).key),
            grid.values2.front(), grid.values2.back());
  draw_colorbar(out, f, std::string(to_string(channel)), lo, hi);
  out << "</svg>\n";
}

void emit_svg_heatmap(const SweepGrid& grid, Channel channel, const std::string& path) {
  if (!grid.two_dimensional())
    throw ArgumentError("emit_svg_heatmap: grid is one-dimensional; use a line plot");
  auto out = open_output(path);
  write_svg_heatmap(out, grid, channel);
  if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

void write_svg_stability(std::ostream& out, const StabilityMap& map) {
  std::vector<Cell> cells;
  cells.reserve(map.cells.size());
  for (const auto& c : map.cells)
    cells.push_back({c.stable ? CellFill::value : CellFill::hatched, 0.0});
  const Frame f;
  svg_open(out, 620, 480);
  draw_grid(out, f, map.values1.size(), map.values2.size(), cells, 0.0, 1.0);
  draw_axes(out, f, std::string(parameter_info(map.axis1.parameter).key), map.values1.front(),
            map.values1.back(), std::string(parameter_info(map.axis2.parameter).key),
            map.values2.front(), map.values2.back());
  out << "</svg>\n";
}

void write_svg_lines(std::ostream& out, const std::vector<LineSeries>& series,
                     const std::string& x_label, const std::string& y_label) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      x0 = std::min(x0, s.x[k]);
      x1 = std::max(x1, s.x[k]);
      y0 = std::min(y0, s.y[k]);
      y1 = std::max(y1, s.y[k]);
    }
  if (!(x0 <= x1)) x0 = 0.0, x1 = 1.0;
  if (!(y0 <= y1)) y0 = 0.0, y1 = 1.0;
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  const Frame f;
  svg_open(out, 700, 480);
  for (const auto& s : series) {
    std::ostringstream d;
    bool pen = false;
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) {
        pen = false;
        continue;
      }
      const double px = f.left + (s.x[k] - x0) / (x1 - x0) * f.width;
      const double py = f.top + f.height - (s.y[k] - y0) / (y1 - y0) * f.height;
      d << (pen ? " L" : " M") << num(px) << ' ' << num(py);
      pen = true;
    }
    out << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << s.colour
        << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
  }
  draw_axes(out, f, x_label, x0, x1, y_label, y0, y1);
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double y = f.top + 14 + 16 * static_cast<double>(k);
    out << "<line x1=\"" << f.left + f.width + 10 << "\" y1=\"" << y - 4 << "\" x2=\""
        << f.left + f.width + 34 << "\" y2=\"" << y - 4 << "\" stroke=\"" << series[k].colour
        << "\"" << (series[k].dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    out << "<text x=\"" << f.left + f.width + 38 << "\" y=\"" << y << "\">"
        << escape(series[k].label) << "</text>\n";
  }
  out << "</g>\n</svg>\n";
}

}  // namespace ptmcom
