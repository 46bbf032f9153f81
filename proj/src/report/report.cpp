#include "ilprior/report/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ilprior/errors.hpp"

namespace ilprior {

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

void write_density_csv(std::ostream& out, const Density1D& density) {
  out << "center,mass\n";
  for (std::size_t i = 0; i < density.bins(); ++i)
    out << format_double(density.center(i)) << ',' << format_double(density.mass(i)) << '\n';
}

void write_grid_csv(std::ostream& out, const DensityGrid2D& grid) {
  const std::size_t r = grid.resolution();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (j) out << ',';
      out << format_double(grid.mass(i, j));
    }
    out << '\n';
  }
}

namespace {

double parse_field(const std::string& field, std::size_t lineno) {
  double v = 0.0;
  const char* b = field.data();
  const char* e = b + field.size();
  while (b < e && *b == ' ') ++b;
  while (e > b && (e[-1] == ' ' || e[-1] == '\r')) --e;
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) {
    throw LoadError("line " + std::to_string(lineno) + ": bad number '" + field + "'", lineno);
  }
  return v;
}

std::vector<std::vector<double>> read_rows(const std::filesystem::path& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (skip_header && lineno == 1) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(parse_field(field, lineno));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << x;
  return os.str();
}

// Sequential colormap from white through orange to dark red.
std::string heat_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 - 115 * std::max(0.0, t - 0.5) * 2));
  const int g = static_cast<int>(std::lround(255 * (1.0 - t)));
  const int b = static_cast<int>(std::lround(255 * std::max(0.0, 1.0 - 2.0 * t)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

constexpr double kW = 640, kH = 420, kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

}  // namespace

Density1D read_density_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path, true);
  if (rows.size() < 2) throw LoadError(path.string() + ": need at least 2 bins", 1);
  std::vector<double> masses;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 2) throw LoadError(path.string() + ": expected center,mass", i + 2);
    masses.push_back(rows[i][1]);
  }
  const double width = rows[1][0] - rows[0][0];
  const double lo = rows.front()[0] - width / 2.0;
  const double hi = rows.back()[0] + width / 2.0;
  return Density1D(lo, hi, std::move(masses));
}

DensityGrid2D read_grid_csv(const std::filesystem::path& path) {
  const auto rows = read_rows(path, false);
  std::vector<double> w;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw LoadError(path.string() + ": grid must be square", i + 1);
    w.insert(w.end(), rows[i].begin(), rows[i].end());
  }
  return DensityGrid2D(rows.size(), std::move(w));
}

std::string svg_histogram(const Density1D& density, std::span<const double> samples, const std::string& title,
                          const std::string& x_label) {
  std::vector<double> hist(density.bins(), 0.0);
  for (double x : samples) hist[density.bin_of(x)] += 1.0;
  if (!samples.empty())
    for (double& h : hist) h /= static_cast<double>(samples.size());
  double ymax = 0.0;
  for (std::size_t i = 0; i < hist.size(); ++i) ymax = std::max({ymax, hist[i], density.mass(i)});
  if (ymax <= 0.0) ymax = 1.0;

  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  const double bw = pw / static_cast<double>(density.bins());
  auto ypix = [&](double v) { return kTop + ph * (1.0 - v / ymax); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
     << kW << ' ' << kH << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << esc(title) << "</text>\n<g fill=\"#9ecae1\" stroke=\"#6baed6\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist[i] <= 0.0) continue;
    const double y = ypix(hist[i]);
    os << "<rect x=\"" << fmt(kLeft + bw * static_cast<double>(i)) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(bw)
       << "\" height=\"" << fmt(kTop + ph - y) << "\"/>\n";
  }
  os << "</g>\n<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < density.bins(); ++i) {
    os << fmt(kLeft + bw * (static_cast<double>(i) + 0.5)) << ',' << fmt(ypix(density.mass(i)))
       << (i + 1 < density.bins() ? " " : "");
  }
  os << "\"/>\n"
     << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw << "\" y2=\"" << kTop + ph
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + ph
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double frac = k / 4.0;
    const double xv = density.lo() + frac * (density.hi() - density.lo());
    const double xp = kLeft + frac * pw;
    os << "<text x=\"" << fmt(xp) << "\" y=\"" << kTop + ph + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << format_double(std::round(xv * 100) / 100)
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << esc(x_label) << "</text>\n"
     << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"12\" transform=\"rotate(-90 16 " << kTop + ph / 2 << ")\">probability mass</text>\n"
     << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const DensityGrid2D& grid, const std::string& title) {
  const std::size_t r = grid.resolution();
  const double side = 400.0;
  const double cell = side / static_cast<double>(r);
  const double left = 60, top = 40;
  double vmax = 0.0;
  for (double m : grid.masses()) vmax = std::max(vmax, m);
  if (vmax <= 0.0) vmax = 1.0;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + side + 30 << "\" height=\"" << top + side + 50
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << left + side / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"15\">" << esc(title) << "</text>\n<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const double m = grid.mass(i, j);
      if (m <= 0.0) continue;
      // w0 grows to the right, w1 grows upwards.
      os << "<rect x=\"" << fmt(left + cell * static_cast<double>(i)) << "\" y=\""
         << fmt(top + side - cell * static_cast<double>(j + 1)) << "\" width=\"" << fmt(cell + 0.05)
         << "\" height=\"" << fmt(cell + 0.05) << "\" fill=\"" << heat_color(m / vmax) << "\"/>\n";
    }
  }
  os << "</g>\n<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << side << "\" height=\"" << side
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double frac = k / 4.0;
    os << "<text x=\"" << fmt(left + frac * side) << "\" y=\"" << top + side + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(frac) << "</text>\n"
       << "<text x=\"" << left - 6 << "\" y=\"" << fmt(top + side - frac * side + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(frac) << "</text>\n";
  }
  os << "<text x=\"" << left + side / 2 << "\" y=\"" << top + side + 40
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">w0</text>\n"
     << "<text x=\"18\" y=\"" << top + side / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
     << "font-size=\"13\" transform=\"rotate(-90 18 " << top + side / 2 << ")\">w1</text>\n</svg>\n";
  return os.str();
}

}  // namespace ilprior
