#include "skinspec/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>

#include "skinspec/error.hpp"

namespace skinspec::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double parse_double(const std::string& field) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) throw InvalidInput("csv: expected a number, got \"" + field + "\"");
  return v;
}

std::vector<double> column_values(const io::CsvTable& table, const std::string& name) {
  const std::size_t col = table.column(name);
  std::vector<double> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) out.push_back(parse_double(row[col]));
  return out;
}

struct Bounds {
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void include(double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  void pad_degenerate() {
    if (!(x1 > x0)) {
      x0 -= 0.5;
      x1 += 0.5;
    }
    if (!(y1 > y0)) {
      y0 -= 0.5;
      y1 += 0.5;
    }
  }
};

// Maps data coordinates into the plot area and collects SVG markup.
class Canvas {
 public:
  Canvas(Bounds b, const std::string& title, const std::string& xlabel, const std::string& ylabel) : b_(b) {
    b_.pad_degenerate();
    out_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" viewBox=\"0 0 " + num(kWidth) + ' ' + num(kHeight) + "\">\n";
    out_ += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out_ += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"15\">" + title + "</text>\n";
    out_ += "<text x=\"" + num(kWidth / 2) + "\" y=\"" + num(kHeight - 10) +
            "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + xlabel + "</text>\n";
    out_ += "<text x=\"16\" y=\"" + num(kHeight / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"13\" transform=\"rotate(-90 16 " + num(kHeight / 2) + ")\">" + ylabel + "</text>\n";
    out_ += "<g clip-path=\"url(#plot)\">\n";
  }

  double px(double x) const { return kMarginLeft + (x - b_.x0) / (b_.x1 - b_.x0) * plot_w(); }
  double py(double y) const { return kHeight - kMarginBottom - (y - b_.y0) / (b_.y1 - b_.y0) * plot_h(); }
  double plot_w() const { return kWidth - kMarginLeft - kMarginRight; }
  double plot_h() const { return kHeight - kMarginTop - kMarginBottom; }

  void raw(const std::string& markup) { out_ += markup; }

  std::string finish() {
    out_ += "</g>\n";
    out_ += "<defs><clipPath id=\"plot\"><rect x=\"" + num(kMarginLeft) + "\" y=\"" + num(kMarginTop) +
            "\" width=\"" + num(plot_w()) + "\" height=\"" + num(plot_h()) + "\"/></clipPath></defs>\n";
    out_ += "<rect x=\"" + num(kMarginLeft) + "\" y=\"" + num(kMarginTop) + "\" width=\"" + num(plot_w()) +
            "\" height=\"" + num(plot_h()) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double t = i / 4.0;
      const double x = b_.x0 + t * (b_.x1 - b_.x0);
      const double y = b_.y0 + t * (b_.y1 - b_.y0);
      out_ += "<text x=\"" + num(px(x)) + "\" y=\"" + num(kHeight - kMarginBottom + 16) +
              "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + label_num(x) + "</text>\n";
      out_ += "<text x=\"" + num(kMarginLeft - 6) + "\" y=\"" + num(py(y) + 4) +
              "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label_num(y) + "</text>\n";
    }
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  Bounds b_;
  std::string out_;
};

// Regular grid recovered from a node table written row by row (re fastest).
struct GridTable {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> re;
  std::vector<double> im;
};

GridTable grid_from(const io::CsvTable& table) {
  GridTable g;
  g.re = column_values(table, "re");
  g.im = column_values(table, "im");
  if (g.re.empty()) throw InvalidInput("csv: empty grid table");
  std::size_t nx = 0;
  while (nx < g.im.size() && g.im[nx] == g.im[0]) ++nx;
  if (nx < 2 || g.re.size() % nx != 0) throw InvalidInput("csv: grid table is not rectangular");
  const std::size_t ny = g.re.size() / nx;
  g.xs.assign(g.re.begin(), g.re.begin() + static_cast<std::ptrdiff_t>(nx));
  for (std::size_t iy = 0; iy < ny; ++iy) g.ys.push_back(g.im[iy * nx]);
  return g;
}

const std::array<const char*, 6> kLevelColours = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::vector<Segment> marching_squares(std::span<const double> values, std::span<const double> xs,
                                      std::span<const double> ys, double level) {
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();
  if (values.size() != nx * ny) throw InvalidInput("marching_squares: value count does not match the grid");
  std::vector<Segment> out;
  if (nx < 2 || ny < 2) return out;

  auto at = [&](std::size_t ix, std::size_t iy) { return values[iy * nx + ix]; };
  auto lerp = [&](double a, double b) {
    const double d = b - a;
    return d == 0.0 ? 0.5 : std::clamp((level - a) / d, 0.0, 1.0);
  };

  for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
    for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
      // Corners counter-clockwise from bottom-left.
      const double v0 = at(ix, iy), v1 = at(ix + 1, iy), v2 = at(ix + 1, iy + 1), v3 = at(ix, iy + 1);
      const int code = (v0 < level) | ((v1 < level) << 1) | ((v2 < level) << 2) | ((v3 < level) << 3);
      if (code == 0 || code == 15) continue;

      const double x0 = xs[ix], x1 = xs[ix + 1], y0 = ys[iy], y1 = ys[iy + 1];
      // Edge crossing points: bottom, right, top, left.
      const std::array<std::array<double, 2>, 4> edge = {{
          {x0 + lerp(v0, v1) * (x1 - x0), y0},
          {x1, y0 + lerp(v1, v2) * (y1 - y0)},
          {x0 + lerp(v3, v2) * (x1 - x0), y1},
          {x0, y0 + lerp(v0, v3) * (y1 - y0)},
      }};
      auto emit = [&](int a, int b) { out.push_back({edge[a][0], edge[a][1], edge[b][0], edge[b][1]}); };

      switch (code) {
        case 1: case 14: emit(3, 0); break;
        case 2: case 13: emit(0, 1); break;
        case 3: case 12: emit(3, 1); break;
        case 4: case 11: emit(1, 2); break;
        case 6: case 9: emit(0, 2); break;
        case 7: case 8: emit(3, 2); break;
        case 5: case 10: {
          const bool centre_below = 0.25 * (v0 + v1 + v2 + v3) < level;
          if ((code == 5) == centre_below) {
            emit(3, 2);
            emit(0, 1);
          } else {
            emit(3, 0);
            emit(1, 2);
          }
          break;
        }
        default: break;
      }
    }
  }
  return out;
}

std::string render_region_svg(const io::CsvTable& region, const io::CsvTable& sigma_det) {
  const GridTable g = grid_from(region);
  const std::size_t label_col = region.column("label");
  const std::vector<double> winding = column_values(region, "winding");
  const std::vector<double> sre = column_values(sigma_det, "re");
  const std::vector<double> sim = column_values(sigma_det, "im");

  Bounds b;
  b.include(g.xs.front(), g.ys.front());
  b.include(g.xs.back(), g.ys.back());
  Canvas canvas(b, "Region G of nonzero winding", "Re &#955;", "Im &#955;");

  const double cw = canvas.plot_w() / static_cast<double>(g.xs.size() - 1);
  const double ch = canvas.plot_h() / static_cast<double>(g.ys.size() - 1);
  std::map<std::string, std::string> paths;  // colour -> path data
  for (std::size_t i = 0; i < g.re.size(); ++i) {
    const std::string& label = region.rows[i][label_col];
    std::string colour;
    if (label == "inside") colour = winding[i] < 0 ? "#9ecae1" : "#fcae91";
    else if (label == "on_sigma_det") colour = "#636363";
    else continue;
    paths[colour] += 'M' + num(canvas.px(g.re[i]) - cw / 2) + ',' + num(canvas.py(g.im[i]) - ch / 2) + 'h' +
                     num(cw) + 'v' + num(ch) + 'h' + num(-cw) + 'z';
  }
  for (const auto& [colour, d] : paths) canvas.raw("<path fill=\"" + colour + "\" d=\"" + d + "\"/>\n");

  std::string dots;
  for (std::size_t i = 0; i < sre.size(); ++i) {
    dots += 'M' + num(canvas.px(sre[i])) + ',' + num(canvas.py(sim[i])) + "h0.01";
  }
  canvas.raw("<path stroke=\"black\" stroke-width=\"2\" stroke-linecap=\"round\" fill=\"none\" d=\"" + dots +
             "\"/>\n");
  return canvas.finish();
}

std::string render_pseudospectrum_svg(const io::CsvTable& sigma_min, const io::CsvTable& eigenvalues,
                                      std::span<const double> epsilons) {
  const GridTable g = grid_from(sigma_min);
  std::vector<double> field = column_values(sigma_min, "sigma_min");
  for (auto& v : field) v = std::log10(std::max(v, std::numeric_limits<double>::min()));
  const std::vector<double> ere = column_values(eigenvalues, "re");
  const std::vector<double> eim = column_values(eigenvalues, "im");

  Bounds b;
  b.include(g.xs.front(), g.ys.front());
  b.include(g.xs.back(), g.ys.back());
  Canvas canvas(b, "Pseudospectrum contours", "Re &#955;", "Im &#955;");

  for (std::size_t l = 0; l < epsilons.size(); ++l) {
    const char* colour = kLevelColours[l % kLevelColours.size()];
    std::string d;
    for (const auto& s : marching_squares(field, g.xs, g.ys, std::log10(epsilons[l]))) {
      d += 'M' + num(canvas.px(s.x0)) + ',' + num(canvas.py(s.y0)) + 'L' + num(canvas.px(s.x1)) + ',' +
           num(canvas.py(s.y1));
    }
    canvas.raw("<path stroke=\"" + std::string(colour) + "\" stroke-width=\"1.2\" fill=\"none\" d=\"" + d + "\"/>\n");
    canvas.raw("<text x=\"" + num(kWidth - kMarginRight - 8) + "\" y=\"" + num(kMarginTop + 16 + 16.0 * l) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + colour +
               "\">&#949; = " + label_num(epsilons[l]) + "</text>\n");
  }
  std::string dots;
  for (std::size_t i = 0; i < ere.size(); ++i) {
    dots += 'M' + num(canvas.px(ere[i])) + ',' + num(canvas.py(eim[i])) + "h0.01";
  }
  canvas.raw("<path stroke=\"black\" stroke-width=\"4\" stroke-linecap=\"round\" fill=\"none\" d=\"" + dots +
             "\"/>\n");
  return canvas.finish();
}

std::string render_modes_svg(const io::CsvTable& modes) {
  const std::size_t mode_col = modes.column("mode");
  const std::size_t zero_col = modes.column("zero_mode");
  const std::vector<double> site = column_values(modes, "site");
  const std::vector<double> amp = column_values(modes, "abs");

  Bounds b;
  for (std::size_t i = 0; i < site.size(); ++i) b.include(site[i], amp[i]);
  b.y0 = 0.0;
  Canvas canvas(b, "Eigenvectors |x| superimposed", "site", "|x|");

  std::string regular;
  std::string zero;
  for (std::size_t i = 0; i < modes.rows.size(); ++i) {
    const bool starts = i == 0 || modes.rows[i][mode_col] != modes.rows[i - 1][mode_col];
    std::string& d = modes.rows[i][zero_col] == "1" ? zero : regular;
    d += (starts ? 'M' : 'L') + num(canvas.px(site[i])) + ',' + num(canvas.py(amp[i]));
  }
  canvas.raw("<path stroke=\"black\" stroke-opacity=\"0.5\" stroke-width=\"0.8\" fill=\"none\" d=\"" + regular +
             "\"/>\n");
  canvas.raw("<path stroke=\"#999999\" stroke-width=\"2\" fill=\"none\" d=\"" + zero + "\"/>\n");
  return canvas.finish();
}

}  // namespace skinspec::cli
