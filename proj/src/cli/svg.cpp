#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace shapeforge::cli::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;
constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                                              "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

Frame fit(const std::vector<Point>& pts, bool square) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  if (!std::isfinite(x0)) return {-1, 1, -1, 1};
  auto pad = [](double& lo, double& hi) {
    const double span = hi - lo;
    const double p = span > 0 ? 0.08 * span : 1.0;
    lo -= p;
    hi += p;
  };
  pad(x0, x1);
  pad(y0, y1);
  if (square) {
    const double s = std::max(x1 - x0, y1 - y0);
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    x0 = cx - s / 2;
    x1 = cx + s / 2;
    y0 = cy - s / 2;
    y1 = cy + s / 2;
  }
  return {x0, x1, y0, y1};
}

std::ostringstream open(const std::string& title) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << escape(title) << "</text>\n";
  return out;
}

void axes(std::ostringstream& out, const Frame& f, const std::string& xl, const std::string& yl) {
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"#444\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(xl)
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 16 " << kHeight / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(yl)
      << "</text>\n";
  auto tick = [&](double v, bool horizontal) {
    if (horizontal) {
      out << "<text x=\"" << f.px(v) << "\" y=\"" << kHeight - kMargin + 14
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << v << "</text>\n";
    } else {
      out << "<text x=\"" << kMargin - 4 << "\" y=\"" << f.py(v) + 3
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << v << "</text>\n";
    }
  };
  tick(f.x0, true);
  tick(f.x1, true);
  tick(f.y0, false);
  tick(f.y1, false);
}

void legend(std::ostringstream& out, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double y = kMargin + 14 + 16 * static_cast<double>(i);
    out << "<circle cx=\"" << kWidth - kMargin - 110 << "\" cy=\"" << y - 4 << "\" r=\"4\" fill=\""
        << kPalette[i % kPalette.size()] << "\"/>\n"
        << "<text x=\"" << kWidth - kMargin - 100 << "\" y=\"" << y
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(labels[i]) << "</text>\n";
  }
}

}  // namespace

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string scatter(const std::vector<Series>& series, const std::string& title,
                    const std::string& x_label, const std::string& y_label) {
  std::vector<Point> all{{0.0, 0.0}};
  for (const auto& s : series) all.insert(all.end(), s.points.begin(), s.points.end());
  const Frame f = fit(all, false);
  auto out = open(title);
  axes(out, f, x_label, y_label);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < series.size(); ++i) {
    labels.push_back(series[i].label);
    for (const auto& p : series[i].points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) continue;
      out << "<circle cx=\"" << f.px(p.x) << "\" cy=\"" << f.py(p.y) << "\" r=\"3\" fill=\""
          << kPalette[i % kPalette.size()] << "\" fill-opacity=\"0.75\"/>\n";
    }
  }
  const double ox = f.px(0.0), oy = f.py(0.0);
  out << "<path d=\"M" << ox - 6 << ' ' << oy << " H" << ox + 6 << " M" << ox << ' ' << oy - 6 << " V"
      << oy + 6 << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  legend(out, labels);
  out << "</svg>\n";
  return out.str();
}

std::string overlay(const std::vector<Series>& outlines, const std::string& title) {
  std::vector<Point> all;
  for (const auto& s : outlines) all.insert(all.end(), s.points.begin(), s.points.end());
  const Frame f = fit(all, true);
  auto out = open(title);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < outlines.size(); ++i) {
    labels.push_back(outlines[i].label);
    out << "<polygon fill=\"none\" stroke=\"" << kPalette[i % kPalette.size()]
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : outlines[i].points) out << f.px(p.x) << ',' << f.py(p.y) << ' ';
    out << "\"/>\n";
  }
  legend(out, labels);
  out << "</svg>\n";
  return out.str();
}

std::string control_chart(const std::vector<double>& values, std::size_t phase1_count, double center,
                          double lower, double upper, const std::vector<bool>& flagged,
                          const std::string& title) {
  std::vector<Point> all{{0.0, lower}, {static_cast<double>(values.size()), upper}};
  for (std::size_t i = 0; i < values.size(); ++i) all.push_back({static_cast<double>(i), values[i]});
  const Frame f = fit(all, false);
  auto out = open(title);
  axes(out, f, "sample", "distance to reference");
  auto hline = [&](double y, const char* color, const char* dash) {
    out << "<line x1=\"" << f.px(f.x0) << "\" x2=\"" << f.px(f.x1) << "\" y1=\"" << f.py(y)
        << "\" y2=\"" << f.py(y) << "\" stroke=\"" << color << "\" stroke-dasharray=\"" << dash
        << "\"/>\n";
  };
  hline(center, "#2ca02c", "none");
  hline(upper, "#d62728", "6 4");
  hline(lower, "#d62728", "6 4");
  if (phase1_count > 0 && phase1_count < values.size()) {
    const double x = f.px(static_cast<double>(phase1_count) - 0.5);
    out << "<line x1=\"" << x << "\" x2=\"" << x << "\" y1=\"" << kMargin << "\" y2=\""
        << kHeight - kMargin << "\" stroke=\"#999\" stroke-dasharray=\"2 3\"/>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" points=\"";
  for (std::size_t i = 0; i < values.size(); ++i) out << f.px(static_cast<double>(i)) << ',' << f.py(values[i]) << ' ';
  out << "\"/>\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool red = i >= phase1_count && i - phase1_count < flagged.size() && flagged[i - phase1_count];
    out << "<circle cx=\"" << f.px(static_cast<double>(i)) << "\" cy=\"" << f.py(values[i])
        << "\" r=\"3\" fill=\"" << (red ? "#d62728" : "#1f77b4") << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string boxplot(const std::vector<Box>& boxes, const std::string& title, const std::string& y_label) {
  std::vector<Point> all{{0.0, 0.0}, {static_cast<double>(boxes.size()), 0.0}};
  for (const auto& b : boxes) {
    all.push_back({0.0, b.min});
    all.push_back({0.0, b.max});
  }
  Frame f = fit(all, false);
  f.x0 = -0.5;
  f.x1 = static_cast<double>(boxes.size()) - 0.5;
  auto out = open(title);
  axes(out, f, "group", y_label);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    const double cx = f.px(static_cast<double>(i));
    const double half = 0.25 * (kWidth - 2 * kMargin) / static_cast<double>(boxes.size());
    const char* color = kPalette[i % kPalette.size()];
    const double wlo = std::max(b.min, b.lower_fence);
    const double whi = std::min(b.max, b.upper_fence);
    out << "<line x1=\"" << cx << "\" x2=\"" << cx << "\" y1=\"" << f.py(wlo) << "\" y2=\"" << f.py(whi)
        << "\" stroke=\"" << color << "\"/>\n";
    out << "<rect x=\"" << cx - half << "\" y=\"" << f.py(b.q3) << "\" width=\"" << 2 * half
        << "\" height=\"" << std::max(0.0, f.py(b.q1) - f.py(b.q3)) << "\" fill=\"white\" stroke=\""
        << color << "\"/>\n";
    out << "<line x1=\"" << cx - half << "\" x2=\"" << cx + half << "\" y1=\"" << f.py(b.median)
        << "\" y2=\"" << f.py(b.median) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    for (double o : b.outliers) {
      out << "<circle cx=\"" << cx << "\" cy=\"" << f.py(o) << "\" r=\"3\" fill=\"none\" stroke=\""
          << color << "\"/>\n";
    }
    out << "<text x=\"" << cx << "\" y=\"" << kHeight - kMargin + 28
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << escape(b.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace shapeforge::cli::svg
