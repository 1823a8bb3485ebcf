#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "shadowlab/cli/cli.hpp"

namespace shadowlab::cli {

namespace {

constexpr double kWidth = 640.0, kHeight = 400.0, kMargin = 48.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg(const std::string& path, const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& knots, const std::string& title) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  const double x0 = x.front(), x1 = x.back();
  double ymax = 0.0;
  for (double v : y)
    if (std::isfinite(v)) ymax = std::max(ymax, v);
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.05;
  auto px = [&](double v) { return kMargin + (v - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  auto py = [&](double v) {
    const double c = std::isfinite(v) ? std::clamp(v, 0.0, ymax) : ymax;
    return kHeight - kMargin - c / ymax * (kHeight - 2 * kMargin);
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << escape(title) << "</text>\n";
  // Axes.
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << format_double(x0)
      << "</text>\n"
      << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << format_double(x1)
      << "</text>\n"
      << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << format_double(ymax)
      << "</text>\n";
  for (double k : knots) {
    if (k < x0 || k > x1) continue;
    out << "<line x1=\"" << px(k) << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << px(k)
        << "\" y2=\"" << kHeight - kMargin + 8 << "\" stroke=\"red\"/>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) out << px(x[i]) << ',' << py(y[i]) << ' ';
  out << "\"/>\n</svg>\n";
}

}  // namespace shadowlab::cli
