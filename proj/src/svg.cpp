#include "deltaion/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "deltaion/csv.hpp"
#include "deltaion/errors.hpp"

namespace deltaion {

void SvgPlot::add(std::vector<double> x, std::vector<double> y,
                  std::string color, std::string label) {
  SvgSeries s;
  s.x = std::move(x);
  s.y = std::move(y);
  s.color = std::move(color);
  s.label = std::move(label);
  series.push_back(std::move(s));
}

void SvgPlot::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open SVG for writing: " + path);

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!(xmin < xmax)) { xmin = 0; xmax = 1; }
  if (!(ymin < ymax)) { ymin = 0; ymax = 1; }

  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << ml << "\" y=\"24\" font-family=\"monospace\" "
         "font-size=\"14\">" << title << "</text>\n";
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" font-family=\"monospace\" font-size=\"12\" "
         "text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << mt + ph / 2
      << "\" font-family=\"monospace\" font-size=\"12\" "
         "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\" "
         "text-anchor=\"middle\">" << y_label << "</text>\n";

  // simple tick labels at the corners of the data range
  out << "<text x=\"" << ml << "\" y=\"" << height - mb + 16
      << "\" font-family=\"monospace\" font-size=\"10\">"
      << format_double(xmin) << "</text>\n";
  out << "<text x=\"" << ml + pw << "\" y=\"" << height - mb + 16
      << "\" font-family=\"monospace\" font-size=\"10\" "
         "text-anchor=\"end\">" << format_double(xmax) << "</text>\n";
  out << "<text x=\"" << ml - 6 << "\" y=\"" << mt + ph
      << "\" font-family=\"monospace\" font-size=\"10\" "
         "text-anchor=\"end\">" << format_double(ymin) << "</text>\n";
  out << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 10
      << "\" font-family=\"monospace\" font-size=\"10\" "
         "text-anchor=\"end\">" << format_double(ymax) << "</text>\n";

  int legend_y = static_cast<int>(mt) + 14;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    out << "\"/>\n";
    if (!s.label.empty()) {
      out << "<text x=\"" << ml + pw - 6 << "\" y=\"" << legend_y
          << "\" font-family=\"monospace\" font-size=\"11\" fill=\""
          << s.color << "\" text-anchor=\"end\">" << s.label << "</text>\n";
      legend_y += 14;
    }
  }
  out << "</svg>\n";
}

}  // namespace deltaion
