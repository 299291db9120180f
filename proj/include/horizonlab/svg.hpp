#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "horizonlab/arena.hpp"
#include "horizonlab/csv.hpp"

namespace horizonlab {

// Static SVG line plot of a max-regret table: one polyline per learner,
// axes with ticks, and a legend. Pure rendering of the table contents.
inline std::string table_to_svg(const MaxRegretTable& table) {
  const double width = 800, height = 500;
  const double ml = 70, mr = 170, mt = 30, mb = 55;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double y_max = 1e-9;
  for (const Vec& series : table.max_regret)
    for (double v : series) y_max = std::max(y_max, v);
  y_max *= 1.05;
  const double x_max = static_cast<double>(table.rounds);

  auto sx = [&](double x) { return ml + x / x_max * pw; };
  auto sy = [&](double y) { return mt + ph - y / y_max * ph; };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
      << mt + ph << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_max * i / 5.0;
    const double yv = y_max * i / 5.0;
    svg << "<line x1=\"" << sx(xv) << "\" y1=\"" << mt + ph << "\" x2=\"" << sx(xv) << "\" y2=\""
        << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(xv) << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-size=\"12\">" << static_cast<int>(xv) << "</text>\n";
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << ml << "\" y2=\""
        << sy(yv) << "\" stroke=\"black\"/>\n";
    std::ostringstream label;
    label.precision(3);
    label << yv;
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << sy(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"12\">" << label.str() << "</text>\n";
  }
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"14\">round</text>\n";
  svg << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 " << mt + ph / 2
      << ")\">max regret</text>\n";

  // series
  for (std::size_t li = 0; li < table.learner_ids.size(); ++li) {
    const char* color = palette[li % 8];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (int r = 0; r < table.rounds; ++r) {
      svg << sx(r + 1) << ',' << sy(table.max_regret[li][static_cast<std::size_t>(r)]);
      if (r + 1 < table.rounds) svg << ' ';
    }
    svg << "\"/>\n";
    const double ly = mt + 16 + 18 * static_cast<double>(li);
    svg << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw + 36
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << ml + pw + 42 << "\" y=\"" << ly
        << "\" font-size=\"12\">" << table.learner_ids[li] << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace horizonlab
