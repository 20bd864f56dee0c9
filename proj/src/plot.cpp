#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "vrsd/experiment.hpp"
#include "vrsd/format.hpp"

namespace vrsd {

namespace {

constexpr double kGapFloor = 1e-16;

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> gap;  // clipped, positive
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt_tick(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

void emit_plot(const TraceFile& tf, const std::string& svg_path, PlotAxis axis) {
  if (tf.records.empty()) throw std::invalid_argument("emit_plot: empty trace");
  for (const auto& r : tf.records)
    if (!r.gap) throw std::invalid_argument("emit_plot: gap column required for log scale");

  std::vector<Curve> curves;
  std::map<std::string, std::size_t> index;
  bool clipped = false;
  for (const auto& r : tf.records) {
    auto [it, fresh] = index.try_emplace(r.algorithm, curves.size());
    if (fresh) curves.push_back({r.algorithm, {}, {}});
    Curve& c = curves[it->second];
    c.x.push_back(axis == PlotAxis::Passes ? r.effective_passes : r.wall_time_s);
    double g = *r.gap;
    if (g < kGapFloor) {
      g = kGapFloor;
      clipped = true;
    }
    c.gap.push_back(g);
  }

  double x_min = curves[0].x[0], x_max = x_min;
  double ly_min = std::log10(curves[0].gap[0]), ly_max = ly_min;
  for (const auto& c : curves) {
    for (double v : c.x) {
      x_min = std::min(x_min, v);
      x_max = std::max(x_max, v);
    }
    for (double g : c.gap) {
      const double l = std::log10(g);
      ly_min = std::min(ly_min, l);
      ly_max = std::max(ly_max, l);
    }
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  ly_min = std::floor(ly_min);
  ly_max = std::ceil(ly_max);
  if (ly_max <= ly_min) ly_max = ly_min + 1.0;

  const double width = 720, height = 480;
  const double ml = 80, mr = 160, mt = 40, mb = 60;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto px = [&](double v) { return ml + pw * (v - x_min) / (x_max - x_min); };
  auto py = [&](double g) { return mt + ph * (ly_max - std::log10(g)) / (ly_max - ly_min); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g font-family=\"sans-serif\" font-size=\"12\">\n";

  // axes box
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // y grid: one tick per decade (thinned to <= 12 labels)
  const int decades = static_cast<int>(ly_max - ly_min);
  const int y_step = std::max(1, (decades + 11) / 12);
  for (int e = static_cast<int>(ly_min); e <= static_cast<int>(ly_max); e += y_step) {
    const double y = mt + ph * (ly_max - e) / (ly_max - ly_min);
    svg << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\"" << y
        << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  // x ticks
  for (int k = 0; k <= 5; ++k) {
    const double v = x_min + (x_max - x_min) * k / 5.0;
    const double x = px(v);
    svg << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x << "\" y2=\""
        << mt + ph + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\">" << fmt_tick(v) << "</text>\n";
  }
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">"
      << (axis == PlotAxis::Passes ? "effective passes" : "wall time (s)") << "</text>\n"
      << "<text x=\"18\" y=\"" << mt + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << mt + ph / 2 << ")\">objective gap</text>\n";

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const Curve& c = curves[ci];
    const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (c.x.size() == 1) {
      svg << "<circle cx=\"" << px(c.x[0]) << "\" cy=\"" << py(c.gap[0])
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < c.x.size(); ++k)
        svg << px(c.x[k]) << ',' << py(c.gap[k]) << (k + 1 < c.x.size() ? " " : "");
      svg << "\"/>\n";
    }
    const double ly = mt + 16 + 18.0 * static_cast<double>(ci);
    svg << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw + 34
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly << "\">" << c.label << "</text>\n";
  }

  if (clipped)
    svg << "<text x=\"" << ml + 6 << "\" y=\"" << mt + ph - 8
        << "\" fill=\"#888888\">nonpositive gaps clipped at 1e-16</text>\n";

  svg << "</g>\n</svg>\n";

  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open plot file for writing: " + svg_path);
  out << svg.str();

  std::ofstream dat(svg_path + ".dat", std::ios::binary);
  if (!dat) throw std::runtime_error("cannot open plot sidecar for writing: " + svg_path + ".dat");
  dat << "# algorithm x gap_clipped\n";
  for (const auto& c : curves)
    for (std::size_t k = 0; k < c.x.size(); ++k)
      dat << c.label << ' ' << format_double(c.x[k]) << ' ' << format_double(c.gap[k]) << '\n';
}

}  // namespace vrsd
