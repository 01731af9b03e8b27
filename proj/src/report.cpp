#include "kpl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "kpl/bounds.hpp"
#include "kpl/cost.hpp"
#include "kpl/profile.hpp"
#include "kpl/search.hpp"

namespace kpl {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_vector_field(const MultiplicityVector& v) { return v.to_string('|'); }

void PlotSpec::validate() const {
  if (!log_log) return;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0) || !(y > 0.0)) {
        throw InvalidArgument("plot '" + title + "': series '" + s.label +
                              "' has a non-positive value on a log axis");
      }
    }
  }
}

std::string to_csv(const Figure& figure) {
  std::string out = "series,x,y\n";
  auto emit = [&](const PlotSpec& spec) {
    for (const auto& s : spec.series) {
      for (const auto& [x, y] : s.points) {
        out += s.label;
        out += ',';
        out += format_number(x);
        out += ',';
        out += format_number(y);
        out += '\n';
      }
    }
  };
  emit(figure.main);
  if (figure.inset) emit(*figure.inset);
  return out;
}

std::vector<CsvPoint> parse_series_csv(std::string_view csv) {
  std::vector<CsvPoint> out;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      if (line != "series,x,y") throw InvalidArgument("series CSV: unexpected header '" + line + "'");
      continue;
    }
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw InvalidArgument("series CSV: malformed row '" + line + "'");
    }
    out.push_back({line.substr(0, c1), std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                   std::stod(line.substr(c2 + 1))});
  }
  return out;
}

namespace {

constexpr const char* kPalette[] = {"#000000", "#1f5fbf", "#c0392b", "#5b8fd9", "#e07b6f",
                                    "#2e8b57", "#7f7f7f", "#8e44ad", "#d4a017"};

std::string fmt2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Box {
  double left, top, width, height;
};

struct Range {
  double lo, hi;
};

Range data_range(const PlotSpec& spec, bool horizontal) {
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (const auto& s : spec.series) {
    for (const auto& p : s.points) {
      const double v = horizontal ? p.first : p.second;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) return {1.0, 10.0};
  if (spec.log_log) {
    lo = std::pow(10.0, std::floor(std::log10(lo)));
    hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (lo == hi) hi = lo * 10.0;
  } else if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi};
}

void render_panel(std::ostringstream& svg, const PlotSpec& spec, const Box& box, bool legend,
                  double font) {
  const Range xr = data_range(spec, true);
  const Range yr = data_range(spec, false);
  auto map = [&](double v, Range r, double origin, double extent, bool flip) {
    double t = spec.log_log ? (std::log10(v) - std::log10(r.lo)) / (std::log10(r.hi) - std::log10(r.lo))
                            : (v - r.lo) / (r.hi - r.lo);
    if (flip) t = 1.0 - t;
    return origin + t * extent;
  };
  auto px = [&](double x) { return map(x, xr, box.left, box.width, false); };
  auto py = [&](double y) { return map(y, yr, box.top, box.height, true); };

  svg << "<rect x=\"" << fmt2(box.left) << "\" y=\"" << fmt2(box.top) << "\" width=\""
      << fmt2(box.width) << "\" height=\"" << fmt2(box.height)
      << "\" fill=\"#ffffff\" stroke=\"#000000\"/>\n";

  if (spec.log_log) {
    for (double d = xr.lo; d <= xr.hi * 1.0001; d *= 10.0) {
      const double x = px(d);
      svg << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(box.top + box.height) << "\" x2=\""
          << fmt2(x) << "\" y2=\"" << fmt2(box.top + box.height - 5) << "\" stroke=\"#000000\"/>\n";
      svg << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(box.top + box.height + font + 2)
          << "\" font-size=\"" << fmt2(font) << "\" text-anchor=\"middle\">" << format_number(d)
          << "</text>\n";
    }
    for (double d = yr.lo; d <= yr.hi * 1.0001; d *= 10.0) {
      const double y = py(d);
      svg << "<line x1=\"" << fmt2(box.left) << "\" y1=\"" << fmt2(y) << "\" x2=\""
          << fmt2(box.left + 5) << "\" y2=\"" << fmt2(y) << "\" stroke=\"#000000\"/>\n";
      svg << "<text x=\"" << fmt2(box.left - 4) << "\" y=\"" << fmt2(y + font / 3)
          << "\" font-size=\"" << fmt2(font) << "\" text-anchor=\"end\">" << format_number(d)
          << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const double vx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
      const double vy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
      svg << "<text x=\"" << fmt2(px(vx)) << "\" y=\"" << fmt2(box.top + box.height + font + 2)
          << "\" font-size=\"" << fmt2(font) << "\" text-anchor=\"middle\">" << tick_label(vx)
          << "</text>\n";
      svg << "<text x=\"" << fmt2(box.left - 4) << "\" y=\"" << fmt2(py(vy) + font / 3)
          << "\" font-size=\"" << fmt2(font) << "\" text-anchor=\"end\">" << tick_label(vy)
          << "</text>\n";
    }
  }

  svg << "<text x=\"" << fmt2(box.left + box.width / 2) << "\" y=\""
      << fmt2(box.top + box.height + 2.4 * font + 2) << "\" font-size=\"" << fmt2(font)
      << "\" text-anchor=\"middle\">" << xml_escape(spec.x_label) << "</text>\n";
  svg << "<text x=\"" << fmt2(box.left) << "\" y=\"" << fmt2(box.top - font / 2)
      << "\" font-size=\"" << fmt2(font) << "\">" << xml_escape(spec.y_label) << "</text>\n";
  if (!spec.title.empty()) {
    svg << "<text x=\"" << fmt2(box.left + box.width / 2) << "\" y=\"" << fmt2(box.top - font / 2)
        << "\" font-size=\"" << fmt2(font * 1.1) << "\" text-anchor=\"middle\">"
        << xml_escape(spec.title) << "</text>\n";
  }

  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const auto& s = spec.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    if (s.style == SeriesStyle::Markers) {
      for (const auto& [x, y] : s.points) {
        svg << "<circle cx=\"" << fmt2(px(x)) << "\" cy=\"" << fmt2(py(y)) << "\" r=\""
            << fmt2(font / 4) << "\" fill=\"" << color << "\"/>\n";
      }
    } else if (!s.points.empty()) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\"";
      if (s.style == SeriesStyle::Dashed) svg << " stroke-dasharray=\"5,3\"";
      svg << " points=\"";
      for (std::size_t k = 0; k < s.points.size(); ++k) {
        if (k) svg << ' ';
        svg << fmt2(px(s.points[k].first)) << ',' << fmt2(py(s.points[k].second));
      }
      svg << "\"/>\n";
    }
  }

  if (legend) {
    const double x0 = box.left + 10;
    double y0 = box.top + box.height - 10 - font * 1.3 * static_cast<double>(spec.series.size());
    for (std::size_t i = 0; i < spec.series.size(); ++i) {
      const char* color = kPalette[i % std::size(kPalette)];
      const double y = y0 + font * 1.3 * static_cast<double>(i);
      svg << "<rect x=\"" << fmt2(x0) << "\" y=\"" << fmt2(y) << "\" width=\"" << fmt2(font)
          << "\" height=\"" << fmt2(font / 2) << "\" fill=\"" << color << "\"/>\n";
      svg << "<text x=\"" << fmt2(x0 + font * 1.4) << "\" y=\"" << fmt2(y + font / 2)
          << "\" font-size=\"" << fmt2(font * 0.85) << "\">" << xml_escape(spec.series[i].label)
          << "</text>\n";
    }
  }
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  std::vector<double> out;
  if (points < 2 || !(lo > 0.0) || !(hi > lo)) return {lo};
  const double step = std::log(hi / lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out.push_back(lo * std::exp(step * static_cast<double>(i)));
  return out;
}

std::string eta_tag(double eta) { return "eta=" + format_number(eta); }

}  // namespace

std::string render_svg(const Figure& figure) {
  figure.main.validate();
  if (figure.inset) figure.inset->validate();
  constexpr double kWidth = 760, kHeight = 560;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  const Box main{80, 40, 650, 460};
  render_panel(svg, figure.main, main, true, 12);
  if (figure.inset) {
    const Box inset{main.left + main.width * 0.56, main.top + 30, main.width * 0.40,
                    main.height * 0.30};
    render_panel(svg, *figure.inset, inset, false, 9);
  }
  svg << "</svg>\n";
  return svg.str();
}

Figure report_fig2(std::uint64_t n_max, unsigned threads, std::uint64_t exhaustive_until) {
  if (n_max == 0) throw InvalidArgument("report-fig2: n_max must be >= 1");
  if (n_max > kFig2MaxBudget) {
    throw InvalidArgument("report-fig2: n_max " + std::to_string(n_max) +
                          " exceeds the search budget of " + std::to_string(kFig2MaxBudget));
  }
  exhaustive_until = std::min({exhaustive_until, n_max, SearchConfig::kDefaultExhaustiveLimit});

  Series best{"best_found", {}, SeriesStyle::Line};
  Series ratio{"ratio_best_over_optimum", {}, SeriesStyle::Line};
  auto add_best = [&](std::uint64_t n, double cost) {
    best.points.emplace_back(static_cast<double>(n), cost);
    ratio.points.emplace_back(static_cast<double>(n), cost / optimum_cost(n));
  };
  for (std::uint64_t n = 1; n <= exhaustive_until; ++n) add_best(n, search_exhaustive(n).cost);
  if (n_max > exhaustive_until) {
    auto cfg = SearchConfig::staged_powers_of_two(exhaustive_until + 1, n_max);
    cfg.threads = threads;
    for (const auto& e : search_constrained(cfg).entries) add_best(e.key, e.report.cost);
  }

  Series m2{"m2", {}, SeriesStyle::Markers};
  Series m3{"m3", {}, SeriesStyle::Markers};
  for (std::size_t distinct = 1; distinct < 63; ++distinct) {
    const auto v = kitaev_vector(distinct, 2);
    if (v.n_total() > n_max) break;
    m2.points.emplace_back(static_cast<double>(v.n_total()), make_report(v).cost);
  }
  for (std::size_t distinct = 1; distinct < 63; ++distinct) {
    const auto v = kitaev_vector(distinct, 3);
    if (v.n_total() > n_max) break;
    m3.points.emplace_back(static_cast<double>(v.n_total()), make_report(v).cost);
  }

  Series bound2{"bound_m2", {}, SeriesStyle::Line};
  Series bound3{"bound_m3", {}, SeriesStyle::Line};
  Series optimum{"optimum", {}, SeriesStyle::Line};
  Series shot{"shot_noise", {}, SeriesStyle::Line};
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double x = static_cast<double>(n);
    bound2.points.emplace_back(x, bound_doubled_curve(x));
    bound3.points.emplace_back(x, bound_tripled_curve(x));
    optimum.points.emplace_back(x, optimum_cost(n));
  }
  // Shot noise on a log-spaced set of N; binomial profiles get expensive.
  std::vector<std::uint64_t> shot_ns;
  for (double x : log_grid(1.0, static_cast<double>(n_max), 80)) {
    const auto n = static_cast<std::uint64_t>(std::llround(x));
    if (shot_ns.empty() || n > shot_ns.back()) shot_ns.push_back(n);
  }
  for (auto n : shot_ns) {
    shot.points.emplace_back(static_cast<double>(n), optimal_cost(profile_product(n)));
  }

  Figure fig;
  fig.main.title = "Phase estimation cost vs resources";
  fig.main.x_label = "N";
  fig.main.y_label = "mean cost";
  fig.main.series = {best, m2, m3, bound2, bound3, optimum, shot};
  PlotSpec inset;
  inset.title = "best / optimum";
  inset.x_label = "N";
  inset.log_log = false;
  inset.series = {ratio};
  fig.inset = inset;
  return fig;
}

SearchConfig fig3_search_config(std::uint64_t n_max) {
  return SearchConfig::staged_powers_of_two(1, n_max);
}

Figure report_fig3(const std::vector<double>& etas, std::uint64_t n_max, unsigned threads) {
  if (etas.empty()) throw InvalidArgument("report-fig3: at least one eta is required");
  if (n_max < 2) throw InvalidArgument("report-fig3: n_max must be >= 2");
  for (double eta : etas) {
    if (!(eta > 0.0 && eta < 1.0)) {
      throw InvalidArgument("report-fig3: eta must lie in (0, 1), got " + format_number(eta));
    }
  }
  Figure fig;
  fig.main.title = "Lossy phase estimation, resource-adjusted";
  fig.main.x_label = "adjusted resources";
  fig.main.y_label = "mean cost";
  const auto grid = log_grid(1.0, static_cast<double>(n_max), 120);
  for (double eta : etas) {
    auto cfg = fig3_search_config(n_max);
    cfg.threads = threads;
    Series found{"best_found_" + eta_tag(eta), {}, SeriesStyle::Markers};
    for (const auto& e : search_lossy(cfg, eta).entries) {
      found.points.emplace_back(e.resources, e.report.cost);
    }
    Series solid{"unentangled_" + eta_tag(eta), {}, SeriesStyle::Line};
    Series dashed{"general_bound_" + eta_tag(eta), {}, SeriesStyle::Dashed};
    for (double r : grid) {
      solid.points.emplace_back(r, lossy_unentangled_asymptote(eta, r));
      dashed.points.emplace_back(r, lossy_general_bound(eta, r));
    }
    fig.main.series.push_back(std::move(found));
    fig.main.series.push_back(std::move(solid));
    fig.main.series.push_back(std::move(dashed));
  }
  Series optimum{"optimum_noiseless", {}, SeriesStyle::Line};
  for (double r : grid) optimum.points.emplace_back(r, optimum_cost_real(r));
  fig.main.series.push_back(std::move(optimum));
  return fig;
}

}  // namespace kpl
