#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kpl/types.hpp"

namespace kpl {

/// 12 significant digits, shortest of fixed/scientific ("%.12g").
std::string format_number(double x);

/// Vector-valued CSV field: entries joined by '|'.
std::string format_vector_field(const MultiplicityVector& v);

enum class SeriesStyle { Line, Dashed, Markers };

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  SeriesStyle style = SeriesStyle::Line;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool log_log = true;
  std::string output_path;

  /// Throws InvalidArgument when a log axis meets a non-positive value.
  void validate() const;
};

/// A figure: main panel plus an optional inset drawn in its upper right.
struct Figure {
  PlotSpec main;
  std::optional<PlotSpec> inset;
};

/// Long-format CSV "series,x,y", main panel first, then the inset.
std::string to_csv(const Figure& figure);

struct CsvPoint {
  std::string series;
  double x = 0.0;
  double y = 0.0;
};

/// Parses the output of to_csv.
std::vector<CsvPoint> parse_series_csv(std::string_view csv);

/// Self-contained SVG; identical input gives an identical byte stream.
std::string render_svg(const Figure& figure);

/// Noiseless cost landscape against resources: best found per N (exhaustive
/// up to exhaustive_until, staged power-of-two search above), doubled and
/// tripled Kitaev vectors with their bounds, entangled optimum and the
/// all-ones shot-noise reference. Inset: best-found / optimum.
Figure report_fig2(std::uint64_t n_max, unsigned threads = 0,
                   std::uint64_t exhaustive_until = 20);

inline constexpr std::uint64_t kFig2MaxBudget = 2000;

/// Resource-adjusted lossy search for each eta in (0, 1) with the
/// unentangled asymptote, the general lossy bound and the noiseless optimum.
Figure report_fig3(const std::vector<double>& etas, std::uint64_t n_max, unsigned threads = 0);

/// Search configuration used for every eta in report_fig3.
SearchConfig fig3_search_config(std::uint64_t n_max);

}  // namespace kpl
