#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "experiments.hpp"
#include "weights.hpp"

namespace nlw {

using json = nlohmann::ordered_json;

json to_json(const ExponentPack& e);
json to_json(const ApReport& r);
json to_json(const InequalityReport& r);
json to_json(const ScalingFit& f);
json to_json(const KssUniformityReport& r);
json to_json(const Persistence2dReport& r);
json to_json(const ChainStudyReport& r);
json to_json(const LifespanResult& r);
json trajectory_summary(const Trajectory& t);

void write_text(const std::string& path, const std::string& content);

// CSV emitters (one row per sample/point)
std::string csv_of(const InequalityReport& r);
std::string csv_of(const ScalingFit& f);
std::string csv_of(const KssUniformityReport& r);
std::string csv_of(const ChainStudyReport& r);

// dependency-free SVG scatter/line plot
struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
  bool line = false;
  std::string color = "#1f77b4";
};
std::string svg_plot(const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, const std::vector<SvgSeries>& series,
                     bool logx = false, bool logy = false);

// grid heatmap (row/column labels, one value per cell; NaN renders hollow)
std::string svg_heatmap(const std::string& title, const std::vector<std::string>& col_labels,
                        const std::vector<std::string>& row_labels,
                        const std::vector<std::vector<double>>& values);

}  // namespace nlw
