#include "report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace nlw {

json to_json(const ExponentPack& e) {
  json j;
  j["n"] = e.n;
  j["p"] = e.p;
  j["s"] = e.s;
  j["p_c"] = e.p_c;
  j["s_c"] = e.s_c;
  j["s_l"] = e.s_l;
  j["s_o"] = e.s_o;
  j["delta"] = e.delta;
  j["delta1"] = e.delta1;
  j["regime"] = regime_name(e.regime);
  j["lifespan_law"] = e.lifespan_is_log ? "log" : "power";
  j["lifespan_exponent"] = e.lifespan_exponent;
  j["in_theorem_range"] = e.in_theorem_range;
  if (!e.warning.empty()) j["warning"] = e.warning;
  return j;
}

json to_json(const ApReport& r) {
  json j;
  j["p"] = r.p;
  j["estimate"] = r.estimate;
  j["sample_count"] = r.sample_count;
  j["refinements"] = r.refinement_history;
  j["refinement_samples"] = r.refinement_samples;
  j["verdict"] = verdict_name(r.verdict);
  return j;
}

json to_json(const InequalityReport& r) {
  json j;
  j["id"] = r.id;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  if (r.refused) {
    j["refused"] = true;
    j["reason"] = r.refusal_reason;
    j["pass"] = false;
    return j;
  }
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"label", s.label}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"ratio", s.ratio}});
  j["samples"] = samples;
  j["degenerate_skipped"] = r.degenerate_skipped;
  j["max_ratio"] = r.max_ratio;
  j["quantiles"] = {{"q25", r.q25}, {"q50", r.q50}, {"q90", r.q90}};
  if (r.stability_checked)
    j["stability"] = {{"max_ratio_coarse", r.max_ratio_coarse},
                      {"max_ratio_fine", r.max_ratio_fine},
                      {"relative_change", r.stability_change}};
  j["pass"] = r.pass;
  return j;
}

json to_json(const ScalingFit& f) {
  json j;
  j["n"] = f.n;
  j["p"] = f.p;
  j["regime"] = regime_name(f.regime);
  j["abscissa"] = f.abscissa;
  json pts = json::array();
  for (const auto& p : f.points)
    pts.push_back({{"eps", p.eps},
                   {"T", p.T},
                   {"T_used", p.T_used},
                   {"censored", p.censored},
                   {"converged", p.converged}});
  j["points"] = pts;
  j["uncensored"] = f.uncensored;
  j["slope"] = f.fit.slope;
  j["intercept"] = f.fit.intercept;
  j["r_squared"] = f.fit.r_squared;
  j["lifespan_law"] = f.is_log ? "log" : "power";
  j["predicted_exponent"] = f.predicted_exponent;
  j["r2_threshold"] = f.r2_threshold;
  j["slope_tol_rel"] = f.slope_tol_rel;
  j["pass"] = f.pass;
  return j;
}

json to_json(const KssUniformityReport& r) {
  json j;
  json reps = json::array();
  for (const auto& rep : r.reports) reps.push_back(to_json(rep));
  j["reports"] = reps;
  json spreads = json::object();
  for (const auto& [k, v] : r.spreads) spreads[k] = v;
  j["spreads"] = spreads;
  j["worst_spread"] = r.worst_spread;
  j["pass"] = r.pass;
  return j;
}

json to_json(const Persistence2dReport& r) {
  json j;
  j["p"] = r.p;
  j["s_c"] = r.s_c;
  json runs = json::array();
  for (const auto& run : r.runs)
    runs.push_back({{"eps", run.eps},
                    {"censored", run.censored},
                    {"t_end", run.t_end},
                    {"lp_linf_norm", run.lp_linf_norm},
                    {"sup_hs_norm", run.sup_hs_norm}});
  j["runs"] = runs;
  j["eps_ratio"] = r.eps_ratio;
  j["norm_ratio"] = r.norm_ratio;
  j["linear_in_eps"] = r.linear_in_eps;
  j["blow_up_at_small_eps"] = r.blow_up_at_small_eps;
  j["pass"] = r.pass;
  return j;
}

json to_json(const ChainStudyReport& r) {
  json j;
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(
        {{"s", row.s}, {"p", row.p}, {"weights", row.weights}, {"report", to_json(row.report)}});
  j["rows"] = rows;
  j["refused_rows"] = r.refused_rows;
  j["pass"] = r.pass;
  return j;
}

json to_json(const LifespanResult& r) {
  json j;
  j["eps"] = r.eps;
  j["T_low"] = r.T_low;
  j["T_high"] = r.T_high;
  j["T_extrapolated"] = r.T_extrapolated;
  j["censored"] = r.censored;
  j["converged"] = r.converged;
  j["threshold_stable"] = r.threshold_stable;
  j["refinement_times"] = r.refinement_times;
  j["refinement_N"] = r.refinement_N;
  return j;
}

json trajectory_summary(const Trajectory& t) {
  json j;
  j["n"] = t.n;
  j["p"] = t.nl.p;
  j["a"] = t.nl.a;
  j["b"] = t.nl.b;
  j["termination"] = termination_name(t.termination);
  j["t_end"] = t.t_end;
  j["stored_samples"] = t.times.size();
  j["times"] = t.times;
  return j;
}

void write_text(const std::string& path, const std::string& content) {
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw computation_error("cannot open " + path + " for writing");
  os << content;
}

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string csv_of(const InequalityReport& r) {
  std::string out = "label,lhs,rhs,ratio\n";
  for (const auto& s : r.samples)
    out += s.label + "," + fmt(s.lhs) + "," + fmt(s.rhs) + "," + fmt(s.ratio) + "\n";
  return out;
}

std::string csv_of(const ScalingFit& f) {
  std::string out = "eps,T,T_used,censored,converged\n";
  for (const auto& p : f.points)
    out += fmt(p.eps) + "," + fmt(p.T) + "," + fmt(p.T_used) + "," +
           (p.censored ? "1" : "0") + "," + (p.converged ? "1" : "0") + "\n";
  return out;
}

std::string csv_of(const KssUniformityReport& r) {
  std::string out = "family,label,lhs,rhs,ratio\n";
  for (const auto& rep : r.reports)
    for (const auto& s : rep.samples)
      out += rep.id + "," + s.label + "," + fmt(s.lhs) + "," + fmt(s.rhs) + "," + fmt(s.ratio) +
             "\n";
  return out;
}

std::string csv_of(const ChainStudyReport& r) {
  std::string out = "s,p,weights,refused,max_ratio,stability_change,pass\n";
  for (const auto& row : r.rows)
    out += fmt(row.s) + "," + fmt(row.p) + "," + row.weights + "," +
           (row.report.refused ? "1" : "0") + "," + fmt(row.report.max_ratio) + "," +
           fmt(row.report.stability_change) + "," + (row.report.pass ? "1" : "0") + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// minimal SVG plotting
// ---------------------------------------------------------------------------

std::string svg_plot(const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, const std::vector<SvgSeries>& series, bool logx,
                     bool logy) {
  const int W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;
  auto tx = [&](double v) { return logx ? std::log10(std::max(v, 1e-300)) : v; };
  auto ty = [&](double v) { return logy ? std::log10(std::max(v, 1e-300)) : v; };
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  if (!(xmax > xmin)) { xmax = xmin + 1; xmin -= 1; }
  if (!(ymax > ymin)) { ymax = ymin + 1; ymin -= 1; }
  double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;
  auto px = [&](double v) { return ML + (tx(v) - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto py = [&](double v) { return H - MB - (ty(v) - ymin) / (ymax - ymin) * (H - MT - MB); };

  std::string out;
  char buf[256];
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  out += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"%d\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
                "text-anchor=\"middle\">%s</text>\n",
                W / 2, title.c_str());
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                ML, MT, W - ML - MR, H - MT - MB);
  out += buf;
  // axis ticks: 5 per axis
  for (int k = 0; k <= 4; ++k) {
    double xv = xmin + (xmax - xmin) * k / 4.0;
    double yv = ymin + (ymax - ymin) * k / 4.0;
    double X = ML + (W - ML - MR) * k / 4.0;
    double Y = H - MB - (H - MT - MB) * k / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%d\" x2=\"%.1f\" y2=\"%d\" stroke=\"black\"/>\n", X,
                  H - MB, X, H - MB + 5);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\" "
                  "text-anchor=\"middle\">%.3g</text>\n",
                  X, H - MB + 18, logx ? std::pow(10.0, xv) : xv);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%.1f\" x2=\"%d\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  ML - 5, Y, ML, Y);
    out += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"11\" "
                  "text-anchor=\"end\">%.3g</text>\n",
                  ML - 8, Y + 4, logy ? std::pow(10.0, yv) : yv);
    out += buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"13\" "
                "text-anchor=\"middle\">%s</text>\n",
                W / 2, H - 12, xlabel.c_str());
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%d\" font-family=\"sans-serif\" font-size=\"13\" "
                "text-anchor=\"middle\" transform=\"rotate(-90 16 %d)\">%s</text>\n",
                H / 2, H / 2, ylabel.c_str());
  out += buf;

  int legend_y = MT + 16;
  for (const auto& s : series) {
    if (s.line && s.x.size() >= 2) {
      std::string path = "M";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        std::snprintf(buf, sizeof buf, " %.2f %.2f", px(s.x[i]), py(s.y[i]));
        path += buf;
      }
      std::snprintf(buf, sizeof buf,
                    "<path d=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\"/>\n",
                    path.c_str(), s.color.c_str());
      out += buf;
    } else {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        std::snprintf(buf, sizeof buf,
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", px(s.x[i]),
                      py(s.y[i]), s.color.c_str());
        out += buf;
      }
    }
    if (!s.label.empty()) {
      std::snprintf(buf, sizeof buf,
                    "<circle cx=\"%d\" cy=\"%d\" r=\"4\" fill=\"%s\"/><text x=\"%d\" y=\"%d\" "
                    "font-family=\"sans-serif\" font-size=\"12\">%s</text>\n",
                    W - MR - 150, legend_y - 4, s.color.c_str(), W - MR - 140, legend_y,
                    s.label.c_str());
      out += buf;
      legend_y += 16;
    }
  }
  out += "</svg>\n";
  return out;
}

std::string svg_heatmap(const std::string& title, const std::vector<std::string>& col_labels,
                        const std::vector<std::string>& row_labels,
                        const std::vector<std::vector<double>>& values) {
  const int W = 640, H = 480, ML = 110, MR = 90, MT = 50, MB = 60;
  const int rows = static_cast<int>(row_labels.size());
  const int cols = static_cast<int>(col_labels.size());
  double vmin = 1e300, vmax = -1e300;
  for (const auto& row : values)
    for (double v : row)
      if (std::isfinite(v)) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
  if (!(vmax > vmin)) { vmax = vmin + 1; }
  double cw = double(W - ML - MR) / std::max(1, cols);
  double ch = double(H - MT - MB) / std::max(1, rows);
  std::string out;
  char buf[256];
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"%d\" y=\"26\" font-family=\"sans-serif\" font-size=\"16\" "
                "text-anchor=\"middle\">%s</text>\n",
                W / 2, title.c_str());
  out += buf;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double v = values[r][c];
      double X = ML + c * cw, Y = MT + r * ch;
      if (std::isfinite(v)) {
        double t = (v - vmin) / (vmax - vmin);
        int red = static_cast<int>(40 + 215 * t);
        int blue = static_cast<int>(255 - 215 * t);
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                      "fill=\"rgb(%d,80,%d)\" stroke=\"white\"/>\n",
                      X, Y, cw, ch, red, blue);
        out += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
                      "fill=\"white\" text-anchor=\"middle\">%.3g</text>\n",
                      X + cw / 2, Y + ch / 2 + 4, v);
        out += buf;
      } else {
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                      "stroke=\"#999\" stroke-dasharray=\"4\"/>\n",
                      X, Y, cw, ch);
        out += buf;
      }
    }
  }
  for (int c = 0; c < cols; ++c) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%d\" font-family=\"sans-serif\" font-size=\"12\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  ML + c * cw + cw / 2, H - MB + 20, col_labels[c].c_str());
    out += buf;
  }
  for (int r = 0; r < rows; ++r) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%.1f\" font-family=\"sans-serif\" font-size=\"12\" "
                  "text-anchor=\"end\">%s</text>\n",
                  ML - 8, MT + r * ch + ch / 2 + 4, row_labels[r].c_str());
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace nlw
