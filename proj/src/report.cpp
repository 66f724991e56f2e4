#include "csamn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace csamn {

namespace {

double rounded(double v) { return std::stod(format_number(v)); }

std::array<double, 9> run_metrics(const ExperimentResult& r) {
  return {r.utility,          r.data_bits,          r.energy.total(),
          r.energy.uav_comm_j, r.energy.uav_comp_j, r.energy.leo_comp_j,
          r.avg_ds_delay_s,   static_cast<double>(r.flagged_slots), static_cast<double>(r.iterations)};
}

std::array<double, 9> slot_metrics(const SlotMetrics& m) {
  return {m.utility,          m.data_bits,          m.energy.total(),
          m.energy.uav_comm_j, m.energy.uav_comp_j, m.energy.leo_comp_j,
          m.ds_delay_s,       m.flagged ? 1.0 : 0.0, static_cast<double>(m.iterations)};
}

std::array<double, 9> round_all(std::array<double, 9> v) {
  for (auto& x : v) x = rounded(x);
  return v;
}

}  // namespace

std::vector<MetricRow> table_rows(const SweepTable& table, bool include_slots) {
  std::vector<MetricRow> rows;
  for (const SweepCell& c : table.cells) {
    const std::string alg = to_string(c.algorithm);
    const std::string seed = std::to_string(c.seed);
    if (include_slots) {
      for (const SlotMetrics& m : c.result.slots) {
        rows.push_back({"slot", alg, table.axis, c.axis_value, seed, m.slot, round_all(slot_metrics(m))});
      }
    }
    rows.push_back({"run", alg, table.axis, c.axis_value, seed, -1, round_all(run_metrics(c.result))});
  }
  const std::vector<MetricRow> agg = aggregate_rows(rows);
  rows.insert(rows.end(), agg.begin(), agg.end());
  return rows;
}

std::vector<MetricRow> aggregate_rows(const std::vector<MetricRow>& rows) {
  struct Group {
    std::string algorithm;
    std::string axis;
    double value;
    std::vector<std::array<double, 9>> samples;
  };
  std::vector<Group> groups;
  for (const MetricRow& r : rows) {
    if (r.record != "run") continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.algorithm == r.algorithm && g.axis == r.axis && g.value == r.axis_value;
    });
    if (it == groups.end()) {
      groups.push_back({r.algorithm, r.axis, r.axis_value, {}});
      it = groups.end() - 1;
    }
    it->samples.push_back(r.metrics);
  }
  std::vector<MetricRow> out;
  for (const Group& g : groups) {
    const double n = static_cast<double>(g.samples.size());
    std::array<double, 9> mean{};
    std::array<double, 9> sd{};
    for (const auto& s : g.samples) {
      for (std::size_t k = 0; k < 9; ++k) mean[k] += s[k];
    }
    for (auto& m : mean) m /= n;
    if (g.samples.size() > 1) {
      for (const auto& s : g.samples) {
        for (std::size_t k = 0; k < 9; ++k) sd[k] += (s[k] - mean[k]) * (s[k] - mean[k]);
      }
      for (auto& x : sd) x = std::sqrt(x / (n - 1.0));
    }
    out.push_back({"mean", g.algorithm, g.axis, g.value, "", -1, round_all(mean)});
    out.push_back({"stddev", g.algorithm, g.axis, g.value, "", -1, round_all(sd)});
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << "record,algorithm,axis,axis_value,seed,slot";
  for (const char* name : kMetricNames) out << ',' << name;
  out << '\n';
  for (const MetricRow& r : rows) {
    out << r.record << ',' << r.algorithm << ',' << r.axis << ',' << format_number(r.axis_value) << ','
        << r.seed << ',';
    if (r.slot >= 0) out << r.slot;
    for (double v : r.metrics) out << ',' << format_number(v);
    out << '\n';
  }
}

std::vector<MetricRow> read_csv(std::istream& in) {
  std::vector<MetricRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 15) throw std::runtime_error("CSV line " + std::to_string(lineno) + ": expected 15 fields");
    MetricRow r;
    r.record = f[0];
    r.algorithm = f[1];
    r.axis = f[2];
    r.axis_value = std::stod(f[3]);
    r.seed = f[4];
    r.slot = f[5].empty() ? -1 : std::stoi(f[5]);
    for (std::size_t k = 0; k < 9; ++k) r.metrics[k] = std::stod(f[6 + k]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<PlotSeries> metric_series(const std::vector<MetricRow>& aggregates, std::size_t metric) {
  std::vector<PlotSeries> out;
  for (const MetricRow& r : aggregates) {
    if (r.record != "mean" && r.record != "stddev") continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const PlotSeries& s) { return s.name == r.algorithm; });
    if (it == out.end()) {
      out.push_back({r.algorithm, {}, {}, {}});
      it = out.end() - 1;
    }
    if (r.record == "mean") {
      it->x.push_back(r.axis_value);
      it->mean.push_back(r.metrics.at(metric));
    } else {
      it->stddev.push_back(r.metrics.at(metric));
    }
  }
  return out;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<PlotSeries>& series) {
  const double width = 720.0;
  const double height = 440.0;
  const double left = 90.0;
  const double right = 150.0;
  const double top = 40.0;
  const double bottom = 60.0;
  const double pw = width - left - right;
  const double ph = height - top - bottom;
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double sd = i < s.stddev.size() ? s.stddev[i] : 0.0;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.mean[i] - sd);
      y1 = std::max(y1, s.mean[i] + sd);
    }
  }
  if (!std::isfinite(x0)) {
    x0 = 0.0;
    x1 = 1.0;
    y0 = 0.0;
    y1 = 1.0;
  }
  if (x1 == x0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 == y0) {
    const double pad = std::max(std::abs(y0) * 0.05, 1.0);
    y0 -= pad;
    y1 += pad;
  }
  const double ypad = 0.05 * (y1 - y0);
  y0 -= ypad;
  y1 += ypad;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << left + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << xml_escape(title) << "</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5.0;
    const double yv = y0 + (y1 - y0) * k / 5.0;
    o << "<line x1=\"" << px(xv) << "\" y1=\"" << top + ph << "\" x2=\"" << px(xv) << "\" y2=\"" << top + ph + 5
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << px(xv) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << tick_label(xv)
      << "</text>\n";
    o << "<line x1=\"" << left - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << left << "\" y2=\"" << py(yv)
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << left - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << tick_label(yv)
      << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
    << xml_escape(x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << xml_escape(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& ser = series[s];
    const char* colour = colours[s % 6];
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < ser.x.size(); ++i) o << px(ser.x[i]) << ',' << py(ser.mean[i]) << ' ';
    o << "\"/>\n";
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      const double sd = i < ser.stddev.size() ? ser.stddev[i] : 0.0;
      const double cx = px(ser.x[i]);
      o << "<line x1=\"" << cx << "\" y1=\"" << py(ser.mean[i] - sd) << "\" x2=\"" << cx << "\" y2=\""
        << py(ser.mean[i] + sd) << "\" stroke=\"" << colour << "\"/>\n";
      o << "<circle cx=\"" << cx << "\" cy=\"" << py(ser.mean[i]) << "\" r=\"3.5\" fill=\"" << colour << "\"/>\n";
    }
    const double ly = top + 15 + 20.0 * static_cast<double>(s);
    o << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 40 << "\" y2=\"" << ly
      << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << left + pw + 45 << "\" y=\"" << ly + 4 << "\">" << xml_escape(ser.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace csamn
