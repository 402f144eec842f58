#include "fadmm/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fadmm/version.hpp"
#include "json.hpp"

namespace fadmm {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {
std::string format_fixed(double v, int precision) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general,
                                 precision);
  (void)ec;
  return std::string(buf, ptr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}
}  // namespace

std::string trace_csv_text(const Trace& trace) {
  std::ostringstream out;
  out << kTraceCsvHeader << '\n';
  for (const TraceRecord& r : trace.records) {
    out << r.t << ',' << format_double(r.beta) << ',' << format_double(r.mu) << ','
        << format_double(r.scalar) << ',' << format_double(r.objective) << ','
        << format_double(r.u) << ',' << format_double(r.lk) << ','
        << format_double(r.primal_residual) << ',' << format_double(r.e_plus) << ','
        << format_double(r.crit) << ',' << r.flag << ',' << format_double(r.wall_ms) << '\n';
  }
  return out.str();
}

void write_trace_csv(const Trace& trace, const std::string& path) {
  write_text(path, trace_csv_text(trace));
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
  std::ostringstream out;
  out << "variant,instance,final_objective,iterations,wall_ms,status\n";
  for (const SummaryRow& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out << r.variant << ',' << r.instance << ',' << format_double(r.final_objective) << ','
        << r.iterations << ',' << format_double(r.wall_ms) << ',' << status << '\n';
  }
  write_text(path, out.str());
}

void write_metadata(const RunSpec& spec, const std::string& instance,
                    const std::string& path) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["instance"] = instance;
  j["app"] = spec.app;
  j["dataset"] = spec.dataset;
  std::vector<std::string> names;
  for (Variant v : spec.variants_effective()) names.emplace_back(variant_name(v));
  j["variants"] = names;
  j["iterations"] = spec.iterations;
  j["seconds"] = spec.seconds;
  j["seed"] = spec.seed;
  j["xi"] = spec.xi;
  j["theta"] = spec.theta;
  j["p"] = spec.p;
  j["chi"] = spec.chi;
  j["beta0"] = spec.beta0_effective();
  j["record_diagnostics"] = spec.record_diagnostics;
  j["timing"] = spec.wall_timing ? "wall" : "none";
  if (spec.app == "fda") {
    j["rho"] = spec.rho;
    j["r"] = spec.r;
  } else if (spec.app == "srm") {
    j["p_count"] = spec.p_count;
  } else if (spec.app == "recovery") {
    j["rho0"] = std::isinf(spec.rho0) ? "inf" : format_double(spec.rho0);
    j["rho1"] = spec.rho1;
    j["rho2"] = spec.rho2;
    j["k"] = spec.k;
  }
  if (spec.has_label_pair) {
    j["label_pair"] = {spec.label_pos, spec.label_neg};
  }
  if (spec.subset_rows > 0) j["subset_rows"] = spec.subset_rows;
  if (spec.subset_cols > 0) j["subset_cols"] = spec.subset_cols;
  write_text(path, j.dump(2) + "\n");
}

namespace {

double record_metric(const TraceRecord& r, const std::string& metric) {
  if (metric == "objective") return r.objective;
  if (metric == "crit") return r.crit;
  if (metric == "e_plus") return r.e_plus;
  if (metric == "primal_residual") return r.primal_residual;
  if (metric == "U") return r.u;
  if (metric == "LK") return r.lk;
  throw ParamError("emit_svg: unknown metric '" + metric + "'");
}

constexpr int kWidth = 720, kHeight = 480;
constexpr int kLeft = 70, kRight = 560, kTop = 40, kBottom = 430;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf"};

}  // namespace

std::string svg_text(const std::vector<Trace>& traces, const std::string& metric) {
  if (traces.empty()) throw ParamError("emit_svg: no traces to plot");
  // Gather finite points per trace.
  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Trace& tr : traces) {
    Series s;
    s.name = variant_name(tr.config.variant);
    for (const TraceRecord& r : tr.records) {
      const double v = record_metric(r, metric);
      if (!std::isfinite(v)) continue;
      s.pts.emplace_back(static_cast<double>(r.t), v);
      xmin = std::min(xmin, static_cast<double>(r.t));
      xmax = std::max(xmax, static_cast<double>(r.t));
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
    series.push_back(std::move(s));
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) {
    const double pad = std::max(std::fabs(ymin) * 0.1, 1e-12);
    ymin -= pad;
    ymax += pad;
  }

  auto sx = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
  };
  auto sy = [&](double y) {
    return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << metric << " vs iteration</text>\n";

  // Axes.
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kBottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    out << "<text x=\"" << format_fixed(sx(fx), 6) << "\" y=\"" << kBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_fixed(fx, 4) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << format_fixed(sy(fy) + 4.0, 6)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_fixed(fy, 4) << "</text>\n";
    out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << format_fixed(sy(fy), 6) << "\" x2=\""
        << kLeft << "\" y2=\"" << format_fixed(sy(fy), 6) << "\" stroke=\"black\"/>\n";
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (!series[i].pts.empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t p = 0; p < series[i].pts.size(); ++p) {
        if (p) out << ' ';
        out << format_fixed(sx(series[i].pts[p].first), 6) << ','
            << format_fixed(sy(series[i].pts[p].second), 6);
      }
      out << "\"/>\n";
    }
    const int ly = kTop + 8 + static_cast<int>(i) * 18;
    out << "<line x1=\"" << kRight + 12 << "\" y1=\"" << ly << "\" x2=\"" << kRight + 36
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kRight + 42 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[i].name << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void emit_svg(const std::vector<Trace>& traces, const std::string& metric,
              const std::string& path) {
  write_text(path, svg_text(traces, metric));
}

}  // namespace fadmm
