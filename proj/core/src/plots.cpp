#include "tailsitter/plots.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "tailsitter/csv.hpp"
#include "tailsitter/errors.hpp"

namespace tailsitter {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<')
      o += "&lt;";
    else if (c == '>')
      o += "&gt;";
    else if (c == '&')
      o += "&amp;";
    else
      o += c;
  }
  return o;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(x) < 1e-12 ? 0.0 : x);
  return buf;
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double p = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * p >= raw) return m * p;
  return 10.0 * p;
}

void pad(double& lo, double& hi) {
  if (hi - lo <= 0.0) {
    const double d = std::max(0.5, 0.05 * std::abs(lo));
    lo -= d;
    hi += d;
  }
}

}  // namespace

Bounds chart_bounds(const LineChart& c) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : c.series) {
    for (double x : s.x) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
    }
    for (double y : s.y) {
      if (!std::isfinite(y)) continue;
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  for (const auto& h : c.hlines) {
    y0 = std::min(y0, h.y);
    y1 = std::max(y1, h.y);
  }
  if (!std::isfinite(x0)) x0 = x1 = 0.0;
  if (!std::isfinite(y0)) y0 = y1 = 0.0;
  if (c.y_min) y0 = *c.y_min;
  if (c.y_max) y1 = *c.y_max;
  pad(x0, x1);
  pad(y0, y1);
  return {x0, x1, y0, y1};
}

std::string render_svg(const LineChart& c, int W, int H) {
  const Bounds b = chart_bounds(c);
  const double ml = 70, mr = 150, mt = 36, mb = 48;
  const double pw = W - ml - mr, ph = H - mt - mb;
  auto sx = [&](double x) { return ml + (x - b.x0) / (b.x1 - b.x0) * pw; };
  auto sy = [&](double y) { return mt + (1.0 - (std::clamp(y, b.y0, b.y1) - b.y0) / (b.y1 - b.y0)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << esc(c.title) << "</text>\n";

  const double xs = nice_step(b.x1 - b.x0), ys = nice_step(b.y1 - b.y0);
  for (double x = std::ceil(b.x0 / xs) * xs; x <= b.x1 + 1e-9 * xs; x += xs) {
    o << "<line x1=\"" << num(sx(x)) << "\" y1=\"" << mt << "\" x2=\"" << num(sx(x)) << "\" y2=\"" << mt + ph
      << "\" stroke=\"#eee\"/>\n";
    o << "<text x=\"" << num(sx(x)) << "\" y=\"" << mt + ph + 16 << "\" text-anchor=\"middle\">" << tick_label(x)
      << "</text>\n";
  }
  for (double y = std::ceil(b.y0 / ys) * ys; y <= b.y1 + 1e-9 * ys; y += ys) {
    o << "<line x1=\"" << ml << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << ml + pw << "\" y2=\"" << num(sy(y))
      << "\" stroke=\"#eee\"/>\n";
    o << "<text x=\"" << ml - 6 << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">" << tick_label(y)
      << "</text>\n";
  }
  o << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << esc(c.x_label)
    << "</text>\n";
  o << "<text transform=\"translate(16," << mt + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
    << esc(c.y_label) << "</text>\n";

  for (const auto& h : c.hlines) {
    o << "<line x1=\"" << ml << "\" y1=\"" << num(sy(h.y)) << "\" x2=\"" << ml + pw << "\" y2=\"" << num(sy(h.y))
      << "\" stroke=\"#555\" stroke-dasharray=\"6,4\"/>\n";
    o << "<text x=\"" << ml + pw + 4 << "\" y=\"" << num(sy(h.y) + 4) << "\">" << esc(h.label) << "</text>\n";
  }

  for (std::size_t k = 0; k < c.series.size(); ++k) {
    const Series& s = c.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    // keep at most ~4000 vertices, each bucket contributes its extremes
    const std::size_t bucket = std::max<std::size_t>(1, n / 2000);
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    double prev_y = n ? s.y[0] : 0.0;
    for (std::size_t i = 0; i < n; i += bucket) {
      const std::size_t e = std::min(n, i + bucket);
      std::size_t imin = i, imax = i;
      for (std::size_t m = i; m < e; ++m) {
        if (s.y[m] < s.y[imin]) imin = m;
        if (s.y[m] > s.y[imax]) imax = m;
      }
      for (std::size_t m : {std::min(imin, imax), std::max(imin, imax)}) {
        if (!std::isfinite(s.y[m])) continue;
        if (s.step) o << num(sx(s.x[m])) << ',' << num(sy(prev_y)) << ' ';
        o << num(sx(s.x[m])) << ',' << num(sy(s.y[m])) << ' ';
        prev_y = s.y[m];
        if (imin == imax) break;
      }
    }
    o << "\"/>\n";
    o << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << mt + 14 + 18 * k << "\" x2=\"" << ml + pw + 30 << "\" y2=\""
      << mt + 14 + 18 * k << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << ml + pw + 34 << "\" y=\"" << mt + 18 + 18 * k << "\">" << esc(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const LineChart& chart, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << render_svg(chart);
  if (!f) throw Error("write failed for " + path);
}

std::vector<std::string> emit_plots(const SimResult& r, const std::string& out_dir, const PlotOptions& opts) {
  if (r.log.empty()) throw Error("emit_plots: empty log");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create " + out_dir + ": " + ec.message());
  const auto path = [&](const std::string& f) { return (std::filesystem::path(out_dir) / f).string(); };

  std::vector<double> t;
  t.reserve(r.log.size());
  for (const auto& rec : r.log) t.push_back(rec.t);
  auto channel = [&](const std::string& name, auto get) {
    Series s{name, t, {}};
    s.y.reserve(r.log.size());
    for (const auto& rec : r.log) s.y.push_back(get(rec));
    return s;
  };
  constexpr double deg = 180.0 / std::numbers::pi;

  std::vector<std::string> out;
  auto emit = [&](const LineChart& c, const std::string& file) {
    write_svg(c, path(file));
    out.push_back(path(file));
  };

  LineChart pos{"Position", "t [s]", "[m]", {}, {}, {}, {}};
  const char* axes = "xyz";
  for (int i = 0; i < 3; ++i)
    pos.series.push_back(channel(std::string("p_") + axes[i], [i](const LogRecord& x) { return x.p(i); }));
  emit(pos, "position.svg");

  LineChart att{"Attitude (ZYX Euler)", "t [s]", "[deg]", {}, {}, {}, {}};
  const char* names[] = {"roll", "pitch", "yaw"};
  for (int i = 0; i < 3; ++i)
    att.series.push_back(channel(names[i], [i, deg](const LogRecord& x) { return euler_zyx(x.q)(i) * deg; }));
  emit(att, "attitude.svg");

  LineChart mot{"Motor speeds", "t [s]", "[rad/s]", {}, {}, {}, {}};
  mot.series.push_back(channel("omega1", [](const LogRecord& x) { return x.physical.omega1; }));
  mot.series.push_back(channel("omega2", [](const LogRecord& x) { return x.physical.omega2; }));
  emit(mot, "commands.svg");

  LineChart elev{"Elevon deflections", "t [s]", "[deg]", {}, {}, {}, {}};
  elev.series.push_back(channel("delta1", [deg](const LogRecord& x) { return x.physical.delta1 * deg; }));
  elev.series.push_back(channel("delta2", [deg](const LogRecord& x) { return x.physical.delta2 * deg; }));
  emit(elev, "elevons.svg");

  LineChart lyap{"Lyapunov function", "t [s]", "V", {}, {}, {}, {}};
  lyap.series.push_back(channel("V", [](const LogRecord& x) { return x.V; }));
  lyap.hlines = {{opts.v_enter, "enter " + tick_label(opts.v_enter)}, {opts.v_exit, "exit " + tick_label(opts.v_exit)}};
  lyap.y_min = 0.0;
  lyap.y_max = 2.0 * opts.v_exit;
  emit(lyap, "lyapunov.svg");

  LineChart jumps{"Jumps", "t [s]", "j / mode", {}, {}, {}, {}};
  Series js = channel("j", [](const LogRecord& x) { return static_cast<double>(x.j); });
  js.step = true;
  Series ms = channel("mode (0 NL, 1 LIN, 2 FLIGHT)", [](const LogRecord& x) { return static_cast<double>(x.mode); });
  ms.step = true;
  jumps.series = {js, ms};
  emit(jumps, "jumps.svg");

  {
    std::ofstream f(path("log.csv"), std::ios::binary);
    if (!f) throw Error("cannot write " + path("log.csv"));
    write_log_csv(f, r.log);
    out.push_back(path("log.csv"));
  }
  {
    std::ofstream f(path("jumps.csv"), std::ios::binary);
    if (!f) throw Error("cannot write " + path("jumps.csv"));
    write_jumps_csv(f, r.jumps);
    out.push_back(path("jumps.csv"));
  }
  return out;
}

}  // namespace tailsitter
