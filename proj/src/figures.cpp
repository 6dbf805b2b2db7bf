// Copyright 2026 The DCEA Simulator Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dcea/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>

#include "dcea/errors.hpp"

namespace dcea {

namespace {

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Series {
  std::string label;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  std::string color;
  bool dashed = false;
};

// One set of axes inside a figure.
struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  bool equal_aspect = false;
};

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

void draw_panel(std::string& svg, const Panel& p, double left, double top,
                double width, double height) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const Series& s : p.series) {
    for (Eigen::Index k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      x0 = std::min(x0, s.x[k]);
      x1 = std::max(x1, s.x[k]);
      y0 = std::min(y0, s.y[k]);
      y1 = std::max(y1, s.y[k]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  if (p.equal_aspect) {
    const double sx = (x1 - x0) / width, sy = (y1 - y0) / height;
    if (sx > sy) {
      const double c = 0.5 * (y0 + y1), h = 0.5 * sx * height;
      y0 = c - h, y1 = c + h;
    } else {
      const double c = 0.5 * (x0 + x1), w = 0.5 * sy * width;
      x0 = c - w, x1 = c + w;
    }
  }
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * width; };
  auto py = [&](double y) { return top + height - (y - y0) / (y1 - y0) * height; };

  svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" +
         num(width) + "\" height=\"" + num(height) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";
  const double xs = nice_step(x1 - x0), ys = nice_step(y1 - y0);
  for (double v = std::ceil(x0 / xs) * xs; v <= x1 + 1e-9 * xs; v += xs) {
    const double X = px(v);
    svg += "<line x1=\"" + num(X) + "\" y1=\"" + num(top) + "\" x2=\"" + num(X) +
           "\" y2=\"" + num(top + height) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + num(X) + "\" y=\"" + num(top + height + 14) +
           "\" font-size=\"10\" text-anchor=\"middle\">" +
           num(std::abs(v) < 1e-12 * xs ? 0.0 : v) + "</text>\n";
  }
  for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys) {
    const double Y = py(v);
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(Y) + "\" x2=\"" +
           num(left + width) + "\" y2=\"" + num(Y) + "\" stroke=\"#ddd\"/>\n";
    svg += "<text x=\"" + num(left - 4) + "\" y=\"" + num(Y + 3) +
           "\" font-size=\"10\" text-anchor=\"end\">" +
           num(std::abs(v) < 1e-12 * ys ? 0.0 : v) + "</text>\n";
  }
  svg += "<text x=\"" + num(left + width / 2) + "\" y=\"" + num(top - 6) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + p.title + "</text>\n";
  svg += "<text x=\"" + num(left + width / 2) + "\" y=\"" + num(top + height + 28) +
         "\" font-size=\"11\" text-anchor=\"middle\">" + p.x_label + "</text>\n";
  svg += "<text transform=\"translate(" + num(left - 40) + "," +
         num(top + height / 2) + ") rotate(-90)\" font-size=\"11\" "
         "text-anchor=\"middle\">" + p.y_label + "</text>\n";

  for (const Series& s : p.series) {
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1\"";
    if (s.dashed) svg += " stroke-dasharray=\"5,3\"";
    svg += " points=\"";
    for (Eigen::Index k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      svg += num(px(s.x[k])) + "," + num(py(s.y[k])) + " ";
    }
    svg += "\"/>\n";
  }
  // Legend.
  double ly = top + 12;
  for (const Series& s : p.series) {
    if (s.label.empty()) continue;
    svg += "<line x1=\"" + num(left + width + 10) + "\" y1=\"" + num(ly - 4) +
           "\" x2=\"" + num(left + width + 28) + "\" y2=\"" + num(ly - 4) +
           "\" stroke=\"" + s.color + "\"" +
           (s.dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
    svg += "<text x=\"" + num(left + width + 32) + "\" y=\"" + num(ly) +
           "\" font-size=\"10\">" + s.label + "</text>\n";
    ly += 13;
  }
}

std::string render(const std::vector<Panel>& panels, double panel_w = 560,
                   double panel_h = 200) {
  const double left = 70, right = 130, top = 30, gap = 60;
  const double w = left + panel_w + right;
  const double h = top + panels.size() * (panel_h + gap);
  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                    "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    num(w) + "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) +
                    " " + num(h) + "\" font-family=\"sans-serif\">\n"
                    "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    draw_panel(svg, panels[k], left, top + k * (panel_h + gap), panel_w, panel_h);
  }
  svg += "</svg>\n";
  return svg;
}

int arm_count(const SimTrace& trace) {
  int n = 0;
  while (trace.has_column("q" + std::to_string(n + 1) + "_1")) ++n;
  return n;
}

std::string color(int k) { return kPalette[k % 10]; }

// Per-arm component plots with an optional leader reference column.
Panel component_panel(const SimTrace& tr, int arms, const std::string& stem,
                      const std::string& axis, const std::string& leader,
                      const std::string& title, const std::string& y_label) {
  Panel p{title, "t (s)", y_label, {}, false};
  const Eigen::VectorXd t = tr.time();
  for (int i = 1; i <= arms; ++i) {
    p.series.push_back({"arm " + std::to_string(i),
                        t, tr.series(stem + std::to_string(i) + axis), color(i - 1)});
  }
  if (!leader.empty() && tr.has_column(leader)) {
    p.series.push_back({"leader", t, tr.series(leader), "#000", true});
  }
  return p;
}

}  // namespace

std::vector<Figure> make_figures(const SimTrace& trace, const SimTrace* twin,
                                 const FigureOptions& options) {
  if (trace.rows() == 0) throw TraceError("cannot plot an empty trace");
  const int n = arm_count(trace);
  if (n == 0) throw TraceError("trace has no arm columns (missing column 'q1_1')");
  std::vector<Figure> figures;

  std::vector<Panel> est;
  const char* stems[3] = {"xh", "vh", "ah"};
  const char* lead[3] = {"x0", "v0", "a0"};
  const char* names[3] = {"position estimate", "velocity estimate",
                          "acceleration estimate"};
  for (int k = 0; k < 3; ++k) {
    for (const char* axis : {"_x", "_y"}) {
      est.push_back(component_panel(trace, n, stems[k], axis,
                                    std::string(lead[k]) + axis,
                                    std::string(names[k]) + " " + (axis + 1),
                                    std::string(stems[k]) + (axis + 1)));
    }
  }
  figures.push_back({"estimates.svg", render(est, 560, 150)});

  std::vector<Panel> task;
  for (const char* axis : {"_x", "_y"}) {
    task.push_back(component_panel(trace, n, "x", axis, std::string("x0") + axis,
                                   std::string("end-effector position ") + (axis + 1),
                                   std::string("x ") + (axis + 1) + " (m)"));
  }
  for (const char* axis : {"_x", "_y"}) {
    task.push_back(component_panel(trace, n, "xd", axis, std::string("v0") + axis,
                                   std::string("end-effector velocity ") + (axis + 1),
                                   std::string("v ") + (axis + 1) + " (m/s)"));
  }
  figures.push_back({"task_states.svg", render(task, 560, 160)});

  Panel xy{"end-effector paths", "x (m)", "y (m)", {}, true};
  for (int i = 1; i <= n; ++i) {
    const std::string s = std::to_string(i);
    xy.series.push_back({"arm " + s, trace.series("x" + s + "_x"),
                         trace.series("x" + s + "_y"), color(i - 1)});
  }
  if (trace.has_column("x0_x")) {
    xy.series.push_back({"leader", trace.series("x0_x"), trace.series("x0_y"), "#000", true});
  }
  figures.push_back({"xy_plane.svg", render({xy}, 460, 460)});

  if (twin) {
    if (twin->rows() == 0) throw TraceError("cannot plot an empty twin trace");
    const std::string q = "q" + std::to_string(options.joint_arm) + "_" +
                          std::to_string(options.joint);
    Panel joint{"joint " + std::to_string(options.joint) + " of arm " +
                    std::to_string(options.joint_arm),
                "t (s)", "q (rad)", {}, false};
    joint.series.push_back({"with subtask", trace.time(), trace.series(q), color(0)});
    joint.series.push_back({"without", twin->time(), twin->series(q), color(3), true});
    figures.push_back({"subtask_joint.svg", render({joint})});

    const std::string m = "manip" + std::to_string(options.manipulability_arm);
    Panel manip{"manipulability of arm " + std::to_string(options.manipulability_arm),
                "t (s)", "det(J J^T)", {}, false};
    manip.series.push_back({"with subtask", trace.time(), trace.series(m), color(0)});
    manip.series.push_back({"without", twin->time(), twin->series(m), color(3), true});
    figures.push_back({"manipulability.svg", render({manip})});
  }
  return figures;
}

std::vector<std::string> render_figures(const SimTrace& trace,
                                        const std::string& out_dir,
                                        const SimTrace* twin,
                                        const FigureOptions& options) {
  const std::vector<Figure> figures = make_figures(trace, twin, options);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw TraceError(out_dir + ": " + ec.message());
  std::vector<std::string> paths;
  for (const Figure& f : figures) {
    const std::string path = (std::filesystem::path(out_dir) / f.file_name).string();
    std::ofstream out(path, std::ios::binary);
    out << f.svg;
    if (!out) throw TraceError(path + ": write failed");
    paths.push_back(path);
  }
  return paths;
}

}  // namespace dcea
