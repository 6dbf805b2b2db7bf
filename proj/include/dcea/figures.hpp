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
#ifndef DCEA_FIGURES_HPP
#define DCEA_FIGURES_HPP

#include <string>
#include <vector>

#include "dcea/simulation.hpp"

namespace dcea {

struct FigureOptions {
  // 1-based arm and joint shown in the joint comparison figure.
  int joint_arm = 6;
  int joint = 2;
  // 1-based arm shown in the manipulability comparison figure.
  int manipulability_arm = 7;
};

struct Figure {
  std::string file_name;
  std::string svg;
};

// Estimates, task-space states and XY paths from `trace`; with a phi = 0
// `twin`, also the joint and manipulability comparisons. Throws TraceError
// on an empty trace or missing columns.
std::vector<Figure> make_figures(const SimTrace& trace, const SimTrace* twin = nullptr,
                                 const FigureOptions& options = {});

// Writes make_figures() into out_dir (created if needed) and returns the
// paths. Nothing is written when figure construction fails.
std::vector<std::string> render_figures(const SimTrace& trace,
                                        const std::string& out_dir,
                                        const SimTrace* twin = nullptr,
                                        const FigureOptions& options = {});

}  // namespace dcea

#endif  // DCEA_FIGURES_HPP
