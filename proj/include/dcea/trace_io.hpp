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
//
// Trace files are CSV with one header row; see docs/trace_schema.md. A run
// that aborted carries its diagnostic on a leading "# abort:" comment line.
#ifndef DCEA_TRACE_IO_HPP
#define DCEA_TRACE_IO_HPP

#include <string>
#include <vector>

#include "dcea/simulation.hpp"

namespace dcea {

// Values are written with 17 significant digits so that read_trace recovers
// every double exactly.
void write_trace(const SimTrace& trace, const std::string& path);
std::string trace_to_csv(const SimTrace& trace);

// Throws TraceError on I/O failure or malformed content. When
// required_columns is nonempty, a header lacking any of them is a schema
// mismatch and the error names the first missing column.
SimTrace read_trace(const std::string& path,
                    const std::vector<std::string>& required_columns = {});
SimTrace trace_from_csv(const std::string& text,
                        const std::vector<std::string>& required_columns = {},
                        const std::string& source = "<string>");

}  // namespace dcea

#endif  // DCEA_TRACE_IO_HPP
