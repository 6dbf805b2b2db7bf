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
#include "dcea/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dcea/errors.hpp"

namespace dcea {

namespace {

constexpr const char* kAbortPrefix = "# abort: ";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string trace_to_csv(const SimTrace& trace) {
  std::string out;
  if (trace.abort_reason) {
    std::string reason = *trace.abort_reason;
    for (char& c : reason) {
      if (c == '\n') c = ' ';
    }
    out += kAbortPrefix + reason + "\n";
  }
  for (std::size_t c = 0; c < trace.columns.size(); ++c) {
    if (c > 0) out += ',';
    out += trace.columns[c];
  }
  out += '\n';
  char buf[32];
  for (Eigen::Index r = 0; r < trace.samples.rows(); ++r) {
    for (Eigen::Index c = 0; c < trace.samples.cols(); ++c) {
      if (c > 0) out += ',';
      const int n = std::snprintf(buf, sizeof buf, "%.17g", trace.samples(r, c));
      out.append(buf, n);
    }
    out += '\n';
  }
  return out;
}

void write_trace(const SimTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TraceError(path + ": cannot open for writing");
  out << trace_to_csv(trace);
  if (!out) throw TraceError(path + ": write failed");
}

SimTrace trace_from_csv(const std::string& text,
                        const std::vector<std::string>& required_columns,
                        const std::string& source) {
  SimTrace trace;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind(kAbortPrefix, 0) == 0) {
        trace.abort_reason = line.substr(std::char_traits<char>::length(kAbortPrefix));
      }
      continue;
    }
    if (!have_header) {
      trace.columns = split(line);
      have_header = true;
      continue;
    }
    const std::vector<std::string> fields = split(line);
    if (fields.size() != trace.columns.size()) {
      throw TraceError(source + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(trace.columns.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      // strtod handles nan/inf spellings that from_chars rejects on some
      // library versions.
      char* end = nullptr;
      row[c] = std::strtod(fields[c].c_str(), &end);
      if (fields[c].empty() || *end != '\0') {
        throw TraceError(source + ":" + std::to_string(line_no) +
                         ": malformed number '" + fields[c] + "' in column " +
                         trace.columns[c]);
      }
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw TraceError(source + ": missing header row");
  for (const std::string& name : required_columns) {
    if (!trace.has_column(name)) {
      throw TraceError(source + ": schema mismatch, missing column '" + name + "'");
    }
  }
  trace.samples.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(trace.columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) trace.samples(r, c) = rows[r][c];
  }
  return trace;
}

SimTrace read_trace(const std::string& path,
                    const std::vector<std::string>& required_columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceError(path + ": cannot open trace");
  std::ostringstream buf;
  buf << in.rdbuf();
  return trace_from_csv(buf.str(), required_columns, path);
}

}  // namespace dcea
