// Copyright 2026 The sppsro Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// CSV output: '#'-prefixed comment lines, one header line, one row per
// IterationRecord. Fields containing commas or quotes are quoted (game
// names such as "random_uniform:30,30" contain commas). Doubles use the
// shortest round-trip representation so parsing recovers them exactly.

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sppsro/game/normal_form.hpp"
#include "sppsro/population/population.hpp"

namespace sppsro::harness {

inline constexpr std::string_view kCsvHeader =
    "algorithm,game,seed,iteration,cumulative_episodes,population_size_p0,population_size_p1,"
    "exploitability,wall_ms";

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const IterationRecord& r) {
  std::ostringstream out;
  out << csv_field(r.algorithm) << ',' << csv_field(r.game) << ',' << r.seed << ',' << r.iteration << ','
      << r.cumulative_episodes << ',' << r.population_size[0] << ',' << r.population_size[1] << ','
      << format_double(r.exploitability) << ',' << r.wall_ms;
  return out.str();
}

/// Writes comment lines (each line of `comment` prefixed with "# "), the
/// header and the rows.
inline void write_csv(std::ostream& out, const std::vector<IterationRecord>& records,
                      const std::string& comment = "") {
  std::istringstream lines(comment);
  std::string line;
  while (std::getline(lines, line)) out << (line.empty() ? "#" : "# ") << line << "\n";
  out << kCsvHeader << "\n";
  for (const auto& r : records) out << csv_row(r) << "\n";
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParameterError("csv: unterminated quote");
  return fields;
}

namespace detail {
template <class T>
T csv_number(const std::string& s, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParameterError(std::string("csv: bad ") + what + " '" + s + "'");
  }
  return v;
}
}  // namespace detail

/// Parses a file produced by write_csv. Comment lines are skipped.
inline std::vector<IterationRecord> read_csv(std::istream& in) {
  std::vector<IterationRecord> out;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      if (line != kCsvHeader) throw ParameterError("csv: unexpected header '" + line + "'");
      header = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw ParameterError("csv: expected 9 fields, got " + std::to_string(f.size()));
    IterationRecord r;
    r.algorithm = f[0];
    r.game = f[1];
    r.seed = detail::csv_number<std::uint64_t>(f[2], "seed");
    r.iteration = detail::csv_number<int>(f[3], "iteration");
    r.cumulative_episodes = detail::csv_number<std::int64_t>(f[4], "cumulative_episodes");
    r.population_size[0] = detail::csv_number<std::size_t>(f[5], "population_size_p0");
    r.population_size[1] = detail::csv_number<std::size_t>(f[6], "population_size_p1");
    r.exploitability = detail::csv_number<double>(f[7], "exploitability");
    r.wall_ms = detail::csv_number<std::int64_t>(f[8], "wall_ms");
    out.push_back(std::move(r));
  }
  if (!header) throw ParameterError("csv: missing header");
  return out;
}

}  // namespace sppsro::harness
