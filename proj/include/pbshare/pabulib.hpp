// Copyright 2026 The pbshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Pabulib `.pb` files: parsing, writing, preprocessing and corpus filtering.
//
// Layout: three sections introduced by the lines META, PROJECTS and VOTES,
// each followed by a header row. Fields are separated by ';' and may be
// double-quoted; the approval list inside the `vote` field is comma
// separated. Costs and budget are decimal numbers; they are multiplied by
// a scale factor and must then be integers.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pbshare/core.hpp"
#include "pbshare/fixtures.hpp"

namespace pbshare {

inline constexpr std::int64_t kDefaultScale = 100;

struct PbFile {
  std::map<std::string, std::string> meta;
  std::vector<std::string> projectHeader;
  std::vector<std::vector<std::string>> projectRows;
  std::vector<std::string> voteHeader;
  std::vector<std::vector<std::string>> voteRows;
  /// 1-based line numbers of the rows above, for warnings.
  std::vector<std::size_t> projectLines;
  std::vector<std::size_t> voteLines;
};

struct ParsedPb {
  Election election;
  std::map<std::string, std::string> meta;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

/// Splits on ';' outside double quotes; "" inside quotes is a literal quote.
inline std::vector<std::string> splitFields(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        field += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ';') {
      out.push_back(trim(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  out.push_back(trim(field));
  return out;
}

inline std::string warning(std::string_view label, std::size_t line, std::string_view message) {
  return "W:" + std::string(label) + ":" + std::to_string(line) + ":" + std::string(message);
}

inline std::size_t column(const std::vector<std::string>& header, std::string_view name,
                          std::string_view section) {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (lower(header[k]) == name) return k;
  }
  throw InputError(std::string(section) + " header lacks column '" + std::string(name) + "'");
}

inline Cost scaledInteger(std::string_view text, std::int64_t scale, std::string_view what) {
  const Rational value = parseDecimal(trim(text)) * scale;
  if (!isIntegral(value)) {
    throw InputError(std::string(what) + " '" + std::string(text) + "' is not integral after scaling by " +
                     std::to_string(scale));
  }
  const BigInt whole = numerator(value);
  if (whole > BigInt(std::numeric_limits<Cost>::max()) ||
      whole < BigInt(std::numeric_limits<Cost>::min())) {
    throw InputError(std::string(what) + " '" + std::string(text) + "' is out of range");
  }
  return static_cast<Cost>(whole);
}

}  // namespace detail

/// Splits a file into its sections without interpreting any values.
inline PbFile readPbFile(std::string_view text) {
  enum class Section { None, Meta, Projects, Votes };
  PbFile file;
  Section section = Section::None;
  bool expectHeader = false;
  bool seen[3] = {false, false, false};
  std::size_t lineNo = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineNo;
    if (lineNo == 1 && raw.size() >= 3 && raw.compare(0, 3, "\xEF\xBB\xBF") == 0) raw.erase(0, 3);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    const std::string upper = detail::lower(line);
    if (upper == "meta" || upper == "projects" || upper == "votes") {
      const Section next = upper == "meta" ? Section::Meta
                           : upper == "projects" ? Section::Projects
                                                 : Section::Votes;
      const int idx = static_cast<int>(next) - 1;
      if (seen[idx]) throw InputError("section " + line + " appears twice");
      if (static_cast<int>(next) <= static_cast<int>(section)) {
        throw InputError("section " + line + " out of order");
      }
      seen[idx] = true;
      section = next;
      expectHeader = true;
      continue;
    }
    if (section == Section::None) throw InputError("content before the META section");
    auto fields = detail::splitFields(line);
    if (expectHeader) {
      expectHeader = false;
      if (section == Section::Projects) file.projectHeader = std::move(fields);
      if (section == Section::Votes) file.voteHeader = std::move(fields);
      continue;
    }
    switch (section) {
      case Section::Meta:
        if (fields.size() < 2) throw InputError("META line " + std::to_string(lineNo) + " lacks a value");
        file.meta[detail::lower(fields[0])] = fields[1];
        break;
      case Section::Projects:
        file.projectRows.push_back(std::move(fields));
        file.projectLines.push_back(lineNo);
        break;
      case Section::Votes:
        file.voteRows.push_back(std::move(fields));
        file.voteLines.push_back(lineNo);
        break;
      case Section::None: break;
    }
  }
  if (!seen[0]) throw InputError("missing META section");
  if (!seen[1]) throw InputError("missing PROJECTS section");
  if (!seen[2]) throw InputError("missing VOTES section");
  return file;
}

/// Parses an approval `.pb` file. `label` names the file in warnings.
inline ParsedPb parsePb(std::string_view text, std::int64_t scale = kDefaultScale,
                        std::string_view label = "<input>") {
  if (scale < 1) throw InputError("scale must be a positive integer");
  const PbFile file = readPbFile(text);
  ParsedPb out;
  out.meta = file.meta;

  for (const char* key : {"budget", "vote_type"}) {
    if (!file.meta.count(key)) throw InputError(std::string("missing META key '") + key + "'");
  }
  if (detail::lower(file.meta.at("vote_type")) != "approval") {
    throw InputError("unsupported vote type '" + file.meta.at("vote_type") + "'");
  }
  const Cost budget = detail::scaledInteger(file.meta.at("budget"), scale, "budget");

  const std::size_t idCol = detail::column(file.projectHeader, "project_id", "PROJECTS");
  const std::size_t costCol = detail::column(file.projectHeader, "cost", "PROJECTS");
  std::vector<std::string> ids;
  std::vector<Cost> costs;
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t r = 0; r < file.projectRows.size(); ++r) {
    const auto& row = file.projectRows[r];
    if (row.size() <= std::max(idCol, costCol)) {
      throw InputError("PROJECTS line " + std::to_string(file.projectLines[r]) + " is short");
    }
    if (!position.emplace(row[idCol], ids.size()).second) {
      throw InputError("duplicate project id '" + row[idCol] + "'");
    }
    ids.push_back(row[idCol]);
    costs.push_back(detail::scaledInteger(row[costCol], scale, "cost of project " + row[idCol]));
  }

  const std::size_t voteCol = detail::column(file.voteHeader, "vote", "VOTES");
  std::vector<std::vector<std::size_t>> ballots;
  std::vector<std::size_t> support(ids.size(), 0);
  for (std::size_t r = 0; r < file.voteRows.size(); ++r) {
    const auto& row = file.voteRows[r];
    std::vector<std::size_t> ballot;
    if (row.size() > voteCol) {
      std::string_view list = row[voteCol];
      std::size_t start = 0;
      while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        const std::string id = detail::trim(list.substr(start, comma - start));
        start = comma + 1;
        if (id.empty()) continue;
        auto it = position.find(id);
        if (it == position.end()) {
          out.warnings.push_back(
              detail::warning(label, file.voteLines[r], "vote references unknown project '" + id + "'"));
          continue;
        }
        if (std::find(ballot.begin(), ballot.end(), it->second) == ballot.end()) {
          ballot.push_back(it->second);
          ++support[it->second];
        }
      }
    }
    ballots.push_back(std::move(ballot));
  }
  if (ballots.empty()) throw InputError("no votes");

  auto countCheck = [&](const char* key, std::size_t actual) {
    auto it = file.meta.find(key);
    if (it != file.meta.end() && it->second != std::to_string(actual)) {
      out.warnings.push_back(detail::warning(label, 0,
                                             std::string(key) + " is " + it->second + " but " +
                                                 std::to_string(actual) + " rows were read"));
    }
  };
  countCheck("num_projects", ids.size());
  countCheck("num_votes", ballots.size());

  // Drop projects nobody approves; remaining ones keep their file order.
  std::vector<std::string> keptIds;
  std::vector<Cost> keptCosts;
  std::vector<std::optional<ProjectIndex>> remap(ids.size());
  for (std::size_t p = 0; p < ids.size(); ++p) {
    if (support[p] == 0) {
      out.warnings.push_back(detail::warning(label, file.projectLines[p],
                                             "project '" + ids[p] + "' has no approvals; dropped"));
      continue;
    }
    remap[p] = static_cast<ProjectIndex>(keptIds.size());
    keptIds.push_back(ids[p]);
    keptCosts.push_back(costs[p]);
  }
  Instance instance(std::move(keptIds), std::move(keptCosts), budget);
  std::vector<ProjectSet> sets;
  sets.reserve(ballots.size());
  for (const auto& ballot : ballots) {
    ProjectSet s(instance.numProjects());
    for (std::size_t p : ballot) s.insert(*remap[p]);
    sets.push_back(std::move(s));
  }
  Profile profile(instance, std::move(sets));
  out.election = {std::move(instance), std::move(profile)};
  return out;
}

inline ParsedPb loadPb(const std::filesystem::path& path, std::int64_t scale = kDefaultScale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parsePb(buffer.str(), scale, path.string());
}

/// Writes costs and budget as integers (the instance's own units), so
/// parsing the output with scale 1 restores the same election.
inline std::string writePb(const Instance& instance, const Profile& profile,
                           std::string_view description = "") {
  std::ostringstream out;
  out << "META\nkey;value\n";
  if (!description.empty()) out << "description;" << description << "\n";
  out << "num_projects;" << instance.numProjects() << "\n";
  out << "num_votes;" << profile.numAgents() << "\n";
  out << "budget;" << instance.budget() << "\n";
  out << "vote_type;approval\n";
  out << "PROJECTS\nproject_id;cost\n";
  for (ProjectIndex p = 0; p < instance.numProjects(); ++p) {
    out << instance.id(p) << ";" << instance.cost(p) << "\n";
  }
  out << "VOTES\nvoter_id;vote\n";
  for (AgentIndex i = 0; i < profile.numAgents(); ++i) {
    out << (i + 1) << ";";
    bool first = true;
    for (ProjectIndex p : profile.ballot(i)) {
      out << (first ? "" : ",") << instance.id(p);
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

struct PreprocessSpec {
  enum class Mode { None, Threshold, Cohesiveness };
  Mode mode = Mode::None;
  /// Threshold percentage; only 1, 5 and 10 unless `extended`.
  std::int64_t percent = 0;
  bool extended = false;

  static PreprocessSpec none() { return {}; }
  static PreprocessSpec threshold(std::int64_t percent, bool extended = false) {
    if (percent < 0 || percent > 100) throw InputError("threshold percent must lie in [0, 100]");
    if (!extended && percent != 1 && percent != 5 && percent != 10) {
      throw InputError("threshold percent must be 1, 5 or 10");
    }
    return {Mode::Threshold, percent, extended};
  }
  static PreprocessSpec cohesiveness() { return {Mode::Cohesiveness, 0, false}; }

  /// "none", "t<percent>" or "cohesive".
  static PreprocessSpec parse(std::string_view text) {
    if (text == "none") return none();
    if (text == "cohesive") return cohesiveness();
    if (text.size() > 1 && text[0] == 't') {
      const Rational v = parseDecimal(text.substr(1));
      if (isIntegral(v)) return threshold(static_cast<std::int64_t>(numerator(v)));
    }
    throw InputError("unknown preprocessing '" + std::string(text) + "'");
  }

  std::string name() const {
    switch (mode) {
      case Mode::None: return "none";
      case Mode::Threshold: return "t" + std::to_string(percent);
      case Mode::Cohesiveness: return "cohesive";
    }
    return "?";
  }

  friend bool operator==(const PreprocessSpec&, const PreprocessSpec&) = default;
};

struct Preprocessed {
  Election election;
  std::vector<std::string> removed;
};

/// Removes flagged projects. Agents stay, possibly with empty ballots.
inline Preprocessed preprocess(const Instance& instance, const Profile& profile,
                               const PreprocessSpec& spec) {
  const auto n = static_cast<std::int64_t>(profile.numAgents());
  std::vector<bool> keep(instance.numProjects(), true);
  for (ProjectIndex p = 0; p < instance.numProjects(); ++p) {
    const auto s = static_cast<std::int64_t>(profile.supporterCount(p));
    switch (spec.mode) {
      case PreprocessSpec::Mode::None: break;
      case PreprocessSpec::Mode::Threshold: keep[p] = s * 100 >= spec.percent * n; break;
      case PreprocessSpec::Mode::Cohesiveness:
        keep[p] = !(static_cast<__int128>(s) * instance.budget() <
                    static_cast<__int128>(instance.cost(p)) * n);
        break;
    }
  }
  Preprocessed out;
  std::vector<std::string> ids;
  std::vector<Cost> costs;
  std::vector<std::optional<ProjectIndex>> remap(instance.numProjects());
  for (ProjectIndex p = 0; p < instance.numProjects(); ++p) {
    if (!keep[p]) {
      out.removed.push_back(instance.id(p));
      continue;
    }
    remap[p] = static_cast<ProjectIndex>(ids.size());
    ids.push_back(instance.id(p));
    costs.push_back(instance.cost(p));
  }
  Instance reduced(std::move(ids), std::move(costs), instance.budget());
  std::vector<ProjectSet> ballots;
  for (const auto& ballot : profile.ballots()) {
    ProjectSet s(reduced.numProjects());
    for (ProjectIndex p : ballot) {
      if (remap[p]) s.insert(*remap[p]);
    }
    ballots.push_back(std::move(s));
  }
  Profile reducedProfile(reduced, std::move(ballots));
  out.election = {std::move(reduced), std::move(reducedProfile)};
  return out;
}

struct Dataset {
  std::filesystem::path path;
  Election election;
};

struct DroppedDataset {
  std::filesystem::path path;
  std::string reason;
};

struct CorpusReport {
  std::vector<Dataset> kept;
  std::vector<DroppedDataset> dropped;
  std::vector<std::string> warnings;
};

/// Nontrivial approval instances with at most `maxProjects` projects, or the
/// reason the election is excluded.
inline std::optional<std::string> exclusionReason(const Instance& instance, std::size_t maxProjects) {
  if (instance.numProjects() > maxProjects) {
    return "too many projects: " + std::to_string(instance.numProjects()) + " > " +
           std::to_string(maxProjects);
  }
  if (instance.totalCost() <= instance.budget()) return "trivial: all affordable";
  const Cost cheapest = *std::min_element(instance.costs().begin(), instance.costs().end());
  if (cheapest > instance.budget()) return "trivial: none affordable";
  return std::nullopt;
}

/// Reads every `.pb` file under `directory` (sorted by path).
inline CorpusReport filterCorpus(const std::filesystem::path& directory, std::size_t maxProjects,
                                 std::int64_t scale = kDefaultScale) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) throw InputError("not a directory: " + directory.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pb") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  CorpusReport report;
  for (const auto& path : files) {
    try {
      ParsedPb parsed = loadPb(path, scale);
      report.warnings.insert(report.warnings.end(), parsed.warnings.begin(), parsed.warnings.end());
      if (auto reason = exclusionReason(parsed.election.instance, maxProjects)) {
        report.dropped.push_back({path, *reason});
      } else {
        report.kept.push_back({path, std::move(parsed.election)});
      }
    } catch (const Error& e) {
      report.warnings.push_back(detail::warning(path.string(), 0, e.what()));
      report.dropped.push_back({path, std::string("unreadable: ") + e.what()});
    }
  }
  return report;
}

}  // namespace pbshare
