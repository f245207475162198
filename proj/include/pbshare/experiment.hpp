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

// Batch evaluation of rules over a corpus: one row per (file, preprocessing,
// rule), written as CSV and optionally summarised in SVG line plots.
//
// The "optimal" row describes the allocation maximising the average capped
// fair share ratio. The opt_* columns hold the optimum of each metric on its
// own: the best capped ratio and the smallest average L1 distance.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pbshare/metrics.hpp"
#include "pbshare/opt.hpp"
#include "pbshare/pabulib.hpp"
#include "pbshare/rules.hpp"

namespace pbshare {

struct ExperimentConfig {
  std::filesystem::path dataDir;
  std::size_t maxProjects = 65;
  std::int64_t scale = kDefaultScale;
  std::vector<PreprocessSpec> preprocess{PreprocessSpec::none()};
  std::vector<Rule> rules{std::begin(kAllRules), std::end(kAllRules)};
  bool optimizer = true;
  OptOptions optOptions;
  std::size_t enumerationCap = kDefaultEnumerationCap;
  /// 0 picks the hardware concurrency.
  std::size_t workers = 0;
};

struct ExperimentRow {
  std::string file;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string preprocess;
  /// Rule name, or "optimal".
  std::string rule;
  std::optional<Rational> cappedRatio;
  std::optional<Rational> l1Normalized;
  std::optional<Rational> budgetFraction;
  std::optional<Rational> optCappedRatio;
  std::optional<Rational> optL1;
  std::optional<Rational> ratioVsOpt;
  std::optional<Rational> l1VsOpt;
  std::string error;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::vector<DroppedDataset> dropped;
  std::vector<std::string> warnings;
};

inline constexpr const char* kExperimentCsvHeader =
    "file,n,m,preprocess,rule,capped_ratio,capped_ratio_dec,l1_norm,l1_norm_dec,budget_fraction,"
    "opt_capped_ratio,opt_l1,ratio_vs_opt,l1_vs_opt,error";

namespace detail {

/// Rows for one election under one preprocessing, in rule order then "optimal".
inline std::vector<ExperimentRow> evaluateElection(const std::string& file, const Election& raw,
                                                   const PreprocessSpec& spec,
                                                   const ExperimentConfig& config) {
  ExperimentRow base;
  base.file = file;
  base.preprocess = spec.name();
  std::vector<ExperimentRow> rows;
  std::optional<Preprocessed> pre;
  try {
    pre = preprocess(raw.instance, raw.profile, spec);
  } catch (const Error& e) {
    base.rule = "all";
    base.error = e.what();
    return {base};
  }
  const Instance& instance = pre->election.instance;
  const Profile& profile = pre->election.profile;
  base.n = profile.numAgents();
  base.m = instance.numProjects();

  std::optional<OptResult> bestRatio;
  std::optional<OptResult> bestL1;
  std::string optError;
  if (config.optimizer && instance.numProjects() <= config.optOptions.maxProjectsBranchAndBound) {
    try {
      bestRatio = maxCappedRatio(instance, profile, SearchMethod::BranchAndBound, 1, config.optOptions);
      bestL1 = minL1Distance(instance, profile, SearchMethod::BranchAndBound, config.optOptions);
    } catch (const Error& e) {
      optError = e.what();
    }
  }

  auto fill = [&](ExperimentRow& row, const ProjectSet& selected) {
    row.cappedRatio = metricCappedRatio(instance, profile, selected);
    row.l1Normalized = metricL1Normalized(instance, profile, selected);
    row.budgetFraction = metricBudgetFraction(instance, selected);
    if (bestRatio) {
      row.optCappedRatio = bestRatio->objective;
      row.optL1 = bestL1->objective;
      row.ratioVsOpt = bestRatio->objective == 0 ? Rational(1) : *row.cappedRatio / bestRatio->objective;
      const Rational l1 = metricL1Distance(instance, profile, selected);
      row.l1VsOpt = l1 == 0 ? Rational(1) : bestL1->objective / l1;
    }
    if (!optError.empty()) row.error = "optimizer: " + optError;
  };

  for (Rule rule : config.rules) {
    ExperimentRow row = base;
    row.rule = std::string(toString(rule));
    try {
      fill(row, runRule(rule, instance, profile, config.enumerationCap).selected);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  if (config.optimizer) {
    ExperimentRow row = base;
    row.rule = "optimal";
    if (bestRatio) {
      fill(row, bestRatio->allocation.selected);
    } else {
      row.error = optError.empty() ? "optimizer: project cap exceeded" : "optimizer: " + optError;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string csvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline std::string optText(const std::optional<Rational>& value) {
  return value ? toString(*value) : std::string();
}

inline std::string optDecimal(const std::optional<Rational>& value) {
  return value ? toDecimal(*value) : std::string();
}

}  // namespace detail

/// Evaluates already loaded datasets. Rows come out sorted by file, then
/// preprocessing (config order), then rule; scheduling never affects them.
inline std::vector<ExperimentRow> runExperimentOn(const std::vector<Dataset>& datasets,
                                                  const ExperimentConfig& config) {
  struct Job {
    std::size_t dataset;
    std::size_t spec;
  };
  std::vector<Job> jobs;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (std::size_t s = 0; s < config.preprocess.size(); ++s) jobs.push_back({d, s});
  }
  std::vector<std::string> names;
  for (const auto& ds : datasets) {
    const auto rel = config.dataDir.empty() ? ds.path : ds.path.lexically_relative(config.dataDir);
    names.push_back((rel.empty() ? ds.path : rel).generic_string());
  }
  std::vector<std::vector<ExperimentRow>> slots(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Job& job = jobs[k];
      slots[k] = detail::evaluateElection(names[job.dataset], datasets[job.dataset].election,
                                          config.preprocess[job.spec], config);
    }
  };
  std::size_t count = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  count = std::min(count, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<std::size_t> order(jobs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ja = jobs[a];
    const auto& jb = jobs[b];
    if (names[ja.dataset] != names[jb.dataset]) return names[ja.dataset] < names[jb.dataset];
    return ja.spec < jb.spec;
  });
  std::vector<ExperimentRow> rows;
  for (std::size_t k : order) {
    for (auto& row : slots[k]) rows.push_back(std::move(row));
  }
  return rows;
}

inline ExperimentResult runExperiment(const ExperimentConfig& config) {
  CorpusReport corpus = filterCorpus(config.dataDir, config.maxProjects, config.scale);
  if (corpus.kept.empty()) throw InputError("empty corpus: no usable .pb files in " + config.dataDir.string());
  ExperimentResult result;
  result.rows = runExperimentOn(corpus.kept, config);
  result.dropped = std::move(corpus.dropped);
  result.warnings = std::move(corpus.warnings);
  return result;
}

inline std::string experimentCsv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << kExperimentCsvHeader << "\n";
  for (const auto& r : rows) {
    out << detail::csvField(r.file) << "," << r.n << "," << r.m << "," << r.preprocess << "," << r.rule
        << "," << detail::optText(r.cappedRatio) << "," << detail::optDecimal(r.cappedRatio) << ","
        << detail::optText(r.l1Normalized) << "," << detail::optDecimal(r.l1Normalized) << ","
        << detail::optText(r.budgetFraction) << "," << detail::optText(r.optCappedRatio) << ","
        << detail::optText(r.optL1) << "," << detail::optText(r.ratioVsOpt) << ","
        << detail::optText(r.l1VsOpt) << "," << detail::csvField(r.error) << "\n";
  }
  return out.str();
}

/// Mean of one metric per rule over equal-width project-count buckets, one
/// SVG per (metric, preprocessing). Returns the written paths.
inline std::vector<std::filesystem::path> writeSvgPlots(const std::vector<ExperimentRow>& rows,
                                                        const std::filesystem::path& directory,
                                                        std::size_t buckets = 4) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  using Getter = std::optional<Rational> ExperimentRow::*;
  const std::pair<const char*, Getter> metrics[] = {{"capped_ratio", &ExperimentRow::cappedRatio},
                                                    {"l1_norm", &ExperimentRow::l1Normalized},
                                                    {"budget_fraction", &ExperimentRow::budgetFraction}};
  std::vector<std::string> specs;
  std::vector<std::string> rules;
  std::size_t lo = SIZE_MAX;
  std::size_t hi = 0;
  for (const auto& r : rows) {
    if (std::find(specs.begin(), specs.end(), r.preprocess) == specs.end()) specs.push_back(r.preprocess);
    if (std::find(rules.begin(), rules.end(), r.rule) == rules.end()) rules.push_back(r.rule);
    lo = std::min(lo, r.m);
    hi = std::max(hi, r.m);
  }
  std::vector<fs::path> written;
  if (rows.empty()) return written;
  buckets = std::max<std::size_t>(1, std::min(buckets, hi - lo + 1));
  const double width = static_cast<double>(hi - lo + 1) / static_cast<double>(buckets);
  auto bucketOf = [&](std::size_t m) {
    return std::min(buckets - 1, static_cast<std::size_t>(static_cast<double>(m - lo) / width));
  };
  const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"};
  const double W = 640, H = 400, L = 60, R = 150, T = 30, B = 50;

  for (const auto& spec : specs) {
    for (const auto& [metric, getter] : metrics) {
      // mean[rule][bucket]
      std::vector<std::vector<std::pair<double, int>>> acc(rules.size(),
                                                           std::vector<std::pair<double, int>>(buckets));
      double yMin = 0, yMax = 1;
      for (const auto& r : rows) {
        if (r.preprocess != spec || !(r.*getter)) continue;
        const auto k = static_cast<std::size_t>(std::find(rules.begin(), rules.end(), r.rule) - rules.begin());
        auto& cell = acc[k][bucketOf(r.m)];
        cell.first += static_cast<double>(*(r.*getter));
        cell.second += 1;
      }
      for (auto& line : acc) {
        for (auto& cell : line) {
          if (cell.second) yMin = std::min(yMin, cell.first / cell.second);
        }
      }
      auto x = [&](std::size_t b) {
        return L + (W - L - R) * (buckets == 1 ? 0.5 : static_cast<double>(b) / static_cast<double>(buckets - 1));
      };
      auto y = [&](double v) { return T + (H - T - B) * (yMax - v) / (yMax - yMin); };
      std::ostringstream svg;
      svg.setf(std::ios::fixed);
      svg.precision(2);
      svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
      svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
      svg << "<text x=\"" << L << "\" y=\"18\" font-size=\"14\">" << metric << " (" << spec << ")</text>\n";
      svg << "<line x1=\"" << L << "\" y1=\"" << y(yMin) << "\" x2=\"" << W - R << "\" y2=\"" << y(yMin)
          << "\" stroke=\"black\"/>\n";
      svg << "<line x1=\"" << L << "\" y1=\"" << y(yMin) << "\" x2=\"" << L << "\" y2=\"" << y(yMax)
          << "\" stroke=\"black\"/>\n";
      for (double v : {yMin, (yMin + yMax) / 2, yMax}) {
        svg << "<text x=\"" << L - 8 << "\" y=\"" << y(v) + 4 << "\" font-size=\"11\" text-anchor=\"end\">" << v
            << "</text>\n";
      }
      for (std::size_t b = 0; b < buckets; ++b) {
        const auto from = lo + static_cast<std::size_t>(width * static_cast<double>(b));
        const auto to = b + 1 == buckets ? hi : lo + static_cast<std::size_t>(width * static_cast<double>(b + 1)) - 1;
        svg << "<text x=\"" << x(b) << "\" y=\"" << H - B + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
            << from << "-" << std::max(from, to) << "</text>\n";
      }
      svg << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10
          << "\" font-size=\"12\" text-anchor=\"middle\">projects</text>\n";
      for (std::size_t k = 0; k < rules.size(); ++k) {
        const char* color = palette[k % std::size(palette)];
        std::string points;
        for (std::size_t b = 0; b < buckets; ++b) {
          const auto& cell = acc[k][b];
          if (!cell.second) continue;
          std::ostringstream pt;
          pt.setf(std::ios::fixed);
          pt.precision(2);
          pt << x(b) << "," << y(cell.first / cell.second) << " ";
          points += pt.str();
          svg << "<circle cx=\"" << x(b) << "\" cy=\"" << y(cell.first / cell.second) << "\" r=\"3\" fill=\""
              << color << "\"/>\n";
        }
        if (!points.empty()) {
          svg << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"" << points << "\"/>\n";
        }
        svg << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 * static_cast<double>(k + 1) << "\" font-size=\"11\" fill=\""
            << color << "\">" << rules[k] << "</text>\n";
      }
      svg << "</svg>\n";
      const fs::path path = directory / (std::string(metric) + "_" + spec + ".svg");
      std::ofstream(path, std::ios::binary) << svg.str();
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace pbshare
