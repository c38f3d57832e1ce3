#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reqcomp/eval/approach.h"
#include "reqcomp/eval/baselines.h"
#include "reqcomp/eval/metrics.h"
#include "reqcomp/eval/split.h"

namespace reqcomp::eval {

struct InputDocument {
  std::string doc_id;
  std::string text;
};

struct FilterLevel {
  std::string name;  // e.g. "strict"
  std::shared_ptr<const ml::FilterModel> model;
};

inline constexpr std::string_view kNoFilter = "none";

struct ExperimentConfig {
  std::vector<InputDocument> documents;
  int k = 15;
  int repetitions = 1;
  std::uint64_t seed = 0;
  std::vector<FilterLevel> filters;
  std::size_t common_cutoff = filter::kDefaultCommonCutoff;
  double match_threshold = embed::kDefaultMatchThreshold;

  bool baselines = false;
  Baseline1Options baseline1;
  std::size_t baseline2_k = kDefaultTopK;
  const SynonymLexicon* synonyms = nullptr;  // baseline 3 is skipped without one

  int threads = 0;  // 0: hardware concurrency
  mlm::ClientOptions client;
};

// One scored term list for one (document, repetition).
struct RunRecord {
  std::string doc_id;
  int repetition = 0;
  std::uint64_t split_seed = 0;
  std::string level;  // "none", a filter name or "baseline1".."baseline3"
  Ratio accuracy;
  Ratio coverage;
  std::optional<ml::ClassificationMetrics> filter;  // filter levels only
  std::size_t rows = 0;                              // predictions scored (filter levels: kept)
  bool empty_source = false;                         // baseline 2 without corpus
};

struct SplitRecord {
  std::string doc_id;
  int repetition = 0;
  std::uint64_t seed = 0;
  std::set<std::size_t> disclosed, withheld;
  std::size_t disclosed_terms = 0, withheld_terms = 0, novel_terms = 0;
  std::size_t corpus_articles = 0;
};

struct RunError {
  std::string doc_id;
  int repetition = 0;
  std::string message;
};

struct EvalReport {
  nlohmann::json config;
  std::vector<SplitRecord> splits;
  std::vector<RunRecord> records;
  std::vector<RunError> errors;
};

// Everything one (document, repetition) unit produced.
struct RunArtifacts {
  DocumentSplit split;
  nlp::AnnotatedDocument disclosed;
  TermSet x, y, n;
  ApproachResult approach;
  std::vector<RunRecord> records;
};

std::uint64_t split_seed(std::uint64_t seed, const std::string& doc_id, int repetition);

// Splits doc, runs the approach on the disclosed half only and scores every
// level against the withheld half.
RunArtifacts run_once(const ExperimentConfig& config, const ApproachAssets& assets, const nlp::AnnotatedDocument& doc,
                      int repetition);

// All documents and repetitions. Units run in parallel; failures are recorded
// per unit and the rest continue.
EvalReport run_experiment(const ExperimentConfig& config, const ApproachAssets& assets);

// Records plus per-level aggregates and, for every level other than "none",
// rank-sum p-values and A12 against "none".
nlohmann::json report_to_json(const EvalReport& report);
std::string report_to_csv(const EvalReport& report);
// Per level and metric: the values and their five-number summary.
nlohmann::json boxplot_json(const EvalReport& report);
// report.json, records.csv and boxplot.json under dir.
void write_report(const EvalReport& report, const std::filesystem::path& dir);

}  // namespace reqcomp::eval
