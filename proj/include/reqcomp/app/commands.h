#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "reqcomp/eval/experiment.h"

namespace reqcomp::app {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNetwork = 3;
inline constexpr int kExitProvider = 4;
inline constexpr int kExitInternal = 5;

struct RunConfig {
  std::vector<std::filesystem::path> inputs;  // plain text, one specification per file
  std::string provider_url;
  std::filesystem::path fixture;  // with provider_url: responses are recorded here
  int k = 15;
  std::string preset = "none";
  int depth = 0;
  std::filesystem::path corpus_dir;  // MediaWiki cache; empty means no corpus
  std::string wiki_api = corpus::kWikipediaApi;
  bool offline = false;
  std::filesystem::path embeddings;
  std::vector<std::string> models;  // file, directory, or name=file
  std::uint64_t seed = 0;
  std::filesystem::path out;
  std::filesystem::path data_dir;  // empty: default_data_dir()
  std::filesystem::path common_words, stop_words, vague_words;
  std::filesystem::path wordnet;
  int repetitions = 1;
  int threads = 0;
  bool baselines = false;  // evaluate: also score baselines
  std::vector<int> which = {1, 2, 3};  // baseline: which ones to run
  std::vector<std::filesystem::path> matrices;  // train: labeled matrices instead of inputs
  double undersample_ratio = 1.0;
  int tune_budget = 0;
  std::string format = "json";  // recommend: json or csv

  // Throws ConfigError: k outside [1, 50], negative depth, unknown preset.
  void validate() const;
};

// Steps 1-6 over each whole input document; deduplicated terms with scores
// and feature evidence.
nlohmann::json cmd_recommend(const RunConfig& config);
std::string recommendations_csv(const nlohmann::json& report);

// Mines a corpus per input into out/<doc_id>.
nlohmann::json cmd_mine(const RunConfig& config);

// Trains the preset's filter on labeled rows from the inputs (split and
// labeled like in evaluate) or from --matrix files, and saves it to out.
nlohmann::json cmd_train(const RunConfig& config);

// Runs the experiment and writes report.json, records.csv and boxplot.json
// under out.
eval::EvalReport cmd_evaluate(const RunConfig& config);

// Baseline term lists per input and repetition.
nlohmann::json cmd_baseline(const RunConfig& config);

int exit_code(const std::exception_ptr& error);

}  // namespace reqcomp::app
