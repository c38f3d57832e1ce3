// reqcomp: recommend missing domain terms for a requirements document.
#include <iostream>

#include "CLI11.hpp"
#include "reqcomp/app/commands.h"
#include "reqcomp/util/io.h"

using namespace reqcomp;
using namespace reqcomp::app;

namespace {

// Every flag can also come from REQCOMP_<FLAG> (upper case, '-' as '_').
std::string env_of(const std::string& flag) {
  std::string out = "REQCOMP_";
  for (char ch : flag) out += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

template <typename T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  return app->add_option("--" + name, target, help)->envname(env_of(name));
}

void common_flags(CLI::App* app, RunConfig& c) {
  flag(app, "input", c.inputs, "Specification text file(s)")->delimiter(',');
  flag(app, "k", c.k, "Predictions per masked word (1-50)")->capture_default_str();
  flag(app, "seed", c.seed, "Seed for splits, sampling and learners")->capture_default_str();
  flag(app, "out", c.out, "Output file or directory");
  flag(app, "data-dir", c.data_dir, "Bundled data directory");
  flag(app, "common-words", c.common_words, "Ranked common word list");
  flag(app, "stop-words", c.stop_words, "Stop word list");
  flag(app, "vague-words", c.vague_words, "Vague word list");
  flag(app, "embeddings", c.embeddings, "Word vectors (GloVe text format)");
}

void provider_flags(CLI::App* app, RunConfig& c) {
  flag(app, "provider-url", c.provider_url, "Fill-mask service base URL");
  flag(app, "fixture", c.fixture, "Recorded predictions (directory or file); recorded into with --provider-url");
}

void corpus_flags(CLI::App* app, RunConfig& c) {
  flag(app, "corpus-dir", c.corpus_dir, "Wikipedia cache directory; enables corpus mining");
  flag(app, "depth", c.depth, "Category depth for mining")->capture_default_str();
  flag(app, "wiki-api", c.wiki_api, "MediaWiki API endpoint")->capture_default_str();
  app->add_flag("--offline", c.offline, "Serve the corpus from the cache only")->envname(env_of("offline"));
}

void write_or_print(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_file(c.out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recommends domain terms missing from a requirements document"};
  app.require_subcommand(1);
  RunConfig c;

  auto* recommend = app.add_subcommand("recommend", "Recommend terms for whole documents");
  common_flags(recommend, c);
  provider_flags(recommend, c);
  corpus_flags(recommend, c);
  flag(recommend, "preset", c.preset, "Filter: none, strict, moderate or lenient")->capture_default_str();
  flag(recommend, "model", c.models, "Filter model file, name=file or directory");
  flag(recommend, "format", c.format, "json or csv")->capture_default_str();

  auto* mine = app.add_subcommand("mine", "Mine a Wikipedia corpus per document into --out/<doc>");
  common_flags(mine, c);
  corpus_flags(mine, c);

  auto* train = app.add_subcommand("train", "Train a filter preset and save it to --out");
  common_flags(train, c);
  provider_flags(train, c);
  corpus_flags(train, c);
  flag(train, "preset", c.preset, "strict, moderate or lenient")->required();
  flag(train, "matrix", c.matrices, "Labeled feature matrix CSV(s)")->delimiter(',');
  flag(train, "repetitions", c.repetitions, "Splits per document")->capture_default_str();
  flag(train, "undersample-ratio", c.undersample_ratio, "Majority/minority ratio")->capture_default_str();
  flag(train, "tune-budget", c.tune_budget, "Random-search trials (0: defaults)")->capture_default_str();

  auto* evaluate = app.add_subcommand("evaluate", "Split, run and score documents; report into --out");
  common_flags(evaluate, c);
  provider_flags(evaluate, c);
  corpus_flags(evaluate, c);
  flag(evaluate, "model", c.models, "Filter level(s): file, name=file or directory");
  flag(evaluate, "repetitions", c.repetitions, "Splits per document")->capture_default_str();
  flag(evaluate, "threads", c.threads, "Worker threads (0: all cores)")->capture_default_str();
  flag(evaluate, "wordnet", c.wordnet, "WordNet dict directory for baseline 3");
  evaluate->add_flag("--baselines", c.baselines, "Also score the baselines")->envname(env_of("baselines"));

  auto* baseline = app.add_subcommand("baseline", "Baseline term lists for split documents");
  common_flags(baseline, c);
  corpus_flags(baseline, c);
  flag(baseline, "which", c.which, "Baselines to run")->delimiter(',')->capture_default_str();
  flag(baseline, "repetitions", c.repetitions, "Splits per document")->capture_default_str();
  flag(baseline, "wordnet", c.wordnet, "WordNet dict directory for baseline 3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*recommend) {
      auto report = cmd_recommend(c);
      write_or_print(c, c.format == "csv" ? recommendations_csv(report) : report.dump(2) + "\n");
    } else if (*mine) {
      std::cout << cmd_mine(c).dump(2) << "\n";
    } else if (*train) {
      std::cout << cmd_train(c).dump(2) << "\n";
    } else if (*evaluate) {
      auto report = cmd_evaluate(c);
      std::cout << "wrote " << (c.out / "report.json").string() << " (" << report.records.size() << " records, "
                << report.errors.size() << " errors)\n";
      for (const auto& e : report.errors) std::cerr << "error: " << e.doc_id << ": " << e.message << "\n";
    } else if (*baseline) {
      write_or_print(c, cmd_baseline(c).dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "reqcomp: " << e.what() << "\n";
    return exit_code(std::current_exception());
  }
  return kExitOk;
}
