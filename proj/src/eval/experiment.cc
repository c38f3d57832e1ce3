#include "reqcomp/eval/experiment.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "reqcomp/eval/stats.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/rng.h"
#include "reqcomp/util/text.h"

namespace reqcomp::eval {

using nlohmann::json;

std::uint64_t split_seed(std::uint64_t seed, const std::string& doc_id, int repetition) {
  return derive_seed(derive_seed(seed, doc_id), static_cast<std::uint64_t>(repetition));
}

namespace {

RunRecord scored(const std::string& level, const TermSet& d, const TermSet& n, const embed::TermMatcher& matcher) {
  RunRecord r;
  r.level = level;
  r.accuracy = accuracy(d, n, matcher);
  r.coverage = coverage(d, n, matcher);
  r.rows = d.size();
  return r;
}

}  // namespace

RunArtifacts run_once(const ExperimentConfig& config, const ApproachAssets& assets, const nlp::AnnotatedDocument& doc,
                      int repetition) {
  RunArtifacts out;
  std::uint64_t seed = split_seed(config.seed, doc.doc_id, repetition);
  out.split = split_document(doc, seed);
  // only this subset flows into the approach
  out.disclosed = doc.subset(out.split.disclosed);
  nlp::AnnotatedDocument withheld = doc.subset(out.split.withheld);

  out.x = document_terms(out.disclosed);
  out.y = document_terms(withheld);
  const filter::WordLists& lists = *assets.lists;
  out.n = novel_terms(out.x, out.y, common_terms(lists, config.common_cutoff));

  ApproachOptions options;
  options.k = config.k;
  options.common_cutoff = config.common_cutoff;
  options.client = config.client;
  out.approach = run_approach(out.disclosed, assets, options, seed);

  embed::TermMatcher matcher(assets.store, &assets.pipeline->lemmatizer(), config.match_threshold);
  TermSet d = prediction_terms(out.approach.pruned);
  out.records.push_back(scored(std::string(kNoFilter), d, out.n, matcher));

  if (!config.filters.empty()) {
    features::FeatureMatrix labeled = out.approach.matrix;
    ml::label_matrix(labeled, out.n, matcher);
    std::vector<bool> labels;
    for (const auto& row : labeled.rows) labels.push_back(*row.label);
    for (const auto& level : config.filters) {
      std::vector<bool> keep =
          labeled.rows.empty() ? std::vector<bool>{} : level.model->classify(labeled);
      std::vector<mlm::PredictionRecord> kept;
      for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i]) kept.push_back(out.approach.pruned[i]);
      }
      RunRecord r = scored(level.name, prediction_terms(kept), out.n, matcher);
      r.filter = filter_metrics(labels, keep);
      out.records.push_back(std::move(r));
    }
  }

  if (config.baselines) {
    auto add = [&](const std::string& name, const BaselineResult& b) {
      RunRecord r = scored(name, b.candidates, out.n, matcher);
      r.empty_source = b.empty_source;
      out.records.push_back(std::move(r));
    };
    add("baseline1", baseline1(out.x, out.y, lists, *assets.pipeline, config.baseline1));
    add("baseline2", baseline2(out.x, out.y, out.approach.corpus.tfidf, lists, config.baseline2_k));
    if (config.synonyms) add("baseline3", baseline3(out.x, out.y, *config.synonyms, lists, *assets.pipeline));
  }

  for (auto& r : out.records) {
    r.doc_id = doc.doc_id;
    r.repetition = repetition;
    r.split_seed = seed;
  }
  return out;
}

EvalReport run_experiment(const ExperimentConfig& config, const ApproachAssets& assets) {
  if (config.k < 1 || config.k > mlm::kMaxK) throw ConfigError("k must be in [1, " + std::to_string(mlm::kMaxK) + "]");
  if (config.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (!assets.pipeline || !assets.provider || !assets.lists) throw InvalidArgument("experiment assets are incomplete");
  for (const auto& f : config.filters) {
    if (!f.model) throw InvalidArgument("filter level '" + f.name + "' has no model");
  }

  EvalReport report;
  json levels = json::array();
  for (const auto& f : config.filters) levels.push_back(f.name);
  json docs = json::array();
  for (const auto& d : config.documents) docs.push_back(d.doc_id);
  report.config = {{"k", config.k},
                   {"repetitions", config.repetitions},
                   {"seed", config.seed},
                   {"filters", levels},
                   {"documents", docs},
                   {"common_cutoff", config.common_cutoff},
                   {"match_threshold", config.match_threshold},
                   {"provider", assets.provider->name()},
                   {"embeddings", assets.store ? json(assets.store->size()) : json(nullptr)},
                   {"corpus", assets.miner != nullptr}};
  if (config.baselines) {
    report.config["baselines"] = {{"baseline1_ranks", {config.baseline1.first_rank, config.baseline1.last_rank}},
                                  {"baseline2_k", config.baseline2_k},
                                  {"baseline3", config.synonyms != nullptr}};
  }

  struct Unit {
    std::size_t doc;
    int rep;
    std::optional<RunArtifacts> result;
    std::string error;
  };
  std::vector<Unit> units;
  for (std::size_t d = 0; d < config.documents.size(); ++d) {
    for (int r = 0; r < config.repetitions; ++r) units.push_back({d, r, std::nullopt, {}});
  }
  // annotation is shared by all repetitions of a document
  std::vector<std::optional<nlp::AnnotatedDocument>> annotated(config.documents.size());
  std::vector<std::once_flag> annotate_once(config.documents.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < units.size();) {
      auto& u = units[i];
      const auto& input = config.documents[u.doc];
      try {
        std::call_once(annotate_once[u.doc],
                       [&] { annotated[u.doc] = assets.pipeline->annotate(input.doc_id, input.text); });
        u.result = run_once(config, assets, *annotated[u.doc], u.rep);
      } catch (const std::exception& e) {
        u.error = e.what();
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, units.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (auto& u : units) {
    const auto& doc_id = config.documents[u.doc].doc_id;
    if (!u.result) {
      report.errors.push_back({doc_id, u.rep, u.error});
      continue;
    }
    const auto& a = *u.result;
    report.splits.push_back({doc_id, u.rep, a.split.seed, a.split.disclosed, a.split.withheld, a.x.size(), a.y.size(),
                             a.n.size(), a.approach.corpus.articles.size()});
    report.records.insert(report.records.end(), a.records.begin(), a.records.end());
  }
  return report;
}

// ---- report output

namespace {

json ratio_json(const Ratio& r) {
  return {{"value", r.value}, {"matched", r.numerator}, {"total", r.denominator}, {"undefined", r.undefined}};
}

json metrics_json(const ml::ClassificationMetrics& m) {
  return {{"accuracy", m.accuracy},
          {"precision", m.precision},
          {"recall", m.recall},
          {"accuracy_undefined", m.accuracy_undefined},
          {"precision_undefined", m.precision_undefined},
          {"recall_undefined", m.recall_undefined},
          {"tp", m.counts.tp},
          {"fp", m.counts.fp},
          {"tn", m.counts.tn},
          {"fn", m.counts.fn}};
}

// Levels in first-seen order.
std::vector<std::string> level_order(const EvalReport& report) {
  std::vector<std::string> out;
  for (const auto& r : report.records) {
    if (std::find(out.begin(), out.end(), r.level) == out.end()) out.push_back(r.level);
  }
  return out;
}

std::vector<double> series(const EvalReport& report, const std::string& level, bool use_accuracy) {
  std::vector<double> v;
  for (const auto& r : report.records) {
    if (r.level == level) v.push_back(use_accuracy ? r.accuracy.value : r.coverage.value);
  }
  return v;
}

}  // namespace

json report_to_json(const EvalReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    json j{{"doc_id", r.doc_id},
           {"repetition", r.repetition},
           {"split_seed", r.split_seed},
           {"level", r.level},
           {"accuracy", ratio_json(r.accuracy)},
           {"coverage", ratio_json(r.coverage)},
           {"terms", r.rows}};
    if (r.filter) j["filter"] = metrics_json(*r.filter);
    if (r.empty_source) j["empty_source"] = true;
    records.push_back(std::move(j));
  }
  json splits = json::array();
  for (const auto& s : report.splits) {
    splits.push_back({{"doc_id", s.doc_id},
                      {"repetition", s.repetition},
                      {"seed", s.seed},
                      {"disclosed", s.disclosed},
                      {"withheld", s.withheld},
                      {"disclosed_terms", s.disclosed_terms},
                      {"withheld_terms", s.withheld_terms},
                      {"novel_terms", s.novel_terms},
                      {"corpus_articles", s.corpus_articles}});
  }
  json errors = json::array();
  for (const auto& e : report.errors)
    errors.push_back({{"doc_id", e.doc_id}, {"repetition", e.repetition}, {"message", e.message}});

  json aggregates = json::array();
  auto levels = level_order(report);
  for (const auto& level : levels) {
    json a{{"level", level}};
    for (bool acc : {true, false}) {
      auto v = series(report, level, acc);
      a[acc ? "accuracy" : "coverage"] = {{"n", v.size()}, {"mean", mean(v)}, {"median", median(v)}};
    }
    aggregates.push_back(std::move(a));
  }
  json comparisons = json::array();
  std::string base(kNoFilter);
  if (std::find(levels.begin(), levels.end(), base) != levels.end()) {
    for (const auto& level : levels) {
      if (level == base) continue;
      json c{{"level", level}, {"against", base}};
      for (bool acc : {true, false}) {
        auto a = series(report, level, acc), b = series(report, base, acc);
        auto w = wilcoxon_rank_sum(a, b);
        c[acc ? "accuracy" : "coverage"] = {
            {"p_value", w.p}, {"exact", w.exact}, {"a12", vargha_delaney_a12(a, b)}};
      }
      comparisons.push_back(std::move(c));
    }
  }
  return {{"format", "reqcomp-eval-report"}, {"version", 1},          {"config", report.config},
          {"splits", splits},                {"records", records},     {"errors", errors},
          {"aggregates", aggregates},        {"comparisons", comparisons}};
}

std::string report_to_csv(const EvalReport& report) {
  std::string out =
      "doc_id,repetition,split_seed,level,accuracy,coverage,accuracy_undefined,coverage_undefined,terms,"
      "clf_accuracy,clf_precision,clf_recall\n";
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  for (const auto& r : report.records) {
    std::vector<std::string> f{quote(r.doc_id),
                               std::to_string(r.repetition),
                               std::to_string(r.split_seed),
                               quote(r.level),
                               format_double(r.accuracy.value),
                               format_double(r.coverage.value),
                               r.accuracy.undefined ? "1" : "0",
                               r.coverage.undefined ? "1" : "0",
                               std::to_string(r.rows)};
    if (r.filter) {
      f.push_back(format_double(r.filter->accuracy));
      f.push_back(format_double(r.filter->precision));
      f.push_back(format_double(r.filter->recall));
    } else {
      f.insert(f.end(), {"", "", ""});
    }
    out += join(f, ",") + "\n";
  }
  return out;
}

json boxplot_json(const EvalReport& report) {
  json out{{"format", "reqcomp-boxplot"}, {"version", 1}};
  for (bool acc : {true, false}) {
    json series_list = json::array();
    for (const auto& level : level_order(report)) {
      auto v = series(report, level, acc);
      series_list.push_back({{"level", level},
                             {"values", v},
                             {"min", quantile(v, 0)},
                             {"q1", quantile(v, 0.25)},
                             {"median", quantile(v, 0.5)},
                             {"q3", quantile(v, 0.75)},
                             {"max", quantile(v, 1)}});
    }
    out[acc ? "accuracy" : "coverage"] = std::move(series_list);
  }
  return out;
}

void write_report(const EvalReport& report, const std::filesystem::path& dir) {
  write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
  write_file(dir / "records.csv", report_to_csv(report));
  write_file(dir / "boxplot.json", boxplot_json(report).dump(2) + "\n");
}

}  // namespace reqcomp::eval
