#include "reqcomp/app/commands.h"

#include <algorithm>
#include <memory>
#include <optional>
#include <sstream>

#include "reqcomp/corpus/keyphrases.h"
#include "reqcomp/eval/baselines.h"
#include "reqcomp/eval/split.h"
#include "reqcomp/ml/model.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"

namespace reqcomp::app {

using nlohmann::json;
namespace fs = std::filesystem;

void RunConfig::validate() const {
  if (k < 1 || k > mlm::kMaxK) throw ConfigError("--k must be in [1, " + std::to_string(mlm::kMaxK) + "]");
  if (depth < 0) throw ConfigError("--depth must be >= 0");
  if (repetitions < 1) throw ConfigError("--repetitions must be >= 1");
  if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
  ml::preset_from_string(preset);
  for (int b : which) {
    if (b < 1 || b > 3) throw ConfigError("baselines are numbered 1 to 3");
  }
}

namespace {

// Everything the commands share, built from the flags.
struct Session {
  const nlp::Pipeline* pipeline = nullptr;
  std::optional<nlp::Pipeline> own_pipeline;
  filter::WordLists lists;
  std::optional<embed::EmbeddingStore> store;
  std::unique_ptr<mlm::Provider> base;
  std::unique_ptr<mlm::Provider> recorder;
  mlm::FixtureStore recorded;
  std::unique_ptr<corpus::MediaWikiClient> miner;
  std::filesystem::path record_dir;

  explicit Session(const RunConfig& c, bool needs_provider) {
    fs::path data = c.data_dir.empty() ? default_data_dir() : c.data_dir;
    if (c.data_dir.empty()) {
      pipeline = &nlp::Pipeline::shared();
    } else {
      own_pipeline.emplace(nlp::Pipeline::load(nlp::PipelineAssets::in(data)));
      pipeline = &*own_pipeline;
    }
    auto pick = [&](const fs::path& flag, const char* name) { return flag.empty() ? data / "wordlists" / name : flag; };
    lists = filter::WordLists::load(pick(c.common_words, "common_words.txt"), pick(c.vague_words, "vague_words.txt"),
                                    pick(c.stop_words, "stop_words.txt"));
    if (!c.embeddings.empty()) store = embed::EmbeddingStore::load(c.embeddings);

    if (needs_provider) {
      if (!c.provider_url.empty()) {
        base = std::make_unique<mlm::HttpProvider>(c.provider_url);
        if (!c.fixture.empty()) {
          recorded = mlm::FixtureStore::load(c.fixture);
          recorder = std::make_unique<mlm::RecordingProvider>(*base, recorded);
          record_dir = c.fixture;
        }
      } else if (!c.fixture.empty()) {
        if (!fs::exists(c.fixture)) throw ConfigError("fixture not found: " + c.fixture.string());
        auto fixture = fs::is_directory(c.fixture) ? mlm::FixtureStore::load(c.fixture)
                                                   : mlm::FixtureStore::load_file(c.fixture);
        base = std::make_unique<mlm::FixtureProvider>(std::make_shared<const mlm::FixtureStore>(std::move(fixture)));
      } else {
        throw ConfigError("either --provider-url or --fixture is required");
      }
    }

    if (!c.corpus_dir.empty()) {
      corpus::MinerOptions options;
      options.api_url = c.wiki_api;
      options.cache_dir = c.corpus_dir;
      options.offline = c.offline;
      options.depth = c.depth;
      miner = std::make_unique<corpus::MediaWikiClient>(options);
    }
  }

  mlm::Provider* provider() const { return recorder ? recorder.get() : base.get(); }

  eval::ApproachAssets assets() const {
    eval::ApproachAssets a;
    a.pipeline = pipeline;
    a.provider = provider();
    a.lists = &lists;
    a.store = store ? &*store : nullptr;
    a.miner = miner.get();
    return a;
  }

  // New responses go back into the fixture directory.
  void flush() const {
    if (!record_dir.empty()) recorded.save(record_dir);
  }
};

std::string doc_id_of(const fs::path& p) { return p.stem().string(); }

std::vector<eval::InputDocument> read_inputs(const RunConfig& c) {
  if (c.inputs.empty()) throw ConfigError("--input is required");
  std::vector<eval::InputDocument> docs;
  std::set<std::string> ids;
  for (const auto& p : c.inputs) {
    if (!ids.insert(doc_id_of(p)).second) throw ConfigError("two inputs share the document id " + doc_id_of(p));
    docs.push_back({doc_id_of(p), read_file(p)});
  }
  return docs;
}

json evidence_json(const features::FeatureVector& v) {
  return {{"f1", std::string(mask::to_string(v.f1))},
          {"f2", v.f2},
          {"f3", v.f3},
          {"f4", v.f4},
          {"f5", v.f5},
          {"f6", v.f6},
          {"f7", v.f7},
          {"f8", v.f8},
          {"f9", v.f9 ? json(*v.f9) : json(nullptr)},
          {"f10", v.f10},
          {"f11", v.f11},
          {"f12", v.f12},
          {"f13", v.f13}};
}

struct NamedModel {
  std::string name;
  std::shared_ptr<const ml::FilterModel> model;
};

std::string model_name(const ml::FilterModel& m, const fs::path& path) {
  return m.config.preset.empty() ? path.stem().string() : m.config.preset;
}

// --model entries: a file, name=file, or a directory of *.json models.
std::vector<NamedModel> load_models(const std::vector<std::string>& specs) {
  std::vector<NamedModel> out;
  for (const auto& spec : specs) {
    std::string name;
    fs::path path = spec;
    if (auto eq = spec.find('='); eq != std::string::npos) {
      name = spec.substr(0, eq);
      path = spec.substr(eq + 1);
    }
    if (!fs::exists(path)) throw ConfigError("model not found: " + path.string());
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
      for (const auto& e : fs::directory_iterator(path)) {
        if (e.path().extension() == ".json") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
    } else {
      files.push_back(path);
    }
    for (const auto& f : files) {
      auto m = std::make_shared<const ml::FilterModel>(ml::load_model(f));
      out.push_back({name.empty() ? model_name(*m, f) : name, m});
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (out[i].name == out[j].name) throw ConfigError("two models are named " + out[i].name);
    }
  }
  return out;
}

// The model recommend filters with: the named preset, or the only model given.
std::shared_ptr<const ml::FilterModel> filter_model(const RunConfig& c) {
  if (c.models.empty()) {
    if (c.preset != "none") throw ConfigError("--preset " + c.preset + " needs --model");
    return nullptr;
  }
  auto models = load_models(c.models);
  if (c.preset == "none") {
    if (models.size() != 1) throw ConfigError("several models given; choose one with --preset");
    return models[0].model;
  }
  for (const auto& m : models) {
    if (m.name == c.preset) return m.model;
  }
  throw ConfigError("no model for preset " + c.preset);
}

json term_list(const eval::TermSet& s) { return json(std::vector<std::string>(s.begin(), s.end())); }

}  // namespace

json cmd_recommend(const RunConfig& c) {
  c.validate();
  auto docs = read_inputs(c);
  auto model = filter_model(c);
  Session s(c, true);
  eval::ApproachOptions options;
  options.k = c.k;

  json out = {{"format", "reqcomp-recommendations"},
              {"version", 1},
              {"k", c.k},
              {"provider", s.provider()->name()},
              {"filter", model ? json(model_name(*model, "model")) : json(nullptr)},
              {"documents", json::array()}};
  for (const auto& d : docs) {
    auto annotated = s.pipeline->annotate(d.doc_id, d.text);
    auto result = eval::run_approach(annotated, s.assets(), options, c.seed);
    json terms = json::array();
    for (const auto& r : eval::recommendations(result, model.get())) {
      terms.push_back({{"term", r.term},
                       {"prediction", r.prediction},
                       {"score", r.score},
                       {"occurrences", r.occurrences},
                       {"masked_words", r.masked_words},
                       {"evidence", evidence_json(r.evidence)}});
    }
    out["documents"].push_back({{"doc_id", d.doc_id},
                                {"sentences", annotated.sentences.size()},
                                {"masked_instances", result.masked_instances},
                                {"predictions", result.pruned.size()},
                                {"corpus_articles", result.corpus.articles.size()},
                                {"warnings", result.matrix.warnings},
                                {"terms", terms}});
  }
  s.flush();
  return out;
}

std::string recommendations_csv(const json& report) {
  std::ostringstream out;
  out << "doc_id,term,prediction,score,occurrences,masked_words\n";
  for (const auto& d : report.at("documents")) {
    for (const auto& t : d.at("terms")) {
      std::string masked;
      for (const auto& w : t.at("masked_words")) masked += (masked.empty() ? "" : ";") + w.get<std::string>();
      out << d.at("doc_id").get<std::string>() << ',' << t.at("term").get<std::string>() << ','
          << t.at("prediction").get<std::string>() << ',' << t.at("score").dump() << ','
          << t.at("occurrences").get<std::size_t>() << ',' << masked << '\n';
    }
  }
  return out.str();
}

json cmd_mine(const RunConfig& c) {
  c.validate();
  if (c.corpus_dir.empty()) throw ConfigError("--corpus-dir is required for mine");
  if (c.out.empty()) throw ConfigError("--out is required for mine");
  auto docs = read_inputs(c);
  Session s(c, false);
  json summary = json::array();
  for (const auto& d : docs) {
    auto annotated = s.pipeline->annotate(d.doc_id, d.text);
    auto corpus = corpus::mine(corpus::extract_keyphrases(annotated), *s.miner);
    corpus.save(c.out / d.doc_id);
    summary.push_back({{"doc_id", d.doc_id}, {"articles", corpus.articles.size()}});
  }
  return {{"depth", c.depth},
          {"documents", summary},
          {"network_requests", s.miner->network_requests()},
          {"cache_hits", s.miner->cache_hits()}};
}

json cmd_train(const RunConfig& c) {
  c.validate();
  if (c.out.empty()) throw ConfigError("--out is required for train");
  auto preset = ml::preset_from_string(c.preset);
  if (preset == ml::Preset::kNone) throw ConfigError("train needs --preset strict, moderate or lenient");

  features::FeatureMatrix rows;
  for (const auto& m : c.matrices) rows.append(features::load_matrix(m));
  if (!c.inputs.empty()) {
    Session s(c, true);
    eval::ExperimentConfig ec;
    ec.k = c.k;
    ec.seed = c.seed;
    for (const auto& d : read_inputs(c)) {
      auto annotated = s.pipeline->annotate(d.doc_id, d.text);
      embed::TermMatcher matcher(s.assets().store, &s.pipeline->lemmatizer(), ec.match_threshold);
      for (int rep = 0; rep < c.repetitions; ++rep) {
        auto run = eval::run_once(ec, s.assets(), annotated, rep);
        ml::label_matrix(run.approach.matrix, run.n, matcher);
        rows.append(run.approach.matrix);
      }
    }
    s.flush();
  }
  if (c.inputs.empty() && c.matrices.empty()) throw ConfigError("train needs --input or --matrix");

  ml::PresetOptions options;
  options.seed = c.seed;
  options.undersample_ratio = c.undersample_ratio;
  options.tune_budget = c.tune_budget;
  auto data = ml::from_matrix(rows);
  auto model = ml::train_preset(preset, data, options);
  ml::save_model(model, c.out);
  json j = ml::model_to_json(model);
  return {{"model", c.out.string()},
          {"preset", model.config.preset},
          {"algorithm", std::string(ml::to_string(model.config.algorithm))},
          {"rows", data.size()},
          {"relevant", data.count(ml::kRelevant)},
          {"train_rows", model.train_rows},
          {"cost", j.at("cost")}};
}

eval::EvalReport cmd_evaluate(const RunConfig& c) {
  c.validate();
  if (c.out.empty()) throw ConfigError("--out is required for evaluate");
  eval::ExperimentConfig ec;
  ec.documents = read_inputs(c);
  ec.k = c.k;
  ec.repetitions = c.repetitions;
  ec.seed = c.seed;
  ec.threads = c.threads;
  for (auto& m : load_models(c.models)) ec.filters.push_back({m.name, m.model});
  std::optional<eval::SynonymLexicon> lexicon;
  ec.baselines = c.baselines;
  if (!c.wordnet.empty()) lexicon = eval::SynonymLexicon::load_wordnet(c.wordnet);
  if (lexicon) ec.synonyms = &*lexicon;

  Session s(c, true);
  auto report = eval::run_experiment(ec, s.assets());
  eval::write_report(report, c.out);
  s.flush();
  return report;
}

json cmd_baseline(const RunConfig& c) {
  c.validate();
  auto docs = read_inputs(c);
  Session s(c, false);
  std::optional<eval::SynonymLexicon> lexicon;
  bool want3 = std::count(c.which.begin(), c.which.end(), 3) > 0;
  if (want3) {
    if (c.wordnet.empty()) throw ConfigError("baseline 3 needs --wordnet");
    lexicon = eval::SynonymLexicon::load_wordnet(c.wordnet);
  }
  auto common = eval::common_terms(s.lists);

  json out = {{"format", "reqcomp-baselines"}, {"version", 1}, {"seed", c.seed}, {"runs", json::array()}};
  for (const auto& d : docs) {
    auto annotated = s.pipeline->annotate(d.doc_id, d.text);
    for (int rep = 0; rep < c.repetitions; ++rep) {
      std::uint64_t seed = eval::split_seed(c.seed, d.doc_id, rep);
      auto split = eval::split_document(annotated, seed);
      auto disclosed = annotated.subset(split.disclosed);
      auto x = eval::document_terms(disclosed);
      auto y = eval::document_terms(annotated.subset(split.withheld));
      json run = {{"doc_id", d.doc_id},
                  {"repetition", rep},
                  {"split_seed", seed},
                  {"novel_terms", term_list(eval::novel_terms(x, y, common))}};
      for (int b : c.which) {
        eval::BaselineResult r;
        if (b == 1) {
          r = eval::baseline1(x, y, s.lists, *s.pipeline);
        } else if (b == 2) {
          corpus::DomainCorpus corpus;
          if (s.miner) corpus = corpus::mine(corpus::extract_keyphrases(disclosed), *s.miner);
          corpus.build_index(*s.pipeline);
          r = eval::baseline2(x, y, corpus.tfidf, s.lists);
        } else {
          r = eval::baseline3(x, y, *lexicon, s.lists, *s.pipeline);
        }
        run["baseline" + std::to_string(b)] = {
            {"candidates", term_list(r.candidates)}, {"hits", term_list(r.hits)}, {"empty_source", r.empty_source}};
      }
      out["runs"].push_back(run);
    }
  }
  return out;
}

int exit_code(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const ConfigError&) {
    return kExitConfig;
  } catch (const ParseError&) {
    return kExitConfig;
  } catch (const SchemaMismatch&) {
    return kExitConfig;
  } catch (const InvalidArgument&) {
    return kExitConfig;
  } catch (const fs::filesystem_error&) {
    return kExitConfig;
  } catch (const NetworkError&) {
    return kExitNetwork;
  } catch (const ProviderError&) {
    return kExitProvider;
  } catch (...) {
    return kExitInternal;
  }
}

}  // namespace reqcomp::app
