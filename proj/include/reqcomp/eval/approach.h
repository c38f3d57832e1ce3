#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reqcomp/corpus/miner.h"
#include "reqcomp/embed/embeddings.h"
#include "reqcomp/features/matrix.h"
#include "reqcomp/filter/term_filter.h"
#include "reqcomp/ml/model.h"
#include "reqcomp/mlm/client.h"
#include "reqcomp/nlp/pipeline.h"

namespace reqcomp::eval {

// Shared, read-only collaborators. provider must tolerate concurrent calls.
struct ApproachAssets {
  const nlp::Pipeline* pipeline = nullptr;
  mlm::Provider* provider = nullptr;
  const filter::WordLists* lists = nullptr;
  const embed::EmbeddingStore* store = nullptr;  // null: F9 undefined, lemma-only matching
  corpus::MediaWikiClient* miner = nullptr;      // null: empty corpus
};

struct ApproachOptions {
  int k = 15;
  std::size_t common_cutoff = filter::kDefaultCommonCutoff;
  mlm::ClientOptions client;
};

struct ApproachResult {
  std::size_t masked_instances = 0;
  std::vector<mlm::PredictionRecord> pruned;  // V, annotated
  corpus::DomainCorpus corpus;
  features::FeatureMatrix matrix;  // one row per pruned record
};

// Masking, prediction, pruning, corpus mining and feature extraction over doc
// and nothing else.
ApproachResult run_approach(const nlp::AnnotatedDocument& doc, const ApproachAssets& assets,
                            const ApproachOptions& options, std::uint64_t seed = 0);

struct Recommendation {
  std::string term;        // prediction lemma
  std::string prediction;  // surface of the best-scoring occurrence
  double score = 0;        // best model score
  std::size_t occurrences = 0;
  std::vector<std::string> masked_words;  // distinct, in first-seen order
  features::FeatureVector evidence;       // features of the best occurrence
};

// One entry per lemma, best score first (ties by term). With a model, only
// rows it classifies as relevant are kept.
std::vector<Recommendation> recommendations(const ApproachResult& result, const ml::FilterModel* model = nullptr);

}  // namespace reqcomp::eval
