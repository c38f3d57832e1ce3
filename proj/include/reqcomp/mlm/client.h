#pragma once

#include <string>
#include <vector>

#include "reqcomp/mask/masking.h"
#include "reqcomp/mlm/provider.h"
#include "reqcomp/nlp/pipeline.h"

namespace reqcomp::mlm {

struct PredictionRecord {
  mask::MaskedInstance instance;
  Prediction prediction;
  int rank = 0;  // 1..k
  // Filled by annotate_predictions(): tag and lemma of the prediction once
  // substituted into the sentence.
  std::string tag;
  std::string lemma;

  bool operator==(const PredictionRecord&) const = default;
};

struct ClientOptions {
  double score_floor = 0.0;  // records scoring below are dropped
  int concurrency = 4;       // in-flight provider calls for get_all_predictions
};

// Cleans a raw provider list: drops subword continuations ("##..."), empty
// tokens, the mask placeholder and bracketed special tokens; validates scores;
// stable-sorts by descending score and keeps the first k.
std::vector<Prediction> clean_predictions(std::vector<Prediction> raw, const std::string& mask_token, int k);

std::vector<PredictionRecord> get_predictions(Provider& provider, const mask::MaskedInstance& instance, int k,
                                              const ClientOptions& options = {});

// All instances, in order, with at most options.concurrency calls in flight.
std::vector<PredictionRecord> get_all_predictions(Provider& provider,
                                                  const std::vector<mask::MaskedInstance>& instances, int k,
                                                  const ClientOptions& options = {});

// Sets tag and lemma on each record by substituting the predicted word into
// its sentence and running the pipeline over the result.
void annotate_predictions(std::vector<PredictionRecord>& records, const nlp::Pipeline& pipeline);

}  // namespace reqcomp::mlm
