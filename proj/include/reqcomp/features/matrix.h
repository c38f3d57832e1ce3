#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reqcomp/corpus/miner.h"
#include "reqcomp/embed/embeddings.h"
#include "reqcomp/mask/masking.h"
#include "reqcomp/mlm/client.h"

namespace reqcomp::features {

enum class ColumnKind { kNominal, kBoolean, kNumeric, kOrdinal };
std::string_view to_string(ColumnKind kind);

struct Column {
  std::string name;
  ColumnKind kind;
  std::vector<std::string> values;  // nominal domain, empty otherwise
};

// The thirteen feature columns, their kinds and nominal domains.
const std::vector<Column>& schema();
nlohmann::json schema_json();
// Hex digest of the canonical schema; models refuse matrices that differ.
std::string schema_fingerprint();

// Where a row came from. Not a feature.
struct RowKey {
  std::string doc_id;
  std::size_t sentence_index = 0;
  std::size_t token_index = 0;
  std::string masked_surface;
  std::string prediction;
  std::string lemma;  // prediction lemma
  int rank = 0;

  bool operator==(const RowKey&) const = default;
};

struct FeatureVector {
  mask::MaskedPos f1 = mask::MaskedPos::kNoun;  // masked word class
  std::string f2;                               // prediction tag after substitution
  bool f3 = false;                              // f2 falls in f1's class
  int f4 = 0;                                   // masked word length
  int f5 = 0;                                   // prediction length
  double f6 = 0;                                // min/max of f4, f5
  double f7 = 0;                                // model score
  int f8 = 0;                                   // Levenshtein(masked, prediction)
  std::optional<double> f9;                     // cosine; nullopt when either word is OOV
  int f10 = 9;                                  // bucket among this document's predictions
  int f11 = 9;                                  // bucket in the domain corpus
  double f12 = 0;                               // mean normalised TF-IDF over articles
  double f13 = 0;                               // max normalised TF-IDF over articles
  std::optional<bool> label;                    // true = relevant

  bool operator==(const FeatureVector&) const = default;
};

struct FeatureMatrix {
  std::vector<RowKey> keys;
  std::vector<FeatureVector> rows;
  std::string doc_id;
  std::uint64_t seed = 0;
  std::string fingerprint = schema_fingerprint();
  std::vector<std::string> warnings;  // e.g. "empty_corpus"

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  // Appends another matrix's rows; fingerprints must agree.
  void append(const FeatureMatrix& other);
};

// F1-F3 for one annotated record (mlm::annotate_predictions sets the tag).
void pos_features(const mlm::PredictionRecord& record, FeatureVector& out);
void length_features(const std::string& masked, const std::string& prediction, FeatureVector& out);

// Rows for the records of one document. F10 is counted over these records;
// F11-F13 come from the corpus (build_index must have run). store may be null,
// in which case every F9 is undefined.
FeatureMatrix build_matrix(const std::vector<mlm::PredictionRecord>& records, const corpus::DomainCorpus& corpus,
                           const embed::EmbeddingStore* store, const std::string& doc_id = {},
                           std::uint64_t seed = 0);

// CSV: identification columns, f1..f13, f9_oov, label. Undefined f9 and a
// missing label are written as "?".
std::string to_csv(const FeatureMatrix& m);
FeatureMatrix from_csv(std::string_view text, const std::string& source = "<memory>");
// <stem>.csv plus <stem>.schema.json.
void save_matrix(const FeatureMatrix& m, const std::filesystem::path& csv_path);
// Checks the sidecar fingerprint when present.
FeatureMatrix load_matrix(const std::filesystem::path& csv_path);

// Numeric view for the learners: one-hot nominal columns, f9 as 0 plus an OOV
// indicator, everything else as is.
const std::vector<std::string>& encoded_names();
std::vector<double> encode(const FeatureVector& v);

}  // namespace reqcomp::features
