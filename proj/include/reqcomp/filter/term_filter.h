#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "reqcomp/mlm/client.h"
#include "reqcomp/nlp/types.h"

namespace reqcomp::filter {

inline constexpr int kDefaultCommonCutoff = 250;

class WordLists {
 public:
  WordLists() = default;
  WordLists(std::vector<std::string> common_words, std::vector<std::string> vague_words,
            std::vector<std::string> stop_words);
  static WordLists load(const std::filesystem::path& common, const std::filesystem::path& vague,
                        const std::filesystem::path& stop);
  // data/wordlists/{common_words,vague_words,stop_words}.txt
  static WordLists load_default(const std::filesystem::path& data_dir);

  const std::vector<std::string>& common_words() const { return common_; }
  // 1-based rank in the frequency list, 0 when absent.
  std::size_t rank(std::string_view word) const;
  bool is_common(std::string_view word, std::size_t cutoff) const;
  bool is_vague(std::string_view word) const { return vague_.count(std::string(word)) > 0; }
  bool is_stop(std::string_view word) const { return stop_.count(std::string(word)) > 0; }

 private:
  std::vector<std::string> common_;
  std::unordered_map<std::string, std::size_t> rank_;
  std::unordered_set<std::string> vague_;
  std::unordered_set<std::string> stop_;
};

enum class PruneReason { kKept, kInDocument, kCommon, kVagueOrStop, kNonAlphabetic };

// Why a record would be removed by prune() (kKept when it survives).
PruneReason prune_reason(const mlm::PredictionRecord& record, const nlp::AnnotatedDocument& doc,
                         const WordLists& lists, std::size_t common_cutoff = kDefaultCommonCutoff);

// Drops predictions whose lemma already occurs in the document, that are among
// the common_cutoff most frequent English words, that are vague or stop words,
// or that are not alphabetic. Order is preserved. Records must carry lemmas
// (mlm::annotate_predictions); a missing lemma falls back to the lowercased
// prediction.
std::vector<mlm::PredictionRecord> prune(const std::vector<mlm::PredictionRecord>& records,
                                         const nlp::AnnotatedDocument& doc, const WordLists& lists,
                                         std::size_t common_cutoff = kDefaultCommonCutoff);

// One record per prediction lemma: the highest-scoring one (earliest on ties),
// kept at its original position.
std::vector<mlm::PredictionRecord> dedupe_by_lemma(const std::vector<mlm::PredictionRecord>& records);

std::string record_lemma(const mlm::PredictionRecord& record);

}  // namespace reqcomp::filter
