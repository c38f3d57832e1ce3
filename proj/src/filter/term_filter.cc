#include "reqcomp/filter/term_filter.h"

#include <map>

#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"

namespace reqcomp::filter {

WordLists::WordLists(std::vector<std::string> common_words, std::vector<std::string> vague_words,
                     std::vector<std::string> stop_words) {
  for (auto& w : common_words) {
    std::string lw = to_lower(w);
    if (rank_.count(lw)) continue;
    common_.push_back(lw);
    rank_[lw] = common_.size();
  }
  for (auto& w : vague_words) vague_.insert(to_lower(w));
  for (auto& w : stop_words) stop_.insert(to_lower(w));
}

WordLists WordLists::load(const std::filesystem::path& common, const std::filesystem::path& vague,
                          const std::filesystem::path& stop) {
  return WordLists(read_list_file(common), read_list_file(vague), read_list_file(stop));
}

WordLists WordLists::load_default(const std::filesystem::path& data_dir) {
  auto dir = data_dir / "wordlists";
  return load(dir / "common_words.txt", dir / "vague_words.txt", dir / "stop_words.txt");
}

std::size_t WordLists::rank(std::string_view word) const {
  auto it = rank_.find(std::string(word));
  return it == rank_.end() ? 0 : it->second;
}

bool WordLists::is_common(std::string_view word, std::size_t cutoff) const {
  std::size_t r = rank(word);
  return r > 0 && r <= cutoff;
}

std::string record_lemma(const mlm::PredictionRecord& record) {
  return record.lemma.empty() ? to_lower(record.prediction.token) : record.lemma;
}

PruneReason prune_reason(const mlm::PredictionRecord& record, const nlp::AnnotatedDocument& doc,
                         const WordLists& lists, std::size_t common_cutoff) {
  const std::string& token = record.prediction.token;
  if (!is_alphabetic(token)) return PruneReason::kNonAlphabetic;
  std::string lower = to_lower(token);
  if (doc.term_set.count(record_lemma(record))) return PruneReason::kInDocument;
  if (lists.is_common(lower, common_cutoff)) return PruneReason::kCommon;
  if (lists.is_vague(lower) || lists.is_stop(lower)) return PruneReason::kVagueOrStop;
  return PruneReason::kKept;
}

std::vector<mlm::PredictionRecord> prune(const std::vector<mlm::PredictionRecord>& records,
                                         const nlp::AnnotatedDocument& doc, const WordLists& lists,
                                         std::size_t common_cutoff) {
  std::vector<mlm::PredictionRecord> out;
  for (const auto& r : records) {
    if (prune_reason(r, doc, lists, common_cutoff) == PruneReason::kKept) out.push_back(r);
  }
  return out;
}

std::vector<mlm::PredictionRecord> dedupe_by_lemma(const std::vector<mlm::PredictionRecord>& records) {
  std::map<std::string, std::size_t> best;
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::string lemma = record_lemma(records[i]);
    auto it = best.find(lemma);
    if (it == best.end()) {
      best.emplace(std::move(lemma), i);
    } else if (records[i].prediction.score > records[it->second].prediction.score) {
      it->second = i;
    }
  }
  std::vector<bool> keep(records.size(), false);
  for (const auto& [_, i] : best) keep[i] = true;
  std::vector<mlm::PredictionRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (keep[i]) out.push_back(records[i]);
  }
  return out;
}

}  // namespace reqcomp::filter
