#include "reqcomp/eval/approach.h"

#include <algorithm>
#include <map>

#include "reqcomp/corpus/keyphrases.h"
#include "reqcomp/mask/masking.h"
#include "reqcomp/util/errors.h"

namespace reqcomp::eval {

ApproachResult run_approach(const nlp::AnnotatedDocument& doc, const ApproachAssets& assets,
                            const ApproachOptions& options, std::uint64_t seed) {
  if (!assets.pipeline || !assets.provider || !assets.lists) throw InvalidArgument("approach assets are incomplete");
  ApproachResult out;
  auto instances = mask::generate_masked_instances(doc);
  out.masked_instances = instances.size();
  auto records = mlm::get_all_predictions(*assets.provider, instances, options.k, options.client);
  mlm::annotate_predictions(records, *assets.pipeline);
  out.pruned = filter::prune(records, doc, *assets.lists, options.common_cutoff);

  if (assets.miner && !out.pruned.empty()) out.corpus = corpus::mine(corpus::extract_keyphrases(doc), *assets.miner);
  out.corpus.build_index(*assets.pipeline);
  out.matrix = features::build_matrix(out.pruned, out.corpus, assets.store, doc.doc_id, seed);
  return out;
}

std::vector<Recommendation> recommendations(const ApproachResult& result, const ml::FilterModel* model) {
  std::vector<bool> keep(result.pruned.size(), true);
  if (model && !result.pruned.empty()) keep = model->classify(result.matrix);

  std::map<std::string, Recommendation> by_term;
  for (std::size_t i = 0; i < result.pruned.size(); ++i) {
    if (!keep[i]) continue;
    const auto& r = result.pruned[i];
    std::string term = filter::record_lemma(r);
    auto [it, fresh] = by_term.try_emplace(term);
    auto& rec = it->second;
    if (fresh || r.prediction.score > rec.score) {
      rec.term = term;
      rec.prediction = r.prediction.token;
      rec.score = r.prediction.score;
      rec.evidence = result.matrix.rows[i];
    }
    ++rec.occurrences;
    if (std::find(rec.masked_words.begin(), rec.masked_words.end(), r.instance.masked_surface) ==
        rec.masked_words.end())
      rec.masked_words.push_back(r.instance.masked_surface);
  }
  std::vector<Recommendation> out;
  for (auto& [_, rec] : by_term) out.push_back(std::move(rec));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.score > b.score; });
  return out;
}

}  // namespace reqcomp::eval
