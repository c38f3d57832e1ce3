#include "doctest.h"
#include "reqcomp/filter/term_filter.h"
#include "reqcomp/nlp/pipeline.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/rng.h"

using namespace reqcomp;
using namespace reqcomp::filter;

namespace {

mlm::PredictionRecord rec(const std::string& token, double score, const std::string& lemma = "") {
  mlm::PredictionRecord r;
  r.prediction = {token, score};
  r.lemma = lemma;
  return r;
}

std::vector<std::string> tokens(const std::vector<mlm::PredictionRecord>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.prediction.token);
  return out;
}

const WordLists& lists() {
  static const WordLists w = WordLists::load_default(default_data_dir());
  return w;
}

}  // namespace

TEST_CASE("bundled word lists") {
  CHECK(lists().common_words().size() >= 1000);
  CHECK(lists().rank(lists().common_words()[0]) == 1);
  CHECK(lists().rank("zzzzqx") == 0);
  CHECK(lists().is_stop("any"));
  CHECK(lists().is_common("system", 250));
  CHECK(!lists().is_common("system", 100));
}

TEST_CASE("prune examples") {
  const auto& p = nlp::Pipeline::shared();
  auto doc = p.annotate("d", "The gateway shall support integration with billing. The service shall log errors.");
  std::vector<mlm::PredictionRecord> recs{rec("integration", 0.9, "integration"), rec("any", 0.5, "any"),
                                          rec("other", 0.4, "other"),             rec("each", 0.3, "each"),
                                          rec("services", 0.3, "service"),        rec("firewall", 0.2, "firewall"),
                                          rec("3G", 0.1, "3g"),                   rec("...", 0.1, "...")};
  CHECK(prune_reason(recs[0], doc, lists()) == PruneReason::kInDocument);
  CHECK(prune_reason(recs[1], doc, lists()) == PruneReason::kCommon);
  CHECK(prune_reason(recs[4], doc, lists()) == PruneReason::kInDocument);
  CHECK(prune_reason(recs[6], doc, lists()) == PruneReason::kNonAlphabetic);
  CHECK(tokens(prune(recs, doc, lists())) == std::vector<std::string>{"firewall"});

  WordLists custom({"alpha"}, {"flexible"}, {"whereas"});
  std::vector<mlm::PredictionRecord> r2{rec("alpha", 0.1), rec("flexible", 0.1), rec("whereas", 0.1), rec("beta", 0.1)};
  CHECK(tokens(prune(r2, doc, custom)) == std::vector<std::string>{"beta"});
  CHECK(prune_reason(r2[1], doc, custom) == PruneReason::kVagueOrStop);
  CHECK(record_lemma(rec("Beta", 0.1)) == "beta");
}

TEST_CASE("dedupe by lemma") {
  std::vector<mlm::PredictionRecord> recs{rec("reports", 0.2, "report"), rec("log", 0.5, "log"),
                                          rec("report", 0.4, "report"), rec("logs", 0.5, "log")};
  auto out = dedupe_by_lemma(recs);
  CHECK(tokens(out) == std::vector<std::string>{"log", "report"});
  CHECK(dedupe_by_lemma({}).empty());
  std::vector<mlm::PredictionRecord> distinct{rec("a", 0.1, "a"), rec("b", 0.2, "b")};
  CHECK(tokens(dedupe_by_lemma(distinct)) == tokens(distinct));
}

TEST_CASE("prune properties on random records") {
  const auto& p = nlp::Pipeline::shared();
  auto doc = p.annotate("d", "Operators shall review alarms and export audit reports daily.");
  const auto& common = lists().common_words();
  const std::vector<std::string> extra{"alarm", "report", "firewall", "sensor", "x-ray", "42", "any", "ledger"};
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<mlm::PredictionRecord> recs;
    std::size_t n = rng.below(30);
    for (std::size_t i = 0; i < n; ++i) {
      std::string w = rng.below(2) ? common[rng.below(1000)] : extra[rng.below(extra.size())];
      recs.push_back(rec(w, rng.uniform(), w));
    }
    auto once = prune(recs, doc, lists());
    CHECK(prune(once, doc, lists()) == once);
    for (const auto& r : once) CHECK(doc.term_set.count(record_lemma(r)) == 0);
    std::size_t c1 = 50 + rng.below(200), c2 = c1 + rng.below(500);
    auto wide = prune(recs, doc, lists(), c2);
    auto narrow = prune(recs, doc, lists(), c1);
    std::size_t j = 0;
    for (const auto& r : wide) {
      while (j < narrow.size() && !(narrow[j] == r)) ++j;
      CHECK(j < narrow.size());
    }
    auto d = dedupe_by_lemma(recs);
    std::set<std::string> lemmas;
    for (const auto& r : d) CHECK(lemmas.insert(record_lemma(r)).second);
  }
}
