// One PASS/FAIL line per acceptance criterion; exit status 1 if any gating
// criterion fails. Criterion 11 needs a real provider and only runs when
// REQCOMP_ACCEPT_DOC and REQCOMP_ACCEPT_PROVIDER_URL are set.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "ml_data.h"
#include "reqcomp/app/commands.h"
#include "reqcomp/corpus/miner.h"
#include "reqcomp/eval/baselines.h"
#include "reqcomp/eval/stats.h"
#include "reqcomp/features/features.h"
#include "reqcomp/ml/model.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/rng.h"
#include "stub_server.h"

using namespace reqcomp;
namespace fs = std::filesystem;

namespace {

const fs::path kData = REQCOMP_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::string detail;
  bool skipped = false;
};

// Collects the first failed expectation of a criterion.
struct Check {
  Outcome out;
  void expect(bool ok, const std::string& what) {
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("reqcomp_accept_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

const filter::WordLists& lists() {
  static auto l = filter::WordLists::load_default(default_data_dir());
  return l;
}

// ---- 1

Outcome golden_example() {
  Check c;
  const auto& pipeline = nlp::Pipeline::shared();
  lists();
  auto store = std::make_shared<const mlm::FixtureStore>(mlm::FixtureStore::load(kData / "monitoring" / "fixture"));
  mlm::FixtureProvider provider(store);

  auto t0 = std::chrono::steady_clock::now();
  auto disclosed = pipeline.annotate("disclosed", read_file(kData / "monitoring" / "disclosed.txt"));
  auto withheld = pipeline.annotate("withheld", read_file(kData / "monitoring" / "withheld.txt"));
  eval::ApproachAssets assets{&pipeline, &provider, &lists(), nullptr, nullptr};
  auto result = eval::run_approach(disclosed, assets, {});
  std::set<std::string> d;
  for (const auto& r : eval::recommendations(result)) d.insert(r.term);
  double elapsed = seconds_since(t0);

  auto golden_list = read_list_file(kData / "monitoring" / "golden_recommendations.txt");
  std::set<std::string> golden(golden_list.begin(), golden_list.end());
  c.expect(d == golden, "recommended set differs from golden (" + std::to_string(d.size()) + " vs " +
                            std::to_string(golden.size()) + ")");

  auto n = eval::novel_terms(eval::document_terms(disclosed), eval::document_terms(withheld),
                             eval::common_terms(lists()));
  embed::TermMatcher matcher(nullptr, &pipeline.lemmatizer());
  std::set<std::string> matched;
  for (const auto& term : d) {
    for (const auto& m : n) {
      if (matcher.is_match(term, m)) matched.insert(term);
    }
  }
  for (const char* want : {"stability", "network", "traffic", "comply", "security"}) {
    c.expect(matched.count(want) == 1, std::string(want) + " not among matches");
  }

  // service and system were predicted, and pruned
  auto raw = mlm::get_all_predictions(provider, mask::generate_masked_instances(disclosed), 15);
  std::set<std::string> raw_tokens;
  for (const auto& r : raw) raw_tokens.insert(r.prediction.token);
  for (const char* dropped : {"service", "system"}) {
    c.expect(raw_tokens.count(dropped) == 1, std::string(dropped) + " never predicted");
    c.expect(d.count(dropped) == 0, std::string(dropped) + " not pruned");
  }
  c.expect(elapsed < 1.0, "took " + fmt(elapsed) + "s");
  if (c.out.pass) {
    c.out.detail = std::to_string(d.size()) + " terms equal golden; matches " + std::to_string(matched.size()) +
                   " incl. stability,network,traffic,comply,security; service,system pruned; " + fmt(elapsed) + "s";
  }
  return c.out;
}

// ---- 2

Outcome metric_oracle() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(20230425);
  const std::string alphabet = "bcdfghjklmnpqrtvwxz";  // no vowels e or s: lemmas equal the words
  int instances = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 12;
    std::size_t clusters = 2 + rng.below(5);
    std::vector<std::vector<double>> centers(clusters, std::vector<double>(dim));
    for (auto& ctr : centers) {
      for (auto& x : ctr) x = rng.normal();
    }
    std::string table;
    std::vector<std::string> words;
    while (words.size() < 10 + rng.below(20)) {
      std::string w;
      for (int i = 0; i < 5; ++i) w += alphabet[rng.below(alphabet.size())];
      if (std::find(words.begin(), words.end(), w) != words.end()) continue;
      words.push_back(w);
      if (rng.below(6) == 0) continue;  // out of vocabulary
      auto v = centers[rng.below(clusters)];
      table += w;
      for (auto x : v) table += " " + fmt(x + 0.12 * rng.normal(), 6);
      table += "\n";
    }
    auto store = embed::EmbeddingStore::parse(table, "synthetic");
    auto cos = [&](const std::string& a, const std::string& b) -> std::optional<double> {
      const float* va = store.vector(a);
      const float* vb = store.vector(b);
      if (!va || !vb) return std::nullopt;
      double dot = 0, na = 0, nb = 0;
      for (std::size_t i = 0; i < dim; ++i) {
        dot += double(va[i]) * vb[i];
        na += double(va[i]) * va[i];
        nb += double(vb[i]) * vb[i];
      }
      return dot / std::sqrt(na * nb);
    };
    bool ambiguous = false;
    auto match = [&](const std::string& a, const std::string& b) {
      if (a == b) return true;
      auto s = cos(a, b);
      if (!s) return false;
      if (std::abs(*s - embed::kDefaultMatchThreshold) < 1e-6) ambiguous = true;
      return *s >= embed::kDefaultMatchThreshold;
    };
    eval::TermSet d, n;
    for (const auto& w : words) {
      if (rng.below(2)) d.insert(w);
      if (rng.below(3) == 0) n.insert(w);
    }
    std::size_t acc = 0, cov = 0;
    for (const auto& a : d) {
      bool any = false;
      for (const auto& b : n) any = match(a, b) || any;
      acc += any;
    }
    for (const auto& b : n) {
      bool any = false;
      for (const auto& a : d) any = match(a, b) || any;
      cov += any;
    }
    if (ambiguous) continue;  // float rounding could go either way
    ++instances;
    embed::TermMatcher matcher(&store, &nlp::Pipeline::shared().lemmatizer());
    auto ra = eval::accuracy(d, n, matcher);
    auto rc = eval::coverage(d, n, matcher);
    double want_a = d.empty() ? 0.0 : static_cast<double>(acc) / static_cast<double>(d.size());
    double want_c = n.empty() ? 0.0 : static_cast<double>(cov) / static_cast<double>(n.size());
    c.expect(ra.value == want_a && ra.undefined == d.empty(), "accuracy differs in trial " + std::to_string(trial));
    c.expect(rc.value == want_c && rc.undefined == n.empty(), "coverage differs in trial " + std::to_string(trial));
  }
  double elapsed = seconds_since(t0);
  c.expect(instances >= 490, "too many threshold ties: " + std::to_string(instances));
  c.expect(elapsed < 5.0, "took " + fmt(elapsed) + "s");
  if (c.out.pass) c.out.detail = std::to_string(instances) + " instances equal the double-loop oracle; " + fmt(elapsed) + "s";
  return c.out;
}

// ---- 3

std::size_t dp_levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) t[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) t[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = std::min({t[i - 1][j] + 1, t[i][j - 1] + 1, t[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
    }
  }
  return t[a.size()][b.size()];
}

Outcome levenshtein_oracle() {
  Check c;
  Rng rng(3);
  auto word = [&] {
    std::string s;
    for (std::size_t i = 0, n = rng.below(21); i < n; ++i) s += static_cast<char>('a' + rng.below(4));
    return s;
  };
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 1000; ++i) {
    auto a = word(), b = word();
    features::FeatureVector v;
    v.f8 = static_cast<int>(features::levenshtein(a, b));
    c.expect(static_cast<std::size_t>(v.f8) == dp_levenshtein(a, b), "pair '" + a + "','" + b + "'");
  }
  double elapsed = seconds_since(t0);
  c.expect(elapsed < 1.0, "took " + fmt(elapsed) + "s");
  if (c.out.pass) c.out.detail = "1000 pairs equal the DP oracle; " + fmt(elapsed) + "s";
  return c.out;
}

// ---- 4

Outcome quantile_buckets() {
  Check c;
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.below(500);
    bool distinct = trial % 2 == 0;
    std::vector<std::size_t> freq(n);
    for (std::size_t i = 0; i < n; ++i) freq[i] = distinct ? 3 * i + 1 : 1 + rng.below(8);
    rng.shuffle(std::span(freq));
    std::unordered_map<std::string, std::size_t> counts;
    for (std::size_t i = 0; i < n; ++i) counts["t" + std::to_string(i)] = freq[i];
    features::QuantileBuckets q(counts);

    std::vector<std::size_t> sizes(10, 0);
    std::size_t assigned = 0;
    for (const auto& [w, b] : q.all()) {
      c.expect(counts.count(w) == 1, "bucket for an unknown lemma");
      c.expect(b >= 0 && b < 10, "bucket out of range");
      if (b >= 0 && b < 10) ++sizes[static_cast<std::size_t>(b)];
      ++assigned;
    }
    c.expect(assigned == n, "not a partition in trial " + std::to_string(trial));
    if (distinct) {
      std::size_t used = std::min<std::size_t>(n, 10);
      auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.begin() + static_cast<long>(used));
      c.expect(*hi - *lo <= 1, "bucket sizes differ by more than one in trial " + std::to_string(trial));
    }
    std::size_t max_freq = *std::max_element(freq.begin(), freq.end());
    std::string top;
    for (const auto& [w, f] : counts) {
      if (f == max_freq && (top.empty() || w < top)) top = w;
    }
    c.expect(q.bucket(top) == 0, "max-frequency lemma not in bucket 0");
  }
  if (c.out.pass) c.out.detail = "200 maps: partition, balanced under distinct counts, top lemma in bucket 0";
  return c.out;
}

// ---- 5

Outcome tfidf_hand_corpus() {
  Check c;
  corpus::DomainCorpus dc;
  dc.articles = {{"A", "Rail signal signal.", 0, {}, ""}, {"B", "Rail track.", 0, {}, ""}};
  const auto& pipeline = nlp::Pipeline::shared();
  dc.build_index(pipeline);
  // by hand: idf(rail) = 1, idf(signal) = idf(track) = 1 + ln 1.5; rows l2-normalised
  const std::map<std::string, std::pair<double, double>> want = {
      {"rail", {0.45745720743279583, 0.5797386715376657}},
      {"signal", {0.47107781233161794, 0.9421556246632359}},
      {"track", {0.40740123733358447, 0.8148024746671689}}};
  std::vector<mlm::PredictionRecord> records;
  for (const auto& [lemma, _] : want) {
    mlm::PredictionRecord r;
    r.instance.doc_id = "hand";
    r.instance.masked_surface = "line";
    r.prediction = {lemma, 0.5};
    r.rank = 1;
    r.tag = "NN";
    r.lemma = lemma;
    records.push_back(r);
  }
  auto m = features::build_matrix(records, dc, nullptr, "hand");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& [mean, max] = want.at(records[i].lemma);
    c.expect(std::abs(m.rows[i].f12 - mean) < 1e-9, "F12 of " + records[i].lemma + " = " + fmt(m.rows[i].f12, 12));
    c.expect(std::abs(m.rows[i].f13 - max) < 1e-9, "F13 of " + records[i].lemma + " = " + fmt(m.rows[i].f13, 12));
  }
  for (std::size_t d = 0; d < dc.tfidf.document_count(); ++d) {
    c.expect(std::abs(dc.tfidf.norm(d) - 1.0) < 1e-9, "article norm " + fmt(dc.tfidf.norm(d), 12));
  }
  if (c.out.pass) c.out.detail = "F12/F13 within 1e-9 of hand values; article norms 1";
  return c.out;
}

// ---- 6

Outcome classifier_sanity() {
  Check c;
  auto data = reqcomp::testing::separable_2d(400, 6);
  std::string detail;
  for (auto a : {ml::Algorithm::kLR, ml::Algorithm::kRF}) {
    auto cv = ml::cross_validate(a, data, {}, std::nullopt, 10, 6);
    std::string name(ml::to_string(a));
    c.expect(cv.mean_accuracy >= 0.99, name + " CV accuracy " + fmt(cv.mean_accuracy));
    std::vector<int> in_test(data.size(), 0);
    for (std::size_t i = 0; i < data.size(); ++i) {
      int f = cv.fold_of[i];
      if (f >= 0 && f < 10) ++in_test[i];
    }
    std::size_t tested = 0;
    for (const auto& m : cv.folds) tested += m.counts.total();
    c.expect(cv.fold_of.size() == data.size() && tested == data.size() &&
                 std::all_of(in_test.begin(), in_test.end(), [](int k) { return k == 1; }),
             name + ": a row is not in exactly one test fold");
    detail += name + " " + fmt(cv.mean_accuracy) + " ";
  }
  if (c.out.pass) c.out.detail = detail + "(10-fold, n=400, every row tested once)";
  return c.out;
}

// ---- 7

Outcome csl_recall() {
  Check c;
  std::string detail;
  for (auto a : {ml::Algorithm::kSVM, ml::Algorithm::kLR}) {
    double plain = 0, weighted = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto train = reqcomp::testing::imbalanced_gaussians(30, 9, 100 + seed);
      auto test = reqcomp::testing::imbalanced_gaussians(100, 9, 900 + seed);
      auto recall = [&](const ml::FilterModel& m) {
        ml::ConfusionCounts cc;
        for (std::size_t i = 0; i < test.size(); ++i) cc.add(test.y[i], m.classify(test.x[i]));
        return ml::ClassificationMetrics::from(cc).recall;
      };
      plain += recall(ml::train(a, train, {}, std::nullopt, seed));
      weighted += recall(ml::train(a, train, {}, ml::CostMatrix{2, 1}, seed));
    }
    std::string name(ml::to_string(a));
    c.expect(weighted >= plain, name + " mean recall " + fmt(weighted / 20) + " < " + fmt(plain / 20));
    detail += (detail.empty() ? "" : ", ") + name + " " + fmt(plain / 20) + " -> " + fmt(weighted / 20);
  }
  if (c.out.pass) c.out.detail = "mean recall without -> with CostMatrix(2,1): " + detail;
  return c.out;
}

// ---- 8

double enumerated_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> all = a;
  all.insert(all.end(), b.begin(), b.end());
  std::size_t n = a.size(), t = all.size();
  std::vector<double> rank(t);
  for (std::size_t i = 0; i < t; ++i) {
    double below = 0, same = 0;
    for (double v : all) {
      below += v < all[i];
      same += v == all[i];
    }
    rank[i] = below + (same + 1) / 2;
  }
  double obs = 0;
  for (std::size_t i = 0; i < n; ++i) obs += rank[i];
  double mu = static_cast<double>(n) * static_cast<double>(t + 1) / 2;
  double extreme = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != n) continue;
    double w = 0;
    for (std::size_t i = 0; i < t; ++i) w += (mask >> i & 1u) ? rank[i] : 0;
    total += 1;
    extreme += std::abs(w - mu) >= std::abs(obs - mu) - 1e-9;
  }
  return extreme / total;
}

Outcome statistics() {
  Check c;
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 1 + rng.below(8);
    std::size_t m = 1 + rng.below(10 - n);
    std::vector<double> a(n), b(m);
    for (auto& v : a) v = static_cast<double>(rng.below(7));
    for (auto& v : b) v = static_cast<double>(rng.below(7));
    auto r = eval::wilcoxon_rank_sum(a, b);
    double want = enumerated_p(a, b);
    c.expect(r.exact && std::abs(r.p - want) < 1e-12,
             "case " + std::to_string(i) + ": p " + fmt(r.p, 6) + " vs " + fmt(want, 6));
  }
  std::vector<double> same{0.1, 0.4, 0.4, 0.9};
  c.expect(eval::vargha_delaney_a12(same, same) == 0.5, "A12 identical != 0.5");
  c.expect(eval::vargha_delaney_a12({5, 6, 7}, {1, 2, 3}) == 1.0, "A12 separated != 1.0");
  if (c.out.pass) c.out.detail = "100 exact p-values equal enumeration; A12 0.5 and 1.0";
  return c.out;
}

// ---- 9

std::string predictions_bytes(const std::vector<mlm::PredictionRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.instance.doc_id + "|" + std::to_string(r.instance.sentence_index) + "|" +
           std::to_string(r.instance.token_index) + "|" + r.instance.masked_surface + "|" + r.prediction.token + "|" +
           fmt(r.prediction.score, 17) + "|" + std::to_string(r.rank) + "|" + r.tag + "|" + r.lemma + "\n";
  }
  return out;
}

Outcome information_barrier() {
  Check c;
  const auto& pipeline = nlp::Pipeline::shared();
  auto store = std::make_shared<const mlm::FixtureStore>(mlm::FixtureStore::load(kData / "monitoring" / "fixture"));
  mlm::FixtureProvider provider(store);
  testing::StubMediaWiki wiki(read_file(kData / "mediawiki" / "monitoring.json"));
  corpus::MinerOptions mo;
  mo.api_url = wiki.api_url();
  mo.requests_per_second = 1000;
  corpus::MediaWikiClient miner(mo);
  auto vectors = embed::EmbeddingStore::parse("stability 1 0 0\nnetwork 0 1 0\nsecurity 0.1 0.9 0\ntraffic 0 0.8 0.2\n");
  eval::ApproachAssets assets{&pipeline, &provider, &lists(), &vectors, &miner};
  eval::ExperimentConfig config;
  std::string text = read_file(kData / "monitoring" / "full.txt");
  auto original = pipeline.annotate("full", text);

  Rng rng(9);
  int runs = 0;
  for (int rep = 0; rep < 5; ++rep) {
    auto clean = eval::run_once(config, assets, original, rep);
    std::string poisoned;
    for (const auto& s : original.sentences) {
      if (clean.split.disclosed.count(s.index)) {
        poisoned += s.text;
      } else {
        std::string junk = "Xq";
        for (std::size_t i = 0, n = 5 + rng.below(40); i < n; ++i) {
          junk += rng.below(6) ? static_cast<char>('a' + rng.below(26)) : ' ';
        }
        poisoned += junk + ".";
      }
      poisoned += "\n";
    }
    auto doc = pipeline.annotate("full", poisoned);
    c.expect(doc.sentences.size() == original.sentences.size(), "poisoning changed the sentence count");
    if (doc.sentences.size() != original.sentences.size()) break;
    auto dirty = eval::run_once(config, assets, doc, rep);
    c.expect(predictions_bytes(dirty.approach.pruned) == predictions_bytes(clean.approach.pruned),
             "prediction set changed in repetition " + std::to_string(rep));
    c.expect(features::to_csv(dirty.approach.matrix) == features::to_csv(clean.approach.matrix),
             "feature matrix changed in repetition " + std::to_string(rep));
    c.expect(dirty.y != clean.y, "poison did not reach the withheld half");
    ++runs;
  }
  if (c.out.pass) c.out.detail = std::to_string(runs) + " splits: predictions and matrix byte-identical after poisoning";
  return c.out;
}

// ---- 10

Outcome corpus_miner() {
  Check c;
  testing::StubMediaWiki wiki(read_file(kData / "mediawiki" / "rail.json"));
  auto cache = scratch("wiki");
  std::vector<corpus::Keyphrase> phrases{{"rail transport", "rail transport", 1}, {"interlocking", "interlocking", 1}};
  auto titles = [](const corpus::DomainCorpus& dc) {
    std::set<std::string> t;
    for (const auto& a : dc.articles) t.insert(a.title);
    return t;
  };
  auto run = [&](int depth, const fs::path& cache_dir, std::size_t* requests) {
    corpus::MinerOptions o;
    o.api_url = wiki.api_url();
    o.depth = depth;
    o.cache_dir = cache_dir;
    o.requests_per_second = 1000;
    corpus::MediaWikiClient client(o);
    auto dc = corpus::mine(phrases, client);
    if (requests) *requests = client.network_requests();
    return titles(dc);
  };
  const std::set<std::string> direct{"Rail Transport", "Interlocking"};
  std::set<std::string> one_level = direct;
  one_level.insert({"Train", "Railway track", "Railway signal"});
  c.expect(run(0, {}, nullptr) == direct, "depth 0 set differs");
  std::size_t cold = 0, warm = 0;
  c.expect(run(1, cache, &cold) == one_level, "depth 1 set differs");
  std::size_t served = wiki.requests();
  c.expect(run(1, cache, &warm) == one_level, "warm depth 1 set differs");
  c.expect(warm == 0 && wiki.requests() == served, "warm rerun made " + std::to_string(warm) + " requests");
  fs::remove_all(cache);
  if (c.out.pass) {
    c.out.detail = "depth 0: 2 direct articles; depth 1: +3 category articles; warm rerun 0 requests (cold " +
                   std::to_string(cold) + ")";
  }
  return c.out;
}

// ---- 11

Outcome real_provider() {
  const char* doc_path = std::getenv("REQCOMP_ACCEPT_DOC");
  const char* url = std::getenv("REQCOMP_ACCEPT_PROVIDER_URL");
  if (!doc_path || !url) {
    return {true, "skipped (non-gating): set REQCOMP_ACCEPT_DOC and REQCOMP_ACCEPT_PROVIDER_URL", true};
  }
  Check c;
  const auto& pipeline = nlp::Pipeline::shared();
  mlm::HttpProvider provider(url);
  std::optional<embed::EmbeddingStore> vectors;
  if (const char* e = std::getenv("REQCOMP_ACCEPT_EMBEDDINGS")) vectors = embed::EmbeddingStore::load(e);
  std::unique_ptr<corpus::MediaWikiClient> miner;
  if (const char* dir = std::getenv("REQCOMP_ACCEPT_CORPUS_DIR")) {
    corpus::MinerOptions o;
    o.cache_dir = dir;
    miner = std::make_unique<corpus::MediaWikiClient>(o);
  }
  std::optional<eval::SynonymLexicon> wordnet;
  if (const char* w = std::getenv("REQCOMP_ACCEPT_WORDNET")) wordnet = eval::SynonymLexicon::load_wordnet(w);
  eval::ApproachAssets assets{&pipeline, &provider, &lists(), vectors ? &*vectors : nullptr, miner.get()};

  auto doc = pipeline.annotate(fs::path(doc_path).stem().string(), read_file(doc_path));
  c.expect(doc.sentences.size() >= 60, "document has " + std::to_string(doc.sentences.size()) + " sentences");

  // strict filter trained on other splits of the same document
  eval::ExperimentConfig config;
  config.seed = 11;
  embed::TermMatcher matcher(assets.store, &pipeline.lemmatizer());
  features::FeatureMatrix rows;
  for (int rep = 1; rep <= 3; ++rep) {
    auto run = eval::run_once(config, assets, doc, rep);
    ml::label_matrix(run.approach.matrix, run.n, matcher);
    rows.append(run.approach.matrix);
  }
  auto strict = std::make_shared<const ml::FilterModel>(ml::train_preset(ml::Preset::kStrict, ml::from_matrix(rows)));
  config.filters = {{"strict", strict}};
  config.baselines = true;
  config.synonyms = wordnet ? &*wordnet : nullptr;
  auto run = eval::run_once(config, assets, doc, 0);
  std::map<std::string, eval::RunRecord> by;
  for (const auto& r : run.records) by[r.level] = r;

  // (a) the kept rows are a subset of the scored ones
  std::vector<bool> keep = strict->classify(run.approach.matrix);
  eval::TermSet pre = eval::prediction_terms(run.approach.pruned), post;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) post.insert(filter::record_lemma(run.approach.pruned[i]));
  }
  c.expect(std::includes(pre.begin(), pre.end(), post.begin(), post.end()), "(a) post-filter D not within pre-filter D");
  c.expect(by["strict"].accuracy.value >= by["none"].accuracy.value,
           "(b) strict accuracy " + fmt(by["strict"].accuracy.value) + " < " + fmt(by["none"].accuracy.value));
  for (const char* b : {"baseline1", "baseline2", "baseline3"}) {
    if (!by.count(b)) continue;
    c.expect(by["none"].coverage.value >= by[b].coverage.value,
             std::string("(c) coverage below ") + b + ": " + fmt(by["none"].coverage.value) + " < " +
                 fmt(by[b].coverage.value));
  }
  if (c.out.pass) {
    c.out.detail = "accuracy none " + fmt(by["none"].accuracy.value) + " strict " + fmt(by["strict"].accuracy.value) +
                   "; coverage none " + fmt(by["none"].coverage.value);
  }
  return c.out;
}

// ---- 12

Outcome evaluate_determinism() {
  Check c;
  testing::StubMediaWiki wiki(read_file(kData / "mediawiki" / "monitoring.json"));
  auto root = scratch("eval");
  app::RunConfig config;
  config.inputs = {kData / "monitoring" / "full.txt", kData / "monitoring" / "disclosed.txt"};
  config.fixture = kData / "monitoring" / "fixture";
  config.corpus_dir = root / "cache";
  config.wiki_api = wiki.api_url();
  config.depth = 1;
  config.repetitions = 3;
  config.seed = 12;
  config.baselines = true;
  config.wordnet = kData / "wordnet";

  // a lenient filter trained on the same fixture
  config.preset = "lenient";
  config.repetitions = 6;
  config.out = root / "lenient.json";
  app::cmd_train(config);
  config.preset = "none";
  config.repetitions = 3;
  config.models = {(root / "lenient.json").string()};

  std::vector<std::map<std::string, std::string>> outputs;
  std::vector<std::size_t> served;
  for (int run = 0; run < 3; ++run) {
    config.out = root / ("run" + std::to_string(run));
    auto report = app::cmd_evaluate(config);
    c.expect(report.errors.empty(), "run had errors");
    std::map<std::string, std::string> files;
    for (const char* f : {"report.json", "records.csv", "boxplot.json"}) files[f] = read_file(config.out / f);
    outputs.push_back(files);
    served.push_back(wiki.requests());
  }
  // run 0 warms the cache; runs 1 and 2 are warm
  c.expect(served[0] > 0, "corpus never fetched");
  c.expect(served[2] == served[0], "warm runs reached the network");
  c.expect(outputs[1] == outputs[2], "warm reruns differ");
  c.expect(outputs[0] == outputs[1], "cold and warm runs differ");
  auto report = nlohmann::json::parse(outputs[2]["report.json"]);
  std::size_t records = report["records"].size();
  c.expect(records == 2 * 3 * 5, "expected 30 records, got " + std::to_string(records));
  fs::remove_all(root);
  if (c.out.pass) {
    c.out.detail = "3 runs (" + std::to_string(records) + " records, " + std::to_string(served[0]) +
                   " cold requests): report.json, records.csv, boxplot.json byte-identical";
  }
  return c.out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    bool gating;
  };
  const std::vector<Criterion> criteria = {
      {1, "golden worked example", golden_example, true},
      {2, "metric oracle equivalence", metric_oracle, true},
      {3, "Levenshtein equivalence", levenshtein_oracle, true},
      {4, "quantile bucketing", quantile_buckets, true},
      {5, "TF-IDF hand corpus", tfidf_hand_corpus, true},
      {6, "classifier sanity", classifier_sanity, true},
      {7, "cost-sensitive recall", csl_recall, true},
      {8, "rank-sum and A12", statistics, true},
      {9, "information barrier", information_barrier, true},
      {10, "corpus miner depth and cache", corpus_miner, true},
      {11, "real-provider properties", real_provider, false},
      {12, "evaluate determinism", evaluate_determinism, true},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const char* status = o.skipped ? "SKIP" : o.pass ? "PASS" : "FAIL";
    std::cout << status << " " << cr.id << ". " << cr.name << ": " << o.detail << std::endl;
    if (!o.pass && cr.gating) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " gating criteria failed" : "all gating criteria passed") << "\n";
  return failed ? 1 : 0;
}
