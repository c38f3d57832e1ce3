#include <cmath>
#include <filesystem>
#include <map>

#include "doctest.h"
#include "reqcomp/features/features.h"
#include "reqcomp/features/matrix.h"
#include "reqcomp/nlp/pipeline.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/rng.h"

using namespace reqcomp;
using namespace reqcomp::features;

namespace {

// Full-table Wagner-Fischer over bytes; test strings are ASCII.
std::size_t oracle_levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = d[i - 1][j - 1] + (a[i - 1] != b[j - 1]);
      d[i][j] = std::min(sub, std::min(d[i - 1][j], d[i][j - 1]) + 1);
    }
  }
  return d[a.size()][b.size()];
}

std::string random_word(Rng& rng, std::size_t max_len, std::string_view alphabet = "abcde") {
  std::string s;
  std::size_t n = rng.below(max_len + 1);
  for (std::size_t i = 0; i < n; ++i) s += alphabet[rng.below(alphabet.size())];
  return s;
}

mlm::PredictionRecord record(const std::string& masked, mask::MaskedPos pos, const std::string& pred, double score,
                             const std::string& tag, const std::string& lemma) {
  mlm::PredictionRecord r;
  r.instance.doc_id = "d";
  r.instance.masked_surface = masked;
  r.instance.masked_pos = pos;
  r.prediction = {pred, score};
  r.tag = tag;
  r.lemma = lemma;
  r.rank = 1;
  return r;
}

}  // namespace

TEST_CASE("levenshtein examples") {
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("flaw", "flaw") == 0);
  CHECK(levenshtein("", "abc") == 3);
  CHECK(levenshtein("abc", "") == 3);
  CHECK(levenshtein("availability", "stability") == 5);
  CHECK(levenshtein("café", "cafe") == 1);  // one code point, two bytes
}

TEST_CASE("levenshtein matches DP oracle and is a metric") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_word(rng, 20), b = random_word(rng, 20), c = random_word(rng, 20);
    std::size_t ab = levenshtein(a, b);
    CHECK(ab == oracle_levenshtein(a, b));
    CHECK(ab == levenshtein(b, a));
    CHECK((ab == 0) == (a == b));
    CHECK(levenshtein(a, c) <= ab + levenshtein(b, c));
  }
}

TEST_CASE("length features") {
  FeatureVector v;
  length_features("availability", "stability", v);
  CHECK(v.f4 == 12);
  CHECK(v.f5 == 9);
  CHECK(v.f6 == 0.75);
  length_features("go", "understand", v);
  CHECK(v.f6 == doctest::Approx(0.2));
  length_features("same", "same", v);
  CHECK(v.f6 == 1.0);
  CHECK(char_count("naïve") == 5);
}

TEST_CASE("quantile bucket examples") {
  std::unordered_map<std::string, std::size_t> ten;
  for (int i = 0; i < 10; ++i) ten[std::string(1, static_cast<char>('a' + i))] = 100 - i;
  QuantileBuckets q(ten);
  for (int i = 0; i < 10; ++i) CHECK(q.bucket(std::string(1, static_cast<char>('a' + i))) == i);
  CHECK(q.bucket("missing") == 9);
  CHECK(QuantileBuckets({{"only", 3}}).bucket("only") == 0);
  // ties go lexicographically
  QuantileBuckets t({{"b", 1}, {"a", 1}});
  CHECK(t.bucket("a") == 0);
  CHECK(t.bucket("b") == 5);
}

TEST_CASE("quantile buckets partition and balance") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.below(300);
    bool distinct = rng.below(2);
    std::unordered_map<std::string, std::size_t> counts;
    std::vector<std::size_t> freqs(n);
    for (std::size_t i = 0; i < n; ++i) freqs[i] = distinct ? i + 1 : 1 + rng.below(5);
    rng.shuffle(std::span(freqs));
    for (std::size_t i = 0; i < n; ++i) counts["w" + std::to_string(i)] = freqs[i];
    QuantileBuckets q(counts);
    CHECK(q.size() == n);
    std::map<int, std::size_t> sizes;
    std::string top;
    std::size_t top_count = 0;
    for (const auto& [w, c] : counts) {
      int b = q.bucket(w);
      CHECK(b >= 0);
      CHECK(b <= 9);
      ++sizes[b];
      if (c > top_count || (c == top_count && w < top)) {
        top = w;
        top_count = c;
      }
    }
    CHECK(q.bucket(top) == 0);
    std::size_t total = 0;
    for (const auto& [b, s] : sizes) total += s;
    CHECK(total == n);
    if (distinct && n >= 10) {
      std::size_t lo = n, hi = 0;
      for (int b = 0; b < 10; ++b) {
        lo = std::min(lo, sizes[b]);
        hi = std::max(hi, sizes[b]);
      }
      CHECK(hi - lo <= 1);
    }
    // more frequent never lands in a later bucket
    for (const auto& [w1, c1] : counts) {
      if (rng.below(10)) continue;
      for (const auto& [w2, c2] : counts) {
        if (c1 > c2) CHECK(q.bucket(w1) <= q.bucket(w2));
      }
    }
  }
}

TEST_CASE("pos features") {
  FeatureVector v;
  pos_features(record("availability", mask::MaskedPos::kNoun, "stability", 0.1, "NN", "stability"), v);
  CHECK(v.f1 == mask::MaskedPos::kNoun);
  CHECK(v.f2 == "NN");
  CHECK(v.f3);
  pos_features(record("run", mask::MaskedPos::kVerb, "fast", 0.1, "JJ", "fast"), v);
  CHECK(!v.f3);
  pos_features(record("run", mask::MaskedPos::kVerb, "runs", 0.1, "VBZ", "run"), v);
  CHECK(v.f3);
}

TEST_CASE("pos features through the pipeline") {
  const auto& p = nlp::Pipeline::shared();
  auto doc = p.annotate("fig", "The system shall ensure availability of the network.");
  auto inst = mask::generate_masked_instances(doc);
  auto it = std::find_if(inst.begin(), inst.end(), [](const auto& i) { return i.masked_surface == "availability"; });
  REQUIRE(it != inst.end());
  std::vector<mlm::PredictionRecord> recs(1);
  recs[0].instance = *it;
  recs[0].prediction = {"stability", 0.2};
  recs[0].rank = 1;
  mlm::annotate_predictions(recs, p);
  FeatureVector v;
  pos_features(recs[0], v);
  CHECK(v.f1 == mask::MaskedPos::kNoun);
  CHECK(v.f2 == "NN");
  CHECK(v.f3);
}

TEST_CASE("build matrix") {
  corpus::DomainCorpus c;
  c.articles = {{"A", "a b a", 0, {}, ""}, {"B", "a c", 0, {}, ""}};
  c.term_stats = {{"a", 3}, {"b", 1}, {"c", 1}};
  c.tfidf = corpus::TfidfIndex::build({{"a", "b", "a"}, {"a", "c"}});
  auto store = embed::EmbeddingStore::parse("availability 1 0\nstability 0.6 0.8\n");

  std::vector<mlm::PredictionRecord> recs{
      record("availability", mask::MaskedPos::kNoun, "stability", 0.3, "NN", "stability"),
      record("availability", mask::MaskedPos::kNoun, "a", 0.2, "DT", "a"),
      record("availability", mask::MaskedPos::kNoun, "stability", 0.1, "NN", "stability"),
      record("availability", mask::MaskedPos::kNoun, "b", 0.05, "NN", "b"),
  };
  auto m = build_matrix(recs, c, &store, "d", 9);
  REQUIRE(m.size() == 4);
  CHECK(m.warnings.empty());
  CHECK(m.rows[0].f9 == doctest::Approx(0.6));
  CHECK(!m.rows[1].f9);
  CHECK(m.rows[0].f10 == m.rows[2].f10);  // duplicate predictions share a bucket
  CHECK(m.rows[0].f10 == 0);
  CHECK(m.rows[1].f11 == 0);
  CHECK(m.rows[0].f11 == 9);  // not in the corpus
  // F12/F13 from the hand corpus
  CHECK(std::abs(m.rows[1].f12 - (0.8181802073667197 + 0.5797386715376657) / 2) < 1e-9);
  CHECK(std::abs(m.rows[1].f13 - 0.8181802073667197) < 1e-9);
  CHECK(std::abs(m.rows[3].f12 - 0.5749618667993135 / 2) < 1e-9);
  CHECK(std::abs(m.rows[3].f13 - 0.5749618667993135) < 1e-9);
  CHECK(m.rows[0].f12 == 0.0);
  CHECK(m.rows[0].f13 == 0.0);
  for (const auto& r : m.rows) {
    CHECK(r.f12 <= r.f13);
    CHECK(r.f6 == std::min(r.f4, r.f5) / static_cast<double>(std::max(r.f4, r.f5)));
  }
  CHECK(m.keys[1].prediction == "a");

  auto empty = build_matrix({}, c, &store);
  CHECK(empty.empty());
  auto no_corpus = build_matrix(recs, corpus::DomainCorpus{}, nullptr);
  CHECK(no_corpus.warnings == std::vector<std::string>{"empty_corpus"});
  CHECK(no_corpus.rows[0].f12 == 0.0);
  CHECK(!no_corpus.rows[0].f9);
  CHECK(no_corpus.rows[0].f11 == 9);

  corpus::DomainCorpus one;
  one.tfidf = corpus::TfidfIndex::build({{"stability", "x"}});
  auto single = build_matrix(recs, one, nullptr);
  CHECK(single.rows[0].f12 == single.rows[0].f13);
}

TEST_CASE("csv round trip and schema") {
  Rng rng(3);
  FeatureMatrix m;
  m.doc_id = "doc,1";
  m.seed = 17;
  for (int i = 0; i < 100; ++i) {
    FeatureVector v;
    v.f1 = rng.below(2) ? mask::MaskedPos::kNoun : mask::MaskedPos::kVerb;
    v.f2 = nlp::tag_set()[rng.below(nlp::tag_set().size())];
    v.f3 = rng.below(2);
    v.f4 = 1 + static_cast<int>(rng.below(15));
    v.f5 = 1 + static_cast<int>(rng.below(15));
    v.f6 = length_ratio(v.f4, v.f5);
    v.f7 = rng.uniform();
    v.f8 = static_cast<int>(rng.below(15));
    if (rng.below(3)) v.f9 = rng.uniform(-1, 1);
    v.f10 = static_cast<int>(rng.below(10));
    v.f11 = static_cast<int>(rng.below(10));
    v.f12 = rng.uniform() / 3;
    v.f13 = v.f12 * 2;
    if (rng.below(2)) v.label = rng.below(2) == 1;
    m.rows.push_back(v);
    m.keys.push_back({"d\"q", static_cast<std::size_t>(i), 2, "word, comma", "pred\nline", "lem", 3});
  }
  auto back = from_csv(to_csv(m));
  CHECK(back.rows == m.rows);
  CHECK(back.keys == m.keys);
  CHECK(to_csv(back) == to_csv(m));

  auto dir = std::filesystem::temp_directory_path() / ("reqcomp_matrix_" + std::to_string(::getpid()));
  save_matrix(m, dir / "m.csv");
  auto loaded = load_matrix(dir / "m.csv");
  CHECK(loaded.rows == m.rows);
  CHECK(loaded.doc_id == "doc,1");
  CHECK(loaded.seed == 17);
  auto side = nlohmann::json::parse(read_file(dir / "m.schema.json"));
  CHECK(side["columns"].size() == 13);
  CHECK(side["columns"][0]["kind"] == "nominal");
  CHECK(side["columns"][9]["kind"] == "ordinal");
  side["fingerprint"] = "0000";
  write_file(dir / "m.schema.json", side.dump());
  CHECK_THROWS_AS(load_matrix(dir / "m.csv"), SchemaMismatch);
  std::filesystem::remove_all(dir);

  CHECK_THROWS_AS(from_csv("a,b\n1,2\n"), SchemaMismatch);
  std::string bad = to_csv(m);
  bad.insert(bad.find('\n') + 1, "x,");
  CHECK_THROWS_AS(from_csv(bad), ParseError);
}

TEST_CASE("encoding") {
  FeatureVector v;
  v.f2 = "NN";
  auto x = encode(v);
  CHECK(x.size() == encoded_names().size());
  auto oov = std::find(encoded_names().begin(), encoded_names().end(), "f9_oov") - encoded_names().begin();
  CHECK(x[oov] == 1.0);
  CHECK(x[oov - 1] == 0.0);
  v.f9 = -0.5;
  x = encode(v);
  CHECK(x[oov] == 0.0);
  CHECK(x[oov - 1] == -0.5);
  CHECK(schema_fingerprint().size() == 16);
}
