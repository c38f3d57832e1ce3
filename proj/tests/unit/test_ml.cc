#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "doctest.h"
#include "ml_data.h"
#include "reqcomp/ml/model.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"

using namespace reqcomp;
using namespace reqcomp::ml;
using reqcomp::testing::imbalanced_gaussians;
using reqcomp::testing::separable_2d;

namespace {

const Algorithm kAll[] = {Algorithm::kLR, Algorithm::kDT, Algorithm::kRF, Algorithm::kSVM, Algorithm::kNN};

features::FeatureMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const auto& tags = features::schema()[1].values;
  features::FeatureMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    features::FeatureVector v;
    v.f1 = rng.below(2) ? mask::MaskedPos::kNoun : mask::MaskedPos::kVerb;
    v.f2 = tags[rng.below(tags.size())];
    v.f3 = rng.below(2);
    v.f4 = 2 + static_cast<int>(rng.below(12));
    v.f5 = 2 + static_cast<int>(rng.below(12));
    v.f6 = static_cast<double>(std::min(v.f4, v.f5)) / std::max(v.f4, v.f5);
    v.f7 = rng.uniform();
    v.f8 = static_cast<int>(rng.below(12));
    if (rng.below(4)) v.f9 = rng.uniform(-1, 1);
    v.f10 = static_cast<int>(rng.below(10));
    v.f11 = static_cast<int>(rng.below(10));
    v.f12 = rng.uniform(0, 0.2);
    v.f13 = v.f12 + rng.uniform(0, 0.3);
    // relevance leans on the score and the corpus bucket
    v.label = v.f7 + 0.05 * (9 - v.f11) + 0.2 * rng.uniform() > 0.8;
    m.keys.push_back({"d", i, 0, "w", "p" + std::to_string(i), "p", 1});
    m.rows.push_back(v);
  }
  return m;
}

double recall_on(const FilterModel& model, const Dataset& test) {
  ConfusionCounts c;
  for (std::size_t i = 0; i < test.size(); ++i) c.add(test.y[i], model.classify(test.x[i]));
  return ClassificationMetrics::from(c).recall;
}

// H(Y) - H(Y|C) written out directly for small integer tables.
double oracle_gain(const std::vector<int>& cat, const std::vector<int>& y) {
  auto h = [](double p, double q) {
    double t = p + q, r = 0;
    if (p > 0) r -= p / t * std::log2(p / t);
    if (q > 0) r -= q / t * std::log2(q / t);
    return r;
  };
  double pos = 0, n = static_cast<double>(y.size());
  std::map<int, std::pair<double, double>> by;
  for (std::size_t i = 0; i < y.size(); ++i) {
    pos += y[i];
    (y[i] ? by[cat[i]].first : by[cat[i]].second) += 1;
  }
  double cond = 0;
  for (auto& [_, pq] : by) cond += (pq.first + pq.second) / n * h(pq.first, pq.second);
  return h(pos, n - pos) - cond;
}

}  // namespace

TEST_CASE("metrics with empty denominators") {
  ConfusionCounts c;
  c.add(0, 0);
  c.add(0, 0);
  auto m = ClassificationMetrics::from(c);
  CHECK(m.accuracy == 1.0);
  CHECK(m.precision == 0.0);
  CHECK(m.precision_undefined);
  CHECK(m.recall == 0.0);
  CHECK(m.recall_undefined);
  auto e = ClassificationMetrics::from(ConfusionCounts{});
  CHECK(e.accuracy_undefined);
  c.add(1, 1);
  c.add(1, 0);
  c.add(0, 1);
  m = ClassificationMetrics::from(c);
  CHECK(m.accuracy == doctest::Approx(3.0 / 5));
  CHECK(m.precision == doctest::Approx(0.5));
  CHECK(m.recall == doctest::Approx(0.5));
}

TEST_CASE("stratified folds partition the rows") {
  auto d = imbalanced_gaussians(40, 4, 3);
  auto f = stratified_folds(d.y, 10, 7);
  REQUIRE(f.size() == d.size());
  std::map<int, std::pair<int, int>> per;
  for (std::size_t i = 0; i < f.size(); ++i) {
    REQUIRE(f[i] >= 0);
    REQUIRE(f[i] < 10);
    (d.y[i] ? per[f[i]].first : per[f[i]].second)++;
  }
  CHECK(per.size() == 10);
  for (auto& [_, pn] : per) {
    CHECK(pn.first == 4);
    CHECK(pn.second == 16);
  }
  CHECK(stratified_folds(d.y, 10, 7) == f);
  CHECK_THROWS_AS(stratified_folds(d.y, 1, 7), InvalidArgument);
  CHECK_THROWS_AS(stratified_folds(d.y, 41, 7), InvalidArgument);
}

TEST_CASE("separable data: LR and RF cross-validate near perfectly") {
  auto d = separable_2d(400, 11);
  for (auto a : {Algorithm::kLR, Algorithm::kRF}) {
    auto cv = cross_validate(a, d, {}, std::nullopt, 10, 5);
    INFO(to_string(a));
    CHECK(cv.mean_accuracy >= 0.99);
    CHECK(cv.pooled.counts.total() == 400);
    std::vector<int> seen(10, 0);
    for (int f : cv.fold_of) seen.at(static_cast<std::size_t>(f))++;
    for (int s : seen) CHECK(s == 40);
  }
}

TEST_CASE("every learner beats chance on separable data") {
  auto train_set = separable_2d(300, 1);
  auto test_set = separable_2d(300, 2);
  for (auto a : kAll) {
    auto m = train(a, train_set, {}, std::nullopt, 3);
    std::size_t right = 0;
    for (std::size_t i = 0; i < test_set.size(); ++i) right += m.classify(test_set.x[i]) == test_set.y[i];
    INFO(to_string(a));
    CHECK(right >= 270);
  }
}

TEST_CASE("cost weighting does not lower recall on 9:1 data") {
  for (auto a : {Algorithm::kSVM, Algorithm::kLR}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto tr = imbalanced_gaussians(30, 9, 100 + seed);
      auto te = imbalanced_gaussians(100, 9, 900 + seed);
      double plain = recall_on(train(a, tr, {}, std::nullopt, seed), te);
      double weighted = recall_on(train(a, tr, {}, CostMatrix{2, 1}, seed), te);
      INFO(to_string(a) << " seed " << seed << " plain " << plain << " weighted " << weighted);
      CHECK(weighted >= plain);
    }
  }
}

TEST_CASE("training is deterministic per seed") {
  auto d = imbalanced_gaussians(20, 3, 5);
  for (auto a : kAll) {
    auto m1 = train(a, d, {}, std::nullopt, 9);
    auto m2 = train(a, d, {}, std::nullopt, 9);
    CHECK(model_to_json(m1) == model_to_json(m2));
  }
}

TEST_CASE("constant features give the majority class") {
  Dataset d;
  d.feature_names = {"c"};
  for (int i = 0; i < 30; ++i) {
    d.x.push_back({1.0});
    d.y.push_back(i < 21 ? kNonRelevant : kRelevant);
  }
  for (auto a : kAll) {
    auto m = train(a, d, {}, std::nullopt, 1);
    INFO(to_string(a));
    CHECK(m.classify(std::vector<double>{1.0}) == kNonRelevant);
  }
}

TEST_CASE("training rejects degenerate input") {
  Dataset d;
  d.feature_names = {"x"};
  CHECK_THROWS_AS(train(Algorithm::kLR, d), InvalidArgument);
  d.x = {{1}, {2}};
  d.y = {1, 1};
  CHECK_THROWS_AS(train(Algorithm::kLR, d), InvalidArgument);
  d.y = {1, 0};
  d.x[1] = {std::nan("")};
  CHECK_THROWS_AS(train(Algorithm::kLR, d), InvalidArgument);
  CHECK_THROWS_AS(make_classifier(Algorithm::kRF, {{"tress", 10}}), ConfigError);
  CHECK_THROWS_AS(algorithm_from_string("knn"), ConfigError);
}

TEST_CASE("undersampling") {
  std::vector<int> y;
  for (int i = 0; i < 100; ++i) y.push_back(i % 10 == 0);
  auto idx = undersample_indices(y, 1.0, 4);
  CHECK(idx.size() == 20);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  std::size_t pos = 0;
  for (auto i : idx) pos += y[i];
  CHECK(pos == 10);
  CHECK(undersample_indices(y, 1.0, 4) == idx);
  CHECK(undersample_indices(y, 1.0, 5) != idx);
  CHECK(undersample_indices(y, 2.5, 4).size() == 35);
  CHECK(undersample_indices(y, 50, 4).size() == 100);
  CHECK_THROWS_AS(undersample_indices(std::vector<int>(5, 0), 1.0, 4), InvalidArgument);
  CHECK_THROWS_AS(undersample_indices(y, 0, 4), InvalidArgument);

  auto w = instance_weights({1, 0, 1}, CostMatrix{2, 1});
  CHECK(w == std::vector<double>{2, 1, 2});
  CHECK(instance_weights({1, 0}, std::nullopt) == std::vector<double>{1, 1});
}

TEST_CASE("information gain on a hand table") {
  std::vector<int> cat{0, 0, 0, 0, 1, 1, 1, 1};
  std::vector<int> y{1, 1, 1, 0, 0, 0, 0, 1};
  // 1 - 0.8112781244591328
  CHECK(information_gain(cat, y) == doctest::Approx(0.18872187554086717).epsilon(1e-12));
  CHECK(information_gain(cat, cat) == doctest::Approx(1.0));
  CHECK(information_gain(std::vector<int>(8, 3), y) == doctest::Approx(0.0));
  CHECK(information_gain({}, {}) == 0.0);

  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng.below(40);
    std::vector<int> c(n), l(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = static_cast<int>(rng.below(5));
      l[i] = static_cast<int>(rng.below(2));
    }
    double g = information_gain(c, l);
    REQUIRE(g == doctest::Approx(oracle_gain(c, l)).epsilon(1e-12));
    REQUIRE(g >= 0);
    REQUIRE(g <= 1.0 + 1e-12);
  }
}

TEST_CASE("equal-frequency bins") {
  std::vector<double> v;
  for (int i = 20; i >= 1; --i) v.push_back(i);
  auto b = equal_frequency_bins(v);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(b[i] == (static_cast<int>(v[i]) - 1) / 2);

  auto tied = equal_frequency_bins({5, 5, 5, 5, 5, 1, 9});
  CHECK(tied[0] == tied[4]);
  CHECK(tied[5] == 0);
  CHECK(tied[6] > tied[0]);

  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(1 + rng.below(60));
    for (auto& e : x) e = static_cast<double>(rng.below(8));
    auto bins = equal_frequency_bins(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      REQUIRE(bins[i] >= 0);
      REQUIRE(bins[i] < 10);
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[i] < x[j]) REQUIRE(bins[i] <= bins[j]);
        if (x[i] == x[j]) REQUIRE(bins[i] == bins[j]);
      }
    }
  }
}

TEST_CASE("info gain ranking over a labeled matrix") {
  auto m = random_matrix(300, 8);
  auto r = info_gain_ranking(m);
  REQUIRE(r.size() == 13);
  std::set<std::string> names;
  for (std::size_t i = 0; i < r.size(); ++i) {
    names.insert(r[i].feature);
    if (i) CHECK(r[i - 1].gain >= r[i].gain);
  }
  CHECK(names.size() == 13);
  CHECK(r[0].feature == "f7");
  m.rows[3].label.reset();
  CHECK_THROWS_AS(info_gain_ranking(m), InvalidArgument);
}

TEST_CASE("model persistence round trip") {
  auto m = random_matrix(100, 31);
  auto data = from_matrix(m);
  auto dir = std::filesystem::temp_directory_path() / "reqcomp_test_ml";
  std::filesystem::remove_all(dir);
  for (auto a : kAll) {
    auto model = train(a, data, {}, CostMatrix{2, 1}, 17);
    auto path = dir / (std::string(to_string(a)) + ".json");
    save_model(model, path);
    auto back = load_model(path);
    INFO(to_string(a));
    CHECK(back.config.algorithm == a);
    CHECK(back.config.cost == model.config.cost);
    CHECK(back.fingerprint == features::schema_fingerprint());
    CHECK(back.train_rows == 100);
    CHECK(back.classify(m) == model.classify(m));
    for (std::size_t i = 0; i < data.size(); ++i)
      REQUIRE(back.classifier->score(data.x[i]) == model.classifier->score(data.x[i]));
  }

  auto j = model_to_json(train(Algorithm::kLR, data));
  j["version"] = 99;
  CHECK_THROWS_AS(model_from_json(j), ParseError);
  write_file(dir / "broken.json", "{not json");
  CHECK_THROWS_AS(load_model(dir / "broken.json"), ParseError);

  auto other = m;
  other.fingerprint = "0000000000000000";
  CHECK_THROWS_AS(train(Algorithm::kLR, data).classify(other), SchemaMismatch);
  CHECK_THROWS_AS(train(Algorithm::kLR, data).classify(std::vector<double>{1, 2}), SchemaMismatch);
  std::filesystem::remove_all(dir);
}

TEST_CASE("tuning") {
  auto d = imbalanced_gaussians(20, 3, 12);
  SearchSpace space{{"l2", {1e-4, 1e-2, 1, 100}}};
  auto one = tune(Algorithm::kLR, d, space, 1, std::nullopt, 3, 5);
  REQUIRE(one.trials.size() == 1);
  CHECK(one.best == one.trials[0].first);

  auto many = tune(Algorithm::kLR, d, space, 12, std::nullopt, 3, 5);
  CHECK(many.trials.size() <= 4);
  // the first draw is shared, and more budget never finds a worse best
  CHECK(many.trials[0] == one.trials[0]);
  CHECK(many.best_accuracy >= one.best_accuracy);
  double best = 0;
  for (auto& [p, acc] : many.trials) best = std::max(best, acc);
  CHECK(many.best_accuracy == best);
  for (auto& [p, acc] : many.trials) {
    if (acc == best) {
      CHECK(p == many.best);  // first of the ties
      break;
    }
  }
  CHECK_THROWS_AS(tune(Algorithm::kLR, d, space, 0), InvalidArgument);
  CHECK_THROWS_AS(tune(Algorithm::kLR, d, {{"l2", {}}}, 2), InvalidArgument);
}

TEST_CASE("presets") {
  CHECK(preset_from_string("lenient") == Preset::kLenient);
  CHECK_THROWS_AS(preset_from_string("loose"), ConfigError);
  auto d = imbalanced_gaussians(20, 5, 2);
  auto strict = train_preset(Preset::kStrict, d, {.seed = 1});
  CHECK(strict.config.algorithm == Algorithm::kRF);
  CHECK(!strict.config.undersample_ratio);
  CHECK(strict.train_rows == d.size());
  auto moderate = train_preset(Preset::kModerate, d, {.seed = 1});
  CHECK(moderate.config.algorithm == Algorithm::kRF);
  CHECK(moderate.train_rows == 40);
  auto lenient = train_preset(Preset::kLenient, d, {.seed = 1});
  CHECK(lenient.config.algorithm == Algorithm::kSVM);
  CHECK(lenient.config.cost == CostMatrix{2, 1});
  CHECK(lenient.config.preset == "lenient");
  CHECK_THROWS_AS(train_preset(Preset::kNone, d), InvalidArgument);
}
