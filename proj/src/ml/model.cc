#include "reqcomp/ml/model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/rng.h"

namespace reqcomp::ml {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "reqcomp-filter-model";
constexpr int kVersion = 1;

void check_trainable(const Dataset& data) {
  data.validate();
  if (data.size() == 0) throw InvalidArgument("cannot train on an empty dataset");
  std::size_t pos = data.count(kRelevant);
  if (pos == 0 || pos == data.size()) throw InvalidArgument("training data holds a single class");
}

}  // namespace

int FilterModel::classify(const std::vector<double>& encoded) const {
  if (encoded.size() != feature_names.size())
    throw SchemaMismatch("row has " + std::to_string(encoded.size()) + " columns, model expects " +
                         std::to_string(feature_names.size()));
  return classifier->predict(encoded);
}

bool FilterModel::classify(const features::FeatureVector& v) const {
  if (fingerprint != features::schema_fingerprint())
    throw SchemaMismatch("model schema " + fingerprint + " differs from feature schema " + features::schema_fingerprint());
  return classify(features::encode(v)) == kRelevant;
}

std::vector<bool> FilterModel::classify(const features::FeatureMatrix& m) const {
  if (m.fingerprint != fingerprint)
    throw SchemaMismatch("matrix schema " + m.fingerprint + " differs from model schema " + fingerprint);
  std::vector<bool> out;
  out.reserve(m.rows.size());
  for (const auto& r : m.rows) out.push_back(classify(features::encode(r)) == kRelevant);
  return out;
}

FilterModel train(Algorithm algorithm, const Dataset& data, const Params& params,
                  const std::optional<CostMatrix>& cost, std::uint64_t seed) {
  check_trainable(data);
  auto clf = make_classifier(algorithm, params);
  clf->fit(data.x, data.y, instance_weights(data.y, cost), seed);
  FilterModel m;
  m.config.algorithm = algorithm;
  m.config.params = default_params(algorithm);
  for (const auto& [k, v] : params) m.config.params[k] = v;
  m.config.cost = cost;
  m.config.seed = seed;
  m.fingerprint = data.fingerprint;
  m.feature_names = data.feature_names;
  m.train_rows = data.size();
  m.train_relevant = data.count(kRelevant);
  m.classifier = std::move(clf);
  return m;
}

json model_to_json(const FilterModel& model) {
  json j{{"format", kFormat},
         {"version", kVersion},
         {"algorithm", to_string(model.config.algorithm)},
         {"params", model.config.params},
         {"seed", model.config.seed},
         {"preset", model.config.preset},
         {"fingerprint", model.fingerprint},
         {"feature_names", model.feature_names},
         {"training", {{"rows", model.train_rows}, {"relevant", model.train_relevant}}},
         {"model", model.classifier->to_json()}};
  j["cost"] = model.config.cost ? json{{"cost_fn", model.config.cost->cost_fn}, {"cost_fp", model.config.cost->cost_fp}}
                                : json(nullptr);
  j["undersample_ratio"] = model.config.undersample_ratio ? json(*model.config.undersample_ratio) : json(nullptr);
  return j;
}

FilterModel model_from_json(const json& j, const std::string& source) {
  try {
    if (j.at("format").get<std::string>() != kFormat) throw ParseError("not a filter model", source);
    int version = j.at("version").get<int>();
    if (version != kVersion)
      throw ParseError("unsupported model version " + std::to_string(version) + " (expected " +
                           std::to_string(kVersion) + ")",
                       source);
    FilterModel m;
    m.config.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    m.config.params = j.at("params").get<Params>();
    m.config.seed = j.at("seed").get<std::uint64_t>();
    m.config.preset = j.value("preset", "");
    if (!j.at("cost").is_null()) m.config.cost = CostMatrix{j["cost"].at("cost_fn"), j["cost"].at("cost_fp")};
    if (!j.at("undersample_ratio").is_null()) m.config.undersample_ratio = j["undersample_ratio"].get<double>();
    m.fingerprint = j.at("fingerprint").get<std::string>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.train_rows = j.at("training").at("rows").get<std::size_t>();
    m.train_relevant = j.at("training").at("relevant").get<std::size_t>();
    auto clf = make_classifier(m.config.algorithm, m.config.params);
    clf->from_json(j.at("model"));
    m.classifier = std::move(clf);
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model: ") + e.what(), source);
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), source);
  }
}

void save_model(const FilterModel& model, const std::filesystem::path& path) {
  write_file(path, model_to_json(model).dump() + "\n");
}

FilterModel load_model(const std::filesystem::path& path) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw ParseError("model file is not valid JSON", path.string());
  return model_from_json(j, path.string());
}

// ---- cross-validation and tuning

std::vector<int> stratified_folds(const std::vector<int>& y, int folds, std::uint64_t seed) {
  if (folds < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] == kRelevant ? pos : neg).push_back(i);
  std::size_t minority = std::min(pos.size(), neg.size());
  if (static_cast<std::size_t>(folds) > minority)
    throw InvalidArgument(std::to_string(folds) + " folds exceed the minority class size " + std::to_string(minority));
  Rng rng(derive_seed(seed, "folds"));
  std::vector<int> fold_of(y.size(), -1);
  // negatives continue the round-robin where positives stopped, keeping fold sizes within one
  std::size_t next = 0;
  for (auto* group : {&pos, &neg}) {
    rng.shuffle(std::span(*group));
    for (std::size_t i : *group) fold_of[i] = static_cast<int>(next++ % static_cast<std::size_t>(folds));
  }
  return fold_of;
}

CvResult cross_validate(Algorithm algorithm, const Dataset& data, const Params& params,
                        const std::optional<CostMatrix>& cost, int folds, std::uint64_t seed) {
  data.validate();
  CvResult out;
  out.fold_of = stratified_folds(data.y, folds, seed);
  ConfusionCounts pooled;
  for (int f = 0; f < folds; ++f) {
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < data.size(); ++i) (out.fold_of[i] == f ? test_rows : train_rows).push_back(i);
    auto model = train(algorithm, data.subset(train_rows), params, cost, derive_seed(seed, static_cast<std::uint64_t>(f)));
    ConfusionCounts c;
    for (std::size_t i : test_rows) c.add(data.y[i], model.classify(data.x[i]));
    pooled += c;
    out.folds.push_back(ClassificationMetrics::from(c));
  }
  out.pooled = ClassificationMetrics::from(pooled);
  for (const auto& m : out.folds) {
    out.mean_accuracy += m.accuracy / folds;
    out.mean_precision += m.precision / folds;
    out.mean_recall += m.recall / folds;
  }
  return out;
}

SearchSpace default_search_space(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kLR: return {{"l2", {1e-6, 1e-4, 1e-3, 1e-2, 1e-1}}};
    case Algorithm::kDT: return {{"max_depth", {0, 4, 8, 12, 20}}, {"min_samples_leaf", {1, 2, 5, 10, 20}}};
    case Algorithm::kRF:
      return {{"trees", {50, 100, 200}}, {"max_depth", {0, 10, 20}}, {"min_samples_leaf", {1, 2, 5}},
              {"max_features", {0, 4, 8, 16}}};
    case Algorithm::kSVM: return {{"C", {0.01, 0.1, 1, 10, 100}}};
    case Algorithm::kNN:
      return {{"hidden", {8, 16, 32, 64}}, {"learning_rate", {0.001, 0.003, 0.01, 0.03}}, {"l2", {0, 1e-4, 1e-3}}};
  }
  return {};
}

TuneResult tune(Algorithm algorithm, const Dataset& data, const SearchSpace& space, int budget,
                const std::optional<CostMatrix>& cost, std::uint64_t seed, int folds) {
  if (budget < 1) throw InvalidArgument("tuning budget must be at least 1");
  for (const auto& [name, values] : space) {
    if (values.empty()) throw InvalidArgument("search space entry '" + name + "' has no values");
  }
  Rng rng(derive_seed(seed, "tune"));
  std::set<Params> seen;
  TuneResult out;
  bool have = false;
  for (int t = 0; t < budget; ++t) {
    Params p;
    for (const auto& [name, values] : space) p[name] = values[rng.below(values.size())];
    if (!seen.insert(p).second) continue;
    double acc = cross_validate(algorithm, data, p, cost, folds, seed).mean_accuracy;
    out.trials.emplace_back(p, acc);
    if (!have || acc > out.best_accuracy) {
      out.best = p;
      out.best_accuracy = acc;
      have = true;
    }
  }
  return out;
}

// ---- information gain

std::vector<int> equal_frequency_bins(const std::vector<double>& values, int bins) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<int> out(n);
  std::size_t first = 0;  // sorted position where the current run of equal values starts
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && values[order[k]] != values[order[k - 1]]) first = k;
    out[order[k]] = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(bins) * first / n,
                                                           static_cast<std::size_t>(bins - 1)));
  }
  return out;
}

namespace {

double entropy(const std::map<int, double>& counts, double total) {
  double h = 0;
  for (const auto& [_, c] : counts) {
    if (c > 0) h -= (c / total) * std::log2(c / total);
  }
  return h;
}

}  // namespace

double information_gain(const std::vector<int>& categories, const std::vector<int>& labels) {
  if (categories.size() != labels.size()) throw InvalidArgument("categories and labels differ in length");
  if (labels.empty()) return 0.0;
  double n = static_cast<double>(labels.size());
  std::map<int, double> label_counts;
  std::map<int, std::map<int, double>> joint;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ++label_counts[labels[i]];
    ++joint[categories[i]][labels[i]];
  }
  double conditional = 0;
  for (const auto& [_, counts] : joint) {
    double size = 0;
    for (const auto& [__, c] : counts) size += c;
    conditional += size / n * entropy(counts, size);
  }
  return std::max(0.0, entropy(label_counts, n) - conditional);
}

std::vector<FeatureGain> info_gain_ranking(const features::FeatureMatrix& labeled) {
  std::vector<int> labels;
  for (std::size_t i = 0; i < labeled.rows.size(); ++i) {
    if (!labeled.rows[i].label) throw InvalidArgument("matrix row " + std::to_string(i) + " has no label");
    labels.push_back(*labeled.rows[i].label ? kRelevant : kNonRelevant);
  }
  const auto& rows = labeled.rows;
  auto numeric = [&](auto get) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(static_cast<double>(get(r)));
    return equal_frequency_bins(v);
  };
  auto nominal = [&](auto get) {
    std::vector<int> v;
    for (const auto& r : rows) v.push_back(static_cast<int>(get(r)));
    return v;
  };
  const auto& tags = features::schema()[1].values;
  std::vector<std::pair<std::string, std::vector<int>>> cols;
  cols.emplace_back("f1", nominal([](const auto& r) { return r.f1 == mask::MaskedPos::kNoun ? 0 : 1; }));
  cols.emplace_back("f2", nominal([&](const auto& r) { return std::find(tags.begin(), tags.end(), r.f2) - tags.begin(); }));
  cols.emplace_back("f3", nominal([](const auto& r) { return r.f3 ? 1 : 0; }));
  cols.emplace_back("f4", numeric([](const auto& r) { return r.f4; }));
  cols.emplace_back("f5", numeric([](const auto& r) { return r.f5; }));
  cols.emplace_back("f6", numeric([](const auto& r) { return r.f6; }));
  cols.emplace_back("f7", numeric([](const auto& r) { return r.f7; }));
  cols.emplace_back("f8", numeric([](const auto& r) { return r.f8; }));
  {
    // defined values are binned among themselves; undefined gets category -1
    std::vector<double> defined;
    for (const auto& r : rows) {
      if (r.f9) defined.push_back(*r.f9);
    }
    auto bins = equal_frequency_bins(defined);
    std::vector<int> f9;
    std::size_t k = 0;
    for (const auto& r : rows) f9.push_back(r.f9 ? bins[k++] : -1);
    cols.emplace_back("f9", std::move(f9));
  }
  cols.emplace_back("f10", nominal([](const auto& r) { return r.f10; }));
  cols.emplace_back("f11", nominal([](const auto& r) { return r.f11; }));
  cols.emplace_back("f12", numeric([](const auto& r) { return r.f12; }));
  cols.emplace_back("f13", numeric([](const auto& r) { return r.f13; }));

  std::vector<FeatureGain> out;
  for (const auto& [name, cats] : cols) out.push_back({name, information_gain(cats, labels)});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.gain > b.gain; });
  return out;
}

// ---- presets

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::kNone: return "none";
    case Preset::kStrict: return "strict";
    case Preset::kModerate: return "moderate";
    case Preset::kLenient: return "lenient";
  }
  return "?";
}

Preset preset_from_string(std::string_view s) {
  for (Preset p : {Preset::kNone, Preset::kStrict, Preset::kModerate, Preset::kLenient}) {
    if (s == to_string(p)) return p;
  }
  throw ConfigError("unknown preset '" + std::string(s) + "' (expected none, strict, moderate or lenient)");
}

FilterModel train_preset(Preset preset, const Dataset& data, const PresetOptions& options) {
  Algorithm algorithm = Algorithm::kRF;
  std::optional<CostMatrix> cost;
  std::optional<double> ratio;
  switch (preset) {
    case Preset::kNone: throw InvalidArgument("preset 'none' has no model");
    case Preset::kStrict: break;
    case Preset::kModerate: ratio = options.undersample_ratio; break;
    case Preset::kLenient:
      algorithm = Algorithm::kSVM;
      ratio = options.undersample_ratio;
      cost = CostMatrix{2.0, 1.0};
      break;
  }
  Dataset train_data = ratio ? undersample(data, *ratio, options.seed) : data;
  Params params;
  if (options.tune_budget > 0) {
    params = tune(algorithm, train_data, default_search_space(algorithm), options.tune_budget, cost, options.seed,
                  options.folds)
                 .best;
  }
  FilterModel m = train(algorithm, train_data, params, cost, options.seed);
  m.config.undersample_ratio = ratio;
  m.config.preset = std::string(to_string(preset));
  return m;
}

}  // namespace reqcomp::ml
