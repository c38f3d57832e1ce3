#include "reqcomp/mlm/client.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <semaphore>

#include "reqcomp/util/errors.h"
#include "reqcomp/util/text.h"

namespace reqcomp::mlm {
namespace {

bool is_special_token(std::string_view t) {
  if (t.size() < 3 || t.front() != '[' || t.back() != ']') return false;
  for (char c : t.substr(1, t.size() - 2)) {
    if (!(c >= 'A' && c <= 'Z') && c != '_') return false;
  }
  return true;
}

void check_request(const mask::MaskedInstance& instance, int k) {
  if (k < 1 || k > kMaxK) throw InvalidArgument("k must be in [1, 50], got " + std::to_string(k));
  if (mask::count_occurrences(instance.rendered, instance.mask_token) != 1)
    throw InvalidArgument("rendered text must contain exactly one mask placeholder");
}

}  // namespace

std::vector<Prediction> clean_predictions(std::vector<Prediction> raw, const std::string& mask_token, int k) {
  std::vector<Prediction> out;
  for (auto& p : raw) {
    if (!std::isfinite(p.score) || p.score < 0.0 || p.score > 1.0)
      throw MalformedResponse("prediction score outside [0,1] for token '" + p.token + "'");
    std::string_view t = trim(p.token);
    if (t.empty() || t.starts_with("##") || t == mask_token || is_special_token(t)) continue;
    out.push_back({std::string(t), p.score});
  }
  std::stable_sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) { return a.score > b.score; });
  if (out.size() > static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k));
  return out;
}

std::vector<PredictionRecord> get_predictions(Provider& provider, const mask::MaskedInstance& instance, int k,
                                              const ClientOptions& options) {
  check_request(instance, k);
  auto cleaned = clean_predictions(provider.predict(instance, k), instance.mask_token, k);
  std::vector<PredictionRecord> out;
  for (auto& p : cleaned) {
    if (p.score < options.score_floor) continue;
    PredictionRecord r;
    r.instance = instance;
    r.prediction = std::move(p);
    r.rank = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PredictionRecord> get_all_predictions(Provider& provider,
                                                  const std::vector<mask::MaskedInstance>& instances, int k,
                                                  const ClientOptions& options) {
  for (const auto& inst : instances) check_request(inst, k);
  int width = std::max(1, options.concurrency);
  std::vector<std::vector<PredictionRecord>> parts(instances.size());
  if (width == 1 || instances.size() < 2) {
    for (std::size_t i = 0; i < instances.size(); ++i) parts[i] = get_predictions(provider, instances[i], k, options);
  } else {
    std::counting_semaphore<> slots(width);
    std::vector<std::future<void>> pending;
    pending.reserve(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
      slots.acquire();
      pending.push_back(std::async(std::launch::async, [&, i] {
        struct Release {
          std::counting_semaphore<>& s;
          ~Release() { s.release(); }
        } release{slots};
        parts[i] = get_predictions(provider, instances[i], k, options);
      }));
    }
    // get() rethrows the first failure in instance order, after all calls finished.
    for (auto& f : pending) f.wait();
    for (auto& f : pending) f.get();
  }
  std::vector<PredictionRecord> out;
  for (auto& p : parts) {
    for (auto& r : p) out.push_back(std::move(r));
  }
  return out;
}

void annotate_predictions(std::vector<PredictionRecord>& records, const nlp::Pipeline& pipeline) {
  for (auto& r : records) {
    const std::string& word = r.prediction.token;
    std::string sentence = mask::substitute(r.instance, word);
    auto tokens = pipeline.tokenize(sentence);
    pipeline.pos_tag(tokens);
    std::string tag;
    for (const auto& t : tokens) {
      if (t.start == r.instance.offset) {
        tag = t.pos;
        break;
      }
    }
    if (tag.empty()) tag = "PUNCT";  // prediction merged into a neighbouring token
    r.tag = tag;
    r.lemma = pipeline.lemmatize(word, tag);
  }
}

}  // namespace reqcomp::mlm
