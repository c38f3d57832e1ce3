#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "reqcomp/mask/masking.h"

namespace reqcomp::mlm {

inline constexpr int kMaxK = 50;

struct Prediction {
  std::string token;
  double score = 0;

  bool operator==(const Prediction&) const = default;
};

// Source of raw top-k fill-mask predictions for one masked sentence. The list
// may contain subword pieces or special tokens; get_predictions() cleans it.
// Implementations must be safe to call from several threads.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual std::vector<Prediction> predict(const mask::MaskedInstance& instance, int k) = 0;
  virtual std::string name() const = 0;
};

struct HttpOptions {
  std::chrono::milliseconds connect_timeout{5000};
  std::chrono::milliseconds read_timeout{60000};
  int retries = 2;  // extra attempts after connection failures and 503s
  std::chrono::milliseconds backoff{200};
};

struct Health {
  std::string model;
  bool ready = false;
};

// Talks to the inference sidecar: POST /v1/predict, GET /v1/health.
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(std::string base_url, HttpOptions options = {});
  std::vector<Prediction> predict(const mask::MaskedInstance& instance, int k) override;
  std::string name() const override { return "http:" + base_url_; }
  Health health();

 private:
  std::string base_url_;
  HttpOptions options_;
};

// Fixture key: (doc_id, sentence_index, token_index, k).
using FixtureKey = std::tuple<std::string, std::size_t, std::size_t, int>;

struct FixtureEntry {
  std::string masked_surface;
  std::string rendered;
  std::vector<Prediction> predictions;  // raw provider output, descending score
};

// Recorded provider responses, one JSON document per input document.
class FixtureStore {
 public:
  FixtureStore() = default;
  // Reads every *.json file in dir (a missing dir is an empty store).
  static FixtureStore load(const std::filesystem::path& dir);
  static FixtureStore load_file(const std::filesystem::path& file);
  void save(const std::filesystem::path& dir) const;

  // Throws DuplicateKey if (instance, k) was already recorded.
  void record(const mask::MaskedInstance& instance, int k, std::vector<Prediction> predictions);
  // Exact k when present, otherwise the smallest recorded k' > k truncated to
  // k. Throws FixtureMiss when nothing fits or the stored sentence differs.
  std::vector<Prediction> lookup(const mask::MaskedInstance& instance, int k) const;
  bool contains(const FixtureKey& key) const { return entries_.count(key) > 0; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<FixtureKey, FixtureEntry> entries_;
};

class FixtureProvider : public Provider {
 public:
  explicit FixtureProvider(std::shared_ptr<const FixtureStore> store) : store_(std::move(store)) {}
  std::vector<Prediction> predict(const mask::MaskedInstance& instance, int k) override {
    return store_->lookup(instance, k);
  }
  std::string name() const override { return "fixture"; }

 private:
  std::shared_ptr<const FixtureStore> store_;
};

// Forwards to another provider and records every response.
class RecordingProvider : public Provider {
 public:
  RecordingProvider(Provider& inner, FixtureStore& store) : inner_(inner), store_(store) {}
  std::vector<Prediction> predict(const mask::MaskedInstance& instance, int k) override;
  std::string name() const override { return "recording:" + inner_.name(); }

 private:
  Provider& inner_;
  FixtureStore& store_;
  std::mutex mu_;
};

}  // namespace reqcomp::mlm
