#include "reqcomp/mlm/provider.h"

#include <cmath>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"
#include "reqcomp/util/url.h"

namespace reqcomp::mlm {

using nlohmann::json;

namespace {

std::vector<Prediction> parse_predictions(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("predictions") || !j["predictions"].is_array())
    throw MalformedResponse(where + ": expected an object with a 'predictions' array");
  std::vector<Prediction> out;
  for (const auto& p : j["predictions"]) {
    if (!p.is_object() || !p.contains("token") || !p["token"].is_string() || !p.contains("score") ||
        !p["score"].is_number())
      throw MalformedResponse(where + ": prediction needs string 'token' and numeric 'score'");
    double score = p["score"].get<double>();
    if (!std::isfinite(score) || score < 0.0 || score > 1.0)
      throw MalformedResponse(where + ": score outside [0,1]");
    out.push_back({p["token"].get<std::string>(), score});
  }
  return out;
}

json predictions_to_json(const std::vector<Prediction>& preds) {
  json arr = json::array();
  for (const auto& p : preds) arr.push_back({{"token", p.token}, {"score", p.score}});
  return arr;
}

std::string fixture_file_name(const std::string& doc_id) {
  std::string safe;
  bool changed = false;
  for (char c : doc_id) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.') {
      safe += c;
    } else {
      safe += '_';
      changed = true;
    }
  }
  if (safe.empty() || safe[0] == '.' || changed) safe += "-" + hex64(fnv1a64(doc_id)).substr(8);
  return safe + ".json";
}

}  // namespace

// ---------------------------------------------------------------------------
// HTTP

HttpProvider::HttpProvider(std::string base_url, HttpOptions options)
    : base_url_(std::move(base_url)), options_(options) {
  parse_base_url(base_url_);  // validate early
}

namespace {

template <typename Call>
httplib::Result with_retries(const HttpOptions& opts, const std::string& what, Call call) {
  std::string last;
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(opts.backoff * (1 << (attempt - 1)));
    httplib::Result res = call();
    if (!res) {
      last = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 503) {
      last = "service not ready (503)";
      continue;
    }
    return res;
  }
  throw ProviderUnreachable(what + ": " + last);
}

httplib::Client make_client(const BaseUrl& url, const HttpOptions& opts) {
  httplib::Client cli(url.origin);
  cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(opts.connect_timeout).count(),
                             static_cast<long>((opts.connect_timeout.count() % 1000) * 1000));
  cli.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(opts.read_timeout).count(),
                       static_cast<long>((opts.read_timeout.count() % 1000) * 1000));
  return cli;
}

}  // namespace

std::vector<Prediction> HttpProvider::predict(const mask::MaskedInstance& instance, int k) {
  BaseUrl url = parse_base_url(base_url_);
  json body = {{"text", instance.rendered}, {"mask_token", instance.mask_token}, {"k", k}};
  std::string payload = body.dump();
  auto res = with_retries(options_, "POST " + base_url_ + "/v1/predict", [&] {
    auto cli = make_client(url, options_);
    return cli.Post(url.path + "/v1/predict", payload, "application/json");
  });
  if (res->status != 200) {
    throw ProviderError("provider returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }
  json j;
  try {
    j = json::parse(res->body);
  } catch (const json::exception& e) {
    throw MalformedResponse(std::string("invalid JSON from provider: ") + e.what());
  }
  return parse_predictions(j, "provider response");
}

Health HttpProvider::health() {
  BaseUrl url = parse_base_url(base_url_);
  auto res = with_retries(options_, "GET " + base_url_ + "/v1/health", [&] {
    auto cli = make_client(url, options_);
    return cli.Get(url.path + "/v1/health");
  });
  if (res->status != 200) throw ProviderError("health check returned HTTP " + std::to_string(res->status));
  try {
    json j = json::parse(res->body);
    return Health{j.at("model").get<std::string>(), j.at("ready").get<bool>()};
  } catch (const json::exception& e) {
    throw MalformedResponse(std::string("invalid health response: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Fixtures

void FixtureStore::record(const mask::MaskedInstance& instance, int k, std::vector<Prediction> predictions) {
  FixtureKey key{instance.doc_id, instance.sentence_index, instance.token_index, k};
  if (entries_.count(key)) {
    throw DuplicateKey("fixture already holds " + instance.doc_id + "/" + std::to_string(instance.sentence_index) +
                       "/" + std::to_string(instance.token_index) + " k=" + std::to_string(k));
  }
  entries_.emplace(std::move(key), FixtureEntry{instance.masked_surface, instance.rendered, std::move(predictions)});
}

std::vector<Prediction> FixtureStore::lookup(const mask::MaskedInstance& instance, int k) const {
  auto it = entries_.lower_bound(FixtureKey{instance.doc_id, instance.sentence_index, instance.token_index, k});
  std::string where = instance.doc_id + "/" + std::to_string(instance.sentence_index) + "/" +
                      std::to_string(instance.token_index) + " k=" + std::to_string(k);
  if (it == entries_.end() || std::get<0>(it->first) != instance.doc_id ||
      std::get<1>(it->first) != instance.sentence_index || std::get<2>(it->first) != instance.token_index) {
    throw FixtureMiss("no fixture for " + where);
  }
  const FixtureEntry& e = it->second;
  if (!e.rendered.empty() && e.rendered != instance.rendered) {
    throw FixtureMiss("stale fixture for " + where + ": recorded text differs");
  }
  std::vector<Prediction> out = e.predictions;
  if (std::get<3>(it->first) != k) {
    std::stable_sort(out.begin(), out.end(), [](const Prediction& a, const Prediction& b) { return a.score > b.score; });
    if (out.size() > static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k));
  }
  return out;
}

void FixtureStore::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::map<std::string, json> docs;
  for (const auto& [key, e] : entries_) {
    const auto& [doc_id, sentence, token, k] = key;
    json& doc = docs[doc_id];
    if (doc.is_null()) doc = {{"version", 1}, {"doc_id", doc_id}, {"entries", json::array()}};
    doc["entries"].push_back({{"sentence_index", sentence},
                              {"token_index", token},
                              {"k", k},
                              {"masked_surface", e.masked_surface},
                              {"rendered", e.rendered},
                              {"predictions", predictions_to_json(e.predictions)}});
  }
  for (const auto& [doc_id, doc] : docs) write_file(dir / fixture_file_name(doc_id), doc.dump(2) + "\n");
}

FixtureStore FixtureStore::load_file(const std::filesystem::path& file) {
  FixtureStore store;
  json doc;
  try {
    doc = json::parse(read_file(file));
  } catch (const json::exception& e) {
    throw MalformedResponse(file.string() + ": invalid JSON: " + e.what());
  }
  std::string where = file.string();
  try {
    if (doc.at("version").get<int>() != 1) throw MalformedResponse(where + ": unsupported fixture version");
    std::string doc_id = doc.at("doc_id").get<std::string>();
    for (const auto& e : doc.at("entries")) {
      mask::MaskedInstance inst;
      inst.doc_id = doc_id;
      inst.sentence_index = e.at("sentence_index").get<std::size_t>();
      inst.token_index = e.at("token_index").get<std::size_t>();
      inst.masked_surface = e.value("masked_surface", "");
      inst.rendered = e.value("rendered", "");
      int k = e.at("k").get<int>();
      store.record(inst, k, parse_predictions(e, where));
    }
  } catch (const json::exception& e) {
    throw MalformedResponse(where + ": " + e.what());
  }
  return store;
}

FixtureStore FixtureStore::load(const std::filesystem::path& dir) {
  FixtureStore store;
  if (!std::filesystem::exists(dir)) return store;
  if (std::filesystem::is_regular_file(dir)) return load_file(dir);
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    FixtureStore part = load_file(f);
    for (auto& [key, e] : part.entries_) {
      if (store.entries_.count(key)) throw DuplicateKey("fixture key recorded twice across files in " + dir.string());
      store.entries_.emplace(key, std::move(e));
    }
  }
  return store;
}

std::vector<Prediction> RecordingProvider::predict(const mask::MaskedInstance& instance, int k) {
  auto preds = inner_.predict(instance, k);
  std::lock_guard<std::mutex> lock(mu_);
  if (!store_.contains({instance.doc_id, instance.sentence_index, instance.token_index, k})) {
    store_.record(instance, k, preds);
  }
  return preds;
}

}  // namespace reqcomp::mlm
