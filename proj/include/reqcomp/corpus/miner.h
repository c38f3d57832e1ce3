#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reqcomp/corpus/keyphrases.h"
#include "reqcomp/corpus/tfidf.h"
#include "reqcomp/nlp/pipeline.h"

namespace reqcomp::corpus {

inline constexpr const char* kWikipediaApi = "https://en.wikipedia.org/w/api.php";

struct MinerOptions {
  std::string api_url = kWikipediaApi;
  std::filesystem::path cache_dir;  // empty disables the cache
  std::optional<std::chrono::seconds> cache_ttl;  // unset: entries never expire
  bool offline = false;  // serve from cache only

  int depth = 0;
  std::size_t max_keyphrases = 30;
  std::size_t results_per_keyphrase = 1;
  std::size_t max_category_members = 100;
  std::size_t max_articles = 500;
  std::size_t max_bytes = 50u << 20;

  int concurrency = 4;
  double requests_per_second = 10.0;
  int retries = 3;
  std::chrono::milliseconds backoff{500};
  std::chrono::milliseconds timeout{30000};
  std::string user_agent = "reqcomp-corpus-miner/1.0 (requirements completeness research)";
};

// MediaWiki Action API client with a disk cache, retries and a per-host rate
// limit. Thread-safe.
class MediaWikiClient {
 public:
  explicit MediaWikiClient(MinerOptions options);

  struct Response {
    nlohmann::json body;
    std::string fetched_at;  // UTC timestamp of the original network fetch
  };

  // params are sent as a GET query (format=json and formatversion=2 added).
  Response query(std::vector<std::pair<std::string, std::string>> params);

  std::vector<std::string> search(const std::string& phrase, std::size_t limit);
  // Plain-text extract; nullopt for missing pages.
  std::optional<std::pair<std::string, Response>> extract(const std::string& title);
  std::vector<std::string> categories(const std::string& title);
  struct Members {
    std::vector<std::string> pages;
    std::vector<std::string> subcategories;
  };
  Members category_members(const std::string& category, std::size_t limit);

  std::size_t network_requests() const { return network_requests_; }
  std::size_t cache_hits() const { return cache_hits_; }
  const MinerOptions& options() const { return options_; }

 private:
  nlohmann::json fetch(const std::string& path_and_query);
  void wait_for_slot();

  MinerOptions options_;
  std::string origin_;
  std::string path_;
  std::atomic<std::size_t> network_requests_{0};
  std::atomic<std::size_t> cache_hits_{0};
  std::mutex rate_mu_;
  std::chrono::steady_clock::time_point next_slot_{};
};

struct Article {
  std::string title;
  std::string text;
  int depth = 0;
  std::vector<std::string> category_path;  // categories walked from a depth-0 article
  std::string fetched_at;
};

struct DomainCorpus {
  std::vector<Article> articles;
  nlohmann::json manifest;
  // Alphabetic lemma -> occurrences over all articles.
  std::unordered_map<std::string, std::size_t> term_stats;
  TfidfIndex tfidf;

  // Lemmatised alphabetic terms of every article, in article order.
  static std::vector<std::vector<std::string>> article_terms(const std::vector<Article>& articles,
                                                             const nlp::Pipeline& pipeline);
  // Fills term_stats and tfidf from the article texts.
  void build_index(const nlp::Pipeline& pipeline);
  void save(const std::filesystem::path& dir) const;
  // Reads a saved corpus; call build_index afterwards.
  static DomainCorpus load(const std::filesystem::path& dir);
};

// Collects Wikipedia articles for the keyphrases: the top search hits for
// each phrase (depth 0), then, for depth d > 0, pages of the categories of
// those articles (depth 1) and of subcategories reached by walking further
// levels. Articles are deduplicated by title, first depth wins. The result
// has no index; call build_index.
DomainCorpus mine(const std::vector<Keyphrase>& keyphrases, MediaWikiClient& client);

}  // namespace reqcomp::corpus
