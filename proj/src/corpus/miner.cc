#include "reqcomp/corpus/miner.h"

#include <algorithm>
#include <ctime>
#include <future>
#include <set>
#include <thread>

#include "httplib.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"
#include "reqcomp/util/url.h"

namespace reqcomp::corpus {

namespace {

using nlohmann::json;

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool retryable(int status) { return status == 429 || status >= 500; }

// Filesystem-safe file stem for an article title.
std::string file_stem(std::size_t index, const std::string& title) {
  std::string s;
  for (char c : title) {
    unsigned char u = static_cast<unsigned char>(c);
    s += (std::isalnum(u) || c == '-' || c == '_') ? c : '_';
    if (s.size() >= 60) break;
  }
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%05zu_", index);
  return prefix + s;
}

const json& first_page(const json& body) {
  static const json empty = json::object();
  if (!body.contains("query") || !body["query"].contains("pages") || body["query"]["pages"].empty()) return empty;
  return body["query"]["pages"][0];
}

}  // namespace

MediaWikiClient::MediaWikiClient(MinerOptions options) : options_(std::move(options)) {
  auto url = parse_base_url(options_.api_url);
  origin_ = url.origin;
  path_ = url.path.empty() ? "/" : url.path;
  if (options_.requests_per_second <= 0) throw ConfigError("requests_per_second must be positive");
  if (options_.concurrency < 1) throw ConfigError("concurrency must be at least 1");
}

void MediaWikiClient::wait_for_slot() {
  auto gap = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / options_.requests_per_second));
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(rate_mu_);
    slot = std::max(std::chrono::steady_clock::now(), next_slot_);
    next_slot_ = slot + gap;
  }
  std::this_thread::sleep_until(slot);
}

json MediaWikiClient::fetch(const std::string& target) {
  httplib::Client cli(origin_);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  cli.set_connection_timeout(secs.count(), 0);
  cli.set_read_timeout(secs.count(), 0);
  cli.set_follow_location(true);
  cli.set_url_encode(false);  // target is already encoded
  httplib::Headers headers{{"User-Agent", options_.user_agent}};

  std::string last;
  for (int attempt = 0; attempt <= options_.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(options_.backoff * (1 << (attempt - 1)));
    wait_for_slot();
    ++network_requests_;
    auto res = cli.Get(target, headers);
    if (!res) {
      last = httplib::to_string(res.error());
      continue;
    }
    if (retryable(res->status)) {
      last = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) throw NetworkError("MediaWiki request failed with HTTP " + std::to_string(res->status));
    json body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) throw NetworkError("MediaWiki returned malformed JSON for " + target);
    if (body.contains("error")) {
      std::string info = body["error"].value("info", body["error"].dump());
      if (body["error"].value("code", "") == "maxlag" || body["error"].value("code", "") == "ratelimited") {
        last = info;
        continue;
      }
      throw NetworkError("MediaWiki error: " + info);
    }
    return body;
  }
  throw NetworkError("MediaWiki unreachable after " + std::to_string(options_.retries + 1) + " attempts: " + last);
}

MediaWikiClient::Response MediaWikiClient::query(std::vector<std::pair<std::string, std::string>> params) {
  params.emplace_back("format", "json");
  params.emplace_back("formatversion", "2");
  std::sort(params.begin(), params.end());
  std::string target = path_ + "?";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) target += '&';
    target += url_encode(params[i].first) + "=" + url_encode(params[i].second);
  }

  std::filesystem::path cache_file;
  if (!options_.cache_dir.empty()) {
    cache_file = options_.cache_dir / (hex64(fnv1a64(origin_ + target)) + ".json");
    std::error_code ec;
    if (std::filesystem::exists(cache_file, ec)) {
      json entry = json::parse(read_file(cache_file), nullptr, false);
      bool usable = entry.is_object() && entry.value("url", "") == origin_ + target && entry.contains("response");
      if (usable && options_.cache_ttl) {
        auto age = std::time(nullptr) - entry.value("fetched_unix", std::int64_t{0});
        usable = age <= options_.cache_ttl->count();
      }
      if (usable) {
        ++cache_hits_;
        return {entry["response"], entry.value("fetched_at", "")};
      }
    }
  }
  if (options_.offline) throw NetworkError("offline and not cached: " + target);

  Response out{fetch(target), utc_now()};
  if (!cache_file.empty()) {
    json entry{{"url", origin_ + target},
               {"fetched_at", out.fetched_at},
               {"fetched_unix", static_cast<std::int64_t>(std::time(nullptr))},
               {"response", out.body}};
    write_file(cache_file, entry.dump());
  }
  return out;
}

std::vector<std::string> MediaWikiClient::search(const std::string& phrase, std::size_t limit) {
  auto r = query({{"action", "query"},
                  {"list", "search"},
                  {"srsearch", phrase},
                  {"srnamespace", "0"},
                  {"srlimit", std::to_string(limit)}});
  std::vector<std::string> titles;
  if (r.body.contains("query") && r.body["query"].contains("search")) {
    for (const auto& hit : r.body["query"]["search"]) {
      if (titles.size() >= limit) break;
      if (hit.contains("title") && hit["title"].is_string()) titles.push_back(hit["title"]);
    }
  }
  return titles;
}

std::optional<std::pair<std::string, MediaWikiClient::Response>> MediaWikiClient::extract(const std::string& title) {
  auto r = query({{"action", "query"},
                  {"prop", "extracts"},
                  {"explaintext", "1"},
                  {"redirects", "1"},
                  {"titles", title}});
  const json& page = first_page(r.body);
  if (page.empty() || page.value("missing", false) || page.value("invalid", false)) return std::nullopt;
  if (!page.contains("extract") || !page["extract"].is_string()) return std::nullopt;
  std::string resolved = page.value("title", title);
  return std::make_pair(std::move(resolved), std::move(r));
}

std::vector<std::string> MediaWikiClient::categories(const std::string& title) {
  auto r = query({{"action", "query"},
                  {"prop", "categories"},
                  {"clshow", "!hidden"},
                  {"cllimit", "max"},
                  {"redirects", "1"},
                  {"titles", title}});
  std::vector<std::string> out;
  const json& page = first_page(r.body);
  if (page.contains("categories")) {
    for (const auto& c : page["categories"]) {
      if (c.contains("title") && c["title"].is_string()) out.push_back(c["title"]);
    }
  }
  return out;
}

MediaWikiClient::Members MediaWikiClient::category_members(const std::string& category, std::size_t limit) {
  auto r = query({{"action", "query"},
                  {"list", "categorymembers"},
                  {"cmtitle", category},
                  {"cmtype", "page|subcat"},
                  {"cmlimit", std::to_string(limit)}});
  Members out;
  if (r.body.contains("query") && r.body["query"].contains("categorymembers")) {
    for (const auto& m : r.body["query"]["categorymembers"]) {
      if (!m.contains("title") || !m["title"].is_string()) continue;
      int ns = m.value("ns", 0);
      if (ns == 14) {
        out.subcategories.push_back(m["title"]);
      } else if (ns == 0) {
        out.pages.push_back(m["title"]);
      }
    }
  }
  return out;
}

// ---- mining

namespace {

struct Candidate {
  std::string title;
  int depth = 0;
  std::vector<std::string> category_path;
};

}  // namespace

DomainCorpus mine(const std::vector<Keyphrase>& keyphrases, MediaWikiClient& client) {
  const MinerOptions& opt = client.options();
  if (opt.depth < 0) throw ConfigError("depth must be non-negative");

  std::vector<Candidate> candidates;
  std::set<std::string> queued;
  auto enqueue = [&](const std::string& title, int depth, const std::vector<std::string>& path) {
    if (queued.insert(title).second) candidates.push_back({title, depth, path});
  };

  std::size_t used = std::min(keyphrases.size(), opt.max_keyphrases);
  json searched = json::array();
  for (std::size_t i = 0; i < used; ++i) {
    searched.push_back(keyphrases[i].text);
    for (const auto& t : client.search(keyphrases[i].text, opt.results_per_keyphrase)) enqueue(t, 0, {});
  }

  if (opt.depth > 0) {
    // Level 1 members come from the categories of the depth-0 articles; each
    // further level descends into the subcategories found on the previous one.
    std::vector<std::pair<std::string, std::vector<std::string>>> frontier;
    std::set<std::string> seen_categories;
    std::size_t roots = candidates.size();
    for (std::size_t i = 0; i < roots; ++i) {
      for (const auto& c : client.categories(candidates[i].title)) {
        if (seen_categories.insert(c).second) frontier.push_back({c, {c}});
      }
    }
    for (int level = 1; level <= opt.depth && !frontier.empty(); ++level) {
      std::vector<std::pair<std::string, std::vector<std::string>>> next;
      for (const auto& [category, path] : frontier) {
        auto members = client.category_members(category, opt.max_category_members);
        for (const auto& p : members.pages) enqueue(p, level, path);
        for (const auto& sub : members.subcategories) {
          if (!seen_categories.insert(sub).second) continue;
          auto longer = path;
          longer.push_back(sub);
          next.push_back({sub, std::move(longer)});
        }
      }
      frontier = std::move(next);
    }
  }

  DomainCorpus corpus;
  std::set<std::string> kept_titles;
  std::size_t bytes = 0;
  bool article_limit_hit = false, byte_limit_hit = false;
  std::size_t batch = static_cast<std::size_t>(opt.concurrency);

  for (std::size_t start = 0; start < candidates.size() && !article_limit_hit && !byte_limit_hit;
       start += batch) {
    std::size_t stop = std::min(candidates.size(), start + batch);
    std::vector<std::future<std::optional<std::pair<std::string, MediaWikiClient::Response>>>> futures;
    for (std::size_t i = start; i < stop; ++i) {
      futures.push_back(std::async(std::launch::async, [&client, &t = candidates[i].title] { return client.extract(t); }));
    }
    // get() every future before acting on limits so no task outlives the loop.
    std::vector<std::optional<std::pair<std::string, MediaWikiClient::Response>>> results;
    for (auto& f : futures) results.push_back(f.get());

    for (std::size_t i = start; i < stop; ++i) {
      auto& r = results[i - start];
      if (!r) continue;
      auto& [title, response] = *r;
      if (!kept_titles.insert(title).second) continue;  // two titles redirecting to one page
      if (corpus.articles.size() >= opt.max_articles) {
        article_limit_hit = true;
        break;
      }
      const json& page = first_page(response.body);
      std::string text = page["extract"];
      if (bytes + text.size() > opt.max_bytes) {
        byte_limit_hit = true;
        break;
      }
      bytes += text.size();
      corpus.articles.push_back(
          {title, std::move(text), candidates[i].depth, candidates[i].category_path, response.fetched_at});
    }
  }

  json articles = json::array();
  for (const auto& a : corpus.articles) {
    articles.push_back({{"title", a.title},
                        {"depth", a.depth},
                        {"category_path", a.category_path},
                        {"fetched_at", a.fetched_at},
                        {"bytes", a.text.size()}});
  }
  corpus.manifest = {
      {"version", 1},
      {"api_url", opt.api_url},
      {"depth", opt.depth},
      {"keyphrases", searched},
      {"limits",
       {{"max_keyphrases", opt.max_keyphrases},
        {"results_per_keyphrase", opt.results_per_keyphrase},
        {"max_category_members", opt.max_category_members},
        {"max_articles", opt.max_articles},
        {"max_bytes", opt.max_bytes}}},
      {"candidates", candidates.size()},
      {"truncated",
       {{"keyphrases", keyphrases.size() > used}, {"articles", article_limit_hit}, {"bytes", byte_limit_hit}}},
      {"articles", articles},
  };
  return corpus;
}

// ---- corpus persistence and index

std::vector<std::vector<std::string>> DomainCorpus::article_terms(const std::vector<Article>& articles,
                                                                  const nlp::Pipeline& pipeline) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(articles.size());
  for (const auto& a : articles) {
    auto doc = pipeline.annotate(a.title, a.text);
    std::vector<std::string> terms;
    for (const auto& s : doc.sentences) {
      for (const auto& t : s.tokens) {
        if (is_alphabetic(t.lemma)) terms.push_back(to_lower(t.lemma));
      }
    }
    docs.push_back(std::move(terms));
  }
  return docs;
}

void DomainCorpus::build_index(const nlp::Pipeline& pipeline) {
  auto docs = article_terms(articles, pipeline);
  term_stats.clear();
  for (const auto& d : docs) {
    for (const auto& t : d) ++term_stats[t];
  }
  tfidf = TfidfIndex::build(docs);
}

void DomainCorpus::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  json m = manifest.is_object() ? manifest : json::object();
  json files = json::array();
  for (std::size_t i = 0; i < articles.size(); ++i) {
    std::string name = file_stem(i, articles[i].title) + ".txt";
    write_file(dir / name, articles[i].text);
    files.push_back({{"title", articles[i].title},
                     {"file", name},
                     {"depth", articles[i].depth},
                     {"category_path", articles[i].category_path},
                     {"fetched_at", articles[i].fetched_at},
                     {"bytes", articles[i].text.size()}});
  }
  m["articles"] = files;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
}

DomainCorpus DomainCorpus::load(const std::filesystem::path& dir) {
  auto path = dir / "manifest.json";
  json m = json::parse(read_file(path), nullptr, false);
  if (m.is_discarded() || !m.is_object() || !m.contains("articles") || !m["articles"].is_array()) {
    throw ParseError("not a corpus manifest", path.string());
  }
  DomainCorpus corpus;
  for (const auto& a : m["articles"]) {
    if (!a.contains("file") || !a.contains("title")) throw ParseError("article entry without file or title", path.string());
    Article art;
    art.title = a["title"];
    art.text = read_file(dir / a["file"].get<std::string>());
    art.depth = a.value("depth", 0);
    art.category_path = a.value("category_path", std::vector<std::string>{});
    art.fetched_at = a.value("fetched_at", "");
    corpus.articles.push_back(std::move(art));
  }
  corpus.manifest = std::move(m);
  return corpus;
}

}  // namespace reqcomp::corpus
