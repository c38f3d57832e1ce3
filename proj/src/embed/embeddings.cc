#include "reqcomp/embed/embeddings.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"

namespace reqcomp::embed {
namespace {

bool parse_float(std::string_view s, float& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool is_count(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

EmbeddingStore EmbeddingStore::parse(std::string_view text, const std::string& source) {
  EmbeddingStore store;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::vector<std::string_view> fields;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    fields.clear();
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_ascii_space(line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !is_ascii_space(line[j])) ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (store.dimension_ == 0 && store.index_.empty() && line_no == 1 && fields.size() == 2 &&
        is_count(fields[0]) && is_count(fields[1])) {
      continue;  // word2vec-style header
    }
    if (fields.size() < 2) throw ParseError("expected a word followed by vector components", source, line_no);
    std::size_t dim = fields.size() - 1;
    if (store.dimension_ == 0) {
      store.dimension_ = dim;
    } else if (dim != store.dimension_) {
      throw ParseError("inconsistent dimension: expected " + std::to_string(store.dimension_) + " values, got " +
                           std::to_string(dim),
                       source, line_no);
    }
    std::vector<float> v(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      if (!parse_float(fields[d + 1], v[d]))
        throw ParseError("bad number '" + std::string(fields[d + 1]) + "'", source, line_no);
    }
    store.add(fields[0], std::move(v));
  }
  if (store.dimension_ == 0) throw ParseError("no vectors found", source, 0);
  return store;
}

void EmbeddingStore::add(std::string_view word, std::vector<float> v) {
  if (dimension_ == 0) dimension_ = v.size();
  if (v.size() != dimension_ || v.empty()) throw InvalidArgument("vector dimension mismatch for '" + std::string(word) + "'");
  std::string key = to_lower(word);
  if (index_.count(key)) return;
  double sq = 0;
  for (float x : v) sq += static_cast<double>(x) * x;
  if (sq == 0.0) return;
  index_.emplace(std::move(key), norms_.size());
  data_.insert(data_.end(), v.begin(), v.end());
  norms_.push_back(std::sqrt(sq));
}

bool EmbeddingStore::contains(std::string_view word) const { return index_.count(to_lower(word)) > 0; }

const float* EmbeddingStore::vector(std::string_view word) const {
  auto it = index_.find(to_lower(word));
  return it == index_.end() ? nullptr : data_.data() + it->second * dimension_;
}

std::optional<double> EmbeddingStore::cosine(std::string_view a, std::string_view b) const {
  auto ia = index_.find(to_lower(a));
  auto ib = index_.find(to_lower(b));
  if (ia == index_.end() || ib == index_.end()) return std::nullopt;
  if (ia->second == ib->second) return 1.0;
  const float* va = data_.data() + ia->second * dimension_;
  const float* vb = data_.data() + ib->second * dimension_;
  double dot = 0;
  for (std::size_t d = 0; d < dimension_; ++d) dot += static_cast<double>(va[d]) * vb[d];
  double c = dot / (norms_[ia->second] * norms_[ib->second]);
  return std::clamp(c, -1.0, 1.0);
}

TermMatcher::TermMatcher(const EmbeddingStore* store, const nlp::Lemmatizer* lemmatizer, double threshold)
    : store_(store), lemmatizer_(lemmatizer), threshold_(threshold) {}

std::vector<std::string> TermMatcher::lemma_keys(std::string_view word) const {
  std::vector<std::string> keys{to_lower(word)};
  if (lemmatizer_) {
    for (const char* tag : {"NNS", "VBZ", "VBD", "VBG"}) {
      std::string l = lemmatizer_->lemmatize(word, tag);
      if (std::find(keys.begin(), keys.end(), l) == keys.end()) keys.push_back(std::move(l));
    }
  }
  return keys;
}

bool TermMatcher::lemma_match(std::string_view a, std::string_view b) const {
  auto ka = lemma_keys(a);
  auto kb = lemma_keys(b);
  for (const auto& x : ka) {
    if (std::find(kb.begin(), kb.end(), x) != kb.end()) return true;
  }
  return false;
}

bool TermMatcher::is_match(std::string_view a, std::string_view b) const {
  if (lemma_match(a, b)) return true;
  if (!store_) return false;
  auto c = store_->cosine(a, b);
  return c && *c >= threshold_;
}

}  // namespace reqcomp::embed
