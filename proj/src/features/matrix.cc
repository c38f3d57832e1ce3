#include "reqcomp/features/matrix.h"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "reqcomp/features/features.h"
#include "reqcomp/nlp/types.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"

namespace reqcomp::features {

using nlohmann::json;

std::string_view to_string(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::kNominal: return "nominal";
    case ColumnKind::kBoolean: return "boolean";
    case ColumnKind::kNumeric: return "numeric";
    case ColumnKind::kOrdinal: return "ordinal";
  }
  return "?";
}

const std::vector<Column>& schema() {
  static const std::vector<Column> cols = {
      {"f1", ColumnKind::kNominal, {"noun", "verb"}},
      {"f2", ColumnKind::kNominal, nlp::tag_set()},
      {"f3", ColumnKind::kBoolean, {"false", "true"}},
      {"f4", ColumnKind::kNumeric, {}},
      {"f5", ColumnKind::kNumeric, {}},
      {"f6", ColumnKind::kNumeric, {}},
      {"f7", ColumnKind::kNumeric, {}},
      {"f8", ColumnKind::kNumeric, {}},
      {"f9", ColumnKind::kNumeric, {}},
      {"f10", ColumnKind::kOrdinal, {}},
      {"f11", ColumnKind::kOrdinal, {}},
      {"f12", ColumnKind::kNumeric, {}},
      {"f13", ColumnKind::kNumeric, {}},
  };
  return cols;
}

json schema_json() {
  json cols = json::array();
  for (const auto& c : schema()) {
    json j{{"name", c.name}, {"kind", to_string(c.kind)}};
    if (!c.values.empty()) j["values"] = c.values;
    if (c.name == "f9") j["undefined"] = "?";
    if (c.kind == ColumnKind::kOrdinal) j["range"] = {0, QuantileBuckets::kBuckets - 1};
    cols.push_back(std::move(j));
  }
  return {{"version", 1}, {"columns", cols}, {"label", {"non-relevant", "relevant"}}, {"encoding", encoded_names()}};
}

std::string schema_fingerprint() {
  static const std::string fp = hex64(fnv1a64(schema_json().dump()));
  return fp;
}

void FeatureMatrix::append(const FeatureMatrix& other) {
  if (other.fingerprint != fingerprint) throw SchemaMismatch("cannot append a matrix with a different schema");
  keys.insert(keys.end(), other.keys.begin(), other.keys.end());
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  for (const auto& w : other.warnings) {
    if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
  }
}

void pos_features(const mlm::PredictionRecord& record, FeatureVector& out) {
  out.f1 = record.instance.masked_pos;
  out.f2 = record.tag.empty() ? "PUNCT" : record.tag;
  out.f3 = out.f1 == mask::MaskedPos::kNoun ? nlp::is_noun_tag(out.f2) : nlp::is_verb_tag(out.f2);
}

void length_features(const std::string& masked, const std::string& prediction, FeatureVector& out) {
  out.f4 = static_cast<int>(char_count(masked));
  out.f5 = static_cast<int>(char_count(prediction));
  out.f6 = length_ratio(static_cast<std::size_t>(out.f4), static_cast<std::size_t>(out.f5));
}

FeatureMatrix build_matrix(const std::vector<mlm::PredictionRecord>& records, const corpus::DomainCorpus& corpus,
                           const embed::EmbeddingStore* store, const std::string& doc_id, std::uint64_t seed) {
  FeatureMatrix m;
  m.doc_id = doc_id;
  m.seed = seed;
  if (corpus.tfidf.document_count() == 0) m.warnings.push_back("empty_corpus");

  auto lemma_of = [](const mlm::PredictionRecord& r) {
    return r.lemma.empty() ? to_lower(r.prediction.token) : r.lemma;
  };
  std::unordered_map<std::string, std::size_t> prediction_counts;
  for (const auto& r : records) ++prediction_counts[lemma_of(r)];
  QuantileBuckets f10(prediction_counts);
  QuantileBuckets f11(corpus.term_stats);

  for (const auto& r : records) {
    FeatureVector v;
    std::string lemma = lemma_of(r);
    pos_features(r, v);
    length_features(r.instance.masked_surface, r.prediction.token, v);
    v.f7 = r.prediction.score;
    v.f8 = static_cast<int>(levenshtein(r.instance.masked_surface, r.prediction.token));
    if (store) v.f9 = store->cosine(r.instance.masked_surface, r.prediction.token);
    v.f10 = f10.bucket(lemma);
    v.f11 = f11.bucket(lemma);
    std::tie(v.f12, v.f13) = corpus.tfidf.mean_max(lemma);
    m.rows.push_back(std::move(v));
    m.keys.push_back({r.instance.doc_id, r.instance.sentence_index, r.instance.token_index, r.instance.masked_surface,
                      r.prediction.token, lemma, r.rank});
  }
  return m;
}

// ---- CSV

namespace {

const std::vector<std::string>& csv_header() {
  static const std::vector<std::string> h = {"doc_id", "sentence_index", "token_index", "masked", "prediction",
                                             "lemma",  "rank",           "f1",          "f2",     "f3",
                                             "f4",     "f5",             "f6",          "f7",     "f8",
                                             "f9",     "f10",            "f11",         "f12",    "f13",
                                             "f9_oov", "label"};
  return h;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// RFC 4180 records; a quoted field may span lines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text, const std::string& source) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false;
  std::size_t line = 1;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started && field.empty()) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_field();
      rows.push_back(std::move(row));
      row.clear();
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", source, line);
  if (field_started || !row.empty()) {
    end_field();
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
T parse_number(const std::string& s, const std::string& source, std::size_t line, const char* col) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(std::string("bad value '") + s + "' in column " + col, source, line);
  }
  return v;
}

}  // namespace

std::string to_csv(const FeatureMatrix& m) {
  std::string out = join(csv_header(), ",") + "\n";
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    const auto& k = m.keys[i];
    const auto& v = m.rows[i];
    std::vector<std::string> f = {csv_field(k.doc_id),
                                  std::to_string(k.sentence_index),
                                  std::to_string(k.token_index),
                                  csv_field(k.masked_surface),
                                  csv_field(k.prediction),
                                  csv_field(k.lemma),
                                  std::to_string(k.rank),
                                  std::string(mask::to_string(v.f1)),
                                  v.f2,
                                  v.f3 ? "true" : "false",
                                  std::to_string(v.f4),
                                  std::to_string(v.f5),
                                  format_double(v.f6),
                                  format_double(v.f7),
                                  std::to_string(v.f8),
                                  v.f9 ? format_double(*v.f9) : "?",
                                  std::to_string(v.f10),
                                  std::to_string(v.f11),
                                  format_double(v.f12),
                                  format_double(v.f13),
                                  v.f9 ? "0" : "1",
                                  !v.label ? "?" : (*v.label ? "relevant" : "non-relevant")};
    out += join(f, ",") + "\n";
  }
  return out;
}

FeatureMatrix from_csv(std::string_view text, const std::string& source) {
  auto rows = parse_csv(text, source);
  if (rows.empty() || rows[0] != csv_header()) throw SchemaMismatch(source + ": unexpected feature matrix header");
  FeatureMatrix m;
  const auto& f2_values = schema()[1].values;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& c = rows[r];
    std::size_t line = r + 1;
    if (c.size() == 1 && c[0].empty()) continue;
    if (c.size() != csv_header().size()) throw ParseError("wrong number of fields", source, line);
    RowKey k;
    k.doc_id = c[0];
    k.sentence_index = parse_number<std::size_t>(c[1], source, line, "sentence_index");
    k.token_index = parse_number<std::size_t>(c[2], source, line, "token_index");
    k.masked_surface = c[3];
    k.prediction = c[4];
    k.lemma = c[5];
    k.rank = parse_number<int>(c[6], source, line, "rank");
    FeatureVector v;
    try {
      v.f1 = mask::masked_pos_from_string(c[7]);
    } catch (const InvalidArgument&) {
      throw ParseError("bad f1 '" + c[7] + "'", source, line);
    }
    if (std::find(f2_values.begin(), f2_values.end(), c[8]) == f2_values.end())
      throw ParseError("bad f2 '" + c[8] + "'", source, line);
    v.f2 = c[8];
    if (c[9] != "true" && c[9] != "false") throw ParseError("bad f3 '" + c[9] + "'", source, line);
    v.f3 = c[9] == "true";
    v.f4 = parse_number<int>(c[10], source, line, "f4");
    v.f5 = parse_number<int>(c[11], source, line, "f5");
    v.f6 = parse_number<double>(c[12], source, line, "f6");
    v.f7 = parse_number<double>(c[13], source, line, "f7");
    v.f8 = parse_number<int>(c[14], source, line, "f8");
    if (c[15] != "?") v.f9 = parse_number<double>(c[15], source, line, "f9");
    v.f10 = parse_number<int>(c[16], source, line, "f10");
    v.f11 = parse_number<int>(c[17], source, line, "f11");
    v.f12 = parse_number<double>(c[18], source, line, "f12");
    v.f13 = parse_number<double>(c[19], source, line, "f13");
    if ((c[20] == "1") != !v.f9) throw ParseError("f9_oov disagrees with f9", source, line);
    if (c[21] == "relevant") {
      v.label = true;
    } else if (c[21] == "non-relevant") {
      v.label = false;
    } else if (c[21] != "?") {
      throw ParseError("bad label '" + c[21] + "'", source, line);
    }
    if (v.f10 < 0 || v.f10 > 9 || v.f11 < 0 || v.f11 > 9) throw ParseError("bucket outside 0..9", source, line);
    m.keys.push_back(std::move(k));
    m.rows.push_back(std::move(v));
  }
  return m;
}

namespace {

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".schema.json");
  return p;
}

}  // namespace

void save_matrix(const FeatureMatrix& m, const std::filesystem::path& csv_path) {
  write_file(csv_path, to_csv(m));
  json side = schema_json();
  side["fingerprint"] = m.fingerprint;
  side["doc_id"] = m.doc_id;
  side["seed"] = m.seed;
  side["rows"] = m.rows.size();
  side["warnings"] = m.warnings;
  write_file(sidecar_path(csv_path), side.dump(2) + "\n");
}

FeatureMatrix load_matrix(const std::filesystem::path& csv_path) {
  FeatureMatrix m = from_csv(read_file(csv_path), csv_path.string());
  auto side_path = sidecar_path(csv_path);
  if (std::filesystem::exists(side_path)) {
    json side = json::parse(read_file(side_path), nullptr, false);
    if (side.is_discarded() || !side.is_object()) throw ParseError("invalid schema sidecar", side_path.string());
    if (side.value("fingerprint", "") != schema_fingerprint())
      throw SchemaMismatch(side_path.string() + ": schema fingerprint " + side.value("fingerprint", "") +
                           " does not match " + schema_fingerprint());
    m.doc_id = side.value("doc_id", "");
    m.seed = side.value("seed", std::uint64_t{0});
    m.warnings = side.value("warnings", std::vector<std::string>{});
  }
  return m;
}

// ---- numeric encoding

const std::vector<std::string>& encoded_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : schema()) {
      if (c.kind == ColumnKind::kNominal) {
        for (const auto& v : c.values) n.push_back(c.name + "=" + v);
      } else {
        n.push_back(c.name);
        if (c.name == "f9") n.push_back("f9_oov");
      }
    }
    return n;
  }();
  return names;
}

std::vector<double> encode(const FeatureVector& v) {
  std::vector<double> x;
  x.reserve(encoded_names().size());
  x.push_back(v.f1 == mask::MaskedPos::kNoun);
  x.push_back(v.f1 == mask::MaskedPos::kVerb);
  for (const auto& t : schema()[1].values) x.push_back(v.f2 == t);
  x.push_back(v.f3);
  x.push_back(v.f4);
  x.push_back(v.f5);
  x.push_back(v.f6);
  x.push_back(v.f7);
  x.push_back(v.f8);
  x.push_back(v.f9.value_or(0.0));
  x.push_back(v.f9 ? 0.0 : 1.0);
  x.push_back(v.f10);
  x.push_back(v.f11);
  x.push_back(v.f12);
  x.push_back(v.f13);
  return x;
}

}  // namespace reqcomp::features
