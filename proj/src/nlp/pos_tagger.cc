#include "reqcomp/nlp/pos_tagger.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "reqcomp/nlp/tokenizer.h"
#include "reqcomp/util/errors.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/rng.h"
#include "reqcomp/util/text.h"

namespace reqcomp::nlp {
namespace {

// Clause state after tag t: commas and colons open a new clause.
bool clause_verb(bool seen, std::string_view t) {
  if (t == "COMMA" || t == "COLON") return false;
  return seen || t == "MD" || t == "VBZ" || t == "VBP" || t == "VBD";
}

// Includes IN and RB: their noun/verb readings ("like", "back") are rare in
// requirements, while a model slip on them creates a spurious mask.
bool is_closed_class(std::string_view tag) {
  static const std::set<std::string_view> kClosed{"CC", "DT", "EX", "IN", "PDT", "PRP", "PRP$",
                                                  "RB", "TO", "WDT", "WP", "WP$", "WRB"};
  return kClosed.count(tag) > 0;
}

constexpr const char* kStart[] = {"-START-", "-START2-"};
constexpr const char* kEnd[] = {"-END-", "-END2-"};

bool has_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}
bool has_alnum(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t b = pos;
    char32_t c = next_code_point(s, pos);
    if (c < 0x80) {
      if ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return true;
    } else if (is_alphabetic(s.substr(b, pos - b))) {
      return true;
    }
  }
  return false;
}

std::string normalize(std::string_view word) {
  if (word.find('-') != std::string_view::npos && word[0] != '-') return "!HYPHEN";
  if (word.size() == 4 && std::all_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return "!YEAR";
  if (word[0] >= '0' && word[0] <= '9') return "!DIGITS";
  return to_lower(word);
}

std::string suffix(std::string_view lower, std::size_t n) {
  return std::string(lower.size() <= n ? lower : lower.substr(lower.size() - n));
}

std::string shape(std::string_view w, bool first) {
  bool upper0 = w[0] >= 'A' && w[0] <= 'Z';
  bool all_upper = std::all_of(w.begin(), w.end(), [](char c) { return !(c >= 'a' && c <= 'z'); });
  std::string s;
  if (has_digit(w))
    s = "d";
  else if (upper0 && all_upper && w.size() > 1)
    s = "XX";
  else if (upper0)
    s = "Xx";
  else
    s = "x";
  return s + (first ? "^" : "");
}

const std::map<std::string, std::string, std::less<>>& closed_class() {
  static const std::map<std::string, std::string, std::less<>> table = [] {
    std::map<std::string, std::string, std::less<>> t;
    auto put = [&](const char* words, const char* tag) {
      for (const auto& w : split_whitespace(words)) t[w] = tag;
    };
    put("the a an this these those each every all some any no another", "DT");
    put("shall should must will would can could may might", "MD");
    put("to", "TO");
    put("and or but nor", "CC");
    put("in on at of for with by from into onto over under between through during within without "
        "about against among after before via per upon across than if because while unless until "
        "whether since although though",
        "IN");
    put("i you he she it we they me him her us them", "PRP");
    put("his its their our your my", "PRP$");
    put("which that", "WDT");
    put("who whom", "WP");
    put("when where how why", "WRB");
    put("there", "EX");
    put("is has does", "VBZ");
    put("are have do am", "VBP");
    put("was were had did", "VBD");
    put("be", "VB");
    put("been", "VBN");
    put("being", "VBG");
    put("not", "RB");
    return t;
  }();
  return table;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lexicon

Lexicon Lexicon::load(const std::filesystem::path& path) {
  Lexicon lex;
  std::size_t n = 0;
  for (const auto& line : read_list_file(path)) {
    ++n;
    auto parts = split_whitespace(line);
    if (parts.size() < 2) throw ParseError("expected 'word TAG'", path.string(), n);
    if (!is_valid_tag(parts[1])) throw ParseError("unknown tag " + parts[1], path.string(), n);
    lex.add(parts[0], parts[1]);
  }
  return lex;
}

void Lexicon::add(std::string word, std::string tag) { tags_.emplace(std::move(word), std::move(tag)); }

std::string_view Lexicon::lookup(std::string_view word) const {
  if (auto it = tags_.find(std::string(word)); it != tags_.end()) return it->second;
  if (auto it = tags_.find(to_lower(word)); it != tags_.end()) return it->second;
  return {};
}

std::vector<TaggedSentence> read_tagged_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tagged corpus " + path.string());
  std::vector<TaggedSentence> out;
  TaggedSentence cur;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string_view t = trim(line);
    if (t.empty()) {
      if (!cur.words.empty()) out.push_back(std::move(cur));
      cur = {};
      continue;
    }
    auto tab = t.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected 'word<TAB>TAG'", path.string(), n);
    std::string tag(trim(t.substr(tab + 1)));
    if (!is_valid_tag(tag)) throw ParseError("unknown tag " + tag, path.string(), n);
    cur.words.emplace_back(t.substr(0, tab));
    cur.tags.push_back(std::move(tag));
  }
  if (!cur.words.empty()) out.push_back(std::move(cur));
  return out;
}

// ---------------------------------------------------------------------------
// Tagger

struct PosTagger::Context {
  std::vector<std::string> words;     // padded: 2 start + n + 2 end
  std::vector<std::string> norm;      // padded like words
  std::vector<std::string> lex;       // padded like words
  std::size_t n = 0;
};

PosTagger::PosTagger(Lexicon lexicon) : lexicon_(std::move(lexicon)) {}

std::string PosTagger::rule_tag(std::string_view w) {
  if (w.empty()) return "PUNCT";
  if (w == ",") return "COMMA";
  if (is_terminator(w)) return "PERIOD";
  if (w == ";" || w == ":" || w == "--" || w == "\xE2\x80\x94" || w == "\xE2\x80\x93") return "COLON";
  if (w == "-") return "HYPH";
  if (w == "(" || w == "[" || w == "{") return "LRB";
  if (w == ")" || w == "]" || w == "}") return "RRB";
  if (w == "\"" || w == "'" || w == "`" || w == "``" || w == "''" || w == "\xE2\x80\x9C" ||
      w == "\xE2\x80\x9D" || w == "\xE2\x80\x98" || w == "\xE2\x80\x99" || w == "\xC2\xAB" || w == "\xC2\xBB")
    return "QUOTE";
  std::string lower = to_lower(w);
  if (lower == "n't" || lower == "n\xE2\x80\x99t") return "RB";
  if (lower == "'s" || lower == "\xE2\x80\x99s") return "POS";
  if (lower == "'re" || lower == "'ve" || lower == "'m") return "VBP";
  if (lower == "'ll" || lower == "'d") return "MD";
  if (w[0] >= '0' && w[0] <= '9' &&
      std::all_of(w.begin(), w.end(), [](char c) { return (c >= '0' && c <= '9') || c == '.' || c == ',' || c == ':' || c == '/'; }))
    return "CD";
  if (!has_alnum(w)) {
    static const std::string_view kSymbols = "$#%&+=<>*@/\\|^~";
    if (w.find_first_not_of(kSymbols) == std::string_view::npos) return "SYM";
    return "PUNCT";
  }
  return {};
}

std::vector<std::string> PosTagger::features(const Context& ctx, std::size_t i, std::string_view prev,
                                             std::string_view prev2, bool verb_seen) const {
  // i indexes the padded arrays.
  const std::string& w = ctx.norm[i];
  const std::string lower = to_lower(ctx.words[i]);
  std::string p(prev), p2(prev2);
  std::vector<std::string> f;
  f.reserve(24);
  f.emplace_back("bias");
  f.push_back("s3|" + suffix(lower, 3));
  f.push_back("s2|" + suffix(lower, 2));
  f.push_back("s1|" + suffix(lower, 1));
  f.push_back("p1|" + lower.substr(0, 1));
  f.push_back("t-1|" + p);
  f.push_back("t-2|" + p2);
  f.push_back("t-1t-2|" + p + "|" + p2);
  f.push_back("w|" + w);
  f.push_back("t-1w|" + p + "|" + w);
  f.push_back("w-1|" + ctx.norm[i - 1]);
  f.push_back("s3-1|" + suffix(ctx.norm[i - 1], 3));
  f.push_back("w-2|" + ctx.norm[i - 2]);
  f.push_back("w+1|" + ctx.norm[i + 1]);
  f.push_back("s3+1|" + suffix(ctx.norm[i + 1], 3));
  f.push_back("w+2|" + ctx.norm[i + 2]);
  f.push_back("lex|" + ctx.lex[i]);
  f.push_back("lex+1|" + ctx.lex[i + 1]);
  f.push_back("lex+2|" + ctx.lex[i + 2]);
  f.push_back("t-1lex|" + p + "|" + ctx.lex[i]);
  f.push_back("lexlex+1|" + ctx.lex[i] + "|" + ctx.lex[i + 1]);
  f.push_back("t-1lex+1|" + p + "|" + ctx.lex[i + 1]);
  f.push_back("shape|" + shape(ctx.words[i], i == 2));
  // whether the current clause already has a finite verb or modal
  std::string vs = verb_seen ? "1" : "0";
  f.push_back("vseen|" + vs);
  f.push_back("vseen-lex|" + vs + "|" + ctx.lex[i]);
  f.push_back("vseen-t-1-lex+1|" + vs + "|" + p + "|" + ctx.lex[i + 1]);
  return f;
}

std::string PosTagger::predict(const std::vector<std::string>& feats) const {
  std::vector<double> scores(classes_.size(), 0.0);
  for (const auto& f : feats) {
    auto it = weights_.find(f);
    if (it == weights_.end()) continue;
    for (const auto& [c, w] : it->second) scores[c] += w;
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return classes_[best];
}

std::string PosTagger::fallback_tag(const Context& ctx, std::size_t i, std::string_view prev) const {
  const std::string& word = ctx.words[i];
  std::string lower = to_lower(word);
  const auto& closed = closed_class();
  if (auto it = closed.find(lower); it != closed.end()) {
    if (lower == "that" && (prev == "VB" || prev == "VBZ" || prev == "VBP" || prev == "VBD")) return "IN";
    return it->second;
  }
  std::string_view lex = ctx.lex[i] == "?" ? std::string_view{} : std::string_view(ctx.lex[i]);
  bool after_aux = prev == "MD" || prev == "TO";
  if (after_aux && (lex == "VB" || lex == "VBP" || lex == "NN" || (lex.empty() && !has_digit(word))))
    return "VB";
  bool capital = word[0] >= 'A' && word[0] <= 'Z';
  if (!lex.empty()) {
    return std::string(lex);
  }
  if (capital && i > 2) return "NNP";
  auto ends = [&](std::string_view s) { return lower.size() > s.size() + 1 && lower.ends_with(s); };
  if (ends("ing")) return "VBG";
  if (ends("ed")) {
    bool aux = prev == "VBZ" || prev == "VBP" || prev == "VBD" || prev == "VB" || prev == "VBN";
    return aux ? "VBN" : "VBD";
  }
  if (ends("ly")) return "RB";
  for (const char* s : {"ous", "ive", "ful", "less", "able", "ible", "al", "ic"}) {
    if (ends(s)) return "JJ";
  }
  if (ends("s") && !ends("ss") && !ends("us") && !ends("is")) return "NNS";
  return "NN";
}

std::vector<std::string> PosTagger::tag(const std::vector<std::string>& words) const {
  Context ctx;
  ctx.n = words.size();
  ctx.words = {kStart[0], kStart[1]};
  ctx.words.insert(ctx.words.end(), words.begin(), words.end());
  ctx.words.push_back(kEnd[0]);
  ctx.words.push_back(kEnd[1]);
  for (std::size_t i = 0; i < ctx.words.size(); ++i) {
    bool pad = i < 2 || i >= ctx.n + 2;
    ctx.norm.push_back(pad ? ctx.words[i] : normalize(ctx.words[i]));
    std::string_view lt = pad ? std::string_view{} : lexicon_.lookup(ctx.words[i]);
    ctx.lex.emplace_back(lt.empty() ? (pad ? ctx.words[i] : std::string("?")) : std::string(lt));
  }
  std::vector<std::string> out;
  out.reserve(ctx.n);
  std::string prev = kStart[0], prev2 = kStart[1];
  bool verb_seen = false;
  for (std::size_t k = 0; k < ctx.n; ++k) {
    std::size_t i = k + 2;
    std::string t = rule_tag(ctx.words[i]);
    if (t.empty()) {
      if (auto it = tagdict_.find(ctx.words[i]); it != tagdict_.end()) {
        t = it->second;
      } else if (has_model()) {
        t = predict(features(ctx, i, prev, prev2, verb_seen));
        // A function word never heads a noun or verb, whatever the context says.
        if ((is_noun_tag(t) || is_verb_tag(t)) && is_closed_class(ctx.lex[i])) t = ctx.lex[i];
      } else {
        t = fallback_tag(ctx, i, prev);
      }
    }
    verb_seen = clause_verb(verb_seen, t);
    prev2 = std::move(prev);
    prev = t;
    out.push_back(std::move(t));
  }
  return out;
}

void PosTagger::tag(std::vector<Token>& tokens) const {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) words.push_back(t.surface);
  auto tags = tag(words);
  for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].pos = std::move(tags[i]);
}

// ---------------------------------------------------------------------------
// Training

namespace {

struct Param {
  std::uint8_t cls;
  double weight = 0;
  double total = 0;
  long stamp = 0;
};

}  // namespace

PosTagger PosTagger::train(const std::vector<TaggedSentence>& corpus, Lexicon lexicon,
                           const TaggerTrainingOptions& options) {
  PosTagger tagger(std::move(lexicon));

  std::set<std::string> classes;
  std::map<std::string, std::map<std::string, int>> counts;
  for (const auto& s : corpus) {
    if (s.words.size() != s.tags.size()) throw InvalidArgument("tagged sentence has mismatched lengths");
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      if (!rule_tag(s.words[i]).empty()) continue;
      classes.insert(s.tags[i]);
      counts[s.words[i]][s.tags[i]]++;
    }
  }
  if (classes.empty()) throw InvalidArgument("training corpus has no taggable words");
  if (classes.size() > 255) throw InvalidArgument("too many tag classes");
  tagger.classes_.assign(classes.begin(), classes.end());
  std::map<std::string, std::uint8_t> class_index;
  for (std::size_t c = 0; c < tagger.classes_.size(); ++c) class_index[tagger.classes_[c]] = static_cast<std::uint8_t>(c);

  for (const auto& [word, tags] : counts) {
    int total = 0, best = 0;
    std::string best_tag;
    for (const auto& [tag, n] : tags) {
      total += n;
      if (n > best) {
        best = n;
        best_tag = tag;
      }
    }
    if (total >= options.tagdict_min_count && static_cast<double>(best) / total >= options.tagdict_min_ratio)
      tagger.tagdict_[word] = best_tag;
  }

  std::unordered_map<std::string, std::vector<Param>> params;
  long instances = 0;
  const std::size_t nclass = tagger.classes_.size();
  auto predict_dense = [&](const std::vector<std::string>& feats) {
    std::vector<double> scores(nclass, 0.0);
    for (const auto& f : feats) {
      auto it = params.find(f);
      if (it == params.end()) continue;
      for (const auto& p : it->second) scores[p.cls] += p.weight;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < nclass; ++c) {
      if (scores[c] > scores[best]) best = c;
    }
    return best;
  };
  auto bump = [&](const std::string& f, std::uint8_t cls, double delta) {
    auto& vec = params[f];
    auto it = std::find_if(vec.begin(), vec.end(), [&](const Param& p) { return p.cls == cls; });
    if (it == vec.end()) {
      vec.push_back(Param{cls, 0, 0, instances});
      it = vec.end() - 1;
    }
    it->total += static_cast<double>(instances - it->stamp) * it->weight;
    it->stamp = instances;
    it->weight += delta;
  };

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(options.seed);
  for (int iter = 0; iter < options.iterations; ++iter) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t si : order) {
      const auto& s = corpus[si];
      Context ctx;
      ctx.n = s.words.size();
      ctx.words = {kStart[0], kStart[1]};
      ctx.words.insert(ctx.words.end(), s.words.begin(), s.words.end());
      ctx.words.push_back(kEnd[0]);
      ctx.words.push_back(kEnd[1]);
      for (std::size_t i = 0; i < ctx.words.size(); ++i) {
        bool pad = i < 2 || i >= ctx.n + 2;
        ctx.norm.push_back(pad ? ctx.words[i] : normalize(ctx.words[i]));
        std::string_view lt = pad ? std::string_view{} : tagger.lexicon_.lookup(ctx.words[i]);
        ctx.lex.emplace_back(lt.empty() ? (pad ? ctx.words[i] : std::string("?")) : std::string(lt));
      }
      std::string prev = kStart[0], prev2 = kStart[1];
      bool verb_seen = false;
      for (std::size_t k = 0; k < ctx.n; ++k) {
        std::size_t i = k + 2;
        std::string guess = rule_tag(ctx.words[i]);
        if (guess.empty()) {
          if (auto it = tagger.tagdict_.find(ctx.words[i]); it != tagger.tagdict_.end()) {
            guess = it->second;
          } else {
            auto feats = tagger.features(ctx, i, prev, prev2, verb_seen);
            std::size_t g = predict_dense(feats);
            guess = tagger.classes_[g];
            ++instances;
            const std::string& truth = s.tags[k];
            if (guess != truth) {
              std::uint8_t t = class_index.at(truth);
              for (const auto& f : feats) {
                bump(f, t, 1.0);
                bump(f, static_cast<std::uint8_t>(g), -1.0);
              }
            }
          }
        }
        verb_seen = clause_verb(verb_seen, guess);
        prev2 = std::move(prev);
        prev = guess;
      }
    }
  }

  for (auto& [f, vec] : params) {
    Weights w;
    for (auto& p : vec) {
      double total = p.total + static_cast<double>(instances - p.stamp) * p.weight;
      double avg = instances > 0 ? total / static_cast<double>(instances) : 0.0;
      if (std::abs(avg) >= options.prune_below) w.emplace_back(p.cls, static_cast<float>(avg));
    }
    if (!w.empty()) {
      std::sort(w.begin(), w.end());
      tagger.weights_.emplace(f, std::move(w));
    }
  }
  return tagger;
}

void PosTagger::save(const std::filesystem::path& path) const {
  std::ostringstream out;
  out << "# averaged-perceptron POS tagger weights\n";
  out << "version 1\n";
  out << "classes";
  for (const auto& c : classes_) out << ' ' << c;
  out << '\n';
  std::vector<std::pair<std::string, std::string>> dict(tagdict_.begin(), tagdict_.end());
  std::sort(dict.begin(), dict.end());
  for (const auto& [w, t] : dict) out << "tagdict " << w << ' ' << t << '\n';
  std::vector<const std::string*> keys;
  keys.reserve(weights_.size());
  for (const auto& [f, _] : weights_) keys.push_back(&f);
  std::sort(keys.begin(), keys.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
  char buf[32];
  for (const std::string* f : keys) {
    out << "w " << *f;
    for (const auto& [c, w] : weights_.at(*f)) {
      std::snprintf(buf, sizeof buf, "%.5g", static_cast<double>(w));
      out << ' ' << static_cast<int>(c) << ':' << buf;
    }
    out << '\n';
  }
  write_file(path, out.str());
}

PosTagger PosTagger::load(const std::filesystem::path& weights, const std::filesystem::path& lexicon) {
  PosTagger tagger(Lexicon::load(lexicon));
  std::ifstream in(weights);
  if (!in) throw ConfigError("cannot open tagger weights " + weights.string());
  std::string line;
  std::size_t n = 0;
  bool versioned = false;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "version") {
      int v = 0;
      ls >> v;
      if (v != 1) throw ParseError("unsupported weights version", weights.string(), n);
      versioned = true;
    } else if (kind == "classes") {
      std::string c;
      while (ls >> c) {
        if (!is_valid_tag(c)) throw ParseError("unknown tag " + c, weights.string(), n);
        tagger.classes_.push_back(c);
      }
    } else if (kind == "tagdict") {
      std::string w, t;
      if (!(ls >> w >> t) || !is_valid_tag(t)) throw ParseError("bad tagdict entry", weights.string(), n);
      tagger.tagdict_[w] = t;
    } else if (kind == "w") {
      std::string f, cell;
      if (!(ls >> f)) throw ParseError("missing feature", weights.string(), n);
      Weights ws;
      while (ls >> cell) {
        auto colon = cell.find(':');
        if (colon == std::string::npos) throw ParseError("bad weight cell", weights.string(), n);
        int c = std::stoi(cell.substr(0, colon));
        if (c < 0 || static_cast<std::size_t>(c) >= tagger.classes_.size())
          throw ParseError("class index out of range", weights.string(), n);
        ws.emplace_back(static_cast<std::uint8_t>(c), std::stof(cell.substr(colon + 1)));
      }
      tagger.weights_.emplace(std::move(f), std::move(ws));
    } else {
      throw ParseError("unknown record '" + kind + "'", weights.string(), n);
    }
  }
  if (!versioned || tagger.classes_.empty()) throw ParseError("missing header", weights.string(), 1);
  return tagger;
}

}  // namespace reqcomp::nlp
