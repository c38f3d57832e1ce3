#include "reqcomp/nlp/pipeline.h"

#include "reqcomp/util/io.h"

namespace reqcomp::nlp {

PipelineAssets PipelineAssets::in(const std::filesystem::path& data_dir) {
  auto nlp = data_dir / "nlp";
  return {nlp / "abbreviations.txt", nlp / "tagger.weights", nlp / "lexicon.txt",
          nlp / "lemma_exceptions.txt", nlp / "base_forms.txt"};
}

Pipeline::Pipeline(Tokenizer tokenizer, PosTagger tagger, Lemmatizer lemmatizer)
    : tokenizer_(std::move(tokenizer)), tagger_(std::move(tagger)), lemmatizer_(std::move(lemmatizer)) {}

Pipeline Pipeline::load(const PipelineAssets& a) {
  PosTagger tagger = !a.tagger_weights.empty() && std::filesystem::exists(a.tagger_weights)
                         ? PosTagger::load(a.tagger_weights, a.lexicon)
                         : PosTagger(Lexicon::load(a.lexicon));
  return Pipeline(Tokenizer::from_file(a.abbreviations), std::move(tagger),
                  Lemmatizer::load(a.lemma_exceptions, a.base_forms));
}

const Pipeline& Pipeline::shared() {
  static const Pipeline instance = load(PipelineAssets::in(default_data_dir()));
  return instance;
}

std::vector<std::string> Pipeline::split_sentences(std::string_view text) const {
  auto tokens = tokenizer_.tokenize(text);
  std::vector<std::string> out;
  for (const auto& span : nlp::split_sentences(text, tokens)) {
    out.emplace_back(text.substr(span.start, span.end - span.start));
  }
  return out;
}

void Pipeline::annotate_tokens(std::vector<Token>& tokens) const {
  tagger_.tag(tokens);
  for (auto& t : tokens) t.lemma = lemmatizer_.lemmatize(t.surface, t.pos);
}

AnnotatedDocument Pipeline::annotate(std::string doc_id, std::string_view text) const {
  AnnotatedDocument doc;
  doc.doc_id = std::move(doc_id);
  auto tokens = tokenizer_.tokenize(text);
  std::size_t index = 0;
  for (const auto& span : nlp::split_sentences(text, tokens)) {
    Sentence s;
    s.index = index++;
    s.start = span.start;
    s.text = std::string(text.substr(span.start, span.end - span.start));
    for (std::size_t i = span.first; i < span.last; ++i) {
      s.tokens.push_back(tokens[i]);
    }
    annotate_tokens(s.tokens);
    doc.sentences.push_back(std::move(s));
  }
  doc.rebuild_term_set();
  return doc;
}

}  // namespace reqcomp::nlp
