#include "reqcomp/mask/masking.h"

#include "reqcomp/util/errors.h"

namespace reqcomp::mask {

std::string_view to_string(MaskedPos pos) { return pos == MaskedPos::kNoun ? "noun" : "verb"; }

MaskedPos masked_pos_from_string(std::string_view s) {
  if (s == "noun") return MaskedPos::kNoun;
  if (s == "verb") return MaskedPos::kVerb;
  throw InvalidArgument("masked_pos must be 'noun' or 'verb', got '" + std::string(s) + "'");
}

std::optional<MaskedPos> masked_pos_for_tag(std::string_view tag) {
  if (nlp::is_noun_tag(tag)) return MaskedPos::kNoun;
  if (nlp::is_verb_tag(tag)) return MaskedPos::kVerb;
  return std::nullopt;
}

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  if (needle.empty()) return 0;
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string_view::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

std::string substitute(const MaskedInstance& inst, std::string_view word) {
  const std::string& s = inst.sentence_text;
  if (inst.offset > s.size() || s.compare(inst.offset, inst.masked_surface.size(), inst.masked_surface) != 0) {
    throw InvalidArgument("masked word '" + inst.masked_surface + "' not found at offset " +
                          std::to_string(inst.offset) + " of sentence " + std::to_string(inst.sentence_index));
  }
  std::string out;
  out.reserve(s.size() + word.size());
  out.append(s, 0, inst.offset);
  out.append(word);
  out.append(s, inst.offset + inst.masked_surface.size(), std::string::npos);
  return out;
}

std::string render_for_model(const MaskedInstance& inst, std::string_view mask_token) {
  return substitute(inst, mask_token);
}

std::vector<MaskedInstance> generate_masked_instances(const nlp::AnnotatedDocument& doc, std::string_view mask_token) {
  std::vector<MaskedInstance> out;
  for (const auto& sentence : doc.sentences) {
    if (count_occurrences(sentence.text, mask_token) > 0) continue;
    for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
      const auto& tok = sentence.tokens[i];
      auto pos = masked_pos_for_tag(tok.pos);
      if (!pos) continue;
      MaskedInstance inst;
      inst.doc_id = doc.doc_id;
      inst.sentence_index = sentence.index;
      inst.token_index = i;
      inst.masked_surface = tok.surface;
      inst.masked_tag = tok.pos;
      inst.masked_pos = *pos;
      inst.sentence_text = sentence.text;
      inst.offset = tok.start - sentence.start;
      inst.mask_token = std::string(mask_token);
      inst.rendered = render_for_model(inst, mask_token);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

}  // namespace reqcomp::mask
