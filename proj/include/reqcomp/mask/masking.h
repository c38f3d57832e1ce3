#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reqcomp/nlp/types.h"

namespace reqcomp::mask {

inline constexpr std::string_view kDefaultMaskToken = "[MASK]";

enum class MaskedPos { kNoun, kVerb };

std::string_view to_string(MaskedPos pos);
MaskedPos masked_pos_from_string(std::string_view s);
// Noun for NN*, verb for VB*, nothing otherwise (MD included).
std::optional<MaskedPos> masked_pos_for_tag(std::string_view tag);

struct MaskedInstance {
  std::string doc_id;
  std::size_t sentence_index = 0;  // Sentence::index of the source sentence
  std::size_t token_index = 0;     // position within that sentence
  std::string masked_surface;
  std::string masked_tag;
  MaskedPos masked_pos = MaskedPos::kNoun;
  std::string sentence_text;
  std::size_t offset = 0;  // byte offset of masked_surface within sentence_text
  std::string mask_token{kDefaultMaskToken};
  std::string rendered;

  bool operator==(const MaskedInstance&) const = default;
};

// One instance per noun/verb token, in document order. Sentences whose text
// already contains the mask placeholder are skipped: they cannot be rendered
// with exactly one placeholder.
std::vector<MaskedInstance> generate_masked_instances(const nlp::AnnotatedDocument& doc,
                                                      std::string_view mask_token = kDefaultMaskToken);

// Sentence text with the masked word replaced by mask_token. Throws
// InvalidArgument when the recorded offset no longer holds masked_surface.
std::string render_for_model(const MaskedInstance& instance, std::string_view mask_token);

// Sentence text with the masked word replaced by another word.
std::string substitute(const MaskedInstance& instance, std::string_view word);

std::size_t count_occurrences(std::string_view text, std::string_view needle);

}  // namespace reqcomp::mask
