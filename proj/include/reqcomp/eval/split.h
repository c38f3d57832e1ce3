#pragma once

#include <cstdint>
#include <set>
#include <string>

#include "reqcomp/nlp/types.h"

namespace reqcomp::eval {

struct DocumentSplit {
  std::string doc_id;
  std::uint64_t seed = 0;
  std::set<std::size_t> disclosed;  // sentence ordinals (h1)
  std::set<std::size_t> withheld;   // h2
};

// Seeded uniform partition of the sentences into halves whose sizes differ by
// at most one (the disclosed half gets the extra sentence). Throws
// InvalidArgument for fewer than two sentences.
DocumentSplit split_document(const nlp::AnnotatedDocument& doc, std::uint64_t seed);

}  // namespace reqcomp::eval
