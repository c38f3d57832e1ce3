#include "reqcomp/eval/split.h"

#include <vector>

#include "reqcomp/util/errors.h"
#include "reqcomp/util/rng.h"

namespace reqcomp::eval {

DocumentSplit split_document(const nlp::AnnotatedDocument& doc, std::uint64_t seed) {
  if (doc.sentences.size() < 2)
    throw InvalidArgument("document '" + doc.doc_id + "' has " + std::to_string(doc.sentences.size()) +
                          " sentence(s); splitting needs at least 2");
  std::vector<std::size_t> ids;
  for (const auto& s : doc.sentences) ids.push_back(s.index);
  Rng rng(seed);
  rng.shuffle(std::span(ids));
  DocumentSplit out;
  out.doc_id = doc.doc_id;
  out.seed = seed;
  std::size_t half = (ids.size() + 1) / 2;
  out.disclosed.insert(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(half));
  out.withheld.insert(ids.begin() + static_cast<std::ptrdiff_t>(half), ids.end());
  return out;
}

}  // namespace reqcomp::eval
