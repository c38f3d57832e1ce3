// Builds a provider fixture for one document from a hand-written table of
// predictions per masked word, so example documents can run without a model.
//
//   fixture_from_table --input doc.txt --table table.tsv --out dir [--doc-id id] [--k 15]
//
// Table lines: masked_word<TAB>pred1 pred2 ... (best first). Scores fall
// linearly from 0.5 by rank. Every masked word must be listed.
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "reqcomp/mask/masking.h"
#include "reqcomp/mlm/provider.h"
#include "reqcomp/nlp/pipeline.h"
#include "reqcomp/util/io.h"
#include "reqcomp/util/text.h"

using namespace reqcomp;

int main(int argc, char** argv) {
  CLI::App app{"fixture_from_table"};
  std::string input, table, out, doc_id;
  int k = 15;
  app.add_option("--input", input)->required();
  app.add_option("--table", table)->required();
  app.add_option("--out", out)->required();
  app.add_option("--doc-id", doc_id);
  app.add_option("--k", k);
  CLI11_PARSE(app, argc, argv);
  if (doc_id.empty()) doc_id = std::filesystem::path(input).stem().string();

  std::map<std::string, std::vector<std::string>> rows;
  for (const auto& line : read_list_file(table)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      std::cerr << "bad table line: " << line << "\n";
      return 2;
    }
    rows[line.substr(0, tab)] = split_whitespace(line.substr(tab + 1));
  }

  auto doc = nlp::Pipeline::shared().annotate(doc_id, read_file(input));
  mlm::FixtureStore store;
  int missing = 0;
  for (const auto& inst : mask::generate_masked_instances(doc)) {
    auto it = rows.find(inst.masked_surface);
    if (it == rows.end() || static_cast<int>(it->second.size()) < k) {
      std::cerr << "need " << k << " predictions for '" << inst.masked_surface << "' (" << inst.masked_tag << ")\n";
      ++missing;
      continue;
    }
    std::vector<mlm::Prediction> preds;
    for (int r = 0; r < k; ++r) preds.push_back({it->second[static_cast<std::size_t>(r)], 0.5 - 0.02 * r});
    store.record(inst, k, preds);
  }
  if (missing) return 1;
  store.save(out);
  std::cout << store.size() << " entries\n";
  return 0;
}
