// Trains the averaged-perceptron POS tagger from a "word<TAB>TAG" corpus.
#include <iostream>

#include "CLI11.hpp"
#include "reqcomp/nlp/pos_tagger.h"
#include "reqcomp/util/errors.h"

int main(int argc, char** argv) {
  CLI::App app{"Train the POS tagger weights file"};
  std::string corpus, lexicon, out;
  reqcomp::nlp::TaggerTrainingOptions opts;
  app.add_option("--corpus", corpus, "Tagged training corpus")->required()->check(CLI::ExistingFile);
  app.add_option("--lexicon", lexicon, "Word/tag lexicon")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out, "Output weights file")->required();
  app.add_option("--iterations", opts.iterations, "Training epochs")->capture_default_str();
  app.add_option("--seed", opts.seed, "Shuffle seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  try {
    auto sentences = reqcomp::nlp::read_tagged_corpus(corpus);
    std::cerr << "training on " << sentences.size() << " sentences\n";
    auto tagger = reqcomp::nlp::PosTagger::train(sentences, reqcomp::nlp::Lexicon::load(lexicon), opts);
    tagger.save(out);
  } catch (const reqcomp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
