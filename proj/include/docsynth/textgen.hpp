#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "docsynth/corpus.hpp"

namespace docsynth {

// Sentences of the bundled public-domain sample text.
const std::vector<std::string>& sample_sentences();

// Draws the requested number of sentences (uniformly, with replacement) from
// the sample text. Tokens split on whitespace, every tag "O".
LabeledCorpus generate_corpus(int sentences, uint64_t seed);

}  // namespace docsynth
