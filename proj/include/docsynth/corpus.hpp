#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace docsynth {

// Character reserved as the alignment gap marker; forbidden in all text
// that enters the toolkit (corpus tokens, training pairs, OCR output).
constexpr char kGapSentinel = '\0';

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One tokenized sentence with BIO tags ("B-ORG", "I-LOC", "O", ...).
struct LabeledSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  bool operator==(const LabeledSentence&) const = default;
};

struct LabeledCorpus {
  std::vector<LabeledSentence> sentences;
  std::string origin;  // provenance only, not compared
};

// Clean/noisy text pair for restoration training.
struct TrainingPair {
  std::string gt;
  std::string ocr;
  bool operator==(const TrainingPair&) const = default;
};

struct EntityScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Half-open character span [begin, end) into a plain-text rendering.
struct TokenSpan {
  size_t begin = 0;
  size_t end = 0;
  bool operator==(const TokenSpan&) const = default;
};

struct PlainText {
  std::string text;              // tokens joined by ' ', sentences by '\n'
  std::vector<TokenSpan> spans;  // one per token, in corpus order
};

// CoNLL column format: token is the first column, tag the last, middle
// columns ignored. Blank line terminates a sentence; "-DOCSTART-" lines are
// skipped. Rejects invalid UTF-8 and embedded NUL bytes.
LabeledCorpus parse_conll(std::string_view text);

// Canonical form: "token tag\n" per token, blank line after each sentence.
std::string write_conll(const LabeledCorpus& corpus);

PlainText to_plain_text(const LabeledCorpus& corpus);

// Exact span+type entity F1. Both corpora must have the same sentence count.
// Both sides empty scores 1; one side empty scores 0.
EntityScore entity_f1(const LabeledCorpus& gold, const LabeledCorpus& pred);

// JSON Lines, one {"gt": ..., "ocr": ...} object per line.
std::string write_training_pairs(const std::vector<TrainingPair>& pairs);
std::vector<TrainingPair> read_training_pairs(std::string_view text);

// Entity span in a single sentence: tokens [begin, end) of the given type.
struct EntitySpan {
  size_t sentence = 0;
  size_t begin = 0;
  size_t end = 0;
  std::string type;
  bool operator==(const EntitySpan&) const = default;
  auto operator<=>(const EntitySpan&) const = default;
};

// Maximal B-X (I-X)* runs. Orphan I-X tags (no valid start) are ignored.
std::vector<EntitySpan> extract_entities(const LabeledCorpus& corpus);

bool is_valid_utf8(std::string_view bytes);

}  // namespace docsynth
