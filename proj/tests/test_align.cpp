#include <doctest.h>

#include <string>
#include <vector>

#include "docsynth/align.hpp"
#include "docsynth/rng.hpp"
#include "docsynth/textgen.hpp"

using namespace docsynth;

namespace {

// Independent full-matrix DP oracle.
long dp_oracle(const std::string& a, const std::string& b) {
  std::vector<std::vector<long>> m(a.size() + 1, std::vector<long>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) m[i][0] = static_cast<long>(i);
  for (size_t j = 0; j <= b.size(); ++j) m[0][j] = static_cast<long>(j);
  for (size_t i = 1; i <= a.size(); ++i)
    for (size_t j = 1; j <= b.size(); ++j)
      m[i][j] = std::min({m[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1),
                          m[i - 1][j] + 1, m[i][j - 1] + 1});
  return m[a.size()][b.size()];
}

std::string random_string(Rng& rng, size_t max_len, const char* alphabet = "abcd ") {
  size_t alpha = std::strlen(alphabet);
  std::string s;
  size_t len = rng.next_below(max_len + 1);
  for (size_t i = 0; i < len; ++i) s += alphabet[rng.next_below(alpha)];
  return s;
}

std::string strip_gaps(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != kGapSentinel) out += c;
  return out;
}

void check_alignment_invariants(const Alignment& al, std::string_view src,
                                std::string_view tgt) {
  REQUIRE(al.aligned_src.size() == al.aligned_tgt.size());
  CHECK(strip_gaps(al.aligned_src) == src);
  CHECK(strip_gaps(al.aligned_tgt) == tgt);
  long mismatches = 0, gaps = 0;
  for (size_t i = 0; i < al.aligned_src.size(); ++i) {
    char s = al.aligned_src[i], t = al.aligned_tgt[i];
    REQUIRE(!(s == kGapSentinel && t == kGapSentinel));
    if (s == kGapSentinel || t == kGapSentinel)
      ++gaps;
    else if (s != t)
      ++mismatches;
  }
  CHECK(al.cost == mismatches + gaps);
}

// Corpus-like text with a controlled substitution rate that leaves word
// shapes mostly intact (no spaces touched, so anchors survive).
std::string perturb(const std::string& text, double rate, Rng& rng) {
  std::string out = text;
  for (char& c : out)
    if (c != ' ' && rng.next_double() < rate)
      c = static_cast<char>('a' + rng.next_below(26));
  return out;
}

}  // namespace

TEST_CASE("edit distance basics") {
  CHECK(edit_distance("same", "same") == 0);
  CHECK(edit_distance("room", "roorn") == 2);
  CHECK(edit_distance("", "abc") == 3);
  CHECK(edit_distance("abc", "") == 3);
}

TEST_CASE("edit distance agrees with the DP oracle") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    std::string a = random_string(rng, 50);
    std::string b = random_string(rng, 50);
    CHECK(edit_distance(a, b) == dp_oracle(a, b));
  }
}

TEST_CASE("needleman_wunsch on identical inputs") {
  Alignment al = needleman_wunsch("same text", "same text");
  CHECK(al.cost == 0);
  CHECK(al.aligned_src == "same text");
  CHECK(al.aligned_tgt == "same text");
}

TEST_CASE("needleman_wunsch aligns a dropped character to a gap") {
  Alignment al = needleman_wunsch("Cute cat", "Cute at");
  CHECK(al.cost == 1);
  check_alignment_invariants(al, "Cute cat", "Cute at");
  int gap_columns = 0;
  char gapped_src = 0;
  for (size_t i = 0; i < al.aligned_src.size(); ++i)
    if (al.aligned_tgt[i] == kGapSentinel) {
      ++gap_columns;
      gapped_src = al.aligned_src[i];
    }
  CHECK(gap_columns == 1);
  CHECK(gapped_src == 'c');
}

TEST_CASE("needleman_wunsch cost equals edit distance with valid alignments") {
  Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    std::string a = random_string(rng, 120);
    std::string b = random_string(rng, 120);
    Alignment al = needleman_wunsch(a, b);
    CHECK(al.cost == edit_distance(a, b));
    check_alignment_invariants(al, a, b);
  }
}

TEST_CASE("needleman_wunsch rejects the gap sentinel") {
  std::string bad("a\0b", 3);
  CHECK_THROWS_AS(needleman_wunsch(bad, "ab"), std::invalid_argument);
  CHECK_THROWS_AS(needleman_wunsch("ab", bad), std::invalid_argument);
  CHECK_THROWS_AS(anchored_align(bad, "ab"), std::invalid_argument);
}

TEST_CASE("find_anchors picks words unique to both sides") {
  std::vector<Anchor> anchors = find_anchors("a zebra b", "x zebra y");
  REQUIRE(anchors.size() == 1);
  CHECK(anchors[0].word == "zebra");
  CHECK(anchors[0].src_pos == 2);
  CHECK(anchors[0].tgt_pos == 2);

  // duplicated in src: excluded
  CHECK(find_anchors("dup x dup", "a dup b").empty());
}

TEST_CASE("find_anchors keeps only order-consistent anchors") {
  std::vector<Anchor> anchors = find_anchors("alpha beta", "beta alpha");
  CHECK(anchors.size() == 1);

  std::vector<Anchor> three = find_anchors("one two three", "one three two");
  REQUIRE(three.size() == 2);
  CHECK(three[0].word == "one");
}

TEST_CASE("anchored_align equals needleman_wunsch on small or anchorless input") {
  AlignParams params;
  params.max_fragment_chars = 16;
  Alignment a = anchored_align("short text", "short text", params);
  CHECK(a.cost == 0);

  // long input with no common unique words falls back to plain DP
  std::string left(600, 'a');
  std::string right(600, 'b');
  Alignment fallback = anchored_align(left, right, params);
  Alignment plain = needleman_wunsch(left, right, params);
  CHECK(fallback.cost == plain.cost);
}

TEST_CASE("anchored_align stays valid and near-optimal on noisy documents") {
  Rng rng(33);
  AlignParams params;
  params.max_fragment_chars = 64;
  int equal = 0;
  const int trials = 40;
  for (int i = 0; i < trials; ++i) {
    std::string src;
    for (int s = 0; s < 6; ++s)
      src += sample_sentences()[rng.next_below(sample_sentences().size())] + " ";
    std::string tgt = perturb(src, 0.03, rng);
    Alignment anchored = anchored_align(src, tgt, params);
    check_alignment_invariants(anchored, src, tgt);
    long optimal = edit_distance(src, tgt);
    CHECK(anchored.cost >= optimal);
    if (anchored.cost == optimal) ++equal;
  }
  CHECK(equal >= trials * 9 / 10);
}

TEST_CASE("error_rates definitions") {
  ErrorRates zero = error_rates("same", "same");
  CHECK(zero.cer == 0.0);
  CHECK(zero.wer == 0.0);

  ErrorRates rn = error_rates("room", "roorn");
  CHECK(rn.char_edits == 2);
  CHECK(rn.cer == doctest::Approx(0.5));
  CHECK(rn.word_edits == 1);
  CHECK(rn.wer == doctest::Approx(1.0));

  ErrorRates empty = error_rates("", "abc");
  CHECK(empty.cer == doctest::Approx(3.0));  // max(1, len) denominator
}

TEST_CASE("gap_metrics counts runs per side") {
  Alignment identity = needleman_wunsch("abc", "abc");
  GapMetrics none = gap_metrics(identity);
  CHECK(none.src_gap_runs == 0);
  CHECK(none.tgt_gap_runs == 0);
  CHECK(none.src_gap_chars == 0);
  CHECK(none.tgt_gap_chars == 0);

  GapMetrics cute = gap_metrics(needleman_wunsch("Cute cat", "Cute at"));
  CHECK(cute.tgt_gap_runs == 1);
  CHECK(cute.tgt_gap_chars == 1);
  CHECK(cute.src_gap_runs == 0);
  CHECK(cute.tgt_run_length_histogram.at(1) == 1);

  GapMetrics ab = gap_metrics(needleman_wunsch("ab", "b"));
  CHECK(ab.tgt_gap_runs == 1);
  CHECK(ab.tgt_gap_chars == 1);
}

TEST_CASE("propagate_labels through an identity alignment") {
  LabeledCorpus c;
  c.sentences.push_back({{"New", "York", "is", "big"}, {"B-LOC", "I-LOC", "O", "O"}});
  PlainText pt = to_plain_text(c);
  std::vector<std::string> tags = {"B-LOC", "I-LOC", "O", "O"};
  Alignment al = needleman_wunsch(pt.text, pt.text);
  std::vector<LabeledToken> out = propagate_labels(pt, tags, al, pt.text);
  REQUIRE(out.size() == 4);
  CHECK(out[0].tag == "B-LOC");
  CHECK(out[1].tag == "I-LOC");
  CHECK(out[2].tag == "O");
  CHECK(out[3].tag == "O");
}

TEST_CASE("propagate_labels repairs merged entity tokens") {
  LabeledCorpus c;
  c.sentences.push_back({{"New", "York", "is", "big"}, {"B-LOC", "I-LOC", "O", "O"}});
  PlainText pt = to_plain_text(c);
  std::vector<std::string> tags = {"B-LOC", "I-LOC", "O", "O"};
  std::string ocr = "NewYork is big";
  Alignment al = needleman_wunsch(pt.text, ocr);
  std::vector<LabeledToken> out = propagate_labels(pt, tags, al, ocr);
  REQUIRE(out.size() == 3);
  CHECK(out[0].token == "NewYork");
  CHECK(out[0].tag == "B-LOC");
  CHECK(out[1].tag == "O");
}

TEST_CASE("propagate_labels keeps split plain tokens outside entities") {
  LabeledCorpus c;
  c.sentences.push_back({{"to", "recognize", "her"}, {"O", "O", "O"}});
  PlainText pt = to_plain_text(c);
  std::vector<std::string> tags = {"O", "O", "O"};
  std::string ocr = "to rec- ognize her";
  Alignment al = needleman_wunsch(pt.text, ocr);
  std::vector<LabeledToken> out = propagate_labels(pt, tags, al, ocr);
  REQUIRE(out.size() == 4);
  CHECK(out[1].tag == "O");
  CHECK(out[2].tag == "O");
}

TEST_CASE("propagate_labels splits an entity across OCR tokens") {
  LabeledCorpus c;
  c.sentences.push_back({{"Washington", "spoke"}, {"B-PER", "O"}});
  PlainText pt = to_plain_text(c);
  std::vector<std::string> tags = {"B-PER", "O"};
  std::string ocr = "Washi ngton spoke";
  Alignment al = needleman_wunsch(pt.text, ocr);
  std::vector<LabeledToken> out = propagate_labels(pt, tags, al, ocr);
  REQUIRE(out.size() == 3);
  CHECK(out[0].tag == "B-PER");
  CHECK(out[1].tag == "I-PER");  // run repair inside one source entity
  CHECK(out[2].tag == "O");
}

TEST_CASE("propagate_labels validates its inputs") {
  LabeledCorpus c;
  c.sentences.push_back({{"a"}, {"O"}});
  PlainText pt = to_plain_text(c);
  Alignment al = needleman_wunsch("b", "b");
  CHECK_THROWS_AS(propagate_labels(pt, {"O"}, al, "b"), std::invalid_argument);
  CHECK_THROWS_AS(propagate_labels(pt, {}, needleman_wunsch("a", "a"), "a"),
                  std::invalid_argument);
}

TEST_CASE("alignment JSON round trip uses the visible gap symbol") {
  Alignment al = needleman_wunsch("Cute cat", "Cute at");
  std::string json = write_alignment(al);
  CHECK(json.find("\\u0000") == std::string::npos);
  CHECK(json.find("\xe2\x90\x80") != std::string::npos);
  Alignment back = parse_alignment(json);
  CHECK(back.aligned_src == al.aligned_src);
  CHECK(back.aligned_tgt == al.aligned_tgt);
  CHECK(back.cost == al.cost);
}

TEST_CASE("metrics serialize with their field names") {
  std::string rates = write_error_rates(error_rates("room", "roorn"));
  CHECK(rates.find("\"cer\"") != std::string::npos);
  CHECK(rates.find("\"word_edits\"") != std::string::npos);
  std::string gaps = write_gap_metrics(gap_metrics(needleman_wunsch("ab", "b")));
  CHECK(gaps.find("\"tgt_run_length_histogram\"") != std::string::npos);
}
