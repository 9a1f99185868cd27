#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "docsynth/corpus.hpp"

namespace docsynth {

// Gap-padded global character alignment. Gap positions hold kGapSentinel;
// stripping them from either side recovers the original input. cost equals
// the number of mismatch columns plus the number of gap columns.
struct Alignment {
  std::string aligned_src;
  std::string aligned_tgt;
  long cost = 0;
};

struct AlignParams {
  // Inputs whose combined length stays under twice this bound are aligned
  // with plain dynamic programming; longer ones split at anchor words.
  int max_fragment_chars = 400;
};

struct ErrorRates {
  double cer = 0.0;
  double wer = 0.0;
  long char_edits = 0;
  long word_edits = 0;
};

struct GapMetrics {
  long src_gap_runs = 0;
  long tgt_gap_runs = 0;
  long src_gap_chars = 0;
  long tgt_gap_chars = 0;
  std::map<long, long> src_run_length_histogram;
  std::map<long, long> tgt_run_length_histogram;
};

// A word unique to both texts, with its character offset in each.
struct Anchor {
  std::string word;
  size_t src_pos = 0;
  size_t tgt_pos = 0;
};

// Unit-cost Levenshtein distance over characters.
long edit_distance(std::string_view a, std::string_view b);

// Optimal global alignment, match 0 / mismatch 1 / gap 1, deterministic
// traceback preferring diagonal, then gap-in-target, then gap-in-source.
// Inputs containing the gap sentinel are rejected.
Alignment needleman_wunsch(std::string_view src, std::string_view tgt,
                           const AlignParams& params = {});

// Words occurring exactly once in both texts, thinned to the longest
// subsequence that is order-consistent on both sides.
std::vector<Anchor> find_anchors(std::string_view src, std::string_view tgt);

// Recursive anchored alignment: anchors align to themselves, the fragments
// between them recurse. Falls back to needleman_wunsch for short inputs or
// when no anchors exist. Cost is an upper bound on the optimal cost.
Alignment anchored_align(std::string_view src, std::string_view tgt,
                         const AlignParams& params = {});

// CER/WER of hyp against gt: character edits over max(1, |gt|) and
// whitespace-token edits over max(1, #gt tokens).
ErrorRates error_rates(std::string_view gt, std::string_view hyp);

GapMetrics gap_metrics(const Alignment& al);

// One OCR whitespace token with its propagated tag. src_token is the index
// of the owning source token, or npos when no source character overlapped.
struct LabeledToken {
  std::string token;
  std::string tag;
  size_t src_token = static_cast<size_t>(-1);
};

// Transfers per-token tags from the source text onto the OCR text through a
// character alignment: each OCR token takes the tag of the source token
// owning the majority of its aligned characters (ties to the earliest source
// token, no overlap reads "O"), then B/I tags are repaired per maximal run
// of OCR tokens mapped to one source entity.
std::vector<LabeledToken> propagate_labels(const PlainText& src, const std::vector<std::string>& tags,
                                           const Alignment& al, std::string_view ocr_text);

// Maximal non-whitespace runs.
std::vector<TokenSpan> whitespace_tokens(std::string_view text);

// {"src": ..., "tgt": ..., "cost": n} with U+2400 standing in for the gap
// sentinel on disk.
std::string write_alignment(const Alignment& al);
Alignment parse_alignment(const std::string& json_text);

std::string write_error_rates(const ErrorRates& rates);
std::string write_gap_metrics(const GapMetrics& metrics);

}  // namespace docsynth
