#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docsynth/align.hpp"
#include "docsynth/corpus.hpp"

namespace docsynth {

enum class ActionKind : uint8_t {
  None = 0,
  Insert = 1,
  InsertSpace = 2,
  Replace = 3,
  Delete = 4,
  Pad = 5,
};
inline constexpr int kNumActionKinds = 6;

const char* action_kind_name(ActionKind kind);
ActionKind parse_action_kind(std::string_view name);

// Insert, InsertSpace, and Replace carry a character; the others do not.
inline bool action_needs_char(ActionKind kind) {
  return kind == ActionKind::Insert || kind == ActionKind::InsertSpace ||
         kind == ActionKind::Replace;
}

struct ActionLabel {
  ActionKind kind = ActionKind::None;
  std::optional<char> ch;
  bool operator==(const ActionLabel&) const = default;
};

// One label per input character plus a trailing end slot for insertions
// after the last character. dropped_insertions counts source characters the
// one-action-per-character limit could not express.
struct ActionSequence {
  std::vector<ActionLabel> labels;
  long dropped_insertions = 0;
};

// Reads the restoration actions off an alignment of clean source (src side)
// to OCR output (tgt side). Pending source characters whose OCR side is a
// gap attach to the next OCR character as INSERT (one char) or INSERT_SPACE
// (exactly [space, char]); overflow is counted in dropped_insertions. When
// dropped_insertions is zero, apply_actions(tgt, result) == src.
ActionSequence derive_actions(const Alignment& al);

// NONE/PAD copy, REPLACE substitutes, DELETE skips, INSERT puts its char
// before the carrier, INSERT_SPACE puts a space and its char before the
// carrier. The end slot may only copy nothing or append.
std::string apply_actions(std::string_view text, const ActionSequence& seq);

struct ActionStats {
  std::array<long, kNumActionKinds> kind_counts{};  // indexed by ActionKind
  // Source-side operations demanded per OCR character: 0, 1, 2, or more.
  std::array<long, 4> ops_histogram{};
};

// Aggregates derive_actions over gt/ocr pairs (aligned with anchored_align).
ActionStats action_stats(const std::vector<TrainingPair>& pairs,
                         const AlignParams& params = {});

// One JSON object {"a": [[kind, ch-or-null], ...], "dropped": n}. Characters
// outside printable ASCII are stored as integer byte values.
std::string write_action_sequence(const ActionSequence& seq);
ActionSequence parse_action_sequence(const std::string& json_text);

}  // namespace docsynth
