#include "docsynth/actions.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace docsynth {

const char* action_kind_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::None: return "NONE";
    case ActionKind::Insert: return "INSERT";
    case ActionKind::InsertSpace: return "INSERT_SPACE";
    case ActionKind::Replace: return "REPLACE";
    case ActionKind::Delete: return "DELETE";
    case ActionKind::Pad: return "PAD";
  }
  return "?";
}

ActionKind parse_action_kind(std::string_view name) {
  for (int k = 0; k < kNumActionKinds; ++k)
    if (name == action_kind_name(static_cast<ActionKind>(k)))
      return static_cast<ActionKind>(k);
  throw std::invalid_argument("unknown action kind \"" + std::string(name) + "\"");
}

namespace {

void check_alignment(const Alignment& al) {
  if (al.aligned_src.size() != al.aligned_tgt.size())
    throw std::invalid_argument("alignment sides differ in length");
  for (size_t i = 0; i < al.aligned_src.size(); ++i)
    if (al.aligned_src[i] == kGapSentinel && al.aligned_tgt[i] == kGapSentinel)
      throw std::invalid_argument("alignment column with a gap on both sides");
}

// Buffered source characters become one INSERT-family action. Returns the
// number of buffered characters the action could not carry.
ActionLabel flush_pending(const std::string& pending, long& dropped) {
  ActionLabel label;
  size_t consumed;
  if (pending[0] == ' ' && pending.size() >= 2) {
    label = {ActionKind::InsertSpace, pending[1]};
    consumed = 2;
  } else {
    label = {ActionKind::Insert, pending[0]};
    consumed = 1;
  }
  dropped += static_cast<long>(pending.size() - consumed);
  return label;
}

}  // namespace

ActionSequence derive_actions(const Alignment& al) {
  check_alignment(al);
  ActionSequence seq;
  std::string pending;
  for (size_t col = 0; col < al.aligned_src.size(); ++col) {
    char s = al.aligned_src[col];
    char t = al.aligned_tgt[col];
    if (t == kGapSentinel) {
      pending += s;
      continue;
    }
    ActionLabel label;
    if (!pending.empty()) {
      label = flush_pending(pending, seq.dropped_insertions);
      // The carrier's own edit (a replacement or deletion) cannot be
      // expressed on top of the insert; count it as dropped.
      if (s == kGapSentinel || s != t) ++seq.dropped_insertions;
      pending.clear();
    } else if (s == kGapSentinel) {
      label = {ActionKind::Delete, std::nullopt};
    } else if (s == t) {
      label = {ActionKind::None, std::nullopt};
    } else {
      label = {ActionKind::Replace, s};
    }
    seq.labels.push_back(label);
  }
  if (!pending.empty())
    seq.labels.push_back(flush_pending(pending, seq.dropped_insertions));
  else
    seq.labels.push_back({ActionKind::None, std::nullopt});
  return seq;
}

std::string apply_actions(std::string_view text, const ActionSequence& seq) {
  if (seq.labels.size() != text.size() + 1)
    throw std::invalid_argument("action sequence length " + std::to_string(seq.labels.size()) +
                                " does not match text length " + std::to_string(text.size()) +
                                " + 1");
  auto required_char = [](const ActionLabel& label) {
    if (!label.ch.has_value())
      throw std::invalid_argument(std::string("action ") + action_kind_name(label.kind) +
                                  " is missing its character");
    return *label.ch;
  };
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    const ActionLabel& label = seq.labels[i];
    switch (label.kind) {
      case ActionKind::None:
      case ActionKind::Pad:
        out += text[i];
        break;
      case ActionKind::Replace:
        out += required_char(label);
        break;
      case ActionKind::Delete:
        break;
      case ActionKind::Insert:
        out += required_char(label);
        out += text[i];
        break;
      case ActionKind::InsertSpace:
        out += ' ';
        out += required_char(label);
        out += text[i];
        break;
    }
  }
  const ActionLabel& end = seq.labels.back();
  switch (end.kind) {
    case ActionKind::None:
    case ActionKind::Pad:
      break;
    case ActionKind::Insert:
      out += required_char(end);
      break;
    case ActionKind::InsertSpace:
      out += ' ';
      out += required_char(end);
      break;
    default:
      throw std::invalid_argument(std::string("end slot cannot hold ") +
                                  action_kind_name(end.kind));
  }
  return out;
}

ActionStats action_stats(const std::vector<TrainingPair>& pairs, const AlignParams& params) {
  ActionStats stats;
  for (const TrainingPair& pair : pairs) {
    Alignment al = anchored_align(pair.gt, pair.ocr, params);
    ActionSequence seq = derive_actions(al);
    for (const ActionLabel& label : seq.labels)
      ++stats.kind_counts[static_cast<size_t>(label.kind)];

    // Operations demanded at each OCR character: buffered insertions before
    // it plus its own substitution or deletion.
    long pending = 0;
    for (size_t col = 0; col < al.aligned_src.size(); ++col) {
      bool has_src = al.aligned_src[col] != kGapSentinel;
      bool has_tgt = al.aligned_tgt[col] != kGapSentinel;
      if (!has_tgt) {
        ++pending;
        continue;
      }
      long ops = pending;
      if (!has_src || al.aligned_src[col] != al.aligned_tgt[col]) ++ops;
      ++stats.ops_histogram[static_cast<size_t>(std::min<long>(ops, 3))];
      pending = 0;
    }
  }
  return stats;
}

std::string write_action_sequence(const ActionSequence& seq) {
  nlohmann::json j;
  j["a"] = nlohmann::json::array();
  for (const ActionLabel& label : seq.labels) {
    nlohmann::json entry = nlohmann::json::array();
    entry.push_back(action_kind_name(label.kind));
    if (!label.ch.has_value()) {
      entry.push_back(nullptr);
    } else {
      unsigned char byte = static_cast<unsigned char>(*label.ch);
      if (byte >= 0x20 && byte < 0x7f)
        entry.push_back(std::string(1, *label.ch));
      else
        entry.push_back(static_cast<int>(byte));
    }
    j["a"].push_back(entry);
  }
  j["dropped"] = seq.dropped_insertions;
  return j.dump() + "\n";
}

ActionSequence parse_action_sequence(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  ActionSequence seq;
  seq.dropped_insertions = j.at("dropped").get<long>();
  for (const auto& entry : j.at("a")) {
    ActionLabel label;
    label.kind = parse_action_kind(entry.at(0).get<std::string>());
    if (!entry.at(1).is_null()) {
      if (entry.at(1).is_number_integer())
        label.ch = static_cast<char>(entry.at(1).get<int>());
      else
        label.ch = entry.at(1).get<std::string>().at(0);
    }
    if (label.ch.has_value() != action_needs_char(label.kind))
      throw std::invalid_argument("action/character mismatch in serialized sequence");
    seq.labels.push_back(label);
  }
  return seq;
}

}  // namespace docsynth
