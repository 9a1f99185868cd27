#include "docsynth/corpus.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace docsynth {

bool is_valid_utf8(std::string_view bytes) {
  size_t i = 0;
  const size_t n = bytes.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(bytes[i]);
    size_t len;
    uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (size_t k = 1; k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Overlongs, surrogates, and out-of-range values are invalid.
    if (len == 2 && cp < 0x80) return false;
    if (len == 3 && cp < 0x800) return false;
    if (len == 4 && cp < 0x10000) return false;
    if (cp >= 0xd800 && cp <= 0xdfff) return false;
    if (cp > 0x10ffff) return false;
    i += len;
  }
  return true;
}

namespace {

bool is_space_char(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string> split_columns(std::string_view line) {
  std::vector<std::string> cols;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space_char(line[i])) ++i;
    size_t start = i;
    while (i < line.size() && !is_space_char(line[i])) ++i;
    if (i > start) cols.emplace_back(line.substr(start, i - start));
  }
  return cols;
}

}  // namespace

LabeledCorpus parse_conll(std::string_view text) {
  if (!is_valid_utf8(text)) throw ParseError("input is not valid UTF-8");
  if (text.find(kGapSentinel) != std::string_view::npos)
    throw ParseError("input contains a NUL byte (reserved gap sentinel)");

  LabeledCorpus corpus;
  LabeledSentence current;
  size_t line_no = 0;
  size_t pos = 0;
  auto flush = [&] {
    if (!current.tokens.empty()) {
      corpus.sentences.push_back(std::move(current));
      current = LabeledSentence{};
    }
  };
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    bool blank = std::all_of(line.begin(), line.end(), is_space_char);
    if (blank) {
      flush();
    } else if (line.substr(0, 10) == "-DOCSTART-") {
      // document marker, carries no tokens
    } else {
      std::vector<std::string> cols = split_columns(line);
      if (cols.size() < 2)
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected at least 2 columns, got " + std::to_string(cols.size()));
      current.tokens.push_back(std::move(cols.front()));
      current.tags.push_back(std::move(cols.back()));
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  flush();  // trailing unterminated sentence
  return corpus;
}

std::string write_conll(const LabeledCorpus& corpus) {
  std::string out;
  for (const auto& sent : corpus.sentences) {
    for (size_t i = 0; i < sent.tokens.size(); ++i) {
      out += sent.tokens[i];
      out += ' ';
      out += sent.tags[i];
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

PlainText to_plain_text(const LabeledCorpus& corpus) {
  PlainText pt;
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    if (s > 0) pt.text += '\n';
    const auto& sent = corpus.sentences[s];
    for (size_t t = 0; t < sent.tokens.size(); ++t) {
      if (t > 0) pt.text += ' ';
      TokenSpan span;
      span.begin = pt.text.size();
      pt.text += sent.tokens[t];
      span.end = pt.text.size();
      pt.spans.push_back(span);
    }
  }
  return pt;
}

std::vector<EntitySpan> extract_entities(const LabeledCorpus& corpus) {
  std::vector<EntitySpan> entities;
  for (size_t s = 0; s < corpus.sentences.size(); ++s) {
    const auto& tags = corpus.sentences[s].tags;
    size_t t = 0;
    while (t < tags.size()) {
      if (tags[t].size() > 2 && tags[t][0] == 'B' && tags[t][1] == '-') {
        EntitySpan e;
        e.sentence = s;
        e.begin = t;
        e.type = tags[t].substr(2);
        size_t end = t + 1;
        while (end < tags.size() && tags[end] == "I-" + e.type) ++end;
        e.end = end;
        entities.push_back(std::move(e));
        t = end;
      } else {
        ++t;
      }
    }
  }
  return entities;
}

EntityScore entity_f1(const LabeledCorpus& gold, const LabeledCorpus& pred) {
  if (gold.sentences.size() != pred.sentences.size())
    throw std::invalid_argument("entity_f1: sentence count mismatch (" +
                                std::to_string(gold.sentences.size()) + " vs " +
                                std::to_string(pred.sentences.size()) + ")");
  std::vector<EntitySpan> g = extract_entities(gold);
  std::vector<EntitySpan> p = extract_entities(pred);
  if (g.empty() && p.empty()) return {1.0, 1.0, 1.0};

  std::multiset<EntitySpan> gold_set(g.begin(), g.end());
  size_t matched = 0;
  for (const auto& e : p) {
    auto it = gold_set.find(e);
    if (it != gold_set.end()) {
      gold_set.erase(it);
      ++matched;
    }
  }
  EntityScore score;
  score.precision = p.empty() ? 0.0 : static_cast<double>(matched) / p.size();
  score.recall = g.empty() ? 0.0 : static_cast<double>(matched) / g.size();
  double pr = score.precision + score.recall;
  score.f1 = pr == 0.0 ? 0.0 : 2.0 * score.precision * score.recall / pr;
  return score;
}

std::string write_training_pairs(const std::vector<TrainingPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    nlohmann::json j;
    j["gt"] = p.gt;
    j["ocr"] = p.ocr;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<TrainingPair> read_training_pairs(std::string_view text) {
  std::vector<TrainingPair> pairs;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
    ++line_no;
    if (!line.empty()) {
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("gt") || !j.contains("ocr"))
        throw ParseError("training pairs line " + std::to_string(line_no) +
                         ": expected {\"gt\": ..., \"ocr\": ...}");
      TrainingPair p{j["gt"].get<std::string>(), j["ocr"].get<std::string>()};
      if (p.gt.find(kGapSentinel) != std::string::npos ||
          p.ocr.find(kGapSentinel) != std::string::npos)
        throw ParseError("training pairs line " + std::to_string(line_no) +
                         ": NUL byte in text");
      pairs.push_back(std::move(p));
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return pairs;
}

}  // namespace docsynth
