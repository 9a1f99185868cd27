#include "docsynth/align.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace docsynth {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

void reject_sentinel(std::string_view s, const char* side) {
  if (s.find(kGapSentinel) != std::string_view::npos)
    throw std::invalid_argument(std::string(side) +
                                " contains the reserved gap sentinel (U+0000)");
}

template <typename Seq>
long levenshtein(const Seq& a, const Seq& b) {
  const size_t m = a.size(), n = b.size();
  std::vector<long> prev(n + 1), cur(n + 1);
  for (size_t j = 0; j <= n; ++j) prev[j] = static_cast<long>(j);
  for (size_t i = 1; i <= m; ++i) {
    cur[0] = static_cast<long>(i);
    for (size_t j = 1; j <= n; ++j) {
      long diag = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

}  // namespace

std::vector<TokenSpan> whitespace_tokens(std::string_view text) {
  std::vector<TokenSpan> spans;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ws(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !is_ws(text[i])) ++i;
    if (i > start) spans.push_back({start, i});
  }
  return spans;
}

long edit_distance(std::string_view a, std::string_view b) { return levenshtein(a, b); }

Alignment needleman_wunsch(std::string_view src, std::string_view tgt,
                           const AlignParams&) {
  reject_sentinel(src, "src");
  reject_sentinel(tgt, "tgt");
  const size_t m = src.size(), n = tgt.size();

  // Rolling cost rows plus a full move matrix for the traceback.
  // Moves: 0 = diagonal, 1 = up (gap in target), 2 = left (gap in source).
  std::vector<uint8_t> move(static_cast<size_t>(m + 1) * (n + 1));
  auto move_at = [&](size_t i, size_t j) -> uint8_t& { return move[i * (n + 1) + j]; };
  std::vector<long> prev(n + 1), cur(n + 1);
  for (size_t j = 0; j <= n; ++j) {
    prev[j] = static_cast<long>(j);
    move_at(0, j) = 2;
  }
  for (size_t i = 1; i <= m; ++i) {
    cur[0] = static_cast<long>(i);
    move_at(i, 0) = 1;
    for (size_t j = 1; j <= n; ++j) {
      long best = prev[j - 1] + (src[i - 1] == tgt[j - 1] ? 0 : 1);
      uint8_t mv = 0;
      if (prev[j] + 1 < best) {
        best = prev[j] + 1;
        mv = 1;
      }
      if (cur[j - 1] + 1 < best) {
        best = cur[j - 1] + 1;
        mv = 2;
      }
      cur[j] = best;
      move_at(i, j) = mv;
    }
    std::swap(prev, cur);
  }

  Alignment al;
  al.cost = prev[n];
  size_t i = m, j = n;
  std::string rs, rt;
  while (i > 0 || j > 0) {
    switch (move_at(i, j)) {
      case 0:
        rs += src[--i];
        rt += tgt[--j];
        break;
      case 1:
        rs += src[--i];
        rt += kGapSentinel;
        break;
      default:
        rs += kGapSentinel;
        rt += tgt[--j];
        break;
    }
  }
  al.aligned_src.assign(rs.rbegin(), rs.rend());
  al.aligned_tgt.assign(rt.rbegin(), rt.rend());
  return al;
}

std::vector<Anchor> find_anchors(std::string_view src, std::string_view tgt) {
  struct WordInfo {
    int count = 0;
    size_t pos = 0;
  };
  auto index_words = [](std::string_view text) {
    std::unordered_map<std::string_view, WordInfo> info;
    for (const TokenSpan& span : whitespace_tokens(text)) {
      auto& w = info[text.substr(span.begin, span.end - span.begin)];
      ++w.count;
      if (w.count == 1) w.pos = span.begin;
    }
    return info;
  };
  auto src_words = index_words(src);
  auto tgt_words = index_words(tgt);

  std::vector<Anchor> candidates;
  for (const TokenSpan& span : whitespace_tokens(src)) {
    std::string_view word = src.substr(span.begin, span.end - span.begin);
    auto s = src_words.find(word);
    auto t = tgt_words.find(word);
    if (s->second.count != 1 || t == tgt_words.end() || t->second.count != 1) continue;
    candidates.push_back({std::string(word), span.begin, t->second.pos});
  }
  // candidates are in src order; keep the longest run that is also
  // increasing on the target side (classic patience LIS).
  std::vector<size_t> tails;       // candidate index with smallest tgt_pos per length
  std::vector<size_t> prev_link(candidates.size(), static_cast<size_t>(-1));
  for (size_t c = 0; c < candidates.size(); ++c) {
    size_t lo = 0, hi = tails.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (candidates[tails[mid]].tgt_pos < candidates[c].tgt_pos)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo > 0) prev_link[c] = tails[lo - 1];
    if (lo == tails.size())
      tails.push_back(c);
    else
      tails[lo] = c;
  }
  std::vector<Anchor> anchors;
  if (!tails.empty()) {
    for (size_t c = tails.back(); c != static_cast<size_t>(-1); c = prev_link[c])
      anchors.push_back(candidates[c]);
    std::reverse(anchors.begin(), anchors.end());
  }
  return anchors;
}

namespace {

void append_alignment(Alignment& out, const Alignment& piece) {
  out.aligned_src += piece.aligned_src;
  out.aligned_tgt += piece.aligned_tgt;
  out.cost += piece.cost;
}

}  // namespace

Alignment anchored_align(std::string_view src, std::string_view tgt,
                         const AlignParams& params) {
  if (src.size() + tgt.size() <= 2 * static_cast<size_t>(params.max_fragment_chars))
    return needleman_wunsch(src, tgt, params);
  reject_sentinel(src, "src");
  reject_sentinel(tgt, "tgt");

  std::vector<Anchor> anchors = find_anchors(src, tgt);
  if (anchors.empty()) return needleman_wunsch(src, tgt, params);

  Alignment result;
  size_t src_at = 0, tgt_at = 0;
  for (const Anchor& anchor : anchors) {
    append_alignment(result,
                     anchored_align(src.substr(src_at, anchor.src_pos - src_at),
                                    tgt.substr(tgt_at, anchor.tgt_pos - tgt_at), params));
    // The anchor word aligns to itself exactly.
    result.aligned_src += anchor.word;
    result.aligned_tgt += anchor.word;
    src_at = anchor.src_pos + anchor.word.size();
    tgt_at = anchor.tgt_pos + anchor.word.size();
  }
  append_alignment(result,
                   anchored_align(src.substr(src_at), tgt.substr(tgt_at), params));
  return result;
}

ErrorRates error_rates(std::string_view gt, std::string_view hyp) {
  ErrorRates rates;
  rates.char_edits = edit_distance(gt, hyp);

  auto tokens_of = [](std::string_view text) {
    std::vector<std::string_view> words;
    for (const TokenSpan& span : whitespace_tokens(text))
      words.push_back(text.substr(span.begin, span.end - span.begin));
    return words;
  };
  std::vector<std::string_view> gt_words = tokens_of(gt);
  std::vector<std::string_view> hyp_words = tokens_of(hyp);
  rates.word_edits = levenshtein(gt_words, hyp_words);

  rates.cer = static_cast<double>(rates.char_edits) /
              static_cast<double>(std::max<size_t>(1, gt.size()));
  rates.wer = static_cast<double>(rates.word_edits) /
              static_cast<double>(std::max<size_t>(1, gt_words.size()));
  return rates;
}

GapMetrics gap_metrics(const Alignment& al) {
  GapMetrics gm;
  auto scan = [](const std::string& side, long& runs, long& chars,
                 std::map<long, long>& histogram) {
    size_t i = 0;
    while (i < side.size()) {
      if (side[i] != kGapSentinel) {
        ++i;
        continue;
      }
      size_t start = i;
      while (i < side.size() && side[i] == kGapSentinel) ++i;
      long len = static_cast<long>(i - start);
      ++runs;
      chars += len;
      ++histogram[len];
    }
  };
  scan(al.aligned_src, gm.src_gap_runs, gm.src_gap_chars, gm.src_run_length_histogram);
  scan(al.aligned_tgt, gm.tgt_gap_runs, gm.tgt_gap_chars, gm.tgt_run_length_histogram);
  return gm;
}

std::vector<LabeledToken> propagate_labels(const PlainText& src,
                                           const std::vector<std::string>& tags,
                                           const Alignment& al, std::string_view ocr_text) {
  if (tags.size() != src.spans.size())
    throw std::invalid_argument("propagate_labels: one tag per source token required");
  std::string stripped_src = al.aligned_src;
  std::string stripped_tgt = al.aligned_tgt;
  std::erase(stripped_src, kGapSentinel);
  std::erase(stripped_tgt, kGapSentinel);
  if (stripped_src != src.text || stripped_tgt != ocr_text)
    throw std::invalid_argument("propagate_labels: alignment does not match the texts");

  constexpr size_t kNone = static_cast<size_t>(-1);

  // Owning source token per source character.
  std::vector<size_t> src_owner(src.text.size(), kNone);
  for (size_t t = 0; t < src.spans.size(); ++t)
    for (size_t i = src.spans[t].begin; i < src.spans[t].end; ++i) src_owner[i] = t;

  // Source token -> aligned source token per OCR character.
  std::vector<size_t> tgt_char_owner(ocr_text.size(), kNone);
  size_t si = 0, ti = 0;
  for (size_t col = 0; col < al.aligned_src.size(); ++col) {
    bool has_src = al.aligned_src[col] != kGapSentinel;
    bool has_tgt = al.aligned_tgt[col] != kGapSentinel;
    if (has_src && has_tgt) tgt_char_owner[ti] = src_owner[si];
    if (has_src) ++si;
    if (has_tgt) ++ti;
  }

  // Entity instance per source token (kNone outside entities).
  std::vector<size_t> src_entity(tags.size(), kNone);
  std::vector<std::string> entity_type;
  for (size_t t = 0; t < tags.size(); ++t) {
    if (tags[t].size() > 2 && tags[t][0] == 'B' && tags[t][1] == '-') {
      std::string type = tags[t].substr(2);
      size_t id = entity_type.size();
      entity_type.push_back(type);
      src_entity[t] = id;
      size_t k = t + 1;
      while (k < tags.size() && tags[k] == "I-" + type) src_entity[k++] = id;
    }
  }

  std::vector<LabeledToken> result;
  for (const TokenSpan& span : whitespace_tokens(ocr_text)) {
    // Majority vote over the aligned characters; ties to the earliest token.
    std::unordered_map<size_t, size_t> votes;
    for (size_t i = span.begin; i < span.end; ++i)
      if (tgt_char_owner[i] != kNone) ++votes[tgt_char_owner[i]];
    size_t owner = kNone;
    size_t best = 0;
    for (const auto& [token, count] : votes)
      if (count > best || (count == best && token < owner)) {
        best = count;
        owner = token;
      }
    LabeledToken lt;
    lt.token = std::string(ocr_text.substr(span.begin, span.end - span.begin));
    lt.tag = owner == kNone ? "O" : tags[owner];
    lt.src_token = owner;
    result.push_back(std::move(lt));
  }

  // B/I repair over maximal runs of tokens mapped into one source entity.
  size_t run_entity = kNone;
  for (auto& lt : result) {
    size_t entity = lt.src_token == kNone ? kNone : src_entity[lt.src_token];
    if (entity != kNone) {
      lt.tag = (entity == run_entity ? "I-" : "B-") + entity_type[entity];
    }
    run_entity = entity;
  }
  return result;
}

std::string write_alignment(const Alignment& al) {
  constexpr const char* kVisibleGap = "\xe2\x90\x80";  // U+2400 SYMBOL FOR NULL
  auto encode = [&](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == kGapSentinel)
        out += kVisibleGap;
      else
        out += c;
    }
    return out;
  };
  nlohmann::json j;
  j["src"] = encode(al.aligned_src);
  j["tgt"] = encode(al.aligned_tgt);
  j["cost"] = al.cost;
  return j.dump() + "\n";
}

Alignment parse_alignment(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  auto decode = [](std::string s) {
    std::string out;
    for (size_t i = 0; i < s.size();) {
      if (s.compare(i, 3, "\xe2\x90\x80") == 0) {
        out += kGapSentinel;
        i += 3;
      } else {
        out += s[i++];
      }
    }
    return out;
  };
  Alignment al;
  al.aligned_src = decode(j.at("src").get<std::string>());
  al.aligned_tgt = decode(j.at("tgt").get<std::string>());
  al.cost = j.at("cost").get<long>();
  return al;
}

std::string write_error_rates(const ErrorRates& rates) {
  nlohmann::json j;
  j["cer"] = rates.cer;
  j["wer"] = rates.wer;
  j["char_edits"] = rates.char_edits;
  j["word_edits"] = rates.word_edits;
  return j.dump() + "\n";
}

std::string write_gap_metrics(const GapMetrics& metrics) {
  nlohmann::json j;
  j["src_gap_runs"] = metrics.src_gap_runs;
  j["tgt_gap_runs"] = metrics.tgt_gap_runs;
  j["src_gap_chars"] = metrics.src_gap_chars;
  j["tgt_gap_chars"] = metrics.tgt_gap_chars;
  auto hist = [](const std::map<long, long>& h) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [len, count] : h) out[std::to_string(len)] = count;
    return out;
  };
  j["src_run_length_histogram"] = hist(metrics.src_run_length_histogram);
  j["tgt_run_length_histogram"] = hist(metrics.tgt_run_length_histogram);
  return j.dump() + "\n";
}

}  // namespace docsynth
