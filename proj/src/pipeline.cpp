#include "docsynth/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "docsynth/actions.hpp"
#include "docsynth/rng.hpp"
#include "docsynth/textgen.hpp"

namespace fs = std::filesystem;

namespace docsynth {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& data) {
  fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_file_atomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp";
  write_file(tmp, data);
  fs::rename(tmp, path);
}

std::string normalize_newlines(std::string_view text) {
  std::string out(text);
  for (char& c : out)
    if (c == '\n') c = ' ';
  return out;
}

uint64_t page_seed(uint64_t run_seed, int doc_index, int page_index) {
  return mix_seed(mix_seed(run_seed, static_cast<uint64_t>(doc_index)),
                  static_cast<uint64_t>(page_index));
}

namespace {

void require_keys(const nlohmann::json& obj, const std::vector<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const auto& a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
  }
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto body = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string doc_page_name(int doc, int page) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "doc_%04d_page_%02d", doc, page);
  return buf;
}

std::string doc_name(int doc) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "doc_%04d", doc);
  return buf;
}

struct PageRef {
  int doc = 0;
  int page = 0;
  std::string path;
};

// doc_XXXX_page_YY.<ext> files under dir, in (doc, page) order.
std::vector<PageRef> list_pages(const std::string& dir, const std::string& ext) {
  std::vector<PageRef> pages;
  if (!fs::exists(dir)) throw std::runtime_error("missing stage output directory: " + dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    int doc = 0, page = 0;
    if (name.size() > ext.size() && name.compare(name.size() - ext.size(), ext.size(), ext) == 0 &&
        std::sscanf(name.c_str(), "doc_%d_page_%d", &doc, &page) == 2)
      pages.push_back({doc, page, entry.path().string()});
  }
  std::sort(pages.begin(), pages.end(), [](const PageRef& a, const PageRef& b) {
    return a.doc != b.doc ? a.doc < b.doc : a.page < b.page;
  });
  if (pages.empty()) throw std::runtime_error("no pages found under " + dir);
  return pages;
}

Recipe recipe_for_page(const PipelineConfig& config, int doc, int page) {
  Recipe recipe = config.has_inline_recipe
                      ? config.inline_recipe
                      : builtin_recipe(config.recipe_name, 0);
  recipe.seed = page_seed(config.seed, doc, page);
  return recipe;
}

LabeledCorpus corpus_snapshot(const PipelineConfig& config) {
  return parse_conll(read_file(config.output_dir + "/corpus/input.conll"));
}

// Sentence index of every token in a document corpus.
std::vector<size_t> token_sentence_index(const LabeledCorpus& doc) {
  std::vector<size_t> index;
  for (size_t s = 0; s < doc.sentences.size(); ++s)
    for (size_t t = 0; t < doc.sentences[s].tokens.size(); ++t) index.push_back(s);
  return index;
}

std::vector<std::string> flat_tags(const LabeledCorpus& doc) {
  std::vector<std::string> tags;
  for (const auto& sentence : doc.sentences)
    for (const auto& tag : sentence.tags) tags.push_back(tag);
  return tags;
}

// Carves per-sentence OCR segments out of a document alignment. Characters
// aligned to separators or gaps stay with the sentence seen last.
std::vector<TrainingPair> split_pairs_by_sentence(const PlainText& plain,
                                                  const LabeledCorpus& doc,
                                                  const Alignment& al) {
  const size_t n_sentences = doc.sentences.size();
  // char position -> sentence, separators marked.
  constexpr size_t kSep = static_cast<size_t>(-1);
  std::vector<size_t> char_sentence(plain.text.size(), kSep);
  std::vector<size_t> sentence_begin(n_sentences, 0), sentence_end(n_sentences, 0);
  {
    size_t token = 0;
    for (size_t s = 0; s < n_sentences; ++s) {
      size_t first = token, last = token + doc.sentences[s].tokens.size() - 1;
      sentence_begin[s] = plain.spans[first].begin;
      sentence_end[s] = plain.spans[last].end;
      for (size_t i = sentence_begin[s]; i < sentence_end[s]; ++i) char_sentence[i] = s;
      token += doc.sentences[s].tokens.size();
    }
  }

  std::vector<std::string> ocr_parts(n_sentences);
  size_t si = 0, current = 0;
  for (size_t col = 0; col < al.aligned_src.size(); ++col) {
    bool has_src = al.aligned_src[col] != kGapSentinel;
    bool has_tgt = al.aligned_tgt[col] != kGapSentinel;
    if (has_src && char_sentence[si] != kSep) current = char_sentence[si];
    if (has_tgt) ocr_parts[current] += al.aligned_tgt[col];
    if (has_src) ++si;
  }

  std::vector<TrainingPair> pairs;
  for (size_t s = 0; s < n_sentences; ++s) {
    std::string ocr = ocr_parts[s];
    size_t b = ocr.find_first_not_of(' ');
    size_t e = ocr.find_last_not_of(' ');
    ocr = b == std::string::npos ? "" : ocr.substr(b, e - b + 1);
    pairs.push_back({plain.text.substr(sentence_begin[s], sentence_end[s] - sentence_begin[s]),
                     std::move(ocr)});
  }
  return pairs;
}

uint64_t train_seed(const PipelineConfig& config) {
  return mix_seed(config.seed, 0x747261696eULL);
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

PipelineConfig parse_pipeline_config(const nlohmann::json& json) {
  require_keys(json, {"seed", "sentences_per_doc", "template", "degradation", "ocr", "align",
                      "model", "io", "train", "workers"},
               "config");
  PipelineConfig config;
  config.seed = json.value("seed", 0ULL);
  config.sentences_per_doc = json.value("sentences_per_doc", 25);
  if (config.sentences_per_doc < 1)
    throw std::invalid_argument("sentences_per_doc must be positive");
  config.workers = json.value("workers", 0);

  nlohmann::json jt = json.value("template", nlohmann::json::object());
  require_keys(jt,
               {"name", "page_width_px", "page_height_px", "margin_px", "top_margin_px",
                "columns", "column_gap_px", "line_spacing_px", "hyphenate"},
               "template");
  config.tmpl = builtin_template(jt.value("name", "text_block"));
  if (jt.contains("page_width_px")) config.tmpl.page_width_px = jt["page_width_px"].get<int>();
  if (jt.contains("page_height_px")) config.tmpl.page_height_px = jt["page_height_px"].get<int>();
  if (jt.contains("margin_px")) config.tmpl.margin_px = jt["margin_px"].get<int>();
  if (jt.contains("top_margin_px")) config.tmpl.top_margin_px = jt["top_margin_px"].get<int>();
  if (jt.contains("columns")) config.tmpl.columns = jt["columns"].get<int>();
  if (jt.contains("column_gap_px")) config.tmpl.column_gap_px = jt["column_gap_px"].get<int>();
  if (jt.contains("line_spacing_px"))
    config.tmpl.line_spacing_px = jt["line_spacing_px"].get<int>();
  if (jt.contains("hyphenate")) config.tmpl.hyphenate = jt["hyphenate"].get<bool>();

  if (json.contains("degradation")) {
    const nlohmann::json& jd = json["degradation"];
    if (jd.is_string()) {
      config.recipe_name = jd.get<std::string>();
      if (!is_builtin_recipe_name(config.recipe_name))
        throw std::invalid_argument("unknown recipe \"" + config.recipe_name +
                                    "\"; expected none, all_light, or all_heavy");
    } else if (jd.is_object()) {
      config.has_inline_recipe = true;
      config.inline_recipe = parse_recipe(jd.dump());
    } else {
      throw std::invalid_argument("degradation must be a recipe name or an inline recipe");
    }
  }

  nlohmann::json jo = json.value("ocr", nlohmann::json::object());
  require_keys(jo, {"engine", "endpoint", "token_env", "max_retries", "retry_delay_ms",
                    "timeout_sec"},
               "ocr");
  config.ocr_engine = jo.value("engine", "builtin");
  if (config.ocr_engine == "external") {
    if (!jo.contains("endpoint"))
      throw std::invalid_argument("external OCR requires an endpoint");
    config.ocr_client.endpoint = jo["endpoint"].get<std::string>();
    if (jo.contains("token_env")) {
      const char* token = std::getenv(jo["token_env"].get<std::string>().c_str());
      if (token) config.ocr_client.bearer_token = token;
    }
    config.ocr_client.max_retries = jo.value("max_retries", 3);
    config.ocr_client.retry_delay_ms = jo.value("retry_delay_ms", 200);
    config.ocr_client.timeout_sec = jo.value("timeout_sec", 30);
  } else if (config.ocr_engine != "builtin") {
    throw std::invalid_argument("ocr engine must be builtin or external");
  }

  nlohmann::json ja = json.value("align", nlohmann::json::object());
  require_keys(ja, {"max_fragment_chars"}, "align");
  config.align_params.max_fragment_chars = ja.value("max_fragment_chars", 400);
  if (config.align_params.max_fragment_chars < 16)
    throw std::invalid_argument("max_fragment_chars must be at least 16");

  nlohmann::json jm = json.value("model", nlohmann::json::object());
  require_keys(jm, {"embed_dim", "conv_layers", "kernel_size", "channels", "alpha", "beta",
                    "learning_rate", "batch_size", "epochs"},
               "model");
  config.model_hp.embed_dim = jm.value("embed_dim", config.model_hp.embed_dim);
  config.model_hp.conv_layers = jm.value("conv_layers", config.model_hp.conv_layers);
  config.model_hp.kernel_size = jm.value("kernel_size", config.model_hp.kernel_size);
  config.model_hp.channels = jm.value("channels", config.model_hp.channels);
  config.model_hp.alpha = jm.value("alpha", config.model_hp.alpha);
  config.model_hp.beta = jm.value("beta", config.model_hp.beta);
  config.model_hp.learning_rate = jm.value("learning_rate", config.model_hp.learning_rate);
  config.model_hp.batch_size = jm.value("batch_size", config.model_hp.batch_size);
  config.model_hp.epochs = jm.value("epochs", config.model_hp.epochs);
  config.model_hp.validate();

  nlohmann::json ji = json.value("io", nlohmann::json::object());
  require_keys(ji, {"input_format", "input", "generate_sentences", "output_dir"}, "io");
  config.input_format = ji.value("input_format", "generate");
  config.input_path = ji.value("input", "");
  config.generate_sentences = ji.value("generate_sentences", 100);
  config.output_dir = ji.value("output_dir", "");
  if (config.output_dir.empty()) throw std::invalid_argument("io.output_dir is required");
  if (config.input_format != "conll" && config.input_format != "text" &&
      config.input_format != "generate")
    throw std::invalid_argument("io.input_format must be conll, text, or generate");
  if (config.input_format != "generate" && config.input_path.empty())
    throw std::invalid_argument("io.input is required for format " + config.input_format);
  if (config.generate_sentences < 1)
    throw std::invalid_argument("io.generate_sentences must be positive");

  nlohmann::json jtr = json.value("train", nlohmann::json::object());
  require_keys(jtr, {"enabled", "holdout"}, "train");
  config.do_train = jtr.value("enabled", false);
  config.holdout = jtr.value("holdout", 0);
  if (config.holdout < 0) throw std::invalid_argument("train.holdout must be >= 0");
  return config;
}

PipelineConfig load_pipeline_config(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  return parse_pipeline_config(j);
}

nlohmann::json pipeline_config_to_json(const PipelineConfig& config) {
  nlohmann::json j;
  j["seed"] = config.seed;
  j["sentences_per_doc"] = config.sentences_per_doc;
  j["workers"] = config.workers;
  j["template"] = {{"name", config.tmpl.name},
                   {"page_width_px", config.tmpl.page_width_px},
                   {"page_height_px", config.tmpl.page_height_px},
                   {"margin_px", config.tmpl.margin_px},
                   {"top_margin_px", config.tmpl.top_margin_px},
                   {"columns", config.tmpl.columns},
                   {"column_gap_px", config.tmpl.column_gap_px},
                   {"line_spacing_px", config.tmpl.line_spacing_px},
                   {"hyphenate", config.tmpl.hyphenate}};
  if (config.has_inline_recipe)
    j["degradation"] = nlohmann::json::parse(write_recipe(config.inline_recipe));
  else
    j["degradation"] = config.recipe_name;
  j["ocr"] = {{"engine", config.ocr_engine}};
  if (config.ocr_engine == "external") j["ocr"]["endpoint"] = config.ocr_client.endpoint;
  j["align"] = {{"max_fragment_chars", config.align_params.max_fragment_chars}};
  j["model"] = {{"embed_dim", config.model_hp.embed_dim},
                {"conv_layers", config.model_hp.conv_layers},
                {"kernel_size", config.model_hp.kernel_size},
                {"channels", config.model_hp.channels},
                {"alpha", config.model_hp.alpha},
                {"beta", config.model_hp.beta},
                {"learning_rate", config.model_hp.learning_rate},
                {"batch_size", config.model_hp.batch_size},
                {"epochs", config.model_hp.epochs}};
  j["io"] = {{"input_format", config.input_format},
             {"input", config.input_path},
             {"generate_sentences", config.generate_sentences},
             {"output_dir", config.output_dir}};
  j["train"] = {{"enabled", config.do_train}, {"holdout", config.holdout}};
  return j;
}

LabeledCorpus load_input_corpus(const PipelineConfig& config) {
  if (config.input_format == "conll") return parse_conll(read_file(config.input_path));
  if (config.input_format == "text") {
    LabeledCorpus corpus;
    corpus.origin = config.input_path;
    std::string text = read_file(config.input_path);
    size_t pos = 0;
    while (pos < text.size()) {
      size_t eol = text.find('\n', pos);
      std::string_view line(text.data() + pos,
                            (eol == std::string::npos ? text.size() : eol) - pos);
      LabeledSentence sentence;
      for (const TokenSpan& span : whitespace_tokens(line)) {
        sentence.tokens.emplace_back(line.substr(span.begin, span.end - span.begin));
        sentence.tags.emplace_back("O");
      }
      if (!sentence.tokens.empty()) corpus.sentences.push_back(std::move(sentence));
      if (eol == std::string::npos) break;
      pos = eol + 1;
    }
    return corpus;
  }
  return generate_corpus(config.generate_sentences, mix_seed(config.seed, 0x74657874ULL));
}

std::vector<LabeledCorpus> group_documents(const LabeledCorpus& corpus, int sentences_per_doc) {
  std::vector<LabeledCorpus> docs;
  for (size_t begin = 0; begin < corpus.sentences.size();
       begin += static_cast<size_t>(sentences_per_doc)) {
    LabeledCorpus doc;
    size_t end = std::min(corpus.sentences.size(), begin + sentences_per_doc);
    doc.sentences.assign(corpus.sentences.begin() + begin, corpus.sentences.begin() + end);
    docs.push_back(std::move(doc));
  }
  return docs;
}

void stage_corpus(const PipelineConfig& config) {
  LabeledCorpus corpus = load_input_corpus(config);
  if (corpus.sentences.empty()) throw std::runtime_error("input corpus has no sentences");
  write_file(config.output_dir + "/corpus/input.conll", write_conll(corpus));
}

void stage_render(const PipelineConfig& config) {
  LabeledCorpus corpus = corpus_snapshot(config);
  std::vector<LabeledCorpus> docs = group_documents(corpus, config.sentences_per_doc);
  parallel_for(static_cast<int>(docs.size()), config.workers, [&](int d) {
    PlainText plain = to_plain_text(docs[d]);
    RenderResult rendered = render_document(plain.text, config.tmpl);
    for (size_t p = 0; p < rendered.pages.size(); ++p)
      write_pgm(rendered.pages[p], config.output_dir + "/renders/" +
                                       doc_page_name(d, static_cast<int>(p)) + ".pgm");
    write_file(config.output_dir + "/renders/" + doc_name(d) + "_geometry.jsonl",
               write_geometry(rendered.geometry));
  });
}

void stage_degrade(const PipelineConfig& config) {
  std::vector<PageRef> pages = list_pages(config.output_dir + "/renders", ".pgm");
  parallel_for(static_cast<int>(pages.size()), config.workers, [&](int i) {
    const PageRef& ref = pages[i];
    PageImage img = read_pgm(ref.path);
    PageImage out = apply_recipe(img, recipe_for_page(config, ref.doc, ref.page));
    write_pgm(out, config.output_dir + "/degraded/" + doc_page_name(ref.doc, ref.page) + ".pgm");
  });
}

void stage_ocr(const PipelineConfig& config) {
  std::vector<PageRef> pages = list_pages(config.output_dir + "/degraded", ".pgm");
  std::vector<std::string> transcripts(pages.size());
  parallel_for(static_cast<int>(pages.size()), config.workers, [&](int i) {
    PageImage img = read_pgm(pages[i].path);
    OcrResult result = config.ocr_engine == "external" ? external_ocr(img, config.ocr_client)
                                                       : recognize_page(img);
    write_file(config.output_dir + "/ocr/" + doc_page_name(pages[i].doc, pages[i].page) +
                   ".json",
               write_ocr_result(result));
    transcripts[i] = result.transcript();
  });
  // Document text = page transcripts in page order.
  for (size_t i = 0; i < pages.size();) {
    int doc = pages[i].doc;
    std::string text;
    for (; i < pages.size() && pages[i].doc == doc; ++i) {
      if (!text.empty()) text += '\n';
      text += transcripts[i];
    }
    write_file(config.output_dir + "/ocr/" + doc_name(doc) + ".txt", text);
  }
}

nlohmann::json stage_align(const PipelineConfig& config) {
  LabeledCorpus corpus = corpus_snapshot(config);
  std::vector<LabeledCorpus> docs = group_documents(corpus, config.sentences_per_doc);
  std::vector<ErrorRates> rates(docs.size());
  std::vector<long> gt_chars(docs.size()), gt_words(docs.size());
  parallel_for(static_cast<int>(docs.size()), config.workers, [&](int d) {
    PlainText plain = to_plain_text(docs[d]);
    std::string src = normalize_newlines(plain.text);
    std::string ocr = normalize_newlines(read_file(config.output_dir + "/ocr/" + doc_name(d) + ".txt"));
    Alignment al = anchored_align(src, ocr, config.align_params);
    write_file(config.output_dir + "/alignments/" + doc_name(d) + ".json", write_alignment(al));
    rates[d] = error_rates(src, ocr);
    gt_chars[d] = static_cast<long>(src.size());
    gt_words[d] = static_cast<long>(whitespace_tokens(src).size());
  });
  long char_edits = 0, word_edits = 0, chars = 0, words = 0;
  for (size_t d = 0; d < docs.size(); ++d) {
    char_edits += rates[d].char_edits;
    word_edits += rates[d].word_edits;
    chars += gt_chars[d];
    words += gt_words[d];
  }
  nlohmann::json metrics;
  metrics["documents"] = docs.size();
  metrics["char_edits"] = char_edits;
  metrics["word_edits"] = word_edits;
  metrics["gt_chars"] = chars;
  metrics["gt_words"] = words;
  metrics["cer"] = chars ? static_cast<double>(char_edits) / chars : 0.0;
  metrics["wer"] = words ? static_cast<double>(word_edits) / words : 0.0;
  write_file(config.output_dir + "/metrics/ocr_metrics.json", metrics.dump(2) + "\n");
  return metrics;
}

nlohmann::json stage_labels(const PipelineConfig& config) {
  LabeledCorpus corpus = corpus_snapshot(config);
  std::vector<LabeledCorpus> docs = group_documents(corpus, config.sentences_per_doc);
  std::vector<LabeledCorpus> preds(docs.size());
  parallel_for(static_cast<int>(docs.size()), config.workers, [&](int d) {
    PlainText plain = to_plain_text(docs[d]);
    plain.text = normalize_newlines(plain.text);  // spans are position-preserving
    std::string ocr = normalize_newlines(read_file(config.output_dir + "/ocr/" + doc_name(d) + ".txt"));
    Alignment al = parse_alignment(read_file(config.output_dir + "/alignments/" + doc_name(d) + ".json"));
    std::vector<LabeledToken> labeled = propagate_labels(plain, flat_tags(docs[d]), al, ocr);

    std::vector<size_t> sentence_of = token_sentence_index(docs[d]);
    LabeledCorpus pred;
    pred.sentences.resize(docs[d].sentences.size());
    size_t current = 0;
    for (const LabeledToken& lt : labeled) {
      if (lt.src_token != static_cast<size_t>(-1)) current = sentence_of[lt.src_token];
      pred.sentences[current].tokens.push_back(lt.token);
      pred.sentences[current].tags.push_back(lt.tag);
    }
    preds[d] = std::move(pred);
  });
  LabeledCorpus pred_all;
  for (const auto& pred : preds)
    pred_all.sentences.insert(pred_all.sentences.end(), pred.sentences.begin(),
                              pred.sentences.end());
  write_file(config.output_dir + "/labels/pred.conll", write_conll(pred_all));
  EntityScore score = entity_f1(corpus, pred_all);
  nlohmann::json j;
  j["precision"] = score.precision;
  j["recall"] = score.recall;
  j["f1"] = score.f1;
  write_file(config.output_dir + "/labels/entity.json", j.dump(2) + "\n");
  return j;
}

nlohmann::json stage_dataset(const PipelineConfig& config) {
  LabeledCorpus corpus = corpus_snapshot(config);
  std::vector<LabeledCorpus> docs = group_documents(corpus, config.sentences_per_doc);
  std::vector<std::vector<TrainingPair>> per_doc(docs.size());
  parallel_for(static_cast<int>(docs.size()), config.workers, [&](int d) {
    PlainText plain = to_plain_text(docs[d]);
    plain.text = normalize_newlines(plain.text);
    Alignment al = parse_alignment(read_file(config.output_dir + "/alignments/" + doc_name(d) + ".json"));
    per_doc[d] = split_pairs_by_sentence(plain, docs[d], al);
  });
  std::vector<TrainingPair> pairs;
  for (auto& doc_pairs : per_doc)
    pairs.insert(pairs.end(), doc_pairs.begin(), doc_pairs.end());
  write_file(config.output_dir + "/dataset/pairs.jsonl", write_training_pairs(pairs));

  ActionStats stats = action_stats(pairs, config.align_params);
  nlohmann::json j;
  j["pairs"] = pairs.size();
  nlohmann::json counts;
  for (int k = 0; k < kNumActionKinds; ++k)
    counts[action_kind_name(static_cast<ActionKind>(k))] = stats.kind_counts[k];
  j["action_counts"] = counts;
  j["ops_per_char_histogram"] = {{"0", stats.ops_histogram[0]},
                                 {"1", stats.ops_histogram[1]},
                                 {"2", stats.ops_histogram[2]},
                                 {">2", stats.ops_histogram[3]}};
  write_file(config.output_dir + "/dataset/action_stats.json", j.dump(2) + "\n");
  return j;
}

nlohmann::json stage_train(const PipelineConfig& config) {
  std::vector<TrainingPair> pairs =
      read_training_pairs(read_file(config.output_dir + "/dataset/pairs.jsonl"));
  if (config.holdout >= static_cast<int>(pairs.size()))
    throw std::runtime_error("holdout leaves no training pairs");
  std::vector<TrainingPair> train_pairs(pairs.begin(), pairs.end() - config.holdout);
  Hyperparams hp = config.model_hp;
  hp.seed = train_seed(config);
  TrainResult result = train(train_pairs, hp);
  save_checkpoint({result.params, result.vocab, result.hp},
                  config.output_dir + "/model/model.ckpt");
  nlohmann::json j;
  j["train_pairs"] = train_pairs.size();
  j["epochs"] = hp.epochs;
  j["loss_history"] = result.epoch_losses;
  write_file(config.output_dir + "/model/train.json", j.dump(2) + "\n");
  return j;
}

nlohmann::json stage_eval(const PipelineConfig& config) {
  std::vector<TrainingPair> pairs =
      read_training_pairs(read_file(config.output_dir + "/dataset/pairs.jsonl"));
  if (config.holdout <= 0) throw std::runtime_error("eval needs train.holdout > 0");
  if (config.holdout >= static_cast<int>(pairs.size()))
    throw std::runtime_error("holdout exceeds the dataset");
  std::vector<TrainingPair> held(pairs.end() - config.holdout, pairs.end());
  ModelBundle bundle = load_checkpoint(config.output_dir + "/model/model.ckpt");

  std::vector<std::string> restored(held.size());
  parallel_for(static_cast<int>(held.size()), config.workers, [&](int i) {
    restored[i] = restore(bundle.params, bundle.vocab, bundle.hp, held[i].ocr);
  });

  long noisy_char_edits = 0, noisy_word_edits = 0;
  long restored_char_edits = 0, restored_word_edits = 0;
  long chars = 0, words = 0;
  std::string restored_text;
  for (size_t i = 0; i < held.size(); ++i) {
    ErrorRates noisy = error_rates(held[i].gt, held[i].ocr);
    ErrorRates rest = error_rates(held[i].gt, restored[i]);
    noisy_char_edits += noisy.char_edits;
    noisy_word_edits += noisy.word_edits;
    restored_char_edits += rest.char_edits;
    restored_word_edits += rest.word_edits;
    chars += static_cast<long>(held[i].gt.size());
    words += static_cast<long>(whitespace_tokens(held[i].gt).size());
    restored_text += restored[i];
    restored_text += '\n';
  }
  write_file(config.output_dir + "/eval/restored.txt", restored_text);

  auto block = [&](long char_edits, long word_edits) {
    nlohmann::json b;
    double cer = chars ? static_cast<double>(char_edits) / chars : 0.0;
    double wer = words ? static_cast<double>(word_edits) / words : 0.0;
    b["cer"] = cer;
    b["wer"] = wer;
    b["char_accuracy"] = 1.0 - cer;
    b["word_accuracy"] = 1.0 - wer;
    return b;
  };
  nlohmann::json j;
  j["pairs"] = held.size();
  j["noisy"] = block(noisy_char_edits, noisy_word_edits);
  j["restored"] = block(restored_char_edits, restored_word_edits);
  write_file(config.output_dir + "/eval/eval.json", j.dump(2) + "\n");
  return j;
}

RunManifest run_pipeline(const PipelineConfig& config) {
  RunManifest manifest;
  manifest.doc["config"] = pipeline_config_to_json(config);
  manifest.doc["timestamps"]["started"] = iso_timestamp();
  nlohmann::json& stages = manifest.doc["stages"];

  struct StageDef {
    const char* name;
    std::function<nlohmann::json()> run;
    bool enabled;
  };
  const std::string& dir = config.output_dir;
  std::vector<StageDef> defs = {
      {"corpus",
       [&] {
         stage_corpus(config);
         return nlohmann::json{{"output", dir + "/corpus/input.conll"}};
       },
       true},
      {"render",
       [&] {
         stage_render(config);
         return nlohmann::json{{"output", dir + "/renders"}};
       },
       true},
      {"degrade",
       [&] {
         stage_degrade(config);
         return nlohmann::json{{"output", dir + "/degraded"}};
       },
       true},
      {"ocr",
       [&] {
         stage_ocr(config);
         return nlohmann::json{{"output", dir + "/ocr"}};
       },
       true},
      {"align",
       [&] {
         nlohmann::json metrics = stage_align(config);
         return nlohmann::json{{"output", dir + "/alignments"}, {"metrics", metrics}};
       },
       true},
      {"labels",
       [&] {
         nlohmann::json metrics = stage_labels(config);
         return nlohmann::json{{"output", dir + "/labels"}, {"metrics", metrics}};
       },
       true},
      {"dataset",
       [&] {
         nlohmann::json metrics = stage_dataset(config);
         return nlohmann::json{{"output", dir + "/dataset/pairs.jsonl"}, {"metrics", metrics}};
       },
       true},
      {"train",
       [&] {
         nlohmann::json metrics = stage_train(config);
         return nlohmann::json{{"output", dir + "/model/model.ckpt"}, {"metrics", metrics}};
       },
       config.do_train},
      {"eval",
       [&] {
         nlohmann::json metrics = stage_eval(config);
         return nlohmann::json{{"output", dir + "/eval/eval.json"}, {"metrics", metrics}};
       },
       config.do_train && config.holdout > 0},
  };

  for (const StageDef& def : defs) {
    if (!def.enabled) continue;
    try {
      stages[def.name] = def.run();
    } catch (const std::exception& e) {
      manifest.failed_stage = def.name;
      manifest.doc["failed_stage"] = def.name;
      manifest.doc["error"] = e.what();
      break;
    }
  }
  manifest.doc["timestamps"]["finished"] = iso_timestamp();
  write_file_atomic(config.output_dir + "/manifest.json", manifest.doc.dump(2) + "\n");
  return manifest;
}

}  // namespace docsynth
