// docsynth command line: synthesize degraded document images from text, run
// OCR, align and label the output, and train/apply the restoration model.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "docsynth/actions.hpp"
#include "docsynth/align.hpp"
#include "docsynth/corpus.hpp"
#include "docsynth/degrade.hpp"
#include "docsynth/model.hpp"
#include "docsynth/ocr.hpp"
#include "docsynth/ocr_client.hpp"
#include "docsynth/pipeline.hpp"
#include "docsynth/render.hpp"
#include "docsynth/textgen.hpp"

namespace ds = docsynth;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string config_path;
  std::string input;
  std::string output;
  bool has_seed = false;
  uint64_t seed = 0;
  std::string degradation;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_io = true) {
  cmd->add_option("--config,-c", opts.config_path, "pipeline configuration JSON");
  if (with_io) {
    cmd->add_option("--input,-i", opts.input, "input path");
    cmd->add_option("--output,-o", opts.output, "output path");
  }
  cmd->add_option("--seed", opts.seed, "seed override")->each([&](const std::string&) {
    opts.has_seed = true;
  });
  cmd->add_option("--degradation", opts.degradation,
                  "degradation recipe override (none|all_light|all_heavy)");
}

ds::PipelineConfig resolve_config(const CommonOpts& opts) {
  if (opts.config_path.empty())
    throw std::invalid_argument("--config is required for this command");
  ds::PipelineConfig config = ds::load_pipeline_config(opts.config_path);
  if (opts.has_seed) config.seed = opts.seed;
  if (!opts.degradation.empty()) {
    if (!ds::is_builtin_recipe_name(opts.degradation))
      throw std::invalid_argument("unknown recipe \"" + opts.degradation + "\"");
    config.recipe_name = opts.degradation;
    config.has_inline_recipe = false;
  }
  return config;
}

std::string read_stdin() {
  return std::string((std::istreambuf_iterator<char>(std::cin)),
                     std::istreambuf_iterator<char>());
}

void emit(const std::string& output, const std::string& data) {
  if (output.empty())
    std::cout << data;
  else
    ds::write_file(output, data);
}

int run(int argc, char** argv) {
  CLI::App app{"document synthesis, OCR alignment, and text restoration toolkit"};
  app.require_subcommand(1);

  // render
  auto* render_cmd = app.add_subcommand("render", "rasterize text into page images");
  CommonOpts render_opts;
  std::string template_name = "text_block";
  bool input_is_conll = false;
  add_common(render_cmd, render_opts);
  render_cmd->add_option("--template", template_name, "text_block|multi_column|letter");
  render_cmd->add_flag("--conll", input_is_conll, "input is CoNLL instead of plain text");

  // degrade
  auto* degrade_cmd = app.add_subcommand("degrade", "apply a degradation recipe to a page");
  CommonOpts degrade_opts;
  std::string recipe_path;
  add_common(degrade_cmd, degrade_opts);
  degrade_cmd->add_option("--recipe", recipe_path, "inline recipe JSON file");

  // ocr
  auto* ocr_cmd = app.add_subcommand("ocr", "extract text lines from a page image");
  CommonOpts ocr_opts;
  std::string endpoint;
  add_common(ocr_cmd, ocr_opts);
  ocr_cmd->add_option("--endpoint", endpoint, "external OCR service endpoint");

  // align
  auto* align_cmd = app.add_subcommand("align", "align ground truth text with OCR text");
  CommonOpts align_opts;
  std::string align_gt, align_hyp;
  bool plain_nw = false;
  add_common(align_cmd, align_opts);
  align_cmd->add_option("--gt", align_gt, "ground truth text file")->required();
  align_cmd->add_option("--hyp", align_hyp, "hypothesis text file")->required();
  align_cmd->add_flag("--no-anchors", plain_nw, "force plain Needleman-Wunsch");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "CER/WER of a hypothesis file");
  CommonOpts metrics_opts;
  std::string metrics_gt, metrics_hyp;
  bool with_gaps = false;
  add_common(metrics_cmd, metrics_opts);
  metrics_cmd->add_option("--gt", metrics_gt, "ground truth text file")->required();
  metrics_cmd->add_option("--hyp", metrics_hyp, "hypothesis text file")->required();
  metrics_cmd->add_flag("--gaps", with_gaps, "also report alignment gap metrics");

  // derive-actions
  auto* actions_cmd =
      app.add_subcommand("derive-actions", "derive restoration actions for gt/ocr pairs");
  CommonOpts actions_opts;
  std::string stats_path;
  add_common(actions_cmd, actions_opts);
  actions_cmd->add_option("--stats", stats_path, "write aggregate action statistics here");

  // make-dataset
  auto* dataset_cmd =
      app.add_subcommand("make-dataset", "run the pipeline up to training pair emission");
  CommonOpts dataset_opts;
  add_common(dataset_cmd, dataset_opts, false);

  // train
  auto* train_cmd = app.add_subcommand("train", "train the restoration model on pairs");
  CommonOpts train_opts;
  add_common(train_cmd, train_opts);

  // restore
  auto* restore_cmd = app.add_subcommand("restore", "restore noisy text line by line");
  CommonOpts restore_opts;
  std::string model_path;
  add_common(restore_cmd, restore_opts);
  restore_cmd->add_option("--model", model_path, "model checkpoint")->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "compare noisy and restored accuracy");
  CommonOpts eval_opts;
  std::string eval_pairs, eval_model;
  add_common(eval_cmd, eval_opts);
  eval_cmd->add_option("--pairs", eval_pairs, "held-out pairs JSONL")->required();
  eval_cmd->add_option("--model", eval_model, "model checkpoint")->required();

  // pipeline
  auto* pipeline_cmd = app.add_subcommand("pipeline", "run every stage from one config");
  CommonOpts pipeline_opts;
  add_common(pipeline_cmd, pipeline_opts, false);

  // generate-text
  auto* gen_cmd = app.add_subcommand("generate-text", "emit sentences from the bundled text");
  CommonOpts gen_opts;
  int gen_count = 100;
  add_common(gen_cmd, gen_opts);
  gen_cmd->add_option("--sentences,-n", gen_count, "number of sentences");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (render_cmd->parsed()) {
    if (render_opts.input.empty()) throw std::invalid_argument("--input is required");
    if (render_opts.output.empty()) throw std::invalid_argument("--output is required");
    std::string text = ds::read_file(render_opts.input);
    std::string plain;
    if (input_is_conll)
      plain = ds::to_plain_text(ds::parse_conll(text)).text;
    else
      plain = text;
    ds::RenderResult result = ds::render_document(plain, ds::builtin_template(template_name));
    for (size_t p = 0; p < result.pages.size(); ++p) {
      char name[32];
      std::snprintf(name, sizeof(name), "/page_%03d.pgm", static_cast<int>(p));
      ds::write_pgm(result.pages[p], render_opts.output + name);
    }
    ds::write_file(render_opts.output + "/geometry.jsonl", ds::write_geometry(result.geometry));
    std::string transcript;
    for (const auto& t : result.transcripts) {
      transcript += t;
      transcript += '\n';
    }
    ds::write_file(render_opts.output + "/transcript.txt", transcript);
    std::cerr << "rendered " << result.pages.size() << " page(s)\n";
    return kExitOk;
  }

  if (degrade_cmd->parsed()) {
    if (degrade_opts.input.empty()) throw std::invalid_argument("--input is required");
    if (degrade_opts.output.empty()) throw std::invalid_argument("--output is required");
    ds::Recipe recipe;
    if (!recipe_path.empty()) {
      recipe = ds::parse_recipe(ds::read_file(recipe_path));
    } else {
      std::string name = degrade_opts.degradation.empty() ? "all_light" : degrade_opts.degradation;
      recipe = ds::builtin_recipe(name, 0);
    }
    if (degrade_opts.has_seed) recipe.seed = degrade_opts.seed;
    ds::PageImage img = ds::read_pgm(degrade_opts.input);
    ds::write_pgm(ds::apply_recipe(img, recipe), degrade_opts.output);
    return kExitOk;
  }

  if (ocr_cmd->parsed()) {
    if (ocr_opts.input.empty()) throw std::invalid_argument("--input is required");
    ds::PageImage img = ds::read_pgm(ocr_opts.input);
    ds::OcrResult result;
    if (!endpoint.empty()) {
      ds::OcrClientConfig client;
      client.endpoint = endpoint;
      if (const char* token = std::getenv("DOCSYNTH_OCR_TOKEN")) client.bearer_token = token;
      result = ds::external_ocr(img, client);
    } else {
      result = ds::recognize_page(img);
    }
    emit(ocr_opts.output, ds::write_ocr_result(result));
    return kExitOk;
  }

  if (align_cmd->parsed()) {
    std::string gt = ds::normalize_newlines(ds::read_file(align_gt));
    std::string hyp = ds::normalize_newlines(ds::read_file(align_hyp));
    ds::AlignParams params;
    if (!align_opts.config_path.empty())
      params = ds::load_pipeline_config(align_opts.config_path).align_params;
    ds::Alignment al = plain_nw ? ds::needleman_wunsch(gt, hyp, params)
                                : ds::anchored_align(gt, hyp, params);
    emit(align_opts.output, ds::write_alignment(al));
    return kExitOk;
  }

  if (metrics_cmd->parsed()) {
    std::string gt = ds::read_file(metrics_gt);
    std::string hyp = ds::read_file(metrics_hyp);
    ds::ErrorRates rates = ds::error_rates(gt, hyp);
    std::string out = ds::write_error_rates(rates);
    if (with_gaps) {
      ds::Alignment al = ds::anchored_align(ds::normalize_newlines(gt),
                                            ds::normalize_newlines(hyp), {});
      out += ds::write_gap_metrics(ds::gap_metrics(al));
    }
    emit(metrics_opts.output, out);
    return kExitOk;
  }

  if (actions_cmd->parsed()) {
    std::string input =
        actions_opts.input.empty() ? read_stdin() : ds::read_file(actions_opts.input);
    std::vector<ds::TrainingPair> pairs = ds::read_training_pairs(input);
    std::string out;
    for (const auto& pair : pairs) {
      ds::Alignment al = ds::anchored_align(pair.gt, pair.ocr, {});
      out += ds::write_action_sequence(ds::derive_actions(al));
    }
    emit(actions_opts.output, out);
    if (!stats_path.empty()) {
      ds::ActionStats stats = ds::action_stats(pairs, {});
      nlohmann::json j;
      for (int k = 0; k < ds::kNumActionKinds; ++k)
        j["action_counts"][ds::action_kind_name(static_cast<ds::ActionKind>(k))] =
            stats.kind_counts[k];
      j["ops_per_char_histogram"] = {{"0", stats.ops_histogram[0]},
                                     {"1", stats.ops_histogram[1]},
                                     {"2", stats.ops_histogram[2]},
                                     {">2", stats.ops_histogram[3]}};
      ds::write_file(stats_path, j.dump(2) + "\n");
    }
    return kExitOk;
  }

  if (dataset_cmd->parsed()) {
    ds::PipelineConfig config = resolve_config(dataset_opts);
    ds::stage_corpus(config);
    ds::stage_render(config);
    ds::stage_degrade(config);
    ds::stage_ocr(config);
    ds::stage_align(config);
    ds::stage_labels(config);
    nlohmann::json metrics = ds::stage_dataset(config);
    std::cout << metrics.dump(2) << "\n";
    return kExitOk;
  }

  if (train_cmd->parsed()) {
    if (train_opts.input.empty()) throw std::invalid_argument("--input is required");
    if (train_opts.output.empty()) throw std::invalid_argument("--output is required");
    std::vector<ds::TrainingPair> pairs =
        ds::read_training_pairs(ds::read_file(train_opts.input));
    ds::Hyperparams hp;
    if (!train_opts.config_path.empty())
      hp = ds::load_pipeline_config(train_opts.config_path).model_hp;
    if (train_opts.has_seed) hp.seed = train_opts.seed;
    ds::TrainResult result = ds::train(pairs, hp);
    ds::save_checkpoint({result.params, result.vocab, result.hp}, train_opts.output);
    nlohmann::json j;
    j["train_pairs"] = pairs.size();
    j["loss_history"] = result.epoch_losses;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  if (restore_cmd->parsed()) {
    ds::ModelBundle bundle = ds::load_checkpoint(model_path);
    std::string input =
        restore_opts.input.empty() ? read_stdin() : ds::read_file(restore_opts.input);
    std::string out;
    size_t pos = 0;
    while (pos <= input.size()) {
      size_t eol = input.find('\n', pos);
      bool last = eol == std::string::npos;
      std::string line = input.substr(pos, (last ? input.size() : eol) - pos);
      if (!(last && line.empty()))
        out += ds::restore(bundle.params, bundle.vocab, bundle.hp, line) + "\n";
      if (last) break;
      pos = eol + 1;
    }
    emit(restore_opts.output, out);
    return kExitOk;
  }

  if (eval_cmd->parsed()) {
    std::vector<ds::TrainingPair> pairs = ds::read_training_pairs(ds::read_file(eval_pairs));
    ds::ModelBundle bundle = ds::load_checkpoint(eval_model);
    long noisy_char = 0, noisy_word = 0, restored_char = 0, restored_word = 0;
    long chars = 0, words = 0;
    for (const auto& pair : pairs) {
      std::string restored = ds::restore(bundle.params, bundle.vocab, bundle.hp, pair.ocr);
      ds::ErrorRates noisy = ds::error_rates(pair.gt, pair.ocr);
      ds::ErrorRates rest = ds::error_rates(pair.gt, restored);
      noisy_char += noisy.char_edits;
      noisy_word += noisy.word_edits;
      restored_char += rest.char_edits;
      restored_word += rest.word_edits;
      chars += static_cast<long>(pair.gt.size());
      words += static_cast<long>(ds::whitespace_tokens(pair.gt).size());
    }
    auto block = [&](long ce, long we) {
      nlohmann::json b;
      double cer = chars ? static_cast<double>(ce) / chars : 0.0;
      double wer = words ? static_cast<double>(we) / words : 0.0;
      b["cer"] = cer;
      b["wer"] = wer;
      b["char_accuracy"] = 1.0 - cer;
      b["word_accuracy"] = 1.0 - wer;
      return b;
    };
    nlohmann::json j;
    j["pairs"] = pairs.size();
    j["noisy"] = block(noisy_char, noisy_word);
    j["restored"] = block(restored_char, restored_word);
    emit(eval_opts.output, j.dump(2) + "\n");
    return kExitOk;
  }

  if (pipeline_cmd->parsed()) {
    ds::PipelineConfig config = resolve_config(pipeline_opts);
    ds::RunManifest manifest = ds::run_pipeline(config);
    if (!manifest.ok()) {
      std::cerr << "pipeline failed at stage " << manifest.failed_stage << ": "
                << manifest.doc.value("error", std::string("unknown error")) << "\n";
      return kExitRuntime;
    }
    std::cout << manifest.doc["stages"].dump(2) << "\n";
    return kExitOk;
  }

  if (gen_cmd->parsed()) {
    uint64_t seed = gen_opts.has_seed ? gen_opts.seed : 0;
    ds::LabeledCorpus corpus = ds::generate_corpus(gen_count, seed);
    std::string out;
    for (const auto& sentence : corpus.sentences) {
      for (size_t t = 0; t < sentence.tokens.size(); ++t) {
        if (t > 0) out += ' ';
        out += sentence.tokens[t];
      }
      out += '\n';
    }
    emit(gen_opts.output, out);
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
