#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "docsynth/align.hpp"
#include "docsynth/corpus.hpp"
#include "docsynth/degrade.hpp"
#include "docsynth/model.hpp"
#include "docsynth/ocr.hpp"
#include "docsynth/ocr_client.hpp"
#include "docsynth/render.hpp"

namespace docsynth {

// One configuration document drives the whole pipeline; the seed reaches
// every stochastic stage.
struct PipelineConfig {
  uint64_t seed = 0;
  int sentences_per_doc = 25;

  DocumentTemplate tmpl;  // resolved template, overrides applied

  std::string recipe_name = "none";  // ignored when inline_recipe is set
  bool has_inline_recipe = false;
  Recipe inline_recipe;

  std::string ocr_engine = "builtin";  // "builtin" | "external"
  OcrClientConfig ocr_client;

  AlignParams align_params;
  Hyperparams model_hp;

  // "conll" and "text" read input_path ("text" treats each line as one
  // pre-tokenized sentence); "generate" samples from the bundled text.
  std::string input_format = "generate";
  std::string input_path;
  int generate_sentences = 100;

  std::string output_dir;

  bool do_train = false;
  int holdout = 0;   // trailing pairs reserved for evaluation
  int workers = 0;   // document-level worker threads; 0 = hardware default
};

PipelineConfig parse_pipeline_config(const nlohmann::json& json);
PipelineConfig load_pipeline_config(const std::string& path);
nlohmann::json pipeline_config_to_json(const PipelineConfig& config);

struct RunManifest {
  nlohmann::json doc;
  std::string failed_stage;  // empty on success
  bool ok() const { return failed_stage.empty(); }
};

// Degradation seed for one page, derived from the run seed.
uint64_t page_seed(uint64_t run_seed, int doc_index, int page_index);

// Pipeline stages. Each one reads its inputs from and writes its outputs
// under config.output_dir, so running them in order equals run_pipeline.
void stage_corpus(const PipelineConfig& config);    // corpus/input.conll
void stage_render(const PipelineConfig& config);    // renders/
void stage_degrade(const PipelineConfig& config);   // degraded/
void stage_ocr(const PipelineConfig& config);       // ocr/
nlohmann::json stage_align(const PipelineConfig& config);    // alignments/, metrics
nlohmann::json stage_labels(const PipelineConfig& config);   // labels/
nlohmann::json stage_dataset(const PipelineConfig& config);  // dataset/pairs.jsonl
nlohmann::json stage_train(const PipelineConfig& config);    // model/model.ckpt
nlohmann::json stage_eval(const PipelineConfig& config);     // eval/

// Runs every stage in order and writes manifest.json (atomically) into the
// output directory. A failing stage is recorded in the manifest and reported
// through RunManifest::failed_stage.
RunManifest run_pipeline(const PipelineConfig& config);

// Helpers shared by the stages and the CLI.
LabeledCorpus load_input_corpus(const PipelineConfig& config);
std::vector<LabeledCorpus> group_documents(const LabeledCorpus& corpus, int sentences_per_doc);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);
void write_file_atomic(const std::string& path, const std::string& data);

// Newlines read as plain spaces for alignment and metric purposes.
std::string normalize_newlines(std::string_view text);

}  // namespace docsynth
