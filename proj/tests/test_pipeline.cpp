#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include "docsynth/pipeline.hpp"
#include "docsynth/textgen.hpp"

using namespace docsynth;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("docsynth_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

nlohmann::json base_config(const std::string& out_dir, int sentences = 30) {
  nlohmann::json j;
  j["seed"] = 11;
  j["io"] = {{"input_format", "generate"},
             {"generate_sentences", sentences},
             {"output_dir", out_dir}};
  j["degradation"] = "none";
  j["train"] = {{"enabled", false}};
  return j;
}

std::string slurp(const std::string& path) { return read_file(path); }

nlohmann::json strip_timestamps(nlohmann::json doc) {
  doc.erase("timestamps");
  return doc;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(DOCSYNTH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config parsing applies defaults, overrides, and strictness") {
  TempDir dir;
  nlohmann::json j = base_config(dir.str());
  j["template"] = {{"name", "multi_column"}, {"hyphenate", false}, {"margin_px", 40}};
  j["align"] = {{"max_fragment_chars", 128}};
  PipelineConfig config = parse_pipeline_config(j);
  CHECK(config.tmpl.columns == 2);
  CHECK(config.tmpl.margin_px == 40);
  CHECK(config.tmpl.hyphenate == false);
  CHECK(config.align_params.max_fragment_chars == 128);
  CHECK(config.recipe_name == "none");

  nlohmann::json bad_recipe = base_config(dir.str());
  bad_recipe["degradation"] = "super_heavy";
  CHECK_THROWS_AS(parse_pipeline_config(bad_recipe), std::invalid_argument);

  nlohmann::json unknown_key = base_config(dir.str());
  unknown_key["degredation"] = "none";
  CHECK_THROWS_AS(parse_pipeline_config(unknown_key), std::invalid_argument);

  nlohmann::json no_out = base_config("");
  CHECK_THROWS_AS(parse_pipeline_config(no_out), std::invalid_argument);

  nlohmann::json tiny_frag = base_config(dir.str());
  tiny_frag["align"] = {{"max_fragment_chars", 8}};
  CHECK_THROWS_AS(parse_pipeline_config(tiny_frag), std::invalid_argument);

  nlohmann::json inline_recipe = base_config(dir.str());
  inline_recipe["degradation"] = {{"steps", {{{"kind", "Blur"}, {"radius", 3}}}}};
  PipelineConfig with_inline = parse_pipeline_config(inline_recipe);
  CHECK(with_inline.has_inline_recipe);
  CHECK(with_inline.inline_recipe.steps.size() == 1);
}

TEST_CASE("generate_corpus is deterministic and sized") {
  LabeledCorpus a = generate_corpus(40, 9);
  LabeledCorpus b = generate_corpus(40, 9);
  CHECK(a.sentences.size() == 40);
  REQUIRE(b.sentences.size() == 40);
  for (size_t i = 0; i < a.sentences.size(); ++i)
    CHECK(a.sentences[i] == b.sentences[i]);
  CHECK(generate_corpus(40, 10).sentences != a.sentences);
}

TEST_CASE("normalize_newlines maps newlines to spaces positionally") {
  CHECK(normalize_newlines("a\nb c\n") == "a b c ");
  CHECK(normalize_newlines("").empty());
}

TEST_CASE("pipeline with no degradation reads back nearly perfectly") {
  TempDir dir;
  PipelineConfig config = parse_pipeline_config(base_config(dir.str(), 10));
  RunManifest manifest = run_pipeline(config);
  REQUIRE(manifest.ok());
  CHECK(fs::exists(dir.path / "manifest.json"));
  CHECK(fs::exists(dir.path / "corpus/input.conll"));
  CHECK(fs::exists(dir.path / "dataset/pairs.jsonl"));

  double cer = manifest.doc["stages"]["align"]["metrics"]["cer"].get<double>();
  CHECK(cer < 0.01);
  // wraps cost whole words, so the word rate sits above the char rate
  double wer = manifest.doc["stages"]["align"]["metrics"]["wer"].get<double>();
  CHECK(wer >= cer);

  // every sentence yields one pair whose gt is the sentence itself
  LabeledCorpus corpus = parse_conll(slurp(dir.str() + "/corpus/input.conll"));
  std::vector<TrainingPair> pairs = read_training_pairs(slurp(dir.str() + "/dataset/pairs.jsonl"));
  REQUIRE(pairs.size() == corpus.sentences.size());
  for (size_t s = 0; s < pairs.size(); ++s) {
    PlainText pt = to_plain_text({{corpus.sentences[s]}, ""});
    CHECK(pairs[s].gt == pt.text);
  }
}

TEST_CASE("pipeline stages compose to the same artifacts") {
  TempDir one, two;
  nlohmann::json j = base_config(one.str(), 12);
  j["degradation"] = "all_light";
  j["model"] = {{"embed_dim", 8}, {"conv_layers", 1}, {"kernel_size", 3},
                {"channels", 8},  {"epochs", 1},      {"batch_size", 8}};
  j["train"] = {{"enabled", true}, {"holdout", 4}};
  PipelineConfig config = parse_pipeline_config(j);
  REQUIRE(run_pipeline(config).ok());

  j["io"]["output_dir"] = two.str();
  PipelineConfig staged = parse_pipeline_config(j);
  stage_corpus(staged);
  stage_render(staged);
  stage_degrade(staged);
  stage_ocr(staged);
  stage_align(staged);
  stage_labels(staged);
  stage_dataset(staged);
  stage_train(staged);
  stage_eval(staged);

  for (const char* rel :
       {"corpus/input.conll", "renders/doc_0000_page_00.pgm", "degraded/doc_0000_page_00.pgm",
        "ocr/doc_0000.txt", "alignments/doc_0000.json", "labels/pred.conll",
        "dataset/pairs.jsonl", "model/model.ckpt", "eval/eval.json"}) {
    INFO(rel);
    CHECK(slurp(one.str() + "/" + rel) == slurp(two.str() + "/" + rel));
  }
}

TEST_CASE("pipeline reruns are byte-identical up to timestamps") {
  TempDir one, two;
  nlohmann::json j = base_config(one.str(), 15);
  j["degradation"] = "all_light";
  PipelineConfig first = parse_pipeline_config(j);
  j["io"]["output_dir"] = two.str();
  PipelineConfig second = parse_pipeline_config(j);
  REQUIRE(run_pipeline(first).ok());
  REQUIRE(run_pipeline(second).ok());

  CHECK(slurp(one.str() + "/dataset/pairs.jsonl") == slurp(two.str() + "/dataset/pairs.jsonl"));
  CHECK(slurp(one.str() + "/degraded/doc_0000_page_00.pgm") ==
        slurp(two.str() + "/degraded/doc_0000_page_00.pgm"));
  nlohmann::json m1 = nlohmann::json::parse(slurp(one.str() + "/manifest.json"));
  nlohmann::json m2 = nlohmann::json::parse(slurp(two.str() + "/manifest.json"));
  m1["config"]["io"]["output_dir"] = "";
  m2["config"]["io"]["output_dir"] = "";
  m1["stages"] = nlohmann::json();  // stage blocks embed output paths
  m2["stages"] = nlohmann::json();
  CHECK(strip_timestamps(m1).dump() == strip_timestamps(m2).dump());
}

TEST_CASE("a failing stage is recorded in the manifest") {
  TempDir dir;
  nlohmann::json j = base_config(dir.str(), 5);
  j["train"] = {{"enabled", true}, {"holdout", 500}};  // holdout exceeds dataset
  PipelineConfig config = parse_pipeline_config(j);
  RunManifest manifest = run_pipeline(config);
  CHECK(!manifest.ok());
  CHECK(manifest.failed_stage == "train");
  nlohmann::json on_disk = nlohmann::json::parse(slurp(dir.str() + "/manifest.json"));
  CHECK(on_disk["failed_stage"] == "train");
}

TEST_CASE("page seeds differ across documents and pages") {
  CHECK(page_seed(1, 0, 0) != page_seed(1, 0, 1));
  CHECK(page_seed(1, 0, 0) != page_seed(1, 1, 0));
  CHECK(page_seed(1, 2, 3) == page_seed(1, 2, 3));
  CHECK(page_seed(1, 2, 3) != page_seed(2, 2, 3));
}

TEST_CASE("cli exit codes: success, config error, usage error") {
  TempDir dir;
  nlohmann::json j = base_config(dir.str() + "/run", 6);
  write_file(dir.str() + "/cfg.json", j.dump());
  CHECK(run_cli("pipeline -c " + dir.str() + "/cfg.json") == 0);

  nlohmann::json bad = base_config(dir.str() + "/run2", 6);
  bad["degradation"] = "nonsense";
  write_file(dir.str() + "/bad.json", bad.dump());
  CHECK(run_cli("pipeline -c " + dir.str() + "/bad.json") == 2);
  CHECK(!fs::exists(dir.path / "run2"));  // rejected before any output

  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("metrics --gt /nonexistent --hyp /nonexistent") == 1);
}

TEST_CASE("cli metrics and restore contracts") {
  TempDir dir;
  write_file(dir.str() + "/gt.txt", "room");
  write_file(dir.str() + "/hyp.txt", "roorn");
  std::string out = dir.str() + "/rates.json";
  REQUIRE(run_cli("metrics --gt " + dir.str() + "/gt.txt --hyp " + dir.str() +
                  "/hyp.txt -o " + out) == 0);
  nlohmann::json rates = nlohmann::json::parse(slurp(out));
  CHECK(rates["char_edits"] == 2);
  CHECK(rates["cer"].get<double>() == doctest::Approx(0.5));

  // restore with a freshly trained checkpoint writes line for line
  TempDir run;
  nlohmann::json j = base_config(run.str(), 12);
  j["degradation"] = "all_light";
  j["model"] = {{"embed_dim", 8}, {"conv_layers", 1}, {"kernel_size", 3},
                {"channels", 8},  {"epochs", 1},      {"batch_size", 8}};
  j["train"] = {{"enabled", true}, {"holdout", 2}};
  REQUIRE(run_pipeline(parse_pipeline_config(j)).ok());
  write_file(dir.str() + "/noisy.txt", "first line\nsecond line\n");
  std::string restored = dir.str() + "/restored.txt";
  REQUIRE(run_cli("restore --model " + run.str() + "/model/model.ckpt -i " + dir.str() +
                  "/noisy.txt -o " + restored) == 0);
  std::string text = slurp(restored);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("external OCR client against a local service") {
  httplib::Server server;
  std::atomic<int> hits{0};
  server.Post("/ocr", [&](const httplib::Request& req, httplib::Response& res) {
    ++hits;
    CHECK(req.get_header_value("Content-Type") == "image/x-portable-graymap");
    CHECK(req.get_header_value("Authorization") == "Bearer sesame");
    CHECK(req.body.substr(0, 2) == "P5");
    res.set_content("{\"lines\":[{\"text\":\"ab\",\"bbox\":[1,2,16,16]}]}", "application/json");
  });
  server.Post("/empty", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"lines\":[]}", "application/json");
  });
  server.Post("/bad", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"nope\": 1}", "application/json");
  });
  std::atomic<int> flaky_hits{0};
  server.Post("/flaky", [&](const httplib::Request&, httplib::Response& res) {
    if (++flaky_hits < 3) {
      res.status = 503;
      return;
    }
    res.set_content("{\"lines\":[]}", "application/json");
  });
  server.Post("/down", [&](const httplib::Request&, httplib::Response& res) {
    res.status = 500;
  });

  int port = server.bind_to_any_port("127.0.0.1");
  std::thread server_thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  PageImage img(16, 16, 255);
  OcrClientConfig config;
  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/ocr";
  config.bearer_token = "sesame";
  config.max_retries = 2;
  config.retry_delay_ms = 1;

  OcrResult result = external_ocr(img, config);
  REQUIRE(result.lines.size() == 1);
  CHECK(result.lines[0].text == "ab");
  CHECK(result.lines[0].bbox == Box{1, 2, 16, 16});
  CHECK(hits == 1);

  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/empty";
  CHECK(external_ocr(img, config).lines.empty());

  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/bad";
  CHECK_THROWS_AS(external_ocr(img, config), OcrProtocolError);

  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/flaky";
  CHECK(external_ocr(img, config).lines.empty());  // retried through the 503s
  CHECK(flaky_hits == 3);

  config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/down";
  try {
    external_ocr(img, config);
    FAIL("expected OcrServiceError");
  } catch (const OcrServiceError& e) {
    CHECK(e.status == 500);
  }

  server.stop();
  server_thread.join();
}
