#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "docsynth/actions.hpp"
#include "docsynth/corpus.hpp"

namespace docsynth {

// Character inventory with dense ids. Reserved ids come first, then every
// character seen in the corpus by ascending byte value.
struct Vocab {
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kEos = 2;
  static constexpr int kReserved = 3;

  std::vector<char> chars;
  std::array<int, 256> byte_to_id{};  // kUnk for unseen bytes

  int size() const { return kReserved + static_cast<int>(chars.size()); }
  int encode(char c) const { return byte_to_id[static_cast<unsigned char>(c)]; }
  char decode(int id) const { return chars[id - kReserved]; }
  bool operator==(const Vocab& o) const { return chars == o.chars; }
};

Vocab build_vocab(const std::vector<TrainingPair>& corpus);

struct Hyperparams {
  int embed_dim = 32;
  int conv_layers = 4;
  int kernel_size = 5;  // odd
  int channels = 128;
  double alpha = 1.0;  // action loss weight
  double beta = 1.0;   // character loss weight
  double learning_rate = 1e-3;
  int batch_size = 32;
  int epochs = 10;
  uint64_t seed = 0;
  void validate() const;
};

// All learnable tensors. Conv layer 0 maps embed_dim -> channels, later
// layers channels -> channels; weights are stored [out][in][k], heads
// [channels][classes].
template <typename F>
struct ModelParamsT {
  std::vector<F> embedding;  // V * embed_dim
  std::vector<std::vector<F>> conv_w;
  std::vector<std::vector<F>> conv_b;
  std::vector<F> action_w;  // channels * kNumActionKinds
  std::vector<F> action_b;
  std::vector<F> char_w;  // channels * V
  std::vector<F> char_b;

  void for_each(auto&& fn) {
    fn(embedding);
    for (auto& w : conv_w) fn(w);
    for (auto& b : conv_b) fn(b);
    fn(action_w);
    fn(action_b);
    fn(char_w);
    fn(char_b);
  }
  void for_each(auto&& fn) const {
    fn(embedding);
    for (const auto& w : conv_w) fn(w);
    for (const auto& b : conv_b) fn(b);
    fn(action_w);
    fn(action_b);
    fn(char_w);
    fn(char_b);
  }
};
using ModelParams = ModelParamsT<float>;

template <typename To, typename From>
ModelParamsT<To> cast_params(const ModelParamsT<From>& p);

// One encoded sentence: OCR bytes plus a trailing EOS; gold labels from
// derive_actions, the end slot sitting on the EOS position.
struct EncodedExample {
  std::vector<int> ids;
  std::vector<int> gold_actions;
  std::vector<int> gold_chars;  // Vocab::kPad where the action carries none
};

EncodedExample encode_example(const TrainingPair& pair, const Vocab& vocab,
                              const AlignParams& align_params = {});

struct Batch {
  int batch = 0;
  int time = 0;
  std::vector<int> ids;           // batch * time, kPad padded
  std::vector<int> gold_actions;  // PAD action at padding
  std::vector<int> gold_chars;
  std::vector<uint8_t> mask;  // 0 exactly at padding positions

  int at(int b, int t) const { return b * time + t; }
};

Batch make_batch(const std::vector<EncodedExample>& examples, size_t begin, size_t end);
Batch make_batch(const std::vector<EncodedExample>& examples,
                 const std::vector<size_t>& order, size_t begin, size_t end);

template <typename F>
struct LogitsT {
  int batch = 0;
  int time = 0;
  std::vector<F> action;  // batch * time * kNumActionKinds
  std::vector<F> chars;   // batch * time * V
};

// Uniform init in +-sqrt(1/fan_in) (embedding fan_in = embed_dim, conv
// fan_in = in*k, heads fan_in = channels), biases zero, draws consumed in
// storage order from a stream seeded by hp.seed.
template <typename F>
ModelParamsT<F> init_params(const Hyperparams& hp, int vocab_size);

// Embedding lookup, conv stack (zero same-padding, ReLU), two affine heads.
// Masked positions are zeroed after every layer, so batched evaluation
// matches single-sequence evaluation exactly.
template <typename F>
LogitsT<F> forward(const ModelParamsT<F>& params, const Batch& batch,
                   const Hyperparams& hp, int vocab_size);

struct LossValues {
  double total = 0.0;
  double action_loss = 0.0;
  double char_loss = 0.0;
};

// Mean cross-entropy over masked positions (action head) and over positions
// whose gold action carries a character (char head); total is the weighted
// combination alpha * action + beta * char.
template <typename F>
LossValues compute_loss(const LogitsT<F>& logits, const Batch& batch, double alpha,
                        double beta);

template <typename F>
double total_loss(const ModelParamsT<F>& params, const Batch& batch, const Hyperparams& hp,
                  int vocab_size);

// Analytic gradients of the total loss for every parameter.
template <typename F>
ModelParamsT<F> grad(const ModelParamsT<F>& params, const Batch& batch,
                     const Hyperparams& hp, int vocab_size);

struct TrainResult {
  ModelParams params;
  Vocab vocab;
  Hyperparams hp;
  std::vector<double> epoch_losses;  // mean batch loss per epoch
};

// Adam (beta1 0.9, beta2 0.999, eps 1e-8) over per-epoch reshuffles of the
// corpus; fully deterministic for a fixed seed.
TrainResult train(const std::vector<TrainingPair>& corpus, const Hyperparams& hp);

// Greedy decoding: per-position argmax action (ties to the lower id), argmax
// character over non-reserved ids for char-bearing actions, then
// apply_actions. The EOS position is restricted to valid end-slot kinds.
std::string restore(const ModelParams& params, const Vocab& vocab, const Hyperparams& hp,
                    std::string_view text);

class CheckpointFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CheckpointVersionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class CheckpointCorruptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelBundle {
  ModelParams params;
  Vocab vocab;
  Hyperparams hp;
};

// Binary checkpoint: magic "AOCR", little-endian u32 version, length-prefixed
// JSON metadata (vocab bytes + hyperparams), then raw little-endian float32
// tensors in declaration order.
void save_checkpoint(const ModelBundle& bundle, const std::string& path);
ModelBundle load_checkpoint(const std::string& path);
std::string encode_checkpoint(const ModelBundle& bundle);
ModelBundle decode_checkpoint(const std::string& bytes);

}  // namespace docsynth
