#include "docsynth/model.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "docsynth/rng.hpp"

namespace docsynth {

void Hyperparams::validate() const {
  if (embed_dim <= 0 || conv_layers <= 0 || kernel_size <= 0 || channels <= 0 ||
      batch_size <= 0 || epochs < 0)
    throw std::invalid_argument("hyperparameters must be positive");
  if (kernel_size % 2 == 0) throw std::invalid_argument("kernel_size must be odd");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (alpha < 0.0 || beta < 0.0)
    throw std::invalid_argument("loss weights must be non-negative");
}

namespace {

Vocab vocab_from_chars(std::vector<char> chars) {
  Vocab v;
  v.chars = std::move(chars);
  v.byte_to_id.fill(Vocab::kUnk);
  for (size_t i = 0; i < v.chars.size(); ++i)
    v.byte_to_id[static_cast<unsigned char>(v.chars[i])] =
        Vocab::kReserved + static_cast<int>(i);
  return v;
}

}  // namespace

Vocab build_vocab(const std::vector<TrainingPair>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("cannot build a vocabulary from nothing");
  std::set<unsigned char> seen;
  for (const TrainingPair& pair : corpus) {
    for (char c : pair.gt) seen.insert(static_cast<unsigned char>(c));
    for (char c : pair.ocr) seen.insert(static_cast<unsigned char>(c));
  }
  std::vector<char> chars(seen.begin(), seen.end());
  return vocab_from_chars(std::move(chars));
}

template <typename F>
ModelParamsT<F> init_params(const Hyperparams& hp, int vocab_size) {
  hp.validate();
  ModelParamsT<F> p;
  Rng rng(hp.seed);
  auto fill_uniform = [&](std::vector<F>& v, size_t n, int fan_in) {
    F range = static_cast<F>(std::sqrt(1.0 / fan_in));
    v.resize(n);
    for (auto& x : v) x = static_cast<F>((rng.next_double() * 2.0 - 1.0)) * range;
  };
  fill_uniform(p.embedding, static_cast<size_t>(vocab_size) * hp.embed_dim, hp.embed_dim);
  for (int l = 0; l < hp.conv_layers; ++l) {
    int in_ch = l == 0 ? hp.embed_dim : hp.channels;
    std::vector<F> w, b;
    fill_uniform(w, static_cast<size_t>(hp.channels) * in_ch * hp.kernel_size,
                 in_ch * hp.kernel_size);
    b.assign(hp.channels, F(0));
    p.conv_w.push_back(std::move(w));
    p.conv_b.push_back(std::move(b));
  }
  fill_uniform(p.action_w, static_cast<size_t>(hp.channels) * kNumActionKinds, hp.channels);
  p.action_b.assign(kNumActionKinds, F(0));
  fill_uniform(p.char_w, static_cast<size_t>(hp.channels) * vocab_size, hp.channels);
  p.char_b.assign(vocab_size, F(0));
  return p;
}

template <typename To, typename From>
ModelParamsT<To> cast_params(const ModelParamsT<From>& p) {
  ModelParamsT<To> out;
  auto conv = [](const std::vector<From>& v) {
    return std::vector<To>(v.begin(), v.end());
  };
  out.embedding = conv(p.embedding);
  for (const auto& w : p.conv_w) out.conv_w.push_back(conv(w));
  for (const auto& b : p.conv_b) out.conv_b.push_back(conv(b));
  out.action_w = conv(p.action_w);
  out.action_b = conv(p.action_b);
  out.char_w = conv(p.char_w);
  out.char_b = conv(p.char_b);
  return out;
}

EncodedExample encode_example(const TrainingPair& pair, const Vocab& vocab,
                              const AlignParams& align_params) {
  Alignment al = anchored_align(pair.gt, pair.ocr, align_params);
  ActionSequence seq = derive_actions(al);
  EncodedExample ex;
  for (char c : pair.ocr) ex.ids.push_back(vocab.encode(c));
  ex.ids.push_back(Vocab::kEos);
  for (const ActionLabel& label : seq.labels) {
    ex.gold_actions.push_back(static_cast<int>(label.kind));
    ex.gold_chars.push_back(label.ch.has_value() ? vocab.encode(*label.ch) : Vocab::kPad);
  }
  return ex;
}

Batch make_batch(const std::vector<EncodedExample>& examples,
                 const std::vector<size_t>& order, size_t begin, size_t end) {
  Batch batch;
  batch.batch = static_cast<int>(end - begin);
  size_t max_t = 1;
  for (size_t i = begin; i < end; ++i)
    max_t = std::max(max_t, examples[order[i]].ids.size());
  batch.time = static_cast<int>(max_t);
  size_t total = static_cast<size_t>(batch.batch) * batch.time;
  batch.ids.assign(total, Vocab::kPad);
  batch.gold_actions.assign(total, static_cast<int>(ActionKind::Pad));
  batch.gold_chars.assign(total, Vocab::kPad);
  batch.mask.assign(total, 0);
  for (size_t i = begin; i < end; ++i) {
    const EncodedExample& ex = examples[order[i]];
    size_t base = (i - begin) * max_t;
    for (size_t t = 0; t < ex.ids.size(); ++t) {
      batch.ids[base + t] = ex.ids[t];
      batch.gold_actions[base + t] = ex.gold_actions[t];
      batch.gold_chars[base + t] = ex.gold_chars[t];
      batch.mask[base + t] = 1;
    }
  }
  return batch;
}

Batch make_batch(const std::vector<EncodedExample>& examples, size_t begin, size_t end) {
  std::vector<size_t> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  return make_batch(examples, order, begin, end);
}

namespace {

// Activations after masking: acts[0] is the embedding output, acts[l+1] the
// output of conv layer l (post ReLU).
template <typename F>
struct ForwardState {
  std::vector<std::vector<F>> acts;
  LogitsT<F> logits;
};

template <typename F>
ForwardState<F> run_forward(const ModelParamsT<F>& params, const Batch& batch,
                            const Hyperparams& hp, int vocab_size) {
  const int B = batch.batch, T = batch.time;
  const int E = hp.embed_dim, C = hp.channels, K = hp.kernel_size;
  const int off = K / 2;
  const size_t positions = static_cast<size_t>(B) * T;

  ForwardState<F> state;
  state.acts.reserve(hp.conv_layers + 1);

  std::vector<F> emb(positions * E, F(0));
  for (size_t p = 0; p < positions; ++p) {
    if (!batch.mask[p]) continue;
    const F* row = params.embedding.data() + static_cast<size_t>(batch.ids[p]) * E;
    std::copy(row, row + E, emb.begin() + p * E);
  }
  state.acts.push_back(std::move(emb));

  for (int l = 0; l < hp.conv_layers; ++l) {
    const int in_ch = l == 0 ? E : C;
    const std::vector<F>& in = state.acts.back();
    const std::vector<F>& w = params.conv_w[l];
    const std::vector<F>& bias = params.conv_b[l];
    std::vector<F> out(positions * C, F(0));
    for (int b = 0; b < B; ++b) {
      for (int t = 0; t < T; ++t) {
        size_t p = static_cast<size_t>(b) * T + t;
        if (!batch.mask[p]) continue;  // zero throughout the stack
        F* out_row = out.data() + p * C;
        for (int o = 0; o < C; ++o) {
          F acc = bias[o];
          const F* w_o = w.data() + static_cast<size_t>(o) * in_ch * K;
          for (int k = 0; k < K; ++k) {
            int ts = t + k - off;
            if (ts < 0 || ts >= T) continue;
            const F* in_row = in.data() + (static_cast<size_t>(b) * T + ts) * in_ch;
            const F* w_ok = w_o + k;
            for (int ci = 0; ci < in_ch; ++ci) acc += w_ok[ci * K] * in_row[ci];
          }
          out_row[o] = acc > F(0) ? acc : F(0);
        }
      }
    }
    state.acts.push_back(std::move(out));
  }

  const std::vector<F>& top = state.acts.back();
  state.logits.batch = B;
  state.logits.time = T;
  state.logits.action.assign(positions * kNumActionKinds, F(0));
  state.logits.chars.assign(positions * vocab_size, F(0));
  for (size_t p = 0; p < positions; ++p) {
    const F* x = top.data() + p * C;
    F* la = state.logits.action.data() + p * kNumActionKinds;
    for (int a = 0; a < kNumActionKinds; ++a) la[a] = params.action_b[a];
    F* lc = state.logits.chars.data() + p * vocab_size;
    for (int v = 0; v < vocab_size; ++v) lc[v] = params.char_b[v];
    for (int c = 0; c < C; ++c) {
      F xc = x[c];
      if (xc == F(0)) continue;
      const F* aw = params.action_w.data() + static_cast<size_t>(c) * kNumActionKinds;
      for (int a = 0; a < kNumActionKinds; ++a) la[a] += xc * aw[a];
      const F* cw = params.char_w.data() + static_cast<size_t>(c) * vocab_size;
      for (int v = 0; v < vocab_size; ++v) lc[v] += xc * cw[v];
    }
  }
  return state;
}

bool is_char_bearing_action(int action) {
  return action_needs_char(static_cast<ActionKind>(action));
}

// Cross-entropy of one softmax row; writes (softmax - onehot) * scale into
// dlogits when given a destination.
template <typename F>
double softmax_xent(const F* logits, int n, int gold, double scale, F* dlogits) {
  F max_logit = logits[0];
  for (int i = 1; i < n; ++i) max_logit = std::max(max_logit, logits[i]);
  double denom = 0.0;
  for (int i = 0; i < n; ++i) denom += std::exp(static_cast<double>(logits[i] - max_logit));
  double log_denom = std::log(denom);
  double ce = log_denom - static_cast<double>(logits[gold] - max_logit);
  if (dlogits) {
    for (int i = 0; i < n; ++i) {
      double p = std::exp(static_cast<double>(logits[i] - max_logit)) / denom;
      dlogits[i] += static_cast<F>((p - (i == gold ? 1.0 : 0.0)) * scale);
    }
  }
  return ce;
}

template <typename F>
LossValues loss_and_dlogits(const LogitsT<F>& logits, const Batch& batch, double alpha,
                            double beta, int vocab_size, LogitsT<F>* dlogits) {
  const size_t positions = static_cast<size_t>(batch.batch) * batch.time;
  long action_count = 0, char_count = 0;
  for (size_t p = 0; p < positions; ++p) {
    if (!batch.mask[p]) continue;
    ++action_count;
    if (is_char_bearing_action(batch.gold_actions[p])) ++char_count;
  }
  if (dlogits) {
    dlogits->batch = batch.batch;
    dlogits->time = batch.time;
    dlogits->action.assign(positions * kNumActionKinds, F(0));
    dlogits->chars.assign(positions * vocab_size, F(0));
  }
  double action_sum = 0.0, char_sum = 0.0;
  double action_scale = alpha / std::max<long>(1, action_count);
  double char_scale = beta / std::max<long>(1, char_count);
  for (size_t p = 0; p < positions; ++p) {
    if (!batch.mask[p]) continue;
    action_sum += softmax_xent(
        logits.action.data() + p * kNumActionKinds, kNumActionKinds, batch.gold_actions[p],
        action_scale, dlogits ? dlogits->action.data() + p * kNumActionKinds : nullptr);
    if (is_char_bearing_action(batch.gold_actions[p]))
      char_sum += softmax_xent(logits.chars.data() + p * vocab_size, vocab_size,
                               batch.gold_chars[p], char_scale,
                               dlogits ? dlogits->chars.data() + p * vocab_size : nullptr);
  }
  LossValues values;
  values.action_loss = action_count ? action_sum / action_count : 0.0;
  values.char_loss = char_count ? char_sum / char_count : 0.0;
  values.total = alpha * values.action_loss + beta * values.char_loss;
  return values;
}

template <typename F>
ModelParamsT<F> zeros_like(const ModelParamsT<F>& p) {
  ModelParamsT<F> z;
  z.embedding.assign(p.embedding.size(), F(0));
  for (const auto& w : p.conv_w) z.conv_w.emplace_back(w.size(), F(0));
  for (const auto& b : p.conv_b) z.conv_b.emplace_back(b.size(), F(0));
  z.action_w.assign(p.action_w.size(), F(0));
  z.action_b.assign(p.action_b.size(), F(0));
  z.char_w.assign(p.char_w.size(), F(0));
  z.char_b.assign(p.char_b.size(), F(0));
  return z;
}

template <typename F>
ModelParamsT<F> grad_impl(const ModelParamsT<F>& params, const Batch& batch,
                          const Hyperparams& hp, int vocab_size, LossValues* out_loss) {
  const int B = batch.batch, T = batch.time;
  const int E = hp.embed_dim, C = hp.channels, K = hp.kernel_size;
  const int off = K / 2;
  const size_t positions = static_cast<size_t>(B) * T;

  ForwardState<F> state = run_forward(params, batch, hp, vocab_size);
  LogitsT<F> dlogits;
  LossValues values =
      loss_and_dlogits(state.logits, batch, hp.alpha, hp.beta, vocab_size, &dlogits);
  if (out_loss) *out_loss = values;

  ModelParamsT<F> g = zeros_like(params);

  // Heads.
  const std::vector<F>& top = state.acts.back();
  std::vector<F> dtop(positions * C, F(0));
  for (size_t p = 0; p < positions; ++p) {
    if (!batch.mask[p]) continue;
    const F* x = top.data() + p * C;
    const F* da = dlogits.action.data() + p * kNumActionKinds;
    const F* dc = dlogits.chars.data() + p * vocab_size;
    for (int a = 0; a < kNumActionKinds; ++a) g.action_b[a] += da[a];
    for (int v = 0; v < vocab_size; ++v) g.char_b[v] += dc[v];
    F* dx = dtop.data() + p * C;
    for (int c = 0; c < C; ++c) {
      const F* aw = params.action_w.data() + static_cast<size_t>(c) * kNumActionKinds;
      F* gaw = g.action_w.data() + static_cast<size_t>(c) * kNumActionKinds;
      F acc = F(0);
      F xc = x[c];
      for (int a = 0; a < kNumActionKinds; ++a) {
        acc += aw[a] * da[a];
        gaw[a] += xc * da[a];
      }
      const F* cw = params.char_w.data() + static_cast<size_t>(c) * vocab_size;
      F* gcw = g.char_w.data() + static_cast<size_t>(c) * vocab_size;
      for (int v = 0; v < vocab_size; ++v) {
        acc += cw[v] * dc[v];
        gcw[v] += xc * dc[v];
      }
      dx[c] = acc;
    }
  }

  // Conv stack, top down.
  std::vector<F> dcur = std::move(dtop);
  for (int l = hp.conv_layers - 1; l >= 0; --l) {
    const int in_ch = l == 0 ? E : C;
    const std::vector<F>& in = state.acts[l];
    const std::vector<F>& out = state.acts[l + 1];
    const std::vector<F>& w = params.conv_w[l];
    std::vector<F>& gw = g.conv_w[l];
    std::vector<F>& gb = g.conv_b[l];
    std::vector<F> din(positions * in_ch, F(0));
    for (int b = 0; b < B; ++b) {
      for (int t = 0; t < T; ++t) {
        size_t p = static_cast<size_t>(b) * T + t;
        if (!batch.mask[p]) continue;
        const F* out_row = out.data() + p * C;
        F* d_row = dcur.data() + p * C;
        for (int o = 0; o < C; ++o) {
          if (out_row[o] <= F(0)) continue;  // ReLU gate
          F dz = d_row[o];
          if (dz == F(0)) continue;
          gb[o] += dz;
          const F* w_o = w.data() + static_cast<size_t>(o) * in_ch * K;
          F* gw_o = gw.data() + static_cast<size_t>(o) * in_ch * K;
          for (int k = 0; k < K; ++k) {
            int ts = t + k - off;
            if (ts < 0 || ts >= T) continue;
            size_t ps = static_cast<size_t>(b) * T + ts;
            const F* in_row = in.data() + ps * in_ch;
            F* din_row = din.data() + ps * in_ch;
            for (int ci = 0; ci < in_ch; ++ci) {
              gw_o[ci * K + k] += dz * in_row[ci];
              din_row[ci] += dz * w_o[ci * K + k];
            }
          }
        }
      }
    }
    dcur = std::move(din);
  }

  // Embedding rows; masked positions were zeroed, so they contribute nothing.
  for (size_t p = 0; p < positions; ++p) {
    if (!batch.mask[p]) continue;
    F* row = g.embedding.data() + static_cast<size_t>(batch.ids[p]) * E;
    const F* d = dcur.data() + p * E;
    for (int e = 0; e < E; ++e) row[e] += d[e];
  }
  return g;
}

}  // namespace

template <typename F>
LogitsT<F> forward(const ModelParamsT<F>& params, const Batch& batch, const Hyperparams& hp,
                   int vocab_size) {
  return run_forward(params, batch, hp, vocab_size).logits;
}

template <typename F>
LossValues compute_loss(const LogitsT<F>& logits, const Batch& batch, double alpha,
                        double beta) {
  const size_t positions = static_cast<size_t>(batch.batch) * batch.time;
  int vocab_size = positions ? static_cast<int>(logits.chars.size() / positions) : 0;
  return loss_and_dlogits(logits, batch, alpha, beta, vocab_size,
                          static_cast<LogitsT<F>*>(nullptr));
}

template <typename F>
double total_loss(const ModelParamsT<F>& params, const Batch& batch, const Hyperparams& hp,
                  int vocab_size) {
  LogitsT<F> logits = forward(params, batch, hp, vocab_size);
  return compute_loss(logits, batch, hp.alpha, hp.beta).total;
}

template <typename F>
ModelParamsT<F> grad(const ModelParamsT<F>& params, const Batch& batch, const Hyperparams& hp,
                     int vocab_size) {
  return grad_impl(params, batch, hp, vocab_size, nullptr);
}

namespace {

std::vector<std::vector<float>*> tensor_list(ModelParams& p) {
  std::vector<std::vector<float>*> list;
  p.for_each([&](std::vector<float>& v) { list.push_back(&v); });
  return list;
}

}  // namespace

TrainResult train(const std::vector<TrainingPair>& corpus, const Hyperparams& hp) {
  hp.validate();
  if (corpus.empty()) throw std::invalid_argument("training corpus is empty");

  TrainResult result;
  result.hp = hp;
  result.vocab = build_vocab(corpus);
  const int V = result.vocab.size();

  std::vector<EncodedExample> examples;
  examples.reserve(corpus.size());
  for (const TrainingPair& pair : corpus) examples.push_back(encode_example(pair, result.vocab));

  result.params = init_params<float>(hp, V);

  ModelParams m = zeros_like(result.params);
  ModelParams v = zeros_like(result.params);
  auto params_t = tensor_list(result.params);
  auto m_t = tensor_list(m);
  auto v_t = tensor_list(v);
  long step = 0;
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;

  Rng shuffle_rng(mix_seed(hp.seed, 0x73687566666c65ULL));  // one stream across epochs
  std::vector<size_t> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[shuffle_rng.next_below(i)]);

    double loss_sum = 0.0;
    long batches = 0;
    for (size_t begin = 0; begin < examples.size(); begin += hp.batch_size) {
      size_t end = std::min(examples.size(), begin + hp.batch_size);
      Batch batch = make_batch(examples, order, begin, end);
      LossValues values;
      ModelParams g = grad_impl(result.params, batch, hp, V, &values);
      loss_sum += values.total;
      ++batches;

      ++step;
      double bc1 = 1.0 - std::pow(beta1, step);
      double bc2 = 1.0 - std::pow(beta2, step);
      auto g_t = tensor_list(g);
      for (size_t ti = 0; ti < params_t.size(); ++ti) {
        std::vector<float>& pv = *params_t[ti];
        std::vector<float>& gv = *g_t[ti];
        std::vector<float>& mv = *m_t[ti];
        std::vector<float>& vv = *v_t[ti];
        for (size_t k = 0; k < pv.size(); ++k) {
          mv[k] = static_cast<float>(beta1 * mv[k] + (1.0 - beta1) * gv[k]);
          vv[k] = static_cast<float>(beta2 * vv[k] + (1.0 - beta2) * gv[k] * gv[k]);
          double mhat = mv[k] / bc1;
          double vhat = vv[k] / bc2;
          pv[k] -= static_cast<float>(hp.learning_rate * mhat / (std::sqrt(vhat) + eps));
        }
      }
    }
    result.epoch_losses.push_back(batches ? loss_sum / batches : 0.0);
  }
  return result;
}

std::string restore(const ModelParams& params, const Vocab& vocab, const Hyperparams& hp,
                    std::string_view text) {
  if (text.find(kGapSentinel) != std::string_view::npos)
    throw std::invalid_argument("text contains the reserved gap sentinel");
  const int V = vocab.size();
  EncodedExample ex;
  for (char c : text) ex.ids.push_back(vocab.encode(c));
  ex.ids.push_back(Vocab::kEos);
  ex.gold_actions.assign(ex.ids.size(), 0);
  ex.gold_chars.assign(ex.ids.size(), 0);

  Batch batch;
  batch.batch = 1;
  batch.time = static_cast<int>(ex.ids.size());
  batch.ids = ex.ids;
  batch.gold_actions = ex.gold_actions;
  batch.gold_chars = ex.gold_chars;
  batch.mask.assign(ex.ids.size(), 1);

  LogitsT<float> logits = forward(params, batch, hp, V);

  ActionSequence seq;
  const size_t T = ex.ids.size();
  for (size_t t = 0; t < T; ++t) {
    const float* la = logits.action.data() + t * kNumActionKinds;
    const bool end_slot = t == T - 1;
    int best_action = -1;
    for (int a = 0; a < kNumActionKinds; ++a) {
      ActionKind kind = static_cast<ActionKind>(a);
      if (end_slot && kind != ActionKind::None && kind != ActionKind::Insert &&
          kind != ActionKind::InsertSpace)
        continue;
      if (best_action < 0 || la[a] > la[best_action]) best_action = a;
    }
    ActionLabel label;
    label.kind = static_cast<ActionKind>(best_action);
    if (action_needs_char(label.kind)) {
      const float* lc = logits.chars.data() + t * V;
      int best_char = -1;
      for (int c = Vocab::kReserved; c < V; ++c)
        if (best_char < 0 || lc[c] > lc[best_char]) best_char = c;
      if (best_char < 0)
        label.kind = ActionKind::None;  // vocabulary has no characters at all
      else
        label.ch = vocab.decode(best_char);
    }
    seq.labels.push_back(label);
  }
  return apply_actions(text, seq);
}

namespace {

void put_u32(std::string& out, uint32_t v) {
  out += static_cast<char>(v & 0xff);
  out += static_cast<char>((v >> 8) & 0xff);
  out += static_cast<char>((v >> 16) & 0xff);
  out += static_cast<char>((v >> 24) & 0xff);
}

uint32_t get_u32(const std::string& bytes, size_t& pos) {
  if (pos + 4 > bytes.size()) throw CheckpointCorruptError("checkpoint truncated");
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i)
    v = (v << 8) | static_cast<unsigned char>(bytes[pos + static_cast<size_t>(i)]);
  pos += 4;
  return v;
}

void put_floats(std::string& out, const std::vector<float>& v) {
  for (float f : v) {
    uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32(out, bits);
  }
}

void get_floats(const std::string& bytes, size_t& pos, std::vector<float>& v, size_t n) {
  v.resize(n);
  for (size_t i = 0; i < n; ++i) {
    uint32_t bits = 0;
    if (pos + 4 > bytes.size()) throw CheckpointCorruptError("checkpoint truncated");
    for (int k = 3; k >= 0; --k)
      bits = (bits << 8) | static_cast<unsigned char>(bytes[pos + static_cast<size_t>(k)]);
    pos += 4;
    std::memcpy(&v[i], &bits, 4);
  }
}

constexpr char kMagic[4] = {'A', 'O', 'C', 'R'};
constexpr uint32_t kVersion = 1;

nlohmann::json hyperparams_to_json(const Hyperparams& hp) {
  nlohmann::json j;
  j["embed_dim"] = hp.embed_dim;
  j["conv_layers"] = hp.conv_layers;
  j["kernel_size"] = hp.kernel_size;
  j["channels"] = hp.channels;
  j["alpha"] = hp.alpha;
  j["beta"] = hp.beta;
  j["learning_rate"] = hp.learning_rate;
  j["batch_size"] = hp.batch_size;
  j["epochs"] = hp.epochs;
  j["seed"] = hp.seed;
  return j;
}

Hyperparams hyperparams_from_json(const nlohmann::json& j) {
  Hyperparams hp;
  hp.embed_dim = j.at("embed_dim").get<int>();
  hp.conv_layers = j.at("conv_layers").get<int>();
  hp.kernel_size = j.at("kernel_size").get<int>();
  hp.channels = j.at("channels").get<int>();
  hp.alpha = j.at("alpha").get<double>();
  hp.beta = j.at("beta").get<double>();
  hp.learning_rate = j.at("learning_rate").get<double>();
  hp.batch_size = j.at("batch_size").get<int>();
  hp.epochs = j.at("epochs").get<int>();
  hp.seed = j.at("seed").get<uint64_t>();
  return hp;
}

}  // namespace

std::string encode_checkpoint(const ModelBundle& bundle) {
  std::string out(kMagic, 4);
  put_u32(out, kVersion);
  nlohmann::json meta;
  std::vector<int> vocab_bytes;
  for (char c : bundle.vocab.chars) vocab_bytes.push_back(static_cast<unsigned char>(c));
  meta["vocab"] = vocab_bytes;
  meta["hyperparams"] = hyperparams_to_json(bundle.hp);
  std::string meta_str = meta.dump();
  put_u32(out, static_cast<uint32_t>(meta_str.size()));
  out += meta_str;
  bundle.params.for_each([&](const std::vector<float>& v) { put_floats(out, v); });
  return out;
}

ModelBundle decode_checkpoint(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw CheckpointFormatError("not a model checkpoint (bad magic)");
  size_t pos = 4;
  uint32_t version = get_u32(bytes, pos);
  if (version != kVersion)
    throw CheckpointVersionError("unsupported checkpoint version " + std::to_string(version));
  uint32_t meta_len = get_u32(bytes, pos);
  if (pos + meta_len > bytes.size()) throw CheckpointCorruptError("checkpoint truncated");
  nlohmann::json meta = nlohmann::json::parse(bytes.substr(pos, meta_len), nullptr, false);
  if (meta.is_discarded()) throw CheckpointCorruptError("checkpoint metadata is not JSON");
  pos += meta_len;

  ModelBundle bundle;
  try {
    std::vector<char> chars;
    for (int b : meta.at("vocab").get<std::vector<int>>())
      chars.push_back(static_cast<char>(b));
    bundle.vocab = vocab_from_chars(std::move(chars));
    bundle.hp = hyperparams_from_json(meta.at("hyperparams"));
    bundle.hp.validate();
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointCorruptError(std::string("checkpoint metadata: ") + e.what());
  }

  const Hyperparams& hp = bundle.hp;
  const int V = bundle.vocab.size();
  get_floats(bytes, pos, bundle.params.embedding, static_cast<size_t>(V) * hp.embed_dim);
  for (int l = 0; l < hp.conv_layers; ++l) {
    int in_ch = l == 0 ? hp.embed_dim : hp.channels;
    bundle.params.conv_w.emplace_back();
    get_floats(bytes, pos, bundle.params.conv_w.back(),
               static_cast<size_t>(hp.channels) * in_ch * hp.kernel_size);
  }
  for (int l = 0; l < hp.conv_layers; ++l) {
    bundle.params.conv_b.emplace_back();
    get_floats(bytes, pos, bundle.params.conv_b.back(), hp.channels);
  }
  get_floats(bytes, pos, bundle.params.action_w,
             static_cast<size_t>(hp.channels) * kNumActionKinds);
  get_floats(bytes, pos, bundle.params.action_b, kNumActionKinds);
  get_floats(bytes, pos, bundle.params.char_w, static_cast<size_t>(hp.channels) * V);
  get_floats(bytes, pos, bundle.params.char_b, V);
  if (pos != bytes.size()) throw CheckpointCorruptError("trailing bytes after tensors");
  return bundle;
}

void save_checkpoint(const ModelBundle& bundle, const std::string& path) {
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  std::string data = encode_checkpoint(bundle);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

ModelBundle load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

template ModelParamsT<float> init_params<float>(const Hyperparams&, int);
template ModelParamsT<double> init_params<double>(const Hyperparams&, int);
template ModelParamsT<double> cast_params<double, float>(const ModelParamsT<float>&);
template ModelParamsT<float> cast_params<float, double>(const ModelParamsT<double>&);
template LogitsT<float> forward<float>(const ModelParamsT<float>&, const Batch&,
                                       const Hyperparams&, int);
template LogitsT<double> forward<double>(const ModelParamsT<double>&, const Batch&,
                                         const Hyperparams&, int);
template LossValues compute_loss<float>(const LogitsT<float>&, const Batch&, double, double);
template LossValues compute_loss<double>(const LogitsT<double>&, const Batch&, double, double);
template double total_loss<float>(const ModelParamsT<float>&, const Batch&,
                                  const Hyperparams&, int);
template double total_loss<double>(const ModelParamsT<double>&, const Batch&,
                                   const Hyperparams&, int);
template ModelParamsT<float> grad<float>(const ModelParamsT<float>&, const Batch&,
                                         const Hyperparams&, int);
template ModelParamsT<double> grad<double>(const ModelParamsT<double>&, const Batch&,
                                           const Hyperparams&, int);

}  // namespace docsynth
