#include "topoemo/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "topoemo/errors.hpp"

namespace topoemo {
namespace {

constexpr double kProbabilityFloor = 1e-15;

std::size_t param_count(const MLPParams& p) {
  std::size_t n = 0;
  for (const auto& l : p.layers) n += l.weights.data.size() + l.bias.size();
  return n;
}

double& param_at(MLPParams& p, std::size_t flat) {
  for (auto& l : p.layers) {
    if (flat < l.weights.data.size()) return l.weights.data[flat];
    flat -= l.weights.data.size();
    if (flat < l.bias.size()) return l.bias[flat];
    flat -= l.bias.size();
  }
  throw std::out_of_range("parameter index out of range");
}

Matrix single_row(std::span<const double> x) {
  if (x.size() != kInputSize) {
    throw std::invalid_argument("expected " + std::to_string(kInputSize) + " features, got " +
                                std::to_string(x.size()));
  }
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite input feature");
  Matrix m(1, kInputSize);
  std::copy(x.begin(), x.end(), m.data.begin());
  return m;
}

Matrix batch_of(const LabelledSet& set, std::span<const std::size_t> idx) {
  Matrix m(idx.size(), kInputSize);
  for (std::size_t r = 0; r < idx.size(); ++r) std::copy(set.x[idx[r]].begin(), set.x[idx[r]].end(), m.row(r).begin());
  return m;
}

Matrix whole(const LabelledSet& set) {
  std::vector<std::size_t> idx(set.x.size());
  std::iota(idx.begin(), idx.end(), 0);
  return batch_of(set, idx);
}

Probabilities row_probs(const Matrix& probs, std::size_t r) {
  Probabilities p{};
  std::copy(probs.row(r).begin(), probs.row(r).end(), p.begin());
  return p;
}

int argmax(std::span<const double> v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

// Sign pattern of every hidden pre-activation, for kink detection.
std::vector<char> relu_pattern(const ForwardPass& pass) {
  std::vector<char> out;
  for (std::size_t l = 0; l + 1 < kNumLayers; ++l)
    for (double z : pass.pre_activations[l].data) out.push_back(z > 0.0);
  return out;
}

}  // namespace

MLPParams zero_params() {
  MLPParams p;
  for (std::size_t l = 0; l < kNumLayers; ++l) {
    p.layers[l].weights = Matrix(kLayerSizes[l + 1], kLayerSizes[l]);
    p.layers[l].bias.assign(kLayerSizes[l + 1], 0.0);
  }
  return p;
}

MLPParams init_params(std::uint64_t seed) {
  MLPParams p = zero_params();
  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l < kNumLayers; ++l) {
    std::normal_distribution<double> normal(0.0, std::sqrt(2.0 / static_cast<double>(kLayerSizes[l])));
    for (double& w : p.layers[l].weights.data) w = normal(rng);
  }
  return p;
}

AdamState init_adam(const AdamHyper& hyper) {
  return AdamState{zero_params(), zero_params(), 0, hyper};
}

Matrix sample_dropout_mask(std::size_t batch, double rate, std::mt19937_64& rng) {
  if (rate < 0.0 || rate >= 1.0) throw std::invalid_argument("dropout rate must be in [0, 1)");
  Matrix mask(batch, kLayerSizes[1], 1.0);
  if (rate == 0.0) return mask;
  std::bernoulli_distribution drop(rate);
  const double keep_scale = 1.0 / (1.0 - rate);
  for (double& m : mask.data) m = drop(rng) ? 0.0 : keep_scale;
  return mask;
}

Probabilities softmax(std::span<const double> logits) {
  if (logits.size() != kNumClasses) throw std::invalid_argument("softmax: expected 7 logits");
  const double top = *std::max_element(logits.begin(), logits.end());
  Probabilities p{};
  double sum = 0.0;
  for (std::size_t i = 0; i < kNumClasses; ++i) {
    p[i] = std::exp(logits[i] - top);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

ForwardPass forward_batch(const MLPParams& params, const Matrix& inputs, const Matrix& dropout_mask) {
  if (inputs.cols != kInputSize) throw std::invalid_argument("forward_batch: expected 9 input columns");
  if (!dropout_mask.data.empty() && (dropout_mask.rows != inputs.rows || dropout_mask.cols != kLayerSizes[1])) {
    throw std::invalid_argument("forward_batch: dropout mask shape mismatch");
  }
  ForwardPass pass;
  pass.activations[0] = inputs;
  pass.dropout_mask = dropout_mask;
  for (std::size_t l = 0; l < kNumLayers; ++l) {
    kernels::dense_forward(pass.activations[l], params.layers[l].weights, params.layers[l].bias,
                           pass.pre_activations[l]);
    Matrix a = pass.pre_activations[l];
    if (l + 1 < kNumLayers) {
      for (double& v : a.data) v = v > 0.0 ? v : 0.0;
      if (l == 0 && !dropout_mask.data.empty())
        for (std::size_t k = 0; k < a.data.size(); ++k) a.data[k] *= dropout_mask.data[k];
    }
    pass.activations[l + 1] = std::move(a);
  }
  const Matrix& logits = pass.pre_activations[kNumLayers - 1];
  pass.probabilities = Matrix(logits.rows, kNumClasses);
  for (std::size_t r = 0; r < logits.rows; ++r) {
    const auto p = softmax(logits.row(r));
    std::copy(p.begin(), p.end(), pass.probabilities.row(r).begin());
  }
  return pass;
}

Probabilities forward(const MLPParams& params, std::span<const double> x, Mode mode, std::mt19937_64& rng,
                      double dropout) {
  const Matrix in = single_row(x);
  Matrix mask;
  if (mode == Mode::train) mask = sample_dropout_mask(1, dropout, rng);
  return row_probs(forward_batch(params, in, mask).probabilities, 0);
}

Probabilities forward_eval(const MLPParams& params, std::span<const double> x) {
  return row_probs(forward_batch(params, single_row(x)).probabilities, 0);
}

double cross_entropy(const Probabilities& probs, int label) {
  if (label < 0 || label >= static_cast<int>(kNumClasses)) {
    throw std::out_of_range("cross_entropy: label " + std::to_string(label) + " outside 0..6");
  }
  return -std::log(std::max(probs[label], kProbabilityFloor));
}

double batch_loss(const ForwardPass& pass, std::span<const int> labels) {
  if (labels.size() != pass.probabilities.rows) throw std::invalid_argument("batch_loss: label count mismatch");
  double total = 0.0;
  for (std::size_t r = 0; r < labels.size(); ++r) total += cross_entropy(row_probs(pass.probabilities, r), labels[r]);
  return total / static_cast<double>(labels.size());
}

MLPParams backward(const MLPParams& params, const ForwardPass& pass, std::span<const int> labels) {
  const std::size_t batch = pass.probabilities.rows;
  if (labels.size() != batch || batch == 0) throw std::invalid_argument("backward: label count mismatch");

  MLPParams grads;
  Matrix delta = pass.probabilities;
  const double inv = 1.0 / static_cast<double>(batch);
  for (std::size_t r = 0; r < batch; ++r) {
    if (labels[r] < 0 || labels[r] >= static_cast<int>(kNumClasses)) throw std::out_of_range("backward: bad label");
    delta(r, static_cast<std::size_t>(labels[r])) -= 1.0;
  }
  for (double& v : delta.data) v *= inv;

  for (std::size_t l = kNumLayers; l-- > 0;) {
    auto& g = grads.layers[l];
    g.bias.assign(params.layers[l].bias.size(), 0.0);
    kernels::dense_grad_params(delta, pass.activations[l], g.weights, g.bias);
    if (l == 0) break;
    Matrix upstream;
    kernels::dense_grad_input(delta, params.layers[l].weights, upstream);
    const Matrix& z = pass.pre_activations[l - 1];
    for (std::size_t k = 0; k < upstream.data.size(); ++k) {
      if (z.data[k] <= 0.0) upstream.data[k] = 0.0;
    }
    if (l - 1 == 0 && !pass.dropout_mask.data.empty()) {
      for (std::size_t k = 0; k < upstream.data.size(); ++k) upstream.data[k] *= pass.dropout_mask.data[k];
    }
    delta = std::move(upstream);
  }
  return grads;
}

void adam_step(MLPParams& params, const MLPParams& grads, AdamState& state) {
  ++state.t;
  const auto& h = state.hyper;
  const double c1 = 1.0 - std::pow(h.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(h.beta2, static_cast<double>(state.t));
  auto update = [&](std::vector<double>& theta, const std::vector<double>& g, std::vector<double>& m,
                    std::vector<double>& v) {
    if (theta.size() != g.size() || m.size() != g.size() || v.size() != g.size()) {
      throw std::invalid_argument("adam_step: shape mismatch");
    }
    const long n = static_cast<long>(theta.size());
#pragma omp parallel for simd schedule(static) if (n > 8192)
    for (long k = 0; k < n; ++k) {
      m[k] = h.beta1 * m[k] + (1.0 - h.beta1) * g[k];
      v[k] = h.beta2 * v[k] + (1.0 - h.beta2) * g[k] * g[k];
      theta[k] -= h.learning_rate * (m[k] / c1) / (std::sqrt(v[k] / c2) + h.epsilon);
    }
  };
  for (std::size_t l = 0; l < kNumLayers; ++l) {
    update(params.layers[l].weights.data, grads.layers[l].weights.data, state.m.layers[l].weights.data,
           state.v.layers[l].weights.data);
    update(params.layers[l].bias, grads.layers[l].bias, state.m.layers[l].bias, state.v.layers[l].bias);
  }
}

int predict(const MLPParams& params, std::span<const double> x) { return argmax(forward_eval(params, x)); }

double accuracy(const MLPParams& params, const LabelledSet& set) {
  if (set.x.empty()) throw std::invalid_argument("accuracy: empty set");
  const auto pass = forward_batch(params, whole(set));
  std::size_t hits = 0;
  for (std::size_t r = 0; r < set.x.size(); ++r)
    if (argmax(pass.probabilities.row(r)) == set.y[r]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(set.x.size());
}

std::array<std::array<long, kNumClasses>, kNumClasses> confusion_matrix(const MLPParams& params,
                                                                        const LabelledSet& set) {
  std::array<std::array<long, kNumClasses>, kNumClasses> counts{};
  if (set.x.empty()) return counts;
  const auto pass = forward_batch(params, whole(set));
  for (std::size_t r = 0; r < set.x.size(); ++r) ++counts.at(set.y[r]).at(argmax(pass.probabilities.row(r)));
  return counts;
}

FeatureScaler FeatureScaler::fit(const std::vector<Features>& xs) {
  FeatureScaler s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  for (std::size_t k = 0; k < kInputSize; ++k) {
    double mean = 0.0;
    for (const auto& x : xs) mean += x[k];
    mean /= n;
    double var = 0.0;
    for (const auto& x : xs) var += (x[k] - mean) * (x[k] - mean);
    const double sd = std::sqrt(var / n);
    s.mean[k] = mean;
    s.scale[k] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

Features FeatureScaler::apply(const Features& x) const {
  Features out{};
  for (std::size_t k = 0; k < kInputSize; ++k) out[k] = (x[k] - mean[k]) / scale[k];
  return out;
}

LabelledSet FeatureScaler::apply(const LabelledSet& set) const {
  LabelledSet out{{}, set.y};
  out.x.reserve(set.x.size());
  for (const auto& x : set.x) out.x.push_back(apply(x));
  return out;
}

TrainResult train(const LabelledSet& raw_train, const TrainConfig& cfg, const LabelledSet* raw_test) {
  if (cfg.epochs < 1) throw std::invalid_argument("train: epochs must be at least 1");
  if (cfg.batch_size < 1) throw std::invalid_argument("train: batch size must be at least 1");
  if (cfg.dropout < 0.0 || cfg.dropout >= 1.0) throw std::invalid_argument("train: dropout must be in [0, 1)");
  if (raw_train.x.size() != raw_train.y.size()) throw std::invalid_argument("train: feature/label count mismatch");
  std::array<std::size_t, kNumClasses> per_class{};
  for (int y : raw_train.y) {
    if (y < 0 || y >= static_cast<int>(kNumClasses)) throw std::out_of_range("train: label outside 0..6");
    ++per_class[y];
  }
  for (std::size_t c = 0; c < kNumClasses; ++c)
    if (per_class[c] == 0) throw std::invalid_argument("train: class " + std::to_string(c) + " has no examples");

  TrainResult result;
  if (cfg.standardize) result.scaler = FeatureScaler::fit(raw_train.x);
  const LabelledSet train_set = result.scaler.apply(raw_train);
  std::optional<LabelledSet> scaled_test;
  if (raw_test != nullptr) scaled_test = result.scaler.apply(*raw_test);
  const LabelledSet* test_set = scaled_test ? &*scaled_test : nullptr;
  result.params = init_params(cfg.seed);
  AdamState adam = init_adam(cfg.adam);
  std::seed_seq seq{cfg.seed, std::uint64_t{0x7472616eu}};
  std::mt19937_64 rng(seq);

  const Matrix all_train = whole(train_set);
  std::vector<std::size_t> order(train_set.x.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> labels;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const std::span<const std::size_t> idx(order.data() + start, end - start);
      labels.clear();
      for (std::size_t i : idx) labels.push_back(train_set.y[i]);
      Matrix mask;
      if (cfg.dropout > 0.0) mask = sample_dropout_mask(idx.size(), cfg.dropout, rng);
      const auto pass = forward_batch(result.params, batch_of(train_set, idx), mask);
      adam_step(result.params, backward(result.params, pass, labels), adam);
    }

    EpochRecord rec;
    const auto pass = forward_batch(result.params, all_train);
    std::size_t hits = 0;
    for (std::size_t r = 0; r < train_set.x.size(); ++r)
      if (argmax(pass.probabilities.row(r)) == train_set.y[r]) ++hits;
    rec.train_accuracy = static_cast<double>(hits) / static_cast<double>(train_set.x.size());
    rec.train_loss = batch_loss(pass, train_set.y);
    if (test_set != nullptr && !test_set->x.empty()) rec.test_accuracy = accuracy(result.params, *test_set);
    result.history.push_back(rec);
  }
  return result;
}

double gradient_check(const MLPParams& params, std::span<const double> x, int label, std::uint64_t seed,
                      std::size_t samples) {
  constexpr double step = 1e-5;
  const Matrix in = single_row(x);
  const std::array<int, 1> labels{label};
  const auto base = forward_batch(params, in);
  const auto base_pattern = relu_pattern(base);
  MLPParams grads = backward(params, base, labels);

  MLPParams probe = params;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, param_count(params) - 1);
  double worst = 0.0;
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < samples && attempt < 50 * samples; ++attempt) {
    const std::size_t k = pick(rng);
    double& theta = param_at(probe, k);
    const double saved = theta;
    theta = saved + step;
    const auto plus = forward_batch(probe, in);
    theta = saved - step;
    const auto minus = forward_batch(probe, in);
    theta = saved;
    if (relu_pattern(plus) != base_pattern || relu_pattern(minus) != base_pattern) continue;

    const double numeric = (batch_loss(plus, labels) - batch_loss(minus, labels)) / (2.0 * step);
    const double analytic = param_at(grads, k);
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
    worst = std::max(worst, std::abs(analytic - numeric) / denom);
    ++done;
  }
  if (done < samples) throw std::runtime_error("gradient_check: too many parameters sit on ReLU kinks");
  return worst;
}

void save_model(std::ostream& out, const Model& model) {
  const auto old = out.precision(17);
  const auto& c = model.config;
  out << "topoemo-mlp 1\n";
  out << "layers";
  for (auto s : kLayerSizes) out << ' ' << s;
  out << '\n';
  out << "seed " << c.seed << '\n'
      << "epochs " << c.epochs << '\n'
      << "batch_size " << c.batch_size << '\n'
      << "dropout " << c.dropout << '\n'
      << "learning_rate " << c.adam.learning_rate << '\n'
      << "beta1 " << c.adam.beta1 << '\n'
      << "beta2 " << c.adam.beta2 << '\n'
      << "epsilon " << c.adam.epsilon << '\n'
      << "repetitions " << c.repetitions << '\n'
      << "standardize " << (c.standardize ? 1 : 0) << '\n';
  out << "scaler_mean";
  for (double v : model.scaler.mean) out << ' ' << v;
  out << "\nscaler_scale";
  for (double v : model.scaler.scale) out << ' ' << v;
  out << '\n';
  for (std::size_t l = 0; l < kNumLayers; ++l) {
    const auto& layer = model.params.layers[l];
    out << "weights " << l << ' ' << layer.weights.rows << ' ' << layer.weights.cols << '\n';
    for (std::size_t r = 0; r < layer.weights.rows; ++r) {
      for (std::size_t k = 0; k < layer.weights.cols; ++k) out << (k ? " " : "") << layer.weights(r, k);
      out << '\n';
    }
    out << "bias " << l << ' ' << layer.bias.size() << '\n';
    for (std::size_t k = 0; k < layer.bias.size(); ++k) out << (k ? " " : "") << layer.bias[k];
    out << '\n';
  }
  out << "end\n";
  out.precision(old);
}

Model load_model(std::istream& in) {
  auto expect = [&](const std::string& want) {
    std::string got;
    if (!(in >> got) || got != want) throw InputError("model file: expected '" + want + "', got '" + got + "'");
  };
  int version = 0;
  expect("topoemo-mlp");
  if (!(in >> version) || version != 1) throw InputError("model file: unsupported version");
  expect("layers");
  for (auto s : kLayerSizes) {
    std::size_t got = 0;
    if (!(in >> got) || got != s) throw InputError("model file: layer sizes do not match 9x512x128x64x7");
  }
  Model model;
  auto& c = model.config;
  expect("seed");
  in >> c.seed;
  expect("epochs");
  in >> c.epochs;
  expect("batch_size");
  in >> c.batch_size;
  expect("dropout");
  in >> c.dropout;
  expect("learning_rate");
  in >> c.adam.learning_rate;
  expect("beta1");
  in >> c.adam.beta1;
  expect("beta2");
  in >> c.adam.beta2;
  expect("epsilon");
  in >> c.adam.epsilon;
  expect("repetitions");
  in >> c.repetitions;
  expect("standardize");
  int standardize = 0;
  in >> standardize;
  c.standardize = standardize != 0;
  expect("scaler_mean");
  for (double& v : model.scaler.mean) in >> v;
  expect("scaler_scale");
  for (double& v : model.scaler.scale) in >> v;
  if (!in) throw InputError("model file: malformed config");
  for (double v : model.scaler.scale)
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("model file: scaler scale must be positive");

  model.params = zero_params();
  for (std::size_t l = 0; l < kNumLayers; ++l) {
    auto& layer = model.params.layers[l];
    std::size_t idx = 0, rows = 0, cols = 0, n = 0;
    expect("weights");
    if (!(in >> idx >> rows >> cols) || idx != l || rows != layer.weights.rows || cols != layer.weights.cols) {
      throw InputError("model file: bad weight header for layer " + std::to_string(l));
    }
    for (double& w : layer.weights.data)
      if (!(in >> w)) throw InputError("model file: truncated weights in layer " + std::to_string(l));
    expect("bias");
    if (!(in >> idx >> n) || idx != l || n != layer.bias.size()) {
      throw InputError("model file: bad bias header for layer " + std::to_string(l));
    }
    for (double& b : layer.bias)
      if (!(in >> b)) throw InputError("model file: truncated bias in layer " + std::to_string(l));
  }
  expect("end");
  return model;
}

void save_model(const std::filesystem::path& path, const Model& model) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write model " + path.string());
  save_model(out, model);
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model " + path.string());
  return load_model(in);
}

}  // namespace topoemo
