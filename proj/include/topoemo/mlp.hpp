#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "topoemo/kernels.hpp"

namespace topoemo {

inline constexpr std::array<std::size_t, 5> kLayerSizes{9, 512, 128, 64, 7};
inline constexpr std::size_t kNumLayers = kLayerSizes.size() - 1;
inline constexpr std::size_t kInputSize = kLayerSizes.front();
inline constexpr std::size_t kNumClasses = kLayerSizes.back();

struct Layer {
  Matrix weights;  // out x in
  std::vector<double> bias;

  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Parameters of the 9x512x128x64x7 network. Also used for gradients and
/// Adam moments, which share the shapes.
struct MLPParams {
  std::array<Layer, kNumLayers> layers;

  friend bool operator==(const MLPParams&, const MLPParams&) = default;
};

struct AdamHyper {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  MLPParams m;
  MLPParams v;
  std::uint64_t t = 0;
  AdamHyper hyper;
};

struct TrainConfig {
  int epochs = 500;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
  double dropout = 0.2;
  AdamHyper adam;
  int repetitions = 10;
  bool standardize = false;  // z-score inputs with training-set statistics
};

using Probabilities = std::array<double, kNumClasses>;
using Features = std::array<double, kInputSize>;

MLPParams zero_params();
/// He-normal weights (variance 2 / fan_in), zero biases.
MLPParams init_params(std::uint64_t seed);
AdamState init_adam(const AdamHyper& hyper = {});

enum class Mode { train, eval };

/// Inverted-dropout mask for the first hidden layer: entries are 0 or
/// 1 / (1 - rate). One row per batch example.
Matrix sample_dropout_mask(std::size_t batch, double rate, std::mt19937_64& rng);

/// Intermediate values of a batched forward pass, kept for backward().
struct ForwardPass {
  std::array<Matrix, kNumLayers + 1> activations;  // [0] is the input batch
  std::array<Matrix, kNumLayers> pre_activations;
  Matrix dropout_mask;  // empty in eval mode
  Matrix probabilities;
};

/// Batched forward pass. A nonempty mask is applied after the first ReLU.
ForwardPass forward_batch(const MLPParams& params, const Matrix& inputs, const Matrix& dropout_mask = {});

/// Single example. In train mode a mask is drawn from `rng` at `dropout`.
Probabilities forward(const MLPParams& params, std::span<const double> x, Mode mode, std::mt19937_64& rng,
                      double dropout = 0.2);
Probabilities forward_eval(const MLPParams& params, std::span<const double> x);

/// Numerically stable softmax (max logit subtracted).
Probabilities softmax(std::span<const double> logits);

/// -log(max(p[label], 1e-15)). Throws std::out_of_range for a bad label.
double cross_entropy(const Probabilities& probs, int label);

/// Mean cross-entropy of a batch under a given pass.
double batch_loss(const ForwardPass& pass, std::span<const int> labels);

/// Exact gradient of the mean batch loss, using the pass's dropout mask.
MLPParams backward(const MLPParams& params, const ForwardPass& pass, std::span<const int> labels);

void adam_step(MLPParams& params, const MLPParams& grads, AdamState& state);

struct LabelledSet {
  std::vector<Features> x;
  std::vector<int> y;
};

struct EpochRecord {
  double train_accuracy = 0.0;
  double train_loss = 0.0;
  double test_accuracy = -1.0;  // negative when no test set was given
};

/// Per-feature map x -> (x - mean) / scale. The identity by default;
/// fit() uses the population standard deviation, or 1 for a constant feature.
struct FeatureScaler {
  Features mean{};
  Features scale{1, 1, 1, 1, 1, 1, 1, 1, 1};

  static FeatureScaler fit(const std::vector<Features>& xs);
  Features apply(const Features& x) const;
  LabelledSet apply(const LabelledSet& set) const;

  friend bool operator==(const FeatureScaler&, const FeatureScaler&) = default;
};

struct TrainResult {
  MLPParams params;
  FeatureScaler scaler;  // already applied to the inputs seen by params
  std::vector<EpochRecord> history;
};

/// Seeded shuffled mini-batches with dropout and Adam. After every epoch
/// the eval-mode accuracy on the training (and test) set is recorded. With
/// cfg.standardize both sets pass through a scaler fitted on the training set.
TrainResult train(const LabelledSet& train_set, const TrainConfig& cfg, const LabelledSet* test_set = nullptr);

int predict(const MLPParams& params, std::span<const double> x);
double accuracy(const MLPParams& params, const LabelledSet& set);
/// counts[true][predicted].
std::array<std::array<long, kNumClasses>, kNumClasses> confusion_matrix(const MLPParams& params,
                                                                        const LabelledSet& set);

/// Maximum relative error between backward() and central differences
/// (step 1e-5) over `samples` random parameters, no dropout. Parameters
/// whose perturbation flips any ReLU are redrawn. The relative error uses
/// max(|analytic|, |numeric|, 1e-6) as denominator.
double gradient_check(const MLPParams& params, std::span<const double> x, int label, std::uint64_t seed,
                      std::size_t samples = 200);

struct Model {
  MLPParams params;
  TrainConfig config;
  FeatureScaler scaler;

  Probabilities probabilities(const Features& x) const { return forward_eval(params, scaler.apply(x)); }
};

/// Text container, version 1: layer sizes, config, seed, scaler and all weights at
/// 17 significant digits. Round-trips bit-exactly.
void save_model(std::ostream& out, const Model& model);
Model load_model(std::istream& in);
void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

}  // namespace topoemo
