// Serial reference vs OpenMP kernels, and serial vs parallel signature
// extraction. Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <random>

#include "topoemo/kernels.hpp"
#include "topoemo/mlp.hpp"
#include "topoemo/signature.hpp"

using namespace topoemo;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(r, c);
  for (double& v : m.data) v = n(rng);
  return m;
}

// Second hidden layer of the classifier at batch 32 and at a full test set.
void forward_args(benchmark::internal::Benchmark* b) {
  b->Args({32, 512, 128})->Args({400, 512, 128})->Args({400, 9, 512});
}

template <auto Kernel>
void BM_forward(benchmark::State& state) {
  const auto x = random_matrix(state.range(0), state.range(1), 1);
  const auto w = random_matrix(state.range(2), state.range(1), 2);
  const std::vector<double> b(state.range(2), 0.1);
  Matrix y;
  for (auto _ : state) {
    Kernel(x, w, b, y);
    benchmark::DoNotOptimize(y.data.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1) * state.range(2));
}
BENCHMARK(BM_forward<kernels::dense_forward_serial>)->Name("dense_forward/serial")->Apply(forward_args);
BENCHMARK(BM_forward<kernels::dense_forward>)->Name("dense_forward/parallel")->Apply(forward_args);

template <auto Kernel>
void BM_grad_params(benchmark::State& state) {
  const auto dy = random_matrix(state.range(0), state.range(2), 3);
  const auto x = random_matrix(state.range(0), state.range(1), 4);
  Matrix dw;
  std::vector<double> db(state.range(2));
  for (auto _ : state) {
    Kernel(dy, x, dw, db);
    benchmark::DoNotOptimize(dw.data.data());
  }
}
BENCHMARK(BM_grad_params<kernels::dense_grad_params_serial>)->Name("dense_grad_params/serial")->Apply(forward_args);
BENCHMARK(BM_grad_params<kernels::dense_grad_params>)->Name("dense_grad_params/parallel")->Apply(forward_args);

template <auto Kernel>
void BM_grad_input(benchmark::State& state) {
  const auto dy = random_matrix(state.range(0), state.range(2), 5);
  const auto w = random_matrix(state.range(2), state.range(1), 6);
  Matrix dx;
  for (auto _ : state) {
    Kernel(dy, w, dx);
    benchmark::DoNotOptimize(dx.data.data());
  }
}
BENCHMARK(BM_grad_input<kernels::dense_grad_input_serial>)->Name("dense_grad_input/serial")->Apply(forward_args);
BENCHMARK(BM_grad_input<kernels::dense_grad_input>)->Name("dense_grad_input/parallel")->Apply(forward_args);

void BM_signature(benchmark::State& state) {
  const auto video = synth_dataset(1, 1).front();
  SignatureOptions opts;
  opts.execution = state.range(0) ? Execution::parallel : Execution::serial;
  for (auto _ : state) benchmark::DoNotOptimize(extract_signature(video, opts));
}
BENCHMARK(BM_signature)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_train_epoch(benchmark::State& state) {
  LabelledSet set;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 944; ++i) {
    Features x{};
    for (double& v : x) v = n(rng) + i % 7;
    set.x.push_back(x);
    set.y.push_back(i % 7);
  }
  TrainConfig cfg;
  cfg.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train(set, cfg));
}
BENCHMARK(BM_train_epoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
