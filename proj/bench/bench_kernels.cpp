// Reference loops against the blocked kernels, and serial against OpenMP
// batch gradients. Run: build/bench_kernels [--benchmark_filter=...]
#include <benchmark/benchmark.h>

#include <random>

#include "rnem/autodiff.hpp"
#include "rnem/kernels.hpp"
#include "rnem/parallel.hpp"
#include "rnem/reference.hpp"
#include "rnem/trainer.hpp"

using namespace rnem;

namespace {

Tensor random_tensor(Shape shape, std::mt19937_64& rng) {
  Tensor t(std::move(shape));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double& v : t.data()) v = u(rng);
  return t;
}

// Encoder fully-connected layer of a K=4 model on 32x32 frames.
constexpr std::size_t kRows = 4, kInner = 1024, kCols = 512;

void BM_MatmulReference(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const Tensor a = random_tensor({kRows, kInner}, rng), b = random_tensor({kInner, kCols}, rng);
  for (auto _ : st) benchmark::DoNotOptimize(reference::matmul(a, b));
  st.SetItemsProcessed(st.iterations() * kRows * kInner * kCols);
}
BENCHMARK(BM_MatmulReference);

void BM_MatmulBlocked(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const Tensor a = random_tensor({kRows, kInner}, rng), b = random_tensor({kInner, kCols}, rng);
  Tensor c({kRows, kCols});
  for (auto _ : st) {
    kernels::gemm(a.raw(), b.raw(), c.raw(), kRows, kInner, kCols);
    benchmark::DoNotOptimize(c.raw());
  }
  st.SetItemsProcessed(st.iterations() * kRows * kInner * kCols);
}
BENCHMARK(BM_MatmulBlocked);

// First encoder conv: K=4 masked frames 1x32x32 -> 16x16x16.
void BM_ConvReference(benchmark::State& st) {
  std::mt19937_64 rng(2);
  const Tensor x = random_tensor({4, 1, 32, 32}, rng), w = random_tensor({16, 1, 4, 4}, rng),
               b = random_tensor({16}, rng);
  for (auto _ : st) benchmark::DoNotOptimize(reference::conv2d(x, w, b, 2, 1, 1));
}
BENCHMARK(BM_ConvReference);

void BM_ConvBlocked(benchmark::State& st) {
  std::mt19937_64 rng(2);
  const Tensor x = random_tensor({4, 1, 32, 32}, rng), w = random_tensor({16, 1, 4, 4}, rng),
               b = random_tensor({16}, rng);
  kernels::ConvGeometry g{1, 16, 32, 32, 4, 2, 1, 1};
  Tensor out({4, 16, g.out_height(), g.out_width()});
  for (auto _ : st) {
    kernels::conv2d_forward(x.raw(), w.raw(), b.raw(), out.raw(), 4, g);
    benchmark::DoNotOptimize(out.raw());
  }
}
BENCHMARK(BM_ConvBlocked);

// Second encoder conv, where the channel reduction dominates.
void BM_ConvDeepReference(benchmark::State& st) {
  std::mt19937_64 rng(3);
  const Tensor x = random_tensor({4, 16, 16, 16}, rng), w = random_tensor({32, 16, 4, 4}, rng),
               b = random_tensor({32}, rng);
  for (auto _ : st) benchmark::DoNotOptimize(reference::conv2d(x, w, b, 2, 1, 1));
}
BENCHMARK(BM_ConvDeepReference);

void BM_ConvDeepBlocked(benchmark::State& st) {
  std::mt19937_64 rng(3);
  const Tensor x = random_tensor({4, 16, 16, 16}, rng), w = random_tensor({32, 16, 4, 4}, rng),
               b = random_tensor({32}, rng);
  kernels::ConvGeometry g{16, 32, 16, 16, 4, 2, 1, 1};
  Tensor out({4, 32, g.out_height(), g.out_width()});
  for (auto _ : st) {
    kernels::conv2d_forward(x.raw(), w.raw(), b.raw(), out.raw(), 4, g);
    benchmark::DoNotOptimize(out.raw());
  }
}
BENCHMARK(BM_ConvDeepBlocked);

// Mean gradient of 8 short 32x32 sequences at K=4; the argument is the
// OpenMP thread count (1 is the serial path).
void BM_BatchGradient(benchmark::State& st) {
  DatasetConfig dc;
  dc.height = dc.width = 32;
  dc.steps = 6;
  dc.balls_min = dc.balls_max = 3;
  std::vector<SequenceSample> data;
  for (std::size_t i = 0; i < 8; ++i) data.push_back(simulate_sequence(dc, i));
  std::vector<const SequenceSample*> batch;
  std::vector<std::uint64_t> idx;
  for (std::size_t i = 0; i < data.size(); ++i) {
    batch.push_back(&data[i]);
    idx.push_back(i);
  }
  ModelConfig mc;
  mc.height = mc.width = 32;
  mc.components = 4;
  const Model model(mc, 1);
  TrainConfig tc;
  tc.components = 4;
  tc.threads = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(batch_gradient(model, batch, idx, tc, 1).loss);
  st.SetItemsProcessed(st.iterations() * static_cast<long>(data.size()));
}
BENCHMARK(BM_BatchGradient)->Arg(1)->Arg(max_threads() > 1 ? max_threads() : 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
