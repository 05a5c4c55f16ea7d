#include <benchmark/benchmark.h>

#include <cstdint>

#include "ttr/dataset.hpp"
#include "ttr/graph.hpp"
#include "ttr/manifold.hpp"
#include "ttr/spectral.hpp"
#include "ttr/tensor3.hpp"
#include "ttr/tprod.hpp"
#include "ttr/trace_ratio.hpp"

namespace {

ttr::Tensor3 f_symmetric(std::size_t n, std::size_t n3, std::uint64_t seed) {
  ttr::Tensor3 g = ttr::gaussian_tensor(n, n, n3, seed);
  ttr::Tensor3 s = g + ttr::t_transpose(g);
  s *= 0.5;
  return s;
}

void bm_t_product(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto n3 = std::size_t(state.range(1));
  ttr::Tensor3 a = ttr::gaussian_tensor(n, n, n3, 1);
  ttr::Tensor3 b = ttr::gaussian_tensor(n, n, n3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ttr::t_product(a, b));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_t_product)
    ->Args({32, 4})
    ->Args({64, 8})
    ->Args({128, 8})
    ->Args({128, 32});

void bm_eig_f_symmetric(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto n3 = std::size_t(state.range(1));
  ttr::Tensor3 a = f_symmetric(n, n3, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ttr::eig_f_symmetric(a, n, ttr::EigOrder::signed_desc));
}
BENCHMARK(bm_eig_f_symmetric)->Args({32, 4})->Args({64, 8})->Args({96, 16});

void bm_newton_qr(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto n3 = std::size_t(state.range(1));
  ttr::TraceRatioProblem prob;
  prob.a = f_symmetric(n, n3, 4);
  ttr::Tensor3 c = ttr::gaussian_tensor(n, n, n3, 5);
  prob.b = ttr::t_product(c, ttr::t_transpose(c)) +
           0.1 * ttr::identity_tensor(n, n3);
  prob.d = 4;
  ttr::Tensor3 v0 = ttr::f_orthogonalize(ttr::gaussian_tensor(n, 4, n3, 6));
  for (auto _ : state)
    benchmark::DoNotOptimize(ttr::newton_qr(prob, v0, 1e-10, 100));
}
BENCHMARK(bm_newton_qr)->Args({16, 4})->Args({32, 8})->Args({64, 8});

void bm_graph_build(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  ttr::Tensor3 x = ttr::gaussian_tensor(n, 16, 4, 7);
  ttr::GraphSpec spec;
  spec.k = 8;
  spec.weights = ttr::WeightRule::heat_kernel(0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(ttr::build_graphs(x, {}, spec));
}
BENCHMARK(bm_graph_build)->Arg(128)->Arg(256)->Arg(512);

void bm_mlde_fit(benchmark::State& state) {
  const auto per_class = std::size_t(state.range(0));
  ttr::Dataset d =
      ttr::synth_gaussian_classes(2, per_class, 16, 4, 8.0, 8);
  ttr::Tensor3 lateral = ttr::swap_modes12(d.x);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ttr::mlde_fit(lateral, d.labels, 4, 5, 5,
                      ttr::WeightRule::heat_kernel(0.0), 1e-10, 100, 9));
}
BENCHMARK(bm_mlde_fit)->Arg(32)->Arg(64)->Arg(128);

void bm_mle_fit(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  ttr::Tensor3 x = ttr::gaussian_tensor(n, 16, 4, 10);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ttr::mle_fit(x, 4, 8, ttr::WeightKind::heat, 0.0));
}
BENCHMARK(bm_mle_fit)->Arg(128)->Arg(256);

void bm_lme_fit(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  ttr::Tensor3 x = ttr::gaussian_tensor(n, 16, 4, 11);
  for (auto _ : state)
    benchmark::DoNotOptimize(ttr::lme_fit(x, 4, 8, 1e-3));
}
BENCHMARK(bm_lme_fit)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
