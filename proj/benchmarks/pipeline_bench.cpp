#include <benchmark/benchmark.h>

#include "dragfield/partition.hpp"
#include "dragfield/pipeline.hpp"
#include "dragfield/synthetic.hpp"
#include "dragfield/warp.hpp"

namespace {

using namespace dragfield;

EditInputs scene(int n) {
  const double s = n / 512.0;
  return {synthetic::gradient_image(n, n),
          synthetic::sphere_depth(n, n, {n / 2.0, n / 2.0}, 160 * s, 4.0, 2.0),
          synthetic::disk_mask(n, n, {n / 2.0, n / 2.0}, 230 * s),
          {{{180 * s, 200 * s}, {200 * s, 190 * s}},
           {{330 * s, 210 * s}, {310 * s, 230 * s}},
           {{200 * s, 330 * s}, {190 * s, 350 * s}},
           {{320 * s, 320 * s}, {345 * s, 330 * s}}}};
}

void BM_MultiPointField(benchmark::State& state) {
  const EditInputs in = scene(static_cast<int>(state.range(0)));
  const auto strategy = static_cast<AggregationStrategy>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(multi_point_field(*in.depth, in.mask, in.pairs, {}, strategy));
  }
  state.SetLabel(std::string(strategy_name(strategy)));
}
BENCHMARK(BM_MultiPointField)
    ->ArgsProduct({{128, 512}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_WarpAndFill(benchmark::State& state) {
  const EditInputs in = scene(static_cast<int>(state.range(0)));
  const DisplacementField field = multi_point_field(*in.depth, in.mask, in.pairs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fill_holes(forward_warp(in.image, field, in.mask, &*in.depth)));
  }
}
BENCHMARK(BM_WarpAndFill)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_RunEdit(benchmark::State& state) {
  const EditInputs in = scene(static_cast<int>(state.range(0)));
  EditParams params;
  params.eta = state.range(1) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_edit(in, params));
}
BENCHMARK(BM_RunEdit)->Args({512, 0})->Args({512, 10})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
