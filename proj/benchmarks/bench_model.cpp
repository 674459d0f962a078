#include <benchmark/benchmark.h>

#include <vector>

#include "qosp/analysis.hpp"
#include "qosp/memory.hpp"

using namespace qosp;

namespace {
const ExperimentConfig cfg;
const SellmeierModel diamond = diamond_sellmeier();
}

static void RetrievedSpectrum(benchmark::State& state) {
  const auto grid = default_grid();
  for (auto _ : state) {
    auto photon = retrieved_spectrum(PulseSpec{792.0, 3.5}, 1.0, cfg, diamond, grid);
    benchmark::DoNotOptimize(photon);
  }
}
BENCHMARK(RetrievedSpectrum);

static void ConvolveResponse(benchmark::State& state) {
  const auto s = gaussian_spectrum(PulseSpec{723.5, 4.1}, default_grid());
  for (auto _ : state) {
    auto c = convolve_response(s, 1.1);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(ConvolveResponse);

static void G2Curve(benchmark::State& state) {
  std::vector<double> reads;
  for (double r = 784.0; r <= 812.0; r += 0.1) reads.push_back(r);
  for (auto _ : state) {
    auto curve = g2_curve(cfg, diamond, reads);
    benchmark::DoNotOptimize(curve);
  }
}
BENCHMARK(G2Curve);

static void FitExponential(benchmark::State& state) {
  std::vector<FitPoint> pts;
  for (double t = 0.0; t <= 10.0; t += 0.7)
    pts.push_back(FitPoint{t, 100.0 * std::exp(-t / 3.5) + 3.0, 2.0});
  for (auto _ : state) {
    auto fit = fit_exponential(pts);
    benchmark::DoNotOptimize(fit);
  }
}
BENCHMARK(FitExponential);

BENCHMARK_MAIN();
