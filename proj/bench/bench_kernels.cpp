#include <benchmark/benchmark.h>

#include <random>

#include "opf/classify.hpp"
#include "opf/portrait.hpp"
#include "opf/sweep.hpp"

using namespace opf;

namespace {

const auto kCases = sweep::invariantGrid(8);

void BM_InvariantSweepSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sweep::invariantSweepSerial(kCases));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(kCases.size()));
}

void BM_InvariantSweepParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sweep::invariantSweep(kCases));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(kCases.size()));
}

struct TraceSetup {
  vfield::QuadSystem sys = vfield::buildParametricA(Rat(2), Rat(1), Rat(1));
  portrait::PortraitSpec spec;
  portrait::Window w;
  std::vector<portrait::Seed> seeds;
  TraceSetup() {
    const auto finite = classify::classifyFinite(sys);
    w = portrait::fitWindow(finite);
    seeds = portrait::makeSeeds(sys, spec, w, finite);
  }
};

void BM_TraceSerial(benchmark::State& st) {
  static const TraceSetup s;
  for (auto _ : st) benchmark::DoNotOptimize(portrait::traceAllSerial(s.sys, s.seeds, s.spec, s.w));
}

void BM_TraceParallel(benchmark::State& st) {
  static const TraceSetup s;
  for (auto _ : st) benchmark::DoNotOptimize(portrait::traceAll(s.sys, s.seeds, s.spec, s.w));
}

struct DriftSetup {
  darboux::Problem p;
  darboux::Certificate cert;
  std::vector<std::array<double, 2>> starts;
  DriftSetup() {
    const BiPoly x = BiPoly::x();
    p.system = vfield::buildParametricA(Rat(2), Rat(1), Rat(0));
    p.curves = {{x + BiPoly(1), BiPoly(1) - x}, {x - BiPoly(1), BiPoly(-1) - x}};
    cert = *darboux::solveCofactorRelation(p, Rat(1));
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> xs(-0.9, 0.9), vs(-1.0, -0.5);
    for (int k = 0; k < 64; ++k) starts.push_back({vs(rng), xs(rng)});
  }
};

void BM_DriftSerial(benchmark::State& st) {
  static const DriftSetup s;
  for (auto _ : st) benchmark::DoNotOptimize(sweep::darbouxDriftsSerial(s.cert, s.p.system, s.starts, 1.0));
}

void BM_DriftParallel(benchmark::State& st) {
  static const DriftSetup s;
  for (auto _ : st) benchmark::DoNotOptimize(sweep::darbouxDrifts(s.cert, s.p.system, s.starts, 1.0));
}

}  // namespace

BENCHMARK(BM_InvariantSweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_InvariantSweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TraceSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TraceParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DriftSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DriftParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
