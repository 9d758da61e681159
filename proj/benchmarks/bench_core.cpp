#include <benchmark/benchmark.h>

#include "spinboson/boson_core.hpp"
#include "spinboson/dense_oracle.hpp"
#include "spinboson/spin_core.hpp"
#include "spinboson/thermal_oscillator.hpp"
#include "spinboson/xy_model.hpp"

using namespace spinboson;

namespace {

SpinPolynomial worked_example() {
  return (SpinPolynomial::plus() * SpinPolynomial::minus() + SpinPolynomial::minus() * SpinPolynomial::plus()).pow(5);
}

}  // namespace

static void BM_TraceWorkedExample(benchmark::State& state) {
  const auto poly = worked_example();
  const auto sites = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(normalized_trace(sites, poly));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TraceWorkedExample)->RangeMultiplier(4)->Range(64, 2048)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_TraceMixedWord(benchmark::State& state) {
  const auto poly = SpinPolynomial::x().pow(3) * SpinPolynomial::z() * SpinPolynomial::y().pow(2);
  const auto sites = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(normalized_trace(sites, poly));
}
BENCHMARK(BM_TraceMixedWord)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_DenseOracle(benchmark::State& state) {
  const auto poly = SpinPolynomial::x().pow(2) * SpinPolynomial::plus() * SpinPolynomial::minus();
  const auto sites = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dense_oracle_trace(sites, poly));
}
BENCHMARK(BM_DenseOracle)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_WickReorder(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  std::vector<BosonLetter> letters;
  for (unsigned k = 0; k < n; ++k) {
    letters.push_back(BosonLetter::Annihilate);
    letters.push_back(BosonLetter::Create);
  }
  const OperatorWord word(letters);
  for (auto _ : state) benchmark::DoNotOptimize(wick_reorder(word));
}
BENCHMARK(BM_WickReorder)->DenseRange(2, 10, 2);

static void BM_ThermalExpectation(benchmark::State& state) {
  const ThermalState s = ThermalState::infinite_temperature_spin_image();
  const NormalForm form = wick_reorder(OperatorWord::normal(state.range(0), state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(thermal_expect(s, form));
}
BENCHMARK(BM_ThermalExpectation)->Arg(5)->Arg(20);

static void BM_SpinThermal(benchmark::State& state) {
  const XYParams params(Rational(-1), Rational(2));
  const auto poly = SpinPolynomial::plus() * SpinPolynomial::minus() + SpinPolynomial::minus() * SpinPolynomial::plus();
  const auto sites = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spin_thermal_expectation(params, sites, poly));
}
BENCHMARK(BM_SpinThermal)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
