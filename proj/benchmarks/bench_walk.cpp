#include "qwtherm/qubit.hpp"
#include "qwtherm/sweep.hpp"
#include "qwtherm/walk.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

using namespace qwtherm;

void BM_Advance(benchmark::State& state)
{
	const auto halfwidth = state.range(0);
	const CoinSpec coin(std::numbers::pi / 4);
	const WalkState initial = init_state(InitialSpec::gaussian(10.0, 1.0, 0.5), halfwidth);
	WalkState walk = initial;
	for(auto _ : state)
	{
		// Keep the support well inside the window.
		if(walk.time() >= halfwidth - 61)
		{
			state.PauseTiming();
			walk = initial;
			state.ResumeTiming();
		}
		walk.advance(coin);
		benchmark::DoNotOptimize(walk.d().data());
	}
}
BENCHMARK(BM_Advance)->Arg(256)->Arg(1024)->Arg(4096);

void BM_CoinRdo(benchmark::State& state)
{
	WalkState walk = init_state(InitialSpec::gaussian(10.0, 1.0, 0.5), state.range(0));
	for(auto _ : state)
	{
		benchmark::DoNotOptimize(coin_rdo(walk));
	}
}
BENCHMARK(BM_CoinRdo)->Arg(512);

void BM_EvolveAndAverage(benchmark::State& state)
{
	const CoinSpec coin(std::numbers::pi / 4);
	const auto t_max = state.range(0);
	for(auto _ : state)
	{
		benchmark::DoNotOptimize(
			evolve_and_average(InitialSpec::gaussian(10.0, 1.0, 0.5), coin, t_max / 4, t_max));
	}
}
BENCHMARK(BM_EvolveAndAverage)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_Eigendecompose(benchmark::State& state)
{
	const QubitDensity rho = QubitDensity::from_ab(0.2, Complex{0.1, -0.3});
	for(auto _ : state)
	{
		benchmark::DoNotOptimize(eigendecompose(rho));
	}
}
BENCHMARK(BM_Eigendecompose);

void BM_Sweep(benchmark::State& state)
{
	SweepConfig config;
	config.thetas = {std::numbers::pi / 4};
	config.workers = 1;
	for(auto _ : state)
	{
		benchmark::DoNotOptimize(compute_sweep(config));
	}
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
