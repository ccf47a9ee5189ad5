#include <benchmark/benchmark.h>

#include "spinfetch/pipeline.hpp"

using namespace spinfetch;

namespace {

SpinSystem make_system(int n) {
    // Super-increasing couplings keep all 2^n line positions distinct.
    static const std::vector<double> couplings = {20.0, 25.0, 50.0, 100.0, 200.0, 410.0};
    std::vector<double> j0k(couplings.begin(), couplings.begin() + n);
    return SpinSystem::with_ancilla_couplings(n, j0k, 0.5);
}

MarkedSet alternating_marked(int n) {
    MarkedSet set;
    set.n_register = n;
    for (std::uint32_t x = 0; x < (1u << n); x += 2) set.items.push_back(x);
    return set;
}

ExperimentConfig make_config(int n) {
    ExperimentConfig config;
    config.system = make_system(n);
    config.marked = alternating_marked(n);
    config.acquisition.dwell_s = 1.0 / 1024.0;
    config.acquisition.points = 4096;
    return config;
}

void BM_PrepareState(benchmark::State& state) {
    const SpinSystem sys = make_system(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto rho = prepare_I0alpha(sys);
        benchmark::DoNotOptimize(rho.matrix.data());
    }
}
BENCHMARK(BM_PrepareState)->DenseRange(2, 6);

void BM_CompileOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SpinSystem sys = make_system(n);
    const MarkedSet marked = alternating_marked(n);
    for (auto _ : state) {
        auto oracle = compile_oracle(sys, marked);
        benchmark::DoNotOptimize(oracle.matrix.data());
    }
}
BENCHMARK(BM_CompileOracle)->DenseRange(2, 8);

void BM_FidSynthesis(benchmark::State& state) {
    const SpinSystem sys = make_system(3);
    AcqParams params;
    params.dwell_s = 1.0 / 1024.0;
    params.points = static_cast<int>(state.range(0));
    const auto rho = readout_pulse(
        apply_query(prepare_I0alpha(sys), compile_oracle(sys, alternating_marked(3))), sys);
    for (auto _ : state) {
        Fid fid = synthesize_fid(rho, sys, params);
        benchmark::DoNotOptimize(fid.samples.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FidSynthesis)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_DftSpectrum(benchmark::State& state) {
    Fid fid;
    fid.dwell_s = 1.0 / 1024.0;
    fid.samples.resize(static_cast<std::size_t>(state.range(0)));
    for (std::size_t k = 0; k < fid.samples.size(); ++k)
        fid.samples[k] = std::polar(std::exp(-static_cast<double>(k) * 1e-4),
                                    0.05 * static_cast<double>(k));
    for (auto _ : state) {
        Spectrum spectrum = dft_spectrum(fid);
        benchmark::DoNotOptimize(spectrum.values.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DftSpectrum)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_FullPipeline(benchmark::State& state) {
    const ExperimentConfig config = make_config(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        ExperimentReport report = run_experiment(config);
        benchmark::DoNotOptimize(report.fetch.marked.items.data());
    }
}
BENCHMARK(BM_FullPipeline)->DenseRange(2, 5);

}  // namespace

BENCHMARK_MAIN();
