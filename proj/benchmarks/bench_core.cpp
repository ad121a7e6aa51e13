#include <benchmark/benchmark.h>

#include <random>

#include "nqc/cnf.hpp"
#include "nqc/gates.hpp"
#include "nqc/sat.hpp"
#include "nqc/scaled_state.hpp"

using namespace nqc;

namespace {

ScaledState make_state(int n_qubits) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    for (auto& a : amps) {
        a = cplx{nd(rng), nd(rng)};
    }
    return ScaledState(n_qubits, std::move(amps));
}

void bm_h_kernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = make_state(n);
    const auto op = GateOp::h(n / 2);
    for (auto _ : state) {
        apply(s, op);
        benchmark::DoNotOptimize(s.amps().data());
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}

void bm_cnot_kernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = make_state(n);
    const auto op = GateOp::cnot(0, n - 1);
    for (auto _ : state) {
        apply(s, op);
        benchmark::DoNotOptimize(s.amps().data());
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}

void bm_g_kernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto s = make_state(n);
    const auto op = GateOp::g_gate(n / 2, 1.0000001); // near 1: no rescale churn
    for (auto _ : state) {
        apply(s, op);
        benchmark::DoNotOptimize(s.amps().data());
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}

void bm_oracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> vd(1, n);
    CnfFormula f;
    f.num_vars = n;
    for (int c = 0; c < 3 * n; ++c) {
        f.clauses.push_back({vd(rng), -vd(rng), vd(rng)});
    }
    auto s = make_state(n + 1);
    for (auto _ : state) {
        apply_oracle(s, f, 0, n, n);
        benchmark::DoNotOptimize(s.amps().data());
    }
    state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}

void bm_g_repeated(benchmark::State& state) {
    const long long r = state.range(0);
    for (auto _ : state) {
        auto s = make_state(10);
        apply_g_repeated(s, 5, 2.0, r);
        benchmark::DoNotOptimize(s.log_scale());
    }
}

} // namespace

BENCHMARK(bm_h_kernel)->DenseRange(10, 22, 4);
BENCHMARK(bm_cnot_kernel)->DenseRange(10, 22, 4);
BENCHMARK(bm_g_kernel)->DenseRange(10, 22, 4);
BENCHMARK(bm_oracle)->DenseRange(8, 20, 4);
BENCHMARK(bm_g_repeated)->Arg(100)->Arg(10000)->Arg(1000000);

BENCHMARK_MAIN();
