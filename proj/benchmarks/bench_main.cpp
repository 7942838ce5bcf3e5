/*
 * Microbenchmarks for the hot paths: sparse field application, exact vacuum
 * moments of letter words, the polar-part defect pipeline, and counter-based
 * GUE sampling.  Run ./awlab_bench --benchmark_min_time=0.1 for a quick
 * pass; results are wall-clock per iteration.
 */
#include <benchmark/benchmark.h>

#include "awlab/fock.hpp"
#include "awlab/rmt.hpp"
#include "awlab/tla.hpp"

#include <Eigen/Dense>

#include <complex>

using namespace awlab;
using cd = std::complex<double>;

namespace {

void bm_field_apply(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    const fock::FockSpace F = fock::FockSpace::build(2, depth);
    const fock::FockOperator s = fock::field_operator(F, Eigen::VectorXcd::Unit(2, 0));
    Eigen::VectorXcd v = Eigen::VectorXcd::Random(F.total_dim);
    for (auto _ : state) {
        v = s.apply(v);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetComplexityN(F.total_dim);
}

void bm_vacuum_moment_word(benchmark::State& state) {
    const fock::FockSpace F = fock::FockSpace::build(2, 8);
    const fock::LetterExpr s0 = fock::le_field(Eigen::VectorXcd::Unit(2, 0));
    const fock::LetterExpr s1 = fock::le_field(Eigen::VectorXcd::Unit(2, 1));
    fock::LetterExpr w = s0;
    for (int k = 1; k < 8; ++k) w = fock::le_mul(w, k % 2 ? s1 : s0);
    for (auto _ : state) {
        const cd m = fock::vacuum_moment(F, w).value;
        benchmark::DoNotOptimize(m);
    }
}

void bm_polar_tla(benchmark::State& state) {
    const int depth = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const tla::TlaReport r = tla::polar_tla(0.5, depth);
        benchmark::DoNotOptimize(r.isometry_defect);
    }
}

void bm_sample_gue(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t sample = 0;
    for (auto _ : state) {
        const Eigen::MatrixXcd x = rmt::sample_gue(n, 1, 0, sample++);
        benchmark::DoNotOptimize(x.data());
    }
}

BENCHMARK(bm_field_apply)->Arg(8)->Arg(10)->Arg(12)->Complexity(benchmark::oN);
BENCHMARK(bm_vacuum_moment_word);
BENCHMARK(bm_polar_tla)->Arg(8)->Arg(10);
BENCHMARK(bm_sample_gue)->Arg(128)->Arg(256);

} // namespace

BENCHMARK_MAIN();
