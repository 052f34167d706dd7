#include <benchmark/benchmark.h>

#include "qbisect/fan.hpp"

namespace {

using namespace qbisect;

void BM_QuaternionMulExact(benchmark::State& st) {
    SplitMix64 rng(1);
    const auto a = random_quaternion<Exact>(rng), b = random_quaternion<Exact>(rng);
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_QuaternionMulExact);

void BM_QuaternionMulFloat(benchmark::State& st) {
    SplitMix64 rng(1);
    const auto a = random_quaternion<Float>(rng), b = random_quaternion<Float>(rng);
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_QuaternionMulFloat);

template <class S>
void BM_Delta(benchmark::State& st) {
    SplitMix64 rng(2);
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto p = random_ball_point<S>(rng, n), q = random_ball_point<S>(rng, n);
    for (auto _ : st) benchmark::DoNotOptimize(delta(p, q));
}
BENCHMARK_TEMPLATE(BM_Delta, Exact)->Arg(2)->Arg(3)->Arg(6);
BENCHMARK_TEMPLATE(BM_Delta, Float)->Arg(2)->Arg(3)->Arg(6);

void BM_SampleBisectorPoint(benchmark::State& st) {
    SplitMix64 rng(3);
    const auto b = random_bisector<Exact>(rng, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sample_bisector_point(b, rng));
}
BENCHMARK(BM_SampleBisectorPoint)->Arg(2)->Arg(3);

void BM_BisectorContains(benchmark::State& st) {
    SplitMix64 rng(4);
    const auto b = random_bisector<Exact>(rng, 3);
    const auto p = sample_bisector_point(b, rng);
    for (auto _ : st) benchmark::DoNotOptimize(b.contains(p));
}
BENCHMARK(BM_BisectorContains);

void BM_BladeContaining(benchmark::State& st) {
    SplitMix64 rng(5);
    const auto b = random_bisector<Exact>(rng, static_cast<std::size_t>(st.range(0)));
    const Fan<Exact> fan(b);
    const auto p = sample_bisector_point(b, rng);
    for (auto _ : st) benchmark::DoNotOptimize(fan.blade_containing(p));
}
BENCHMARK(BM_BladeContaining)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_StarlikeCertificate(benchmark::State& st) {
    SplitMix64 rng(6);
    const auto b = random_bisector<Exact>(rng, 2);
    const Fan<Exact> fan(b);
    const auto p = sample_bisector_point(b, rng);
    for (auto _ : st) benchmark::DoNotOptimize(starlike_certificate(fan, p).pass());
}
BENCHMARK(BM_StarlikeCertificate)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
