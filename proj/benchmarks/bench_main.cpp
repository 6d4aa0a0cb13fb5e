#include <benchmark/benchmark.h>

#include <random>

#include "mixsing/contact.hpp"
#include "mixsing/geometry.hpp"
#include "mixsing/links.hpp"
#include "mixsing/newton.hpp"
#include "mixsing/numeric.hpp"
#include "mixsing/parser.hpp"

using namespace mixsing;

namespace {

const char* kHammSource = "z1^3*zb1+2*z2^3*zb2+3*z3^3*zb3+4*z4^3*zb4";

MixedMap pndnd() { return parse_map({"z1+(z2+z3)^2", "z1^2+z2^2+z3^2"}, 3); }

void BM_Parse(benchmark::State& st) {
  const std::string src = "(z1+(1/2+3i)*zb2)^" + std::to_string(st.range(0)) + " + z3*zb3";
  for (auto _ : st) benchmark::DoNotOptimize(parse_polynomial(src, 3));
}
BENCHMARK(BM_Parse)->Arg(2)->Arg(4)->Arg(8);

void BM_EvaluateCompiled(benchmark::State& st) {
  MixedMap F = parse_map({kHammSource, "z1^2*zb2+z3*zb4^2+z2*z4"}, 4);
  CompiledMap cm(F);
  PointC p{{0.3, 0.1}, {-0.2, 0.5}, {0.7, -0.4}, {0.1, 0.1}};
  for (auto _ : st) benchmark::DoNotOptimize(cm.real_jacobian(p));
}
BENCHMARK(BM_EvaluateCompiled);

void BM_EnumerateWeights(benchmark::State& st) {
  MixedMap F = pndnd();
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_weights(F, std::uint32_t(st.range(0))));
}
BENCHMARK(BM_EnumerateWeights)->Arg(4)->Arg(8);

void BM_DOracle(benchmark::State& st) {
  const std::size_t n = std::size_t(st.range(0));
  std::string f1, f2;
  for (std::size_t j = 1; j <= n; ++j) {
    f1 += (j > 1 ? "+" : "") + std::string("z") + std::to_string(j) + "^2";
    f2 += (j > 1 ? "+" : "") + std::to_string(j) + "*z" + std::to_string(j) + "^3*zb" + std::to_string(j);
  }
  MixedMap F = parse_map({f1, f2}, n);
  std::mt19937_64 rng(1);
  PointC p = random_sphere_point(rng, n, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(D_oracle(F, p));
}
BENCHMARK(BM_DOracle)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_DClosed(benchmark::State& st) {
  const std::size_t n = std::size_t(st.range(0));
  std::string f1, f2;
  for (std::size_t j = 1; j <= n; ++j) {
    f1 += (j > 1 ? "+" : "") + std::string("z") + std::to_string(j) + "^2";
    f2 += (j > 1 ? "+" : "") + std::to_string(j) + "*z" + std::to_string(j) + "^3*zb" + std::to_string(j);
  }
  MixedMap F = parse_map({f1, f2}, n);
  std::mt19937_64 rng(1);
  PointC p = random_sphere_point(rng, n, 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(D_closed(F, p));
}
BENCHMARK(BM_DClosed)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_StrongAdmissibility(benchmark::State& st) {
  const std::size_t n = std::size_t(st.range(0));
  SiegelFrame fr = random_admissible_frame(1, n, 3);
  for (auto _ : st) benchmark::DoNotOptimize(is_strongly_admissible(fr));
}
BENCHMARK(BM_StrongAdmissibility)->Arg(3)->Arg(5)->Arg(7);

void BM_SampleLink(benchmark::State& st) {
  MixedMap G = parse_map({kHammSource, "z1^3*zb1+z2^3*zb2+z3^3*zb3+z4^3*zb4"}, 4);
  const double r = 1.0 / double(st.range(0));
  std::uint64_t seed = 0;
  for (auto _ : st) benchmark::DoNotOptimize(sample_link(G, r, 16, seed++));
  st.SetItemsProcessed(st.iterations() * 16);
}
BENCHMARK(BM_SampleLink)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
