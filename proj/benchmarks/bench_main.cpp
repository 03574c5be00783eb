#include <benchmark/benchmark.h>

#include <random>

#include "lpa/monoid.hpp"
#include "lpa/path_space.hpp"
#include "lpa/steinberg.hpp"
#include "lpa/text_io.hpp"
#include "lpa/transforms.hpp"

using namespace lpa;

namespace {

const char* kExample =
    "VERTICES\nv w u\nEDGES\ne: v -> v\nEDGE_FAMILIES\nf: v -> w\ng: w -> u\n";

// k regular vertices in a ring, each with two edges to the next one.
Graph ring(int k) {
  std::vector<std::string> vs;
  std::vector<EdgeSpec> es;
  for (int i = 0; i < k; ++i) vs.push_back("r" + std::to_string(i));
  for (int i = 0; i < k; ++i) {
    const auto s = VertexRef::concrete(vs[i]), t = VertexRef::concrete(vs[(i + 1) % k]);
    es.push_back({"a" + std::to_string(i), s, t});
    es.push_back({"b" + std::to_string(i), s, t});
  }
  return Graph(vs, {}, es, {});
}

LpaElement random_element(const Graph& g, std::mt19937_64& rng, std::size_t maxlen, std::size_t terms) {
  const auto paths = enumerate_paths(g, g.vertices_up_to(2), maxlen, 2);
  std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
  LpaElement a;
  while (a.size() < terms) {
    const Path& p = paths[pick(rng)];
    const Path& q = paths[pick(rng)];
    if (p.end() == q.end()) a.add({p, q}, 1);
  }
  return a;
}

void BM_NormalForm(benchmark::State& state) {
  const Graph g = ring(3);
  std::mt19937_64 rng(1);
  const LpaElement a = random_element(g, rng, static_cast<std::size_t>(state.range(0)), 16);
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(g, a));
}
BENCHMARK(BM_NormalForm)->Arg(2)->Arg(4)->Arg(6);

void BM_Product(benchmark::State& state) {
  const Graph g = parse_graph(kExample);
  std::mt19937_64 rng(2);
  const LpaElement a = random_element(g, rng, 3, 12), b = random_element(g, rng, 3, 12);
  for (auto _ : state) benchmark::DoNotOptimize(product(g, a, b));
}
BENCHMARK(BM_Product);

void BM_Convolution(benchmark::State& state) {
  const Graph g = ring(2);
  std::mt19937_64 rng(3);
  const auto f = pi_map(normal_form(g, random_element(g, rng, 3, 10)));
  const auto h = pi_map(normal_form(g, random_element(g, rng, 3, 10)));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(g, f, h));
}
BENCHMARK(BM_Convolution);

void BM_MonoidSearch(benchmark::State& state) {
  const Graph g = parse_graph("VERTICES\nv\nVERTEX_FAMILIES\nw\nEDGE_FAMILIES\ne: v -> w\n");
  MonoidElement x, y;
  x.add({VertexRef::concrete("v"), {}}, 2);
  y.add({VertexRef::member("w", MultiIndex::of(1)), {}}, 2);
  y.add({VertexRef::concrete("v"), {EdgeRef::member("e", MultiIndex::of(1))}}, 2);
  const auto u = universe_from(g, {x, y}, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(equivalent(g, x, y, u, {4, 200000}));
}
BENCHMARK(BM_MonoidSearch)->Arg(1)->Arg(2);

void BM_EndPipeline(benchmark::State& state) {
  const Graph g = parse_graph(kExample);
  const ProjectiveSpec s = parse_spec("v; {e}; 1\nv; {f[1]}; 1\n", g);
  for (auto _ : state) benchmark::DoNotOptimize(end_pipeline(g, s, {2, 2}));
}
BENCHMARK(BM_EndPipeline);

}  // namespace
BENCHMARK_MAIN();
