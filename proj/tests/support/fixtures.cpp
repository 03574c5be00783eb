#include "fixtures.hpp"

#include <fstream>
#include <sstream>

#include "lpa/path_space.hpp"

#ifndef LPA_DATA_DIR
#error "LPA_DATA_DIR must point at the data directory"
#endif

namespace lpa::test {

Graph t2() { return Graph({"a", "b"}, {}, {{"x", V("a"), V("b")}, {"y", V("a"), V("b")}}, {}); }

Graph clock_graph() {
  return Graph({"v"}, {{"w", 1}}, {}, {{"e", 1, V("v"), IndexedEndpoint{"w", {{0, 0}}}, {}}});
}

Graph loop() { return Graph({"u"}, {}, {{"c", V("u"), V("u")}}, {}); }

Graph loop_exit() { return Graph({"u", "z"}, {}, {{"c", V("u"), V("u")}, {"d", V("u"), V("z")}}, {}); }

Graph example_E() {
  return Graph({"v", "w", "u"}, {}, {{"e", V("v"), V("v")}},
               {{"f", 1, V("v"), V("w"), {}}, {"g", 1, V("w"), V("u"), {}}});
}

Graph example_F() {
  EdgeFamilySpec f{"f", 1, V("v2"), V("w"), {}};
  f.source_overrides[MultiIndex::of(1)] = V("v1");
  return Graph({"v1", "v2", "w", "u"}, {}, {{"e1", V("v1"), V("v1")}, {"e2", V("v1"), V("v2")}},
               {f, {"g", 1, V("w"), V("u"), {}}});
}

std::vector<NamedGraph> steinberg_graphs() {
  return {{"T2", t2()}, {"clock", clock_graph()}, {"loop-with-exit", loop_exit()}, {"F", example_F()}};
}

std::vector<NamedGraph> all_graphs() {
  return {{"T2", t2()},         {"clock", clock_graph()}, {"loop", loop()},
          {"loop-with-exit", loop_exit()}, {"E", example_E()},      {"F", example_F()}};
}

std::string data_file(const std::string& name) { return std::string(LPA_DATA_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MonomialSampler::MonomialSampler(const Graph& g, std::size_t maxlen, std::uint32_t family_bound)
    : paths_(enumerate_paths(g, g.vertices_up_to(family_bound), maxlen, family_bound)) {
  for (std::size_t i = 0; i < paths_.size(); ++i) by_end_[paths_[i].end()].push_back(i);
}

Monomial MonomialSampler::monomial(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, paths_.size() - 1);
  const Path& p = paths_[pick(rng)];
  const auto& partners = by_end_.at(p.end());
  std::uniform_int_distribution<std::size_t> pick_q(0, partners.size() - 1);
  return {p, paths_[partners[pick_q(rng)]]};
}

Scalar random_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  int n = 0;
  while (n == 0) n = num(rng);
  Scalar s(n, den(rng));
  s.canonicalize();
  return s;
}

LpaElement MonomialSampler::element(std::mt19937_64& rng, std::size_t terms) const {
  LpaElement a;
  for (std::size_t i = 0; i < terms; ++i) a.add(monomial(rng), random_scalar(rng));
  return a;
}

LpaElement MonomialSampler::corner_element(std::mt19937_64& rng, const VertexRef& left, const VertexRef& right,
                                           std::size_t terms) const {
  std::vector<Monomial> pool;
  for (const auto& p : paths_) {
    if (p.start() != left) continue;
    for (std::size_t j : by_end_.at(p.end()))
      if (paths_[j].start() == right) pool.push_back({p, paths_[j]});
  }
  LpaElement a;
  if (pool.empty()) return a;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t i = 0; i < terms; ++i) a.add(pool[pick(rng)], random_scalar(rng));
  return a;
}

}  // namespace lpa::test
