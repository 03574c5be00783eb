#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace lpa;
using namespace lpa::test;

namespace {

Monomial mono(const Graph& g, const VertexRef& sp, std::vector<EdgeRef> p, const VertexRef& sq, std::vector<EdgeRef> q) {
  return make_monomial(g.path(sp, std::move(p)), g.path(sq, std::move(q)));
}

LpaElement el(const Monomial& m, const Scalar& c = 1) { return LpaElement::of(m, c); }

}  // namespace

TEST(LpaElement, MonomialNeedsMatchingRanges) {
  const Graph e = example_E();
  EXPECT_THROW(make_monomial(e.path(V("v"), {E("e")}), e.path(V("w"), {})), Error);
  EXPECT_NO_THROW(make_monomial(e.path(V("v"), {E("f", 1)}), e.path(V("w"), {})));
}

TEST(LpaElement, MonomialPrinting) {
  const Graph e = example_E();
  const Monomial m = mono(e, V("v"), {E("e"), E("f", 1)}, V("v"), {E("f", 1)});
  EXPECT_EQ(to_string(m), "e.f[1].f[1]^");
  const Monomial g = mono(e, V("u"), {}, V("w"), {E("g", 2)});
  EXPECT_EQ(to_string(g), "g[2]^");
  const Monomial two = mono(e, V("u"), {}, V("v"), {E("f", 1), E("g", 2)});
  EXPECT_EQ(to_string(two), "g[2]^.f[1]^");
  EXPECT_EQ(m.degree(), 1);
  EXPECT_EQ(g.degree(), -1);
}

TEST(LpaElement, CoefficientsCancel) {
  const Graph t = t2();
  LpaElement a = vertex_element(t, V("a"));
  a.add(vertex_element(t, V("a")), -1);
  EXPECT_TRUE(a.is_zero());
  const LpaElement b = Scalar(1, 2) * vertex_element(t, V("b")) + vertex_element(t, V("b"));
  EXPECT_EQ(b.coefficient({t.vertex_path(V("b")), t.vertex_path(V("b"))}), Scalar(3, 2));
}

TEST(LpaElement, PathRelationsInProducts) {
  const Graph e = example_E();
  const auto v = vertex_element(e, V("v")), w = vertex_element(e, V("w"));
  const auto f1 = edge_element(e, E("f", 1)), f2 = edge_element(e, E("f", 2));
  EXPECT_EQ(product(e, v, f1), f1);
  EXPECT_EQ(product(e, f1, w), f1);
  EXPECT_TRUE(product(e, w, f1).is_zero());
  EXPECT_TRUE(product(e, v, w).is_zero());
  EXPECT_EQ(product(e, ghost_element(e, E("f", 1)), f1), w);
  EXPECT_TRUE(product(e, ghost_element(e, E("f", 1)), f2).is_zero());
  const auto eef = path_element(e.path(V("v"), {E("e"), E("e"), E("f", 1)}));
  EXPECT_EQ(product(e, ghost_element(e, E("e")), eef), path_element(e.path(V("v"), {E("e"), E("f", 1)})));
  // Ghost of a longer path against a shorter one leaves a ghost tail.
  const auto ghost_eef = star(eef);
  EXPECT_EQ(product(e, ghost_eef, edge_element(e, E("e"))), el(mono(e, V("w"), {}, V("v"), {E("e"), E("f", 1)})));
}

TEST(LpaElement, CuntzKriegerAtRegularVertex) {
  const Graph t = t2();
  const auto x = edge_element(t, E("x")), y = edge_element(t, E("y"));
  const auto sum = multiply(x, ghost_element(t, E("x"))) + multiply(y, ghost_element(t, E("y")));
  EXPECT_EQ(normal_form(t, sum), vertex_element(t, V("a")));
  const LpaElement expect = vertex_element(t, V("a")) - el(mono(t, V("a"), {E("y")}, V("a"), {E("y")}));
  EXPECT_EQ(normal_form(t, multiply(x, ghost_element(t, E("x")))), expect);
}

TEST(LpaElement, NoRewriteAtInfiniteEmitters) {
  const Graph c = clock_graph();
  const Monomial m = mono(c, V("v"), {E("e", 1)}, V("v"), {E("e", 1)});
  EXPECT_FALSE(is_reducible(c, m));
  EXPECT_EQ(normal_form(c, el(m)), el(m));
  // Distinct family members are orthogonal.
  EXPECT_TRUE(product(c, ghost_element(c, E("e", 1)), edge_element(c, E("e", 2))).is_zero());
}

TEST(LpaElement, RewriteUsesTheSpecialEdgeOnly) {
  const Graph f = example_F();
  // v1 is regular with out-edges e1 < e2 < f[1]; e1 is special.
  const Monomial special = mono(f, V("v1"), {E("e1")}, V("v1"), {E("e1")});
  const Monomial other = mono(f, V("v1"), {E("e2")}, V("v1"), {E("e2")});
  EXPECT_TRUE(is_reducible(f, special));
  EXPECT_FALSE(is_reducible(f, other));
  NormalFormStats stats;
  const LpaElement nf = normal_form(f, el(special), &stats);
  EXPECT_EQ(stats.rewrite_steps, 1u);
  const LpaElement expect = vertex_element(f, V("v1")) - el(other) -
                            el(mono(f, V("v1"), {E("f", 1)}, V("v1"), {E("f", 1)}));
  EXPECT_EQ(nf, expect);
}

TEST(LpaElement, NestedRewritesAlongALoop) {
  const Graph l = loop();
  // The single loop c is special at u, so c^n (c^n)* = u for every n.
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<EdgeRef> word(n, E("c"));
    NormalFormStats stats;
    EXPECT_EQ(normal_form(l, el(mono(l, V("u"), word, V("u"), word)), &stats), vertex_element(l, V("u")));
    EXPECT_EQ(stats.rewrite_steps, n);
  }
  // Unequal powers survive: c c c* is c.
  const Monomial m = mono(l, V("u"), {E("c"), E("c")}, V("u"), {E("c")});
  EXPECT_EQ(normal_form(l, el(m)), edge_element(l, E("c")));
}

TEST(LpaElement, StarIsAnAntiAutomorphismOnRandomElements) {
  std::mt19937_64 rng(11);
  for (const auto& [name, g] : all_graphs()) {
    MonomialSampler s(g, 2, 2);
    for (int i = 0; i < 30; ++i) {
      const LpaElement a = s.element(rng, 3), b = s.element(rng, 3);
      EXPECT_EQ(normal_form(g, star(product(g, a, b))), product(g, star(b), star(a))) << name;
      EXPECT_EQ(star(star(a)), a);
    }
  }
}

TEST(LpaElement, ProductIsAssociativeOnRandomElements) {
  std::mt19937_64 rng(12);
  for (const auto& [name, g] : all_graphs()) {
    MonomialSampler s(g, 2, 2);
    for (int i = 0; i < 30; ++i) {
      const LpaElement a = s.element(rng, 2), b = s.element(rng, 2), c = s.element(rng, 2);
      EXPECT_EQ(product(g, product(g, a, b), c), product(g, a, product(g, b, c))) << name;
    }
  }
}

TEST(LpaElement, NormalFormAgreesWithRandomizedRewriting) {
  std::mt19937_64 rng(13);
  for (const auto& [name, g] : all_graphs()) {
    MonomialSampler s(g, 3, 2);
    for (int i = 0; i < 40; ++i) {
      const LpaElement a = s.element(rng, 4);
      NormalFormStats stats;
      const LpaElement nf = normal_form(g, a, &stats);
      EXPECT_EQ(naive_normal_form(g, a, rng), nf) << name;
      EXPECT_LE(stats.rewrite_steps, rewrite_bound(a));
      for (const auto& [m, c] : nf.terms()) EXPECT_FALSE(is_reducible(g, m));
      EXPECT_EQ(normal_form(g, nf), nf);
    }
  }
}

TEST(LpaElement, GradedComponents) {
  const Graph e = example_E();
  const LpaElement a = edge_element(e, E("e")) + ghost_element(e, E("f", 1)) + vertex_element(e, V("v")) +
                       path_element(e.path(V("v"), {E("e"), E("f", 2)}));
  const auto parts = graded_components(a);
  ASSERT_EQ(parts.size(), 4u);
  EXPECT_EQ(parts.at(-1), ghost_element(e, E("f", 1)));
  EXPECT_EQ(parts.at(0), vertex_element(e, V("v")));
  EXPECT_EQ(parts.at(1), edge_element(e, E("e")));
  EXPECT_EQ(parts.at(2).size(), 1u);
}

TEST(LpaElement, CornerFilter) {
  const Graph c = clock_graph();
  const LpaElement inside = vertex_element(c, V("v")) + el(mono(c, V("v"), {E("e", 2)}, V("v"), {E("e", 2)}), 3);
  const auto r = corner_filter(inside, {V("v")});
  EXPECT_TRUE(r.in_corner);
  EXPECT_EQ(r.part, inside);

  const LpaElement mixed = inside + edge_element(c, E("e", 1));
  const auto r2 = corner_filter(mixed, {V("v")});
  EXPECT_FALSE(r2.in_corner);
  EXPECT_EQ(r2.part, inside);
  EXPECT_TRUE(in_corner(edge_element(c, E("e", 1)), {V("v")}, {V("w", 1)}));
  EXPECT_FALSE(in_corner(edge_element(c, E("e", 1)), {V("v")}, {V("v")}));
}

TEST(LpaElement, MorphismImage) {
  const Graph t = t2();
  GraphMorphism swap = GraphMorphism::identity(t);
  swap.edge_map[E("x")] = E("y");
  swap.edge_map[E("y")] = E("x");
  const LpaElement a = el(mono(t, V("a"), {E("x")}, V("a"), {E("y")}), 2);
  EXPECT_EQ(apply_morphism(swap, t, a), el(mono(t, V("a"), {E("y")}, V("a"), {E("x")}), 2));
}
