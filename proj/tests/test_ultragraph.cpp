#include <doctest.h>

#include "support/generators.hpp"
#include "ugkms/errors.hpp"
#include "ugkms/lattice_expr.hpp"
#include "ugkms/sec6.hpp"
#include "ugkms/ultragraph.hpp"

using namespace ugkms;

namespace {

Ultragraph branching() {
  FiniteUltragraphBuilder b;
  auto v = b.add_vertex("v");
  auto u = b.add_vertex("u");
  b.add_edge("e1", v, {u});
  b.add_edge("e2", v, {u});
  b.add_edge("e3", u, {v});
  return b.build();
}

}  // namespace

TEST_CASE("finite builder validation") {
  Ultragraph g = branching();
  CHECK(g.is_finite());
  CHECK(*g.oracle().edge_count() == 3);
  CHECK(g.emitter_count() == 0);

  FiniteUltragraphBuilder sink;
  auto a = sink.add_vertex("a");
  sink.add_vertex("b");
  sink.add_edge("x", a, {a});
  CHECK_THROWS_AS(static_cast<void>(sink.build()), SinkDetected);

  FiniteUltragraphBuilder empty;
  auto c = empty.add_vertex("c");
  empty.add_edge("y", c, {});
  CHECK_THROWS_AS(static_cast<void>(empty.build()), EmptyRange);
}

TEST_CASE("finite emission and decomposition") {
  Ultragraph g = branching();
  auto v = *g.find_vertex("v");
  auto em = g.emission(g.singleton(v));
  CHECK_FALSE(em.infinite);
  CHECK(em.edges.size() == 2);
  auto top = *g.top();
  auto d = g.decompose(top);
  CHECK(d.minimal_parts.empty());
  CHECK(d.finite_part.size() == 2);
  CHECK(g.check_rfum().status == RfumResult::Status::Ok);
}

TEST_CASE("family: vertices, ranges and emitters") {
  Ultragraph g = sec6::build();
  CHECK_FALSE(g.is_finite());
  REQUIRE(g.emitter_count() == 2);
  CHECK(g.emitter_name(EmitterId{0}) == "w");
  CHECK(g.emitter_name(EmitterId{1}) == "B");
  auto B = g.emitter_set(*g.find_emitter("B"));
  CHECK(g.member(sec6::v(7), B));
  CHECK_FALSE(g.member(sec6::w(), B));
  CHECK_FALSE(g.member(sec6::v(3), B));
  CHECK_FALSE(g.member(sec6::v(1), GeneralizedVertex{}));

  CHECK(g.format(g.range(sec6::e(7))) == "{v4,v7}");
  CHECK(g.format(g.range(sec6::e(1))) == "B|{v1}");
  CHECK(g.format(g.range(sec6::f(2))) == "B|{v1,v2,v3}");
  CHECK(g.range(sec6::f(2)) == *g.named_set("G0"));

  auto e123 = g.emission(canonicalize(g, "{v1,v2,v3}"));
  CHECK_FALSE(e123.infinite);
  CHECK(e123.edges == std::vector<EdgeId>{sec6::e(1), sec6::e(2), sec6::e(3)});
  auto eb = g.emission(B, 5);
  CHECK(eb.infinite);
  CHECK(eb.edges == std::vector<EdgeId>{sec6::e(4), sec6::e(5), sec6::e(6), sec6::e(7), sec6::e(8)});

  auto d = g.decompose(g.range(sec6::f(1)));
  CHECK(d.minimal_parts == std::vector<EmitterId>{*g.find_emitter("B")});
  CHECK(d.finite_part == std::vector<VertexId>{sec6::v(1), sec6::v(2), sec6::v(3)});
  auto f0 = g.decompose(*g.top());
  CHECK(f0.minimal_parts.size() == 2);
  CHECK(f0.finite_part.size() == 3);
}

TEST_CASE("family: RFUM at bounded depth") {
  CHECK(sec6::build().check_rfum().status == RfumResult::Status::Ok);
  Ultragraph bad = sec6::build(sec6::Options{std::vector<std::string>{"w"}, false});
  RfumResult r = bad.check_rfum();
  CHECK(r.status == RfumResult::Status::Violation);
  REQUIRE(r.edge);
  CHECK(bad.edge_name(*r.edge) == "e1");
}

TEST_CASE("family: exhaustion without a top") {
  Ultragraph g = sec6::build(sec6::Options{std::nullopt, true});
  CHECK_FALSE(g.top());
  auto a = *g.exhaustion(0);
  auto b = *g.exhaustion(5);
  CHECK(g.subset(a, b));
  CHECK(g.member(sec6::w(), a));
}

TEST_CASE("distinct emitters meet finitely") {
  Ultragraph g = sec6::build();
  CHECK(g.emitter_overlap(EmitterId{0}, EmitterId{1}).empty());
}

TEST_CASE("lattice operations on random finite ultragraphs") {
  ugtest::Rng rng(11);
  for (int iter = 0; iter < 40; ++iter) {
    Ultragraph g = ugtest::random_finite_ultragraph(rng);
    auto vs = g.vertex_window(*g.oracle().vertex_count());
    for (int k = 0; k < 10; ++k) {
      auto a = ugtest::random_set(g, rng);
      auto b = ugtest::random_set(g, rng);
      auto u = g.unite(a, b);
      auto i = g.intersect(a, b);
      CHECK(g.subset(a, u));
      CHECK(g.subset(i, a));
      CHECK(g.unite(a, a) == a);
      for (VertexId v : vs) {
        CHECK(g.member(v, u) == (g.member(v, a) || g.member(v, b)));
        CHECK(g.member(v, i) == (g.member(v, a) && g.member(v, b)));
      }
    }
  }
}
