#include <doctest.h>

#include "support/generators.hpp"
#include "ugkms/errors.hpp"
#include "ugkms/lattice_expr.hpp"
#include "ugkms/sec6.hpp"
#include "ugkms/ultragraph_io.hpp"

using namespace ugkms;

namespace {

LatticeExpr random_expr(const Ultragraph& g, ugtest::Rng& rng, int depth, std::uint64_t window) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 4 : 2);
  auto vs = g.is_finite() ? g.vertex_window(*g.oracle().vertex_count()) : g.vertex_window(window);
  auto es = g.is_finite() ? g.edge_window(*g.oracle().edge_count()) : g.edge_window(2 * window);
  auto any = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  switch (kind(rng)) {
    case 0:
      return LatticeExpr::range(g.edge_name(es[any(es.size())]));
    case 1: {
      std::vector<std::string> names;
      for (std::size_t i = any(3); i > 0; --i) names.push_back(g.vertex_name(vs[any(vs.size())]));
      return LatticeExpr::vertices(names);
    }
    case 2:
      if (g.emitter_count() > 0) return LatticeExpr::named(g.emitter_name(EmitterId{static_cast<std::uint32_t>(any(g.emitter_count()))}));
      return LatticeExpr::named(g.vertex_name(vs[any(vs.size())]));
    case 3:
      return LatticeExpr::unite(random_expr(g, rng, depth - 1, window), random_expr(g, rng, depth - 1, window));
    default:
      return LatticeExpr::intersect(random_expr(g, rng, depth - 1, window), random_expr(g, rng, depth - 1, window));
  }
}

void check_expressions(const Ultragraph& g, ugtest::Rng& rng, int count, std::uint64_t window) {
  auto vs = g.is_finite() ? g.vertex_window(*g.oracle().vertex_count()) : g.vertex_window(window);
  for (int i = 0; i < count; ++i) {
    LatticeExpr e = random_expr(g, rng, 3, window);
    GeneralizedVertex c = canonicalize(g, e);
    CAPTURE(e.str());
    CHECK(canonicalize(g, g.format(c)) == c);
    CHECK(canonicalize(g, e.str()) == c);
    for (VertexId v : vs) CHECK(g.member(v, c) == eval_membership(g, e, v));
  }
}

}  // namespace

TEST_CASE("canonical forms on the family") {
  Ultragraph g = sec6::build();
  CHECK(g.format(canonicalize(g, "r(e1) & r(e2)")) == "B");
  CHECK(g.format(canonicalize(g, "r(e4)")) == "{v1,v4}");
  CHECK(canonicalize(g, "r(e4) | r(e4)") == canonicalize(g, "r(e4)"));
  CHECK(g.format(canonicalize(g, "{v5} | B")) == "B");
  CHECK(g.format(canonicalize(g, "{w}")) == "w");
  CHECK(g.format(canonicalize(g, "F0")) == "w|B|{v1,v2,v3}");
  CHECK(canonicalize(g, "r(e4) & {w}").empty());
  CHECK(g.format(canonicalize(g, "{}")) == "{}");
  CHECK_THROWS_AS(canonicalize_nonempty(g, "r(e4) & r(e5)"), EmptySetError);
  CHECK(g.format(canonicalize(g, "(r(e4) | r(e7)) & B")) == "{v4,v7}");
}

TEST_CASE("parse errors") {
  Ultragraph g = sec6::build();
  CHECK_THROWS_AS(canonicalize(g, "r(e1"), ParseError);
  CHECK_THROWS_AS(canonicalize(g, "r(zz)"), Error);
  CHECK_THROWS_AS(canonicalize(g, "nosuch"), Error);
  CHECK_THROWS_AS(canonicalize(g, "B &"), ParseError);
}

TEST_CASE("canonicalize agrees with raw membership on random expressions") {
  ugtest::Rng rng(5);
  check_expressions(sec6::build(), rng, 150, 30);
  for (int i = 0; i < 20; ++i) check_expressions(ugtest::random_finite_ultragraph(rng), rng, 15, 0);
}

TEST_CASE("ultragraph text format") {
  auto lg = load_ultragraph_text(
      "# comment\n"
      "vertices: v u\n"
      "edge e1 v -> u\n"
      "edge e2 v -> u   # trailing\n"
      "edge e3 u -> v\n"
      "weight e1 3\n"
      "weight * 2\n");
  const Ultragraph& g = lg.graph;
  CHECK(*g.oracle().edge_count() == 3);
  CHECK(lg.weights(*g.find_edge("e1")) == Number(3));
  CHECK(lg.weights(*g.find_edge("e3")) == Number(2));
  CHECK(g.format(g.range(*g.find_edge("e3"))) == "{v}");

  CHECK_THROWS_AS(static_cast<void>(load_ultragraph_text("vertices: a b\nedge x a -> b\n")), SinkDetected);
  CHECK_THROWS_AS(load_ultragraph_text("vertices: a\nedge x a ->\n"), Error);
  CHECK_THROWS_AS(load_ultragraph_text("vertices: a\nedge x a -> zz\n"), ParseError);
  CHECK_THROWS_AS(load_ultragraph_text("vertices: a\nedge x a -> a\nweight x 1\n"), ParseError);
  CHECK_THROWS_AS(load_ultragraph_text("bogus line\n"), ParseError);
}

TEST_CASE("built-in selector") {
  auto s = parse_sec6_selector("sec6(d=2, a=3/2)");
  REQUIRE(s);
  CHECK(s->d == Number(2));
  CHECK(s->a == Number::rational(3, 2));
  CHECK_FALSE(parse_sec6_selector("vertices: a"));
  CHECK_THROWS_AS(parse_sec6_selector("sec6(d=2)"), ParseError);
  CHECK_THROWS_AS(parse_sec6_selector("sec6(d=1, a=2)"), Error);
  auto lg = load_ultragraph("sec6(d=2, a=2)");
  CHECK_FALSE(lg.graph.is_finite());
  CHECK(lg.weights(sec6::f(3)) == Number(8));
  CHECK(lg.weights(sec6::e(3)) == Number(2));
}

TEST_CASE("m-function files round trip") {
  Ultragraph g = sec6::build();
  MFunction m = parse_mfunction(g, "atom w 1/2\natom B 0.25\natom v1 1/12\n");
  CHECK(m.emitter_value(g, *g.find_emitter("w")) == Number::rational(1, 2));
  CHECK(m.emitter_value(g, *g.find_emitter("B")) == Number::rational(1, 4));
  CHECK(m.vertex_value(g, sec6::v(1)) == Number::rational(1, 12));
  std::string text = format_mfunction(g, m);
  CHECK(text == "atom w 1/2\natom B 1/4\natom v1 1/12\n");
  CHECK(format_mfunction(g, parse_mfunction(g, text)) == text);
  CHECK_THROWS_AS(parse_mfunction(g, "atom zz 1\n"), ParseError);
  CHECK_THROWS_AS(parse_mfunction(g, "atom w\n"), ParseError);
}

TEST_CASE("scaled weight files") {
  auto lg = load_ultragraph_text("vertices: v\nedge e v -> v\n");
  ScaledWeightM M = parse_scaled_weights(lg.graph, "M e 1/3\n");
  CHECK(M(EdgeId{0}) == Number::rational(1, 3));
  CHECK_THROWS_AS(parse_scaled_weights(lg.graph, "M q 1/3\n"), ParseError);
}
