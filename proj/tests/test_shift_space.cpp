#include <doctest.h>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "ugkms/errors.hpp"
#include "ugkms/lattice_expr.hpp"
#include "ugkms/points.hpp"
#include "ugkms/sec6.hpp"
#include "ugkms/shift_space.hpp"

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

Cylinder cyl(const Ultragraph& g, const char* text) {
  auto c = parse_cylinder(g, text);
  REQUIRE(c);
  return *c;
}

std::string fmt(const Ultragraph& g, const std::vector<Cylinder>& cs) {
  std::string out;
  for (const auto& c : cs) out += format_cylinder(g, c) + " ";
  return out;
}

}  // namespace

TEST_CASE("concatenation of ultrapaths") {
  Ultragraph g = sec6::build();
  auto B = canonicalize(g, "B");
  auto A = canonicalize(g, "r(e4) | B");
  auto r = concat(g, Ultrapath{{}, A}, Ultrapath{{}, B});
  REQUIRE(r);
  CHECK(r->edges.empty());
  CHECK(r->terminal == g.intersect(A, B));
  CHECK_FALSE(concat(g, Ultrapath{{}, canonicalize(g, "{w}")}, Ultrapath{{}, B}));

  auto x = concat(g, Ultrapath{{sec6::e(1)}, g.range(sec6::e(1))}, Ultrapath{{}, B});
  REQUIRE(x);
  CHECK(x->edges == EdgePath{sec6::e(1)});
  CHECK(x->terminal == B);

  auto y = concat(g, Ultrapath{{}, B}, Ultrapath{{sec6::e(4)}, g.range(sec6::e(4))});
  REQUIRE(y);
  CHECK(y->edges == EdgePath{sec6::e(4)});

  auto z = concat(g, Ultrapath{{sec6::e(1)}, B}, Ultrapath{{sec6::e(5)}, g.range(sec6::e(5))});
  REQUIRE(z);
  CHECK(z->edges == (EdgePath{sec6::e(1), sec6::e(5)}));

  Ultragraph h = branching();
  auto e1 = *h.find_edge("e1");
  auto u = h.singleton(*h.find_vertex("u"));
  CHECK_FALSE(concat(h, Ultrapath{{e1}, u}, Ultrapath{{e1}, u}));
}

TEST_CASE("concatenation is associative when both groupings exist") {
  ugtest::Rng rng(3);
  Ultragraph g = sec6::build();
  auto es = g.edge_window(16);
  auto rand_path = [&]() {
    std::uniform_int_distribution<std::size_t> len(0, 2), pick(0, es.size() - 1);
    EdgePath p;
    for (std::size_t n = len(rng); p.size() < n;) {
      EdgeId e = es[pick(rng)];
      if (p.empty() || g.member(g.source(e), g.range(p.back()))) p.push_back(e);
    }
    auto t = ugtest::random_set(g, rng, 8);
    if (!p.empty()) t = g.intersect(t, g.range(p.back()));
    if (t.empty()) t = p.empty() ? canonicalize(g, "B") : g.range(p.back());
    return Ultrapath{p, t};
  };
  int both = 0;
  for (int i = 0; i < 3000; ++i) {
    auto x = rand_path(), y = rand_path(), z = rand_path();
    auto xy = concat(g, x, y);
    auto yz = concat(g, y, z);
    if (!xy || !yz) continue;
    auto l = concat(g, *xy, z), r = concat(g, x, *yz);
    if (!l || !r) continue;
    ++both;
    CHECK(*l == *r);
  }
  CHECK(both > 20);
}

TEST_CASE("membership") {
  Ultragraph g = sec6::build();
  auto B = *g.find_emitter("B");
  CHECK(cyl_member(g, Point{{}, B}, cyl(g, "( ; B ; e4 e7)")) == Membership::In);
  CHECK(cyl_member(g, Point{{sec6::e(1), sec6::e(4)}, std::nullopt}, cyl(g, "(e1 ; B ; e4)")) == Membership::Out);
  CHECK(cyl_member(g, Point{{sec6::e(1), sec6::e(5)}, std::nullopt}, cyl(g, "(e1 ; B ; e4)")) == Membership::In);
  CHECK(cyl_member(g, Point{{sec6::e(3)}, std::nullopt}, cyl(g, "(e1 ; B)")) == Membership::Out);
  CHECK(cyl_member(g, Point{{sec6::e(1)}, std::nullopt}, cyl(g, "(e1 ; B)")) == Membership::NeedLongerPrefix);
  CHECK(cyl_member(g, Point{{sec6::e(1)}, B}, cyl(g, "(e1 ; B ; e4)")) == Membership::In);
}

TEST_CASE("intersection") {
  Ultragraph g = sec6::build();
  auto a = cyl_intersect(g, cyl(g, "(e1 ; B ; e4)"), cyl(g, "(e1 ; B ; e5)"));
  REQUIRE(a);
  CHECK(format_cylinder(g, *a) == "(e1 ; B ; e4 e5)");
  CHECK_FALSE(cyl_intersect(g, cyl(g, "(e1 ; B)"), cyl(g, "(e2 ; B)")));
  auto b = cyl_intersect(g, cyl(g, "(e1 ; B)"), cyl(g, "(e1 e4 ; r(e4))"));
  REQUIRE(b);
  CHECK(*b == cyl(g, "(e1 e4 ; r(e4))"));
  CHECK_FALSE(cyl_intersect(g, cyl(g, "(e1 ; B ; e4)"), cyl(g, "(e1 e4 ; r(e4))")));
}

TEST_CASE("relative complement") {
  Ultragraph g = sec6::build();
  auto c = cyl(g, "(e1 ; B)");
  auto c1 = cyl(g, "(e1 ; B ; e4 e6)");
  auto pieces = cyl_diff(g, c, c1);
  CHECK(fmt(g, pieces) == "(e1 e4 ; {v1,v4} ; ) (e1 e6 ; {v3,v6} ; ) ");
  CHECK(cyl_diff(g, c, c).empty());
  CHECK_THROWS_AS(cyl_diff(g, c1, c), NotSubset);

  auto w = cyl(g, "( ; w)");
  auto wf = cyl(g, "( ; w ; f1)");
  auto d = cyl_diff(g, w, wf);
  CHECK(fmt(g, d) == "(f1 ; B ; ) (f1 ; {v1} ; ) (f1 ; {v2} ; ) (f1 ; {v3} ; ) ");
  CHECK(check_partition(g, {w}, {wf}, d).ok);
  CHECK(ugtest::brute_partition(g, {w}, {wf}, d, 4, 6).ok);
}

TEST_CASE("refinement") {
  Ultragraph g = sec6::build();
  auto r = cyl_refine(g, cyl(g, "(f1 ; G0)"));
  CHECK(fmt(g, r) == "(f1 ; B ; ) (f1 ; {v1} ; ) (f1 ; {v2} ; ) (f1 ; {v3} ; ) ");
  auto basis = cyl(g, "(e1 ; B ; e4)");
  CHECK(cyl_refine(g, basis) == std::vector<Cylinder>{basis});

  Ultragraph h = branching();
  auto top = cyl(h, "( ; {v,u})");
  auto ex = expand_finite_emission(h, top);
  CHECK(fmt(h, ex) == "(e1 ; {u} ; ) (e2 ; {u} ; ) (e3 ; {v} ; ) ");
  CHECK(check_partition(h, {top}, {}, ex).ok);
  CHECK(ugtest::brute_partition(h, {top}, {}, ex, 3, 0).ok);
}

TEST_CASE("partial action") {
  Ultragraph g = sec6::build();
  auto v1 = cyl(g, "( ; {v1})");
  auto t = theta_edge(g, sec6::e(4), v1);
  CHECK(t == cyl(g, "(e4 ; {v1})"));
  CHECK(theta_inverse(g, sec6::e(4), t) == v1);
  CHECK(theta_edge(g, sec6::e(1), cyl(g, "( ; B ; e4)")) == cyl(g, "(e1 ; B ; e4)"));
  CHECK_THROWS_AS(theta_edge(g, sec6::e(5), v1), DomainViolation);
  CHECK_THROWS_AS(theta_inverse(g, sec6::e(2), t), DomainViolation);
  auto word = theta_word(g, {{sec6::f(2), false}, {sec6::e(4), false}}, v1);
  CHECK(word == cyl(g, "(f2 e4 ; {v1})"));
  CHECK(theta_word(g, {{sec6::f(2), true}}, word) == t);
}

TEST_CASE("semi-ring laws on random finite ultragraphs") {
  ugtest::Rng rng(17);
  int tested = 0;
  for (int gi = 0; gi < 30; ++gi) {
    Ultragraph g = ugtest::random_finite_ultragraph(rng);
    for (int k = 0; k < 8; ++k) {
      Cylinder a = ugtest::random_cylinder(g, rng);
      Cylinder b = ugtest::random_cylinder(g, rng);
      CAPTURE(format_cylinder(g, a));
      CAPTURE(format_cylinder(g, b));
      CHECK(a.in_semiring());
      auto i = cyl_intersect(g, a, b);
      std::vector<Cylinder> ipieces;
      if (i) ipieces.push_back(*i);
      CHECK(ugtest::brute_partition(g, {a, b}, {}, ipieces, 6, 0).ok);
      Cylinder c1 = ugtest::random_subcylinder(g, a, rng);
      auto d = cyl_diff(g, a, c1);
      for (const auto& p : d) CHECK(p.in_semiring());
      CHECK(ugtest::brute_partition(g, {a}, {c1}, d, 6, 0).ok);
      CHECK(check_partition(g, {a}, {c1}, d).ok);
      ++tested;
    }
  }
  CHECK(tested == 240);
}

TEST_CASE("semi-ring laws on the family") {
  ugtest::Rng rng(23);
  Ultragraph g = sec6::build();
  for (int k = 0; k < 60; ++k) {
    Cylinder a = ugtest::random_cylinder(g, rng, 2, 6);
    Cylinder b = ugtest::random_cylinder(g, rng, 2, 6);
    CAPTURE(format_cylinder(g, a));
    CAPTURE(format_cylinder(g, b));
    auto i = cyl_intersect(g, a, b);
    std::vector<Cylinder> ip;
    if (i) ip.push_back(*i);
    CHECK(check_partition(g, {a, b}, {}, ip).ok);
    CHECK(ugtest::brute_partition(g, {a, b}, {}, ip, 3, 6).ok);
    Cylinder c1 = ugtest::random_subcylinder(g, a, rng, 6);
    CAPTURE(format_cylinder(g, c1));
    auto d = cyl_diff(g, a, c1);
    CHECK(check_partition(g, {a}, {c1}, d).ok);
    CHECK(ugtest::brute_partition(g, {a}, {c1}, d, 4, 6).ok);
  }
}

TEST_CASE("theta is a bijection with inverse on semi-ring elements") {
  ugtest::Rng rng(29);
  for (int gi = 0; gi < 20; ++gi) {
    Ultragraph g = ugtest::random_finite_ultragraph(rng);
    for (int k = 0; k < 10; ++k) {
      Cylinder v = ugtest::random_cylinder(g, rng);
      for (EdgeId e : g.edge_window(*g.oracle().edge_count())) {
        bool in_domain = v.stem.empty() ? g.subset(v.base, g.range(e)) : g.member(g.source(v.stem.front()), g.range(e));
        if (!in_domain) {
          CHECK_THROWS_AS(theta_edge(g, e, v), DomainViolation);
          continue;
        }
        Cylinder t = theta_edge(g, e, v);
        CHECK(t.stem.size() == v.stem.size() + 1);
        CHECK(theta_inverse(g, e, t) == v);
      }
    }
  }
}
