#include "ugkms/star_symbolic.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "ugkms/errors.hpp"
#include "ugkms/lattice_expr.hpp"
#include "ugkms/shift_space.hpp"

namespace ugkms {

namespace {

bool is_prefix(const EdgePath& p, const EdgePath& q) {
  return p.size() <= q.size() && std::equal(p.begin(), p.end(), q.begin());
}

EdgePath join(EdgePath a, const EdgePath& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

MaybeSpanning make_spanning(const Ultragraph& g, EdgePath mu, const GeneralizedVertex& a, EdgePath nu) {
  if (!is_path(g, mu)) throw DomainViolation(g.format_path(mu) + " is not a path");
  if (!is_path(g, nu)) throw DomainViolation(g.format_path(nu) + " is not a path");
  GeneralizedVertex mid = a;
  if (!mu.empty()) mid = g.intersect(mid, path_range(g, mu));
  if (!nu.empty()) mid = g.intersect(mid, path_range(g, nu));
  if (mid.empty()) return std::nullopt;
  return SpanningElement{std::move(mu), std::move(mid), std::move(nu)};
}

AdjointCase adjoint_product(const EdgePath& nu, const EdgePath& mu) {
  AdjointCase out;
  if (nu == mu) {
    out.kind = AdjointCase::Kind::Range;
  } else if (is_prefix(nu, mu)) {
    out.kind = AdjointCase::Kind::MuPrime;
    out.rest.assign(mu.begin() + static_cast<std::ptrdiff_t>(nu.size()), mu.end());
  } else if (is_prefix(mu, nu)) {
    out.kind = AdjointCase::Kind::NuPrime;
    out.rest.assign(nu.begin() + static_cast<std::ptrdiff_t>(mu.size()), nu.end());
  }
  return out;
}

MaybeSpanning multiply(const Ultragraph& g, const MaybeSpanning& x, const MaybeSpanning& y) {
  if (!x || !y) return std::nullopt;
  const auto& [mu, a, nu] = *x;
  const auto& [lambda, b, tau] = *y;
  AdjointCase c = adjoint_product(nu, lambda);
  switch (c.kind) {
    case AdjointCase::Kind::Range:
      return make_spanning(g, mu, g.intersect(a, b), tau);
    case AdjointCase::Kind::MuPrime:
      if (!g.member(g.source(c.rest.front()), a)) return std::nullopt;
      return make_spanning(g, join(mu, c.rest), b, tau);
    case AdjointCase::Kind::NuPrime:
      if (!g.member(g.source(c.rest.front()), b)) return std::nullopt;
      return make_spanning(g, mu, a, join(tau, c.rest));
    case AdjointCase::Kind::Zero:
      break;
  }
  return std::nullopt;
}

MaybeSpanning adjoint(const MaybeSpanning& x) {
  if (!x) return std::nullopt;
  return SpanningElement{x->nu, x->a, x->mu};
}

Number phi_eval(const Ultragraph& g, const StateFunctional& phi, const MaybeSpanning& x) {
  if (!x || x->mu != x->nu) return Number(0);
  return phi.M.path(x->mu) * phi.m.eval(g, x->a);
}

std::string format_spanning(const Ultragraph& g, const MaybeSpanning& x) {
  if (!x) return "0";
  return "[" + g.format_path(x->mu) + "; " + g.format(x->a) + "; " + g.format_path(x->nu) + "]";
}

MaybeSpanning parse_spanning(const Ultragraph& g, std::string_view text) {
  auto fail = [&](const std::string& why) { return ParseError(0, "element '" + std::string(text) + "': " + why); };
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos || s[first] != '[' || s[last] != ']') throw fail("expected '[mu; A; nu]'");
  s = s.substr(first + 1, last - first - 1);
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    auto semi = s.find(';', pos);
    parts.push_back(s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if (parts.size() != 3) throw fail("expected three ';'-separated parts");
  auto edges = [&](const std::string& list) {
    EdgePath out;
    std::istringstream in(list);
    std::string tok;
    while (in >> tok) {
      auto e = g.find_edge(tok);
      if (!e) throw fail("unknown edge '" + tok + "'");
      out.push_back(*e);
    }
    return out;
  };
  return make_spanning(g, edges(parts[0]), canonicalize(g, parts[1]), edges(parts[2]));
}

std::vector<EdgePath> paths_up_to(const Ultragraph& g, std::size_t L) {
  auto edges = g.oracle().edge_count();
  if (!g.is_finite() || !edges) throw DomainViolation("path enumeration needs a finite ultragraph");
  auto all = g.edge_window(*edges);
  std::vector<EdgePath> out{{}};
  std::vector<EdgePath> layer{{}};
  for (std::size_t len = 1; len <= L; ++len) {
    std::vector<EdgePath> next;
    for (const auto& p : layer) {
      for (EdgeId e : all) {
        if (!p.empty() && !g.member(g.source(e), g.range(p.back()))) continue;
        EdgePath q = p;
        q.push_back(e);
        next.push_back(std::move(q));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

namespace {

class Count {
 public:
  Count(std::string name, double tol) : tol_(tol) { r_.condition = std::move(name); }

  bool equal(const Number& lhs, const Number& rhs, const std::function<std::string()>& witness) {
    ++r_.checked;
    Number res = (lhs - rhs).abs();
    if (res > r_.residual) r_.residual = res;
    if (approx_equal(lhs, rhs, tol_)) return true;
    if (r_.verdict != Verdict::Fail) {
      r_.verdict = Verdict::Fail;
      r_.witness = witness();
    }
    ++violations_;
    return false;
  }

  ConditionResult finish() {
    if (r_.verdict != Verdict::Fail) r_.witness = std::to_string(r_.checked) + " checked";
    return r_;
  }
  [[nodiscard]] std::size_t violations() const { return violations_; }

 private:
  double tol_;
  ConditionResult r_;
  std::size_t violations_ = 0;
};

}  // namespace

KmsCheckResult kms_check(const Ultragraph& g, const MFunction& m, const EdgeWeightN& n, const Number& beta,
                         std::size_t L, double tol, NumericMode mode) {
  if (!g.is_finite()) throw DomainViolation("kms_check needs a finite ultragraph");
  KmsCheckResult out;
  out.report.tol = tol;
  out.trace_case = beta.is_zero();
  StateFunctional phi{m, ScaledWeightM::from_beta(n, beta, mode)};

  std::set<GeneralizedVertex> middles;
  auto count = *g.oracle().vertex_count();
  for (VertexId v : g.vertex_window(count)) middles.insert(g.singleton(v));
  for (EdgeId e : g.edge_window(*g.oracle().edge_count())) middles.insert(g.range(e));
  if (auto top = g.top()) middles.insert(*top);

  auto paths = paths_up_to(g, L);
  std::set<SpanningElement> uniq;
  for (const auto& mu : paths) {
    for (const auto& a : middles) {
      for (const auto& nu : paths) {
        if (auto x = make_spanning(g, mu, a, nu)) uniq.insert(*x);
      }
    }
  }
  std::vector<SpanningElement> elems(uniq.begin(), uniq.end());
  out.elements = elems.size();

  Count pairs("kms-pairs", tol);
  for (const auto& x : elems) {
    Number factor = phi.M.path(x.mu) / phi.M.path(x.nu);
    for (const auto& y : elems) {
      MaybeSpanning ab = multiply(g, x, y);
      MaybeSpanning ba = multiply(g, y, x);
      Number lhs = phi_eval(g, phi, ab);
      Number rhs = factor * phi_eval(g, phi, ba);
      pairs.equal(lhs, rhs, [&] {
        return "a=" + format_spanning(g, x) + " b=" + format_spanning(g, y) + ": " + lhs.str() + " vs " + rhs.str();
      });
    }
  }
  out.pairs = pairs.finish().checked;

  Count ck("ck-scalar", tol);
  for (const auto& mu : paths) {
    if (mu.size() >= L && L > 0) continue;
    for (const auto& a : middles) {
      MaybeSpanning x = make_spanning(g, mu, a, mu);
      if (!x) continue;
      Number lhs = phi_eval(g, phi, x);
      Number rhs(0);
      for (EdgeId e : g.emission(x->a).edges) {
        rhs += phi_eval(g, phi, make_spanning(g, join(mu, {e}), g.range(e), join(mu, {e})));
      }
      ck.equal(lhs, rhs, [&] { return format_spanning(g, x) + ": " + lhs.str() + " vs " + rhs.str(); });
    }
  }

  out.violations = pairs.violations() + ck.violations();
  out.report.conditions.push_back(ck.finish());
  out.report.conditions.push_back(pairs.finish());
  return out;
}

}  // namespace ugkms
