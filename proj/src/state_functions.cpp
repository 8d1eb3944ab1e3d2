#include "ugkms/state_functions.hpp"

#include <algorithm>
#include <set>

#include "ugkms/errors.hpp"

namespace ugkms {

EdgeWeightN EdgeWeightN::constant(const Number& n) {
  return EdgeWeightN([n](EdgeId) { return n; });
}

EdgeWeightN EdgeWeightN::table(std::map<EdgeId, Number> values, std::optional<Number> fallback) {
  return EdgeWeightN([values = std::move(values), fallback](EdgeId e) -> Number {
    if (auto it = values.find(e); it != values.end()) return it->second;
    if (fallback) return *fallback;
    throw DomainViolation("no weight N for edge #" + std::to_string(e.index));
  });
}

Number EdgeWeightN::operator()(EdgeId e) const {
  if (!rule_) throw DomainViolation("edge weights N are not defined");
  Number n = rule_(e);
  if (!(n > Number(1))) throw DomainViolation("N(e) must exceed 1, got " + n.str());
  return n;
}

ScaledWeightM ScaledWeightM::from_beta(EdgeWeightN n, const Number& beta, NumericMode mode) {
  if (beta < Number(0)) throw DomainViolation("beta must be nonnegative");
  return ScaledWeightM([n = std::move(n), beta, mode](EdgeId e) { return pow_real(n(e), -beta, mode); });
}

ScaledWeightM ScaledWeightM::table(std::map<EdgeId, Number> values) {
  return ScaledWeightM([values = std::move(values)](EdgeId e) -> Number {
    auto it = values.find(e);
    if (it == values.end()) throw DomainViolation("no value M for edge #" + std::to_string(e.index));
    return it->second;
  });
}

Number ScaledWeightM::operator()(EdgeId e) const {
  if (!rule_) throw DomainViolation("scaled weights M are not defined");
  Number m = rule_(e);
  if (!(m > Number(0)) || m > Number(1)) throw DomainViolation("M(e) must lie in (0,1], got " + m.str());
  return m;
}

Number ScaledWeightM::path(const EdgePath& p) const {
  Number out(1);
  for (EdgeId e : p) out *= (*this)(e);
  return out;
}

Number MFunction::emitter_value(const Ultragraph& g, EmitterId k) const {
  auto it = emitters_.find(k);
  if (it == emitters_.end()) throw MissingAtom(g.emitter_name(k));
  return it->second;
}

Number MFunction::vertex_value(const Ultragraph& g, VertexId v) const {
  if (auto it = vertices_.find(v); it != vertices_.end()) return it->second;
  if (rule_) {
    if (auto x = rule_(v)) return *x;
  }
  throw MissingAtom(g.vertex_name(v));
}

Number MFunction::eval(const Ultragraph& g, const GeneralizedVertex& a) const {
  Number sum(0);
  const auto& ems = a.emitters();
  for (EmitterId k : ems) sum += emitter_value(g, k);
  std::set<VertexId> shared;
  for (std::size_t i = 0; i < ems.size(); ++i) {
    for (std::size_t j = i + 1; j < ems.size(); ++j) {
      for (VertexId v : g.emitter_overlap(ems[i], ems[j])) shared.insert(v);
    }
  }
  for (VertexId v : shared) {
    long c = std::count_if(ems.begin(), ems.end(), [&](EmitterId k) { return g.emitter_contains(k, v); });
    sum -= Number(c - 1) * vertex_value(g, v);
  }
  for (VertexId v : a.finite_part()) sum += vertex_value(g, v);
  return sum;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::PassAtDepth:
      return "PASS-AT-DEPTH";
    case Verdict::Fail:
      return "FAIL";
  }
  return "?";
}

bool VerificationReport::all_pass() const {
  return std::none_of(conditions.begin(), conditions.end(),
                      [](const ConditionResult& c) { return c.verdict == Verdict::Fail; });
}

const ConditionResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.condition == name) return &c;
  }
  return nullptr;
}

namespace {

class Tally {
 public:
  Tally(std::string name, double tol) : tol_(tol) { result_.condition = std::move(name); }

  /// Records |lhs - rhs|; fails unless equal under the exact/tol policy.
  void equal(const Number& lhs, const Number& rhs, const std::string& witness) {
    record((lhs - rhs).abs(), approx_equal(lhs, rhs, tol_), witness);
  }

  /// Records a violation of big >= small.
  void geq(const Number& big, const Number& small, const std::string& witness) {
    Number gap = small - big;
    record(gap > Number(0) ? gap : Number(0), approx_geq(big, small, tol_), witness);
  }

  void downgrade(const std::string& why) {
    if (result_.verdict == Verdict::Pass) {
      result_.verdict = Verdict::PassAtDepth;
      note_ = why;
    }
  }

  ConditionResult finish() {
    if (result_.verdict != Verdict::Fail) {
      result_.witness = std::to_string(result_.checked) + " checked";
      if (!note_.empty()) result_.witness += "; " + note_;
    }
    return result_;
  }

 private:
  void record(const Number& residual, bool ok, const std::string& witness) {
    ++result_.checked;
    if (residual > result_.residual) result_.residual = residual;
    if (!ok && result_.verdict != Verdict::Fail) {
      result_.verdict = Verdict::Fail;
      result_.witness = witness;
    }
  }

  double tol_;
  ConditionResult result_;
  std::string note_;
};

ConditionResult check_limit(const Ultragraph& g, const MFunction& m, const std::string& name, double tol,
                            std::size_t steps) {
  Tally t(name, tol);
  if (auto top = g.top()) {
    t.equal(m.eval(g, *top), Number(1), g.format(*top));
    return t.finish();
  }
  auto first = g.exhaustion(0);
  if (!first) throw NoExhaustingSequence();
  Number prev = m.eval(g, *first);
  GeneralizedVertex last = *first;
  for (std::size_t k = 1; k < steps; ++k) {
    auto next = g.exhaustion(k);
    if (!next) break;
    if (!g.subset(last, *next)) throw Error("declared exhausting sequence is not increasing at step " + std::to_string(k));
    Number cur = m.eval(g, *next);
    t.geq(cur, prev, "exhaustion step " + std::to_string(k) + " decreases");
    prev = cur;
    last = *next;
  }
  t.equal(prev, Number(1), "exhaustion step " + std::to_string(steps - 1) + " = " + prev.str());
  t.downgrade("limit taken along " + std::to_string(steps) + " exhaustion steps");
  return t.finish();
}

ConditionResult check_range(const Ultragraph& g, const MFunction& m, const std::vector<GeneralizedVertex>& lattice,
                            double tol) {
  Tally t("range", tol);
  for (const auto& a : lattice) {
    Number v = m.eval(g, a);
    t.geq(v, Number(0), g.format(a) + " < 0");
    t.geq(Number(1), v, g.format(a) + " > 1");
  }
  return t.finish();
}

ConditionResult check_additive(const Ultragraph& g, const MFunction& m, const std::vector<GeneralizedVertex>& lattice,
                               const std::string& name, double tol) {
  Tally t(name, tol);
  std::vector<Number> values;
  values.reserve(lattice.size());
  for (const auto& a : lattice) values.push_back(m.eval(g, a));
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    for (std::size_t j = i + 1; j < lattice.size(); ++j) {
      Number lhs = m.eval(g, g.unite(lattice[i], lattice[j]));
      Number rhs = values[i] + values[j] - m.eval(g, g.intersect(lattice[i], lattice[j]));
      t.equal(lhs, rhs, g.format(lattice[i]) + " , " + g.format(lattice[j]));
    }
  }
  return t.finish();
}

Number edge_term(const Ultragraph& g, const MFunction& m, const ScaledWeightM& M, EdgeId e) {
  return M(e) * m.eval(g, g.range(e));
}

/// Full sum of M(e) m(r(e)) over eps(A), assembled from per-emitter tails.
std::optional<Number> full_emission_sum(const Ultragraph& g, const MFunction& m, const ScaledWeightM& M,
                                        const GeneralizedVertex& a, const EmitterTailSum& tail) {
  Number sum(0);
  const auto& ems = a.emitters();
  for (EmitterId k : ems) {
    auto t = tail(k);
    if (!t) return std::nullopt;
    sum += *t;
  }
  auto vertex_sum = [&](VertexId v) {
    Number s(0);
    for (EdgeId e : g.out_edges(v).edges) s += edge_term(g, m, M, e);
    return s;
  };
  std::set<VertexId> shared;
  for (std::size_t i = 0; i < ems.size(); ++i) {
    for (std::size_t j = i + 1; j < ems.size(); ++j) {
      for (VertexId v : g.emitter_overlap(ems[i], ems[j])) shared.insert(v);
    }
  }
  for (VertexId v : shared) {
    long c = std::count_if(ems.begin(), ems.end(), [&](EmitterId k) { return g.emitter_contains(k, v); });
    sum -= Number(c - 1) * vertex_sum(v);
  }
  for (VertexId v : a.finite_part()) sum += vertex_sum(v);
  return sum;
}

}  // namespace

VerificationReport verify_kms_m(const Ultragraph& g, const MFunction& m, const ScaledWeightM& M,
                                const std::vector<GeneralizedVertex>& lattice, const KmsVerifyOptions& opt) {
  VerificationReport report;
  report.tol = opt.tol;
  report.conditions.push_back(check_limit(g, m, "m1", opt.tol, opt.exhaustion_steps));

  Tally m2("m2", opt.tol);
  Tally m3("m3", opt.tol);
  for (const auto& a : lattice) {
    if (a.empty()) continue;
    Number ma = m.eval(g, a);
    Emission em = g.emission(a, opt.depth);
    std::vector<Number> terms;
    terms.reserve(em.edges.size());
    for (EdgeId e : em.edges) terms.push_back(edge_term(g, m, M, e));
    if (!em.infinite) {
      Number rhs(0);
      for (const auto& t : terms) rhs += t;
      m2.equal(ma, rhs, g.format(a));
    }
    std::sort(terms.begin(), terms.end(), [](const Number& x, const Number& y) { return x > y; });
    Number partial(0);
    for (std::size_t i = 0; i < terms.size() && i < opt.fbound; ++i) partial += terms[i];
    m3.geq(ma, partial, g.format(a) + " (|F| <= " + std::to_string(opt.fbound) + ")");
    if (em.infinite) {
      std::optional<Number> full;
      if (opt.tail) full = full_emission_sum(g, m, M, a, opt.tail);
      if (full) {
        m3.geq(ma, *full, g.format(a) + " (full emission)");
      } else {
        m3.downgrade("no tail sum for infinite emission; finite F checked up to the first " +
                     std::to_string(opt.depth) + " edges per emitter");
      }
    }
  }
  report.conditions.push_back(m2.finish());
  report.conditions.push_back(m3.finish());
  report.conditions.push_back(check_additive(g, m, lattice, "m4", opt.tol));
  report.conditions.push_back(check_range(g, m, lattice, opt.tol));
  return report;
}

VerificationReport verify_ground_m(const Ultragraph& g, const MFunction& m,
                                   const std::vector<GeneralizedVertex>& lattice, double tol,
                                   std::size_t exhaustion_steps) {
  VerificationReport report;
  report.tol = tol;
  report.conditions.push_back(check_limit(g, m, "gm1", tol, exhaustion_steps));
  Tally gm2("gm2", tol);
  for (const auto& a : lattice) {
    if (a.empty() || !a.finite_emission()) continue;
    gm2.equal(m.eval(g, a), Number(0), g.format(a));
  }
  report.conditions.push_back(gm2.finish());
  report.conditions.push_back(check_additive(g, m, lattice, "gm3", tol));
  report.conditions.push_back(check_range(g, m, lattice, tol));
  return report;
}

std::vector<GeneralizedVertex> default_test_lattice(const Ultragraph& g, std::uint64_t window) {
  std::vector<GeneralizedVertex> out;
  out.emplace_back();
  auto count = g.oracle().vertex_count();
  if (g.is_finite() && count && *count <= 10) {
    auto vs = g.vertex_window(*count);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << vs.size()); ++mask) {
      std::vector<VertexId> pick;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (mask >> i & 1) pick.push_back(vs[i]);
      }
      out.push_back(g.vertex_set(pick));
    }
    return out;
  }
  std::vector<GeneralizedVertex> base;
  for (EmitterId k : g.emitters()) base.push_back(g.emitter_set(k));
  for (VertexId v : g.vertex_window(window)) base.push_back(g.singleton(v));
  if (auto top = g.top()) base.push_back(*top);
  for (const auto& [name, claim] : g.oracle().named_sets()) base.push_back(g.from_claim(claim, name));
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  out.insert(out.end(), base.begin(), base.end());
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) out.push_back(g.unite(base[i], base[j]));
  }
  for (EdgeId e : g.edge_window(window)) out.push_back(g.range(e));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ugkms
