#pragma once

// Edge weights, vertex weight functions m on the lattice, and verifiers for
// the KMS conditions (m1)-(m4) and the ground-state conditions.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ugkms/number.hpp"
#include "ugkms/ultragraph.hpp"

namespace ugkms {

/// N : edges -> (1, inf), extended multiplicatively to paths.
class EdgeWeightN {
 public:
  using Rule = std::function<Number(EdgeId)>;

  EdgeWeightN() = default;
  explicit EdgeWeightN(Rule rule) : rule_(std::move(rule)) {}
  static EdgeWeightN constant(const Number& n);
  /// Explicit values with an optional default for unlisted edges.
  static EdgeWeightN table(std::map<EdgeId, Number> values, std::optional<Number> fallback = std::nullopt);

  [[nodiscard]] bool defined() const { return static_cast<bool>(rule_); }
  /// Throws DomainViolation when N(e) <= 1 or no value is known.
  [[nodiscard]] Number operator()(EdgeId e) const;

 private:
  Rule rule_;
};

/// M : edges -> (0, 1], usually M(e) = N(e)^-beta.
class ScaledWeightM {
 public:
  using Rule = std::function<Number(EdgeId)>;

  ScaledWeightM() = default;
  explicit ScaledWeightM(Rule rule) : rule_(std::move(rule)) {}
  static ScaledWeightM from_beta(EdgeWeightN n, const Number& beta, NumericMode mode = NumericMode::Auto);
  static ScaledWeightM table(std::map<EdgeId, Number> values);

  [[nodiscard]] Number operator()(EdgeId e) const;
  /// Product over the path; 1 for the empty path.
  [[nodiscard]] Number path(const EdgePath& p) const;

 private:
  Rule rule_;
};

/// Values on atoms (declared minimal emitters and finite-emission vertices),
/// extended to the lattice by inclusion-exclusion.
class MFunction {
 public:
  using VertexRule = std::function<std::optional<Number>(VertexId)>;

  void set_emitter(EmitterId k, Number v) { emitters_[k] = std::move(v); }
  void set_vertex(VertexId v, Number x) { vertices_[v] = std::move(x); }
  /// Fallback for vertices without an explicit value (infinite families).
  void set_vertex_rule(VertexRule rule) { rule_ = std::move(rule); }

  [[nodiscard]] Number emitter_value(const Ultragraph& g, EmitterId k) const;
  [[nodiscard]] Number vertex_value(const Ultragraph& g, VertexId v) const;
  [[nodiscard]] const std::map<EmitterId, Number>& emitter_values() const { return emitters_; }
  [[nodiscard]] const std::map<VertexId, Number>& vertex_values() const { return vertices_; }

  /// m(A) = sum over emitters - overlap corrections + finite part.
  [[nodiscard]] Number eval(const Ultragraph& g, const GeneralizedVertex& a) const;

 private:
  std::map<EmitterId, Number> emitters_;
  std::map<VertexId, Number> vertices_;
  VertexRule rule_;
};

inline Number m_eval(const Ultragraph& g, const MFunction& m, const GeneralizedVertex& a) { return m.eval(g, a); }

enum class Verdict { Pass, PassAtDepth, Fail };

std::string verdict_name(Verdict v);

struct ConditionResult {
  std::string condition;
  Verdict verdict = Verdict::Pass;
  std::string witness;  // first failing element, or a summary when passing
  Number residual;      // largest residual seen
  std::size_t checked = 0;
};

struct VerificationReport {
  std::vector<ConditionResult> conditions;
  double tol = 0;

  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] const ConditionResult* find(const std::string& name) const;
};

/// Supremum of sum_{e in eps(E)} M(e) m(r(e)) over the whole (infinite)
/// emission of a declared emitter, when the family knows it.
using EmitterTailSum = std::function<std::optional<Number>(EmitterId)>;

struct KmsVerifyOptions {
  std::size_t fbound = 8;
  double tol = 1e-9;
  std::size_t depth = 64;
  EmitterTailSum tail;
  std::size_t exhaustion_steps = 32;
};

VerificationReport verify_kms_m(const Ultragraph& g, const MFunction& m, const ScaledWeightM& M,
                                const std::vector<GeneralizedVertex>& lattice, const KmsVerifyOptions& opt = {});

VerificationReport verify_ground_m(const Ultragraph& g, const MFunction& m,
                                   const std::vector<GeneralizedVertex>& lattice, double tol = 1e-9,
                                   std::size_t exhaustion_steps = 32);

/// Default test lattice. Finite graphs with at most 10 vertices: every
/// nonempty vertex subset plus the empty set. Otherwise: the empty set,
/// the declared emitters, the first `window` vertices, every range of the
/// first `window` edges, the top element when present, and the pairwise
/// unions of the single vertices, emitters and top.
std::vector<GeneralizedVertex> default_test_lattice(const Ultragraph& g, std::uint64_t window = 30);

}  // namespace ugkms
