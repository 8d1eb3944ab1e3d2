#pragma once

// Ultragraphs, the generalized-vertex lattice and minimal infinite emitters.
//
// A generalized vertex is stored canonically as a set of declared minimal
// infinite emitters plus a finite set of vertices with finite emission that
// is disjoint from every listed emitter. Distinct minimal emitters may share
// finitely many vertices; evaluation code applies inclusion-exclusion.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ugkms {

struct VertexId {
  std::uint64_t index = 0;
  auto operator<=>(const VertexId&) const = default;
};

struct EdgeId {
  std::uint64_t index = 0;
  auto operator<=>(const EdgeId&) const = default;
};

/// Position in the ultragraph's declared minimal-emitter list.
struct EmitterId {
  std::uint32_t index = 0;
  auto operator<=>(const EmitterId&) const = default;
};

using EdgePath = std::vector<EdgeId>;

class GeneralizedVertex {
 public:
  GeneralizedVertex() = default;

  [[nodiscard]] const std::vector<EmitterId>& emitters() const { return emitters_; }
  [[nodiscard]] const std::vector<VertexId>& finite_part() const { return finite_; }
  [[nodiscard]] bool empty() const { return emitters_.empty() && finite_.empty(); }
  /// True iff emission is finite, i.e. no emitter is listed.
  [[nodiscard]] bool finite_emission() const { return emitters_.empty(); }

  auto operator<=>(const GeneralizedVertex&) const = default;

 private:
  friend class Ultragraph;
  std::vector<EmitterId> emitters_;
  std::vector<VertexId> finite_;
};

struct Decomposition {
  std::vector<EmitterId> minimal_parts;
  std::vector<VertexId> finite_part;
};

/// A presentation's description of a set: named emitters plus finitely many
/// vertices.
struct SetClaim {
  std::vector<std::string> emitters;
  std::vector<VertexId> vertices;
};

struct Emission {
  bool infinite = false;
  /// All of the emission when finite; a prefix of the lazy enumeration otherwise.
  std::vector<EdgeId> edges;
};

/// Source of ultragraph data. Finite ultragraphs and presented infinite
/// families implement the same interface; all methods must be pure.
class FamilyOracle {
 public:
  virtual ~FamilyOracle() = default;

  virtual std::string family_name() const = 0;
  /// nullopt for countably infinite.
  virtual std::optional<std::uint64_t> vertex_count() const = 0;
  virtual std::optional<std::uint64_t> edge_count() const = 0;

  virtual std::string vertex_name(VertexId v) const = 0;
  virtual std::optional<VertexId> find_vertex(std::string_view name) const = 0;
  virtual std::string edge_name(EdgeId e) const = 0;
  virtual std::optional<EdgeId> find_edge(std::string_view name) const = 0;

  virtual VertexId source(EdgeId e) const = 0;
  /// Raw membership predicate of r(e).
  virtual bool range_contains(EdgeId e, VertexId v) const = 0;
  /// r(e) as claimed by the presentation.
  virtual SetClaim range_claim(EdgeId e) const = 0;
  virtual Emission out_edges(VertexId v) const = 0;

  virtual std::vector<std::string> declared_emitters() const = 0;
  virtual bool emitter_contains(std::size_t k, VertexId v) const = 0;
  /// n-th edge in the enumeration of epsilon(E_k); nullopt when the oracle
  /// cannot produce it.
  virtual std::optional<EdgeId> emitter_edge(std::size_t k, std::uint64_t n) const = 0;
  /// Finite intersection of two distinct declared emitters.
  virtual std::vector<VertexId> emitter_overlap(std::size_t i, std::size_t j) const = 0;
  /// The vertex v when E_k = {v}.
  virtual std::optional<VertexId> emitter_singleton(std::size_t k) const = 0;

  /// Maximal element of the lattice, if any.
  virtual std::optional<SetClaim> top() const = 0;
  /// k-th element of a declared increasing exhausting sequence.
  virtual std::optional<SetClaim> exhaustion(std::uint64_t k) const = 0;
  /// Further named sets usable in lattice expressions (e.g. "G0").
  virtual std::map<std::string, SetClaim> named_sets() const = 0;

  /// First vertices/edges by index, used by bounded verification.
  virtual std::vector<VertexId> vertex_window(std::uint64_t limit) const = 0;
  virtual std::vector<EdgeId> edge_window(std::uint64_t limit) const = 0;
};

enum class Backend { FiniteExplicit, PresentedFamily };

struct RfumResult {
  enum class Status { Ok, Violation, UndecidableAtDepth };
  Status status = Status::Ok;
  std::optional<EdgeId> edge;
  std::string message;
};

class Ultragraph {
 public:
  Ultragraph(std::shared_ptr<const FamilyOracle> oracle, Backend backend);

  [[nodiscard]] Backend backend() const { return backend_; }
  [[nodiscard]] bool is_finite() const { return backend_ == Backend::FiniteExplicit; }
  [[nodiscard]] const FamilyOracle& oracle() const { return *oracle_; }

  [[nodiscard]] std::string vertex_name(VertexId v) const { return oracle_->vertex_name(v); }
  [[nodiscard]] std::string edge_name(EdgeId e) const { return oracle_->edge_name(e); }
  [[nodiscard]] const std::string& emitter_name(EmitterId k) const { return emitter_names_.at(k.index); }
  [[nodiscard]] std::optional<VertexId> find_vertex(std::string_view name) const { return oracle_->find_vertex(name); }
  [[nodiscard]] std::optional<EdgeId> find_edge(std::string_view name) const { return oracle_->find_edge(name); }
  [[nodiscard]] std::optional<EmitterId> find_emitter(std::string_view name) const;
  [[nodiscard]] std::size_t emitter_count() const { return emitter_names_.size(); }
  [[nodiscard]] std::vector<EmitterId> emitters() const;

  [[nodiscard]] VertexId source(EdgeId e) const { return oracle_->source(e); }
  /// Canonical r(e); throws RfumViolation when the claim is not expressible.
  [[nodiscard]] GeneralizedVertex range(EdgeId e) const;
  [[nodiscard]] Emission out_edges(VertexId v) const { return oracle_->out_edges(v); }

  // Lattice construction.
  [[nodiscard]] GeneralizedVertex singleton(VertexId v) const;
  [[nodiscard]] GeneralizedVertex vertex_set(std::span<const VertexId> vs) const;
  [[nodiscard]] GeneralizedVertex emitter_set(EmitterId k) const;
  [[nodiscard]] GeneralizedVertex from_claim(const SetClaim& claim, std::string_view context) const;
  [[nodiscard]] GeneralizedVertex unite(const GeneralizedVertex& a, const GeneralizedVertex& b) const;
  [[nodiscard]] GeneralizedVertex intersect(const GeneralizedVertex& a, const GeneralizedVertex& b) const;
  /// The whole vertex set when the lattice has a maximal element.
  [[nodiscard]] std::optional<GeneralizedVertex> top() const;
  [[nodiscard]] std::optional<GeneralizedVertex> exhaustion(std::uint64_t k) const;
  [[nodiscard]] std::optional<GeneralizedVertex> named_set(std::string_view name) const;

  [[nodiscard]] bool member(VertexId v, const GeneralizedVertex& a) const;
  [[nodiscard]] bool subset(const GeneralizedVertex& a, const GeneralizedVertex& b) const;

  /// epsilon(A). For infinite emission, at most `depth` edges per emitter.
  [[nodiscard]] Emission emission(const GeneralizedVertex& a, std::size_t depth = 64) const;
  [[nodiscard]] Decomposition decompose(const GeneralizedVertex& a) const;

  [[nodiscard]] bool emitter_contains(EmitterId k, VertexId v) const { return oracle_->emitter_contains(k.index, v); }
  [[nodiscard]] std::vector<VertexId> emitter_overlap(EmitterId a, EmitterId b) const;
  [[nodiscard]] std::optional<EdgeId> emitter_edge(EmitterId k, std::uint64_t n) const {
    return oracle_->emitter_edge(k.index, n);
  }
  [[nodiscard]] std::optional<EmitterId> singleton_emitter(VertexId v) const;

  /// Vertices/edges considered by bounded checks: everything for finite
  /// ultragraphs, the first `limit` by family index otherwise.
  [[nodiscard]] std::vector<VertexId> vertex_window(std::uint64_t limit) const { return oracle_->vertex_window(limit); }
  [[nodiscard]] std::vector<EdgeId> edge_window(std::uint64_t limit) const { return oracle_->edge_window(limit); }

  /// Condition (RFUM): every range is a finite union of declared minimal
  /// emitters and single vertices, checked at bounded depth for families.
  [[nodiscard]] RfumResult check_rfum(std::size_t depth = 64, std::uint64_t vertex_limit = 30) const;

  /// `B|{v1,v2}` style rendering; `{}` for the empty set.
  [[nodiscard]] std::string format(const GeneralizedVertex& a) const;
  [[nodiscard]] std::string format_path(const EdgePath& p) const;

 private:
  GeneralizedVertex normalize(std::vector<EmitterId> emitters, std::vector<VertexId> finite) const;

  std::shared_ptr<const FamilyOracle> oracle_;
  Backend backend_;
  std::vector<std::string> emitter_names_;
  std::map<VertexId, EmitterId> singleton_emitters_;
};

/// Builder for finite-explicit ultragraphs. build() validates nonempty
/// ranges and the absence of sinks.
class FiniteUltragraphBuilder {
 public:
  VertexId add_vertex(std::string name);
  EdgeId add_edge(std::string name, VertexId source, std::vector<VertexId> range);
  [[nodiscard]] std::optional<VertexId> find_vertex(std::string_view name) const;
  [[nodiscard]] std::size_t vertex_count() const { return vertex_names_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edge_names_.size(); }

  /// Problems that prevent build(), in declaration order.
  struct Issue {
    enum class Kind { EmptyRange, Sink } kind;
    std::string name;
  };
  [[nodiscard]] std::vector<Issue> issues() const;
  [[nodiscard]] Ultragraph build() const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<VertexId> sources_;
  std::vector<std::vector<VertexId>> ranges_;
};

}  // namespace ugkms
