#pragma once

// Lattice expressions over ranges, vertex sets and named sets:
//
//   expr  := term ('|' term)*
//   term  := prim ('&' prim)*
//   prim  := '(' expr ')' | 'r(' edge ')' | '{' [name (',' name)*] '}' | name
//
// A bare name is looked up as a named set, then a declared emitter, then a
// vertex.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ugkms/ultragraph.hpp"

namespace ugkms {

struct LatticeExpr {
  enum class Kind { Range, Vertices, Name, Union, Intersection };
  Kind kind = Kind::Vertices;
  std::string name;                // Range: edge name; Name: identifier
  std::vector<std::string> names;  // Vertices
  std::vector<LatticeExpr> children;

  static LatticeExpr range(std::string edge);
  static LatticeExpr vertices(std::vector<std::string> vs);
  static LatticeExpr named(std::string n);
  static LatticeExpr unite(LatticeExpr a, LatticeExpr b);
  static LatticeExpr intersect(LatticeExpr a, LatticeExpr b);

  [[nodiscard]] std::string str() const;
};

LatticeExpr parse_lattice_expr(std::string_view text);

/// Canonical form of the expression. The empty set is returned as an empty
/// GeneralizedVertex; callers that need p_A != 0 test empty().
GeneralizedVertex canonicalize(const Ultragraph& g, const LatticeExpr& expr);
GeneralizedVertex canonicalize(const Ultragraph& g, std::string_view text);

/// Like canonicalize but throws EmptySetError on an empty result.
GeneralizedVertex canonicalize_nonempty(const Ultragraph& g, std::string_view text);

/// Membership through the raw oracle predicates, without canonical forms.
bool eval_membership(const Ultragraph& g, const LatticeExpr& expr, VertexId v);

}  // namespace ugkms
