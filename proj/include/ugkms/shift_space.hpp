#pragma once

// Ultrapaths, the cylinder sets D_{(beta,B),F} of the shift space X, the
// semi-ring operations on them and the partial action theta.
//
// Elements of the semi-ring S have either a single minimal emitter as base
// (excluded edges F inside its emission) or a finite-emission base; a
// finite-emission base is kept normalized: vertices all of whose edges are
// excluded are dropped and F is restricted to the emission of the base.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ugkms/ultragraph.hpp"

namespace ugkms {

struct Ultrapath {
  EdgePath edges;
  GeneralizedVertex terminal;
  auto operator<=>(const Ultrapath&) const = default;
};

/// Checks consecutive sources and terminal inclusion; throws DomainViolation.
void validate_ultrapath(const Ultragraph& g, const Ultrapath& x);
/// True iff s(p[i+1]) lies in r(p[i]) for all i.
bool is_path(const Ultragraph& g, const EdgePath& p);
/// r(p) for a nonempty path.
GeneralizedVertex path_range(const Ultragraph& g, const EdgePath& p);

/// Product of ultrapaths; nullopt when undefined.
std::optional<Ultrapath> concat(const Ultragraph& g, const Ultrapath& x, const Ultrapath& y);

struct Cylinder {
  EdgePath stem;
  GeneralizedVertex base;
  std::vector<EdgeId> excluded;  // sorted
  auto operator<=>(const Cylinder&) const = default;

  enum class Kind { MinEmitterBase, FiniteEmissionBase, Mixed };
  [[nodiscard]] Kind kind() const;
  [[nodiscard]] bool in_semiring() const { return kind() != Kind::Mixed; }
};

/// Builds and normalizes D_{(stem,base),excluded}. Throws DomainViolation for
/// invalid stems, a base outside r(stem) or excluded edges with source
/// outside the base. Returns nullopt when the set is empty.
std::optional<Cylinder> make_cylinder(const Ultragraph& g, EdgePath stem, GeneralizedVertex base,
                                      std::vector<EdgeId> excluded = {});

std::string format_cylinder(const Ultragraph& g, const Cylinder& c);
/// `(<edges> ; <lattice expr> ; <edges>)`; nullopt for an empty cylinder.
std::optional<Cylinder> parse_cylinder(const Ultragraph& g, std::string_view text);

/// Edges e with s(e) in base, e not excluded (finite-emission bases only).
std::vector<EdgeId> allowed_edges(const Ultragraph& g, const Cylinder& c);

/// Points of X used for membership: an X_fin point (path, emitter), or the
/// class of all points extending a finite path (`emitter` empty).
struct Point {
  EdgePath path;
  std::optional<EmitterId> emitter;
  auto operator<=>(const Point&) const = default;
};

enum class Membership { In, Out, NeedLongerPrefix };

Membership cyl_member(const Ultragraph& g, const Point& p, const Cylinder& c);

std::optional<Cylinder> cyl_intersect(const Ultragraph& g, const Cylinder& a, const Cylinder& b);

bool cyl_subset(const Ultragraph& g, const Cylinder& small, const Cylinder& big);

/// Pairwise-disjoint semi-ring elements whose union is c minus c1. Throws
/// NotSubset unless c1 is contained in c.
std::vector<Cylinder> cyl_diff(const Ultragraph& g, const Cylinder& c, const Cylinder& c1);

/// Disjoint semi-ring elements whose union is D_{(stem,base),F}; elements of
/// S are returned unchanged.
std::vector<Cylinder> cyl_refine(const Ultragraph& g, const EdgePath& stem, const GeneralizedVertex& base,
                                 const std::vector<EdgeId>& excluded = {});
inline std::vector<Cylinder> cyl_refine(const Ultragraph& g, const Cylinder& c) {
  return cyl_refine(g, c.stem, c.base, c.excluded);
}

/// D_{(a,A),F} with finite emission as the union of D_{(ae, r(e))} for the
/// allowed edges e, each refined into S.
std::vector<Cylinder> expand_finite_emission(const Ultragraph& g, const Cylinder& c);

struct Letter {
  EdgeId edge;
  bool inverse = false;
};

/// theta_e(D_{(b,B),F}) = D_{(eb,B),F}; throws DomainViolation outside X_{e^-1}.
Cylinder theta_edge(const Ultragraph& g, EdgeId e, const Cylinder& c);
/// theta_{e^-1}(D_{(eb,B),F}) = D_{(b,B),F}; throws DomainViolation unless the stem starts with e.
Cylinder theta_inverse(const Ultragraph& g, EdgeId e, const Cylinder& c);
/// Applies the word right to left, as a composition of partial maps.
Cylinder theta_word(const Ultragraph& g, const std::vector<Letter>& word, const Cylinder& c);

}  // namespace ugkms
