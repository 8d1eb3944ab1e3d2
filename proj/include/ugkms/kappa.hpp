#pragma once

// kappa(D_{(b,B),F}) = M(b) m(B) - sum_{e in F} M(b e) m(r(e)), its
// extension to finite disjoint unions, and the additivity / scaling checks.

#include <string>
#include <vector>

#include "ugkms/number.hpp"
#include "ugkms/shift_space.hpp"
#include "ugkms/state_functions.hpp"

namespace ugkms {

class KappaMeasure {
 public:
  KappaMeasure(const Ultragraph& g, MFunction m, ScaledWeightM M) : g_(&g), m_(std::move(m)), M_(std::move(M)) {}

  [[nodiscard]] Number operator()(const Cylinder& c) const;
  /// Sum over pieces after checking pairwise disjointness (NotDisjoint).
  [[nodiscard]] Number ring(const std::vector<Cylinder>& pieces) const;
  /// Measure of a possibly overlapping finite union by inclusion-exclusion
  /// over intersections inside S (at most 16 sets).
  [[nodiscard]] Number union_measure(const std::vector<Cylinder>& sets) const;

  [[nodiscard]] const MFunction& m() const { return m_; }
  [[nodiscard]] const ScaledWeightM& M() const { return M_; }

 private:
  const Ultragraph* g_;
  MFunction m_;
  ScaledWeightM M_;
};

struct CheckOutcome {
  bool pass = true;
  Number residual;
  std::string witness;
};

/// Partition of c by the pieces (point classes), then kappa additivity.
CheckOutcome check_additivity(const Ultragraph& g, const KappaMeasure& kappa, const Cylinder& c,
                              const std::vector<Cylinder>& pieces, double tol = 1e-9);

/// kappa(theta_e(V)) = M(e) kappa(V); throws DomainViolation outside the domain.
CheckOutcome check_scaling(const Ultragraph& g, const KappaMeasure& kappa, EdgeId e, const Cylinder& v,
                           double tol = 1e-9);

}  // namespace ugkms
