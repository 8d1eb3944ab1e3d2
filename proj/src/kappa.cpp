#include "ugkms/kappa.hpp"

#include "ugkms/errors.hpp"
#include "ugkms/points.hpp"

namespace ugkms {

Number KappaMeasure::operator()(const Cylinder& c) const {
  Number mb = M_.path(c.stem);
  Number out = mb * m_.eval(*g_, c.base);
  for (EdgeId e : c.excluded) out -= mb * M_(e) * m_.eval(*g_, g_->range(e));
  return out;
}

Number KappaMeasure::ring(const std::vector<Cylinder>& pieces) const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (cyl_intersect(*g_, pieces[i], pieces[j])) {
        throw NotDisjoint(format_cylinder(*g_, pieces[i]) + " meets " + format_cylinder(*g_, pieces[j]));
      }
    }
  }
  Number sum(0);
  for (const auto& c : pieces) sum += (*this)(c);
  return sum;
}

Number KappaMeasure::union_measure(const std::vector<Cylinder>& sets) const {
  if (sets.size() > 16) throw std::invalid_argument("inclusion-exclusion over more than 16 sets");
  Number sum(0);
  for (std::uint32_t mask = 1; mask < (1u << sets.size()); ++mask) {
    std::optional<Cylinder> meet;
    bool first = true;
    for (std::size_t i = 0; i < sets.size() && (first || meet); ++i) {
      if (!(mask >> i & 1)) continue;
      meet = first ? std::optional<Cylinder>(sets[i]) : cyl_intersect(*g_, *meet, sets[i]);
      first = false;
    }
    if (!meet) continue;
    Number k = (*this)(*meet);
    if (__builtin_popcount(mask) % 2 == 1) {
      sum += k;
    } else {
      sum -= k;
    }
  }
  return sum;
}

CheckOutcome check_additivity(const Ultragraph& g, const KappaMeasure& kappa, const Cylinder& c,
                              const std::vector<Cylinder>& pieces, double tol) {
  CheckOutcome out;
  auto part = check_partition(g, {c}, {}, pieces);
  if (!part.ok) {
    out.pass = false;
    out.witness = "not a partition: " + part.witness;
  }
  Number sum(0);
  for (const auto& p : pieces) sum += kappa(p);
  Number whole = kappa(c);
  out.residual = (whole - sum).abs();
  if (!approx_equal(whole, sum, tol)) {
    out.pass = false;
    if (out.witness.empty()) out.witness = "kappa(C) = " + whole.str() + ", sum = " + sum.str();
  }
  return out;
}

CheckOutcome check_scaling(const Ultragraph& g, const KappaMeasure& kappa, EdgeId e, const Cylinder& v, double tol) {
  CheckOutcome out;
  Cylinder image = theta_edge(g, e, v);
  Number lhs = kappa(image);
  Number rhs = kappa.M()(e) * kappa(v);
  out.residual = (lhs - rhs).abs();
  out.pass = approx_equal(lhs, rhs, tol);
  if (!out.pass) out.witness = format_cylinder(g, image) + ": " + lhs.str() + " vs " + rhs.str();
  return out;
}

}  // namespace ugkms
