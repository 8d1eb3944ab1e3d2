#pragma once

// Finite sets of test points on which a given list of cylinders is decided.
//
// The points split X into finitely many classes such that every listed
// cylinder is a union of classes: X_fin points (alpha, E) for every prefix
// alpha of a stem, and one prefix class alpha.e for each edge e leaving such
// a prefix (one representative edge per emitter for edges that no cylinder
// singles out).

#include <string>
#include <vector>

#include "ugkms/shift_space.hpp"

namespace ugkms {

std::vector<Point> relevant_points(const Ultragraph& g, const std::vector<Cylinder>& cylinders);

std::string format_point(const Ultragraph& g, const Point& p);

/// Membership on a relevant point; throws std::logic_error if undecided.
bool decided_member(const Ultragraph& g, const Point& p, const Cylinder& c);

struct PartitionResult {
  bool ok = true;
  std::size_t points = 0;
  std::string witness;
};

/// Checks that `pieces` are pairwise disjoint and that their union equals
/// the set of points in every cylinder of `inside` and in none of `outside`.
PartitionResult check_partition(const Ultragraph& g, const std::vector<Cylinder>& inside,
                                const std::vector<Cylinder>& outside, const std::vector<Cylinder>& pieces);

}  // namespace ugkms
