#pragma once

// Independent reference computations used by the tests.

#include <gmpxx.h>

#include <functional>
#include <vector>

#include "ugkms/kms_solver.hpp"
#include "ugkms/points.hpp"
#include "ugkms/shift_space.hpp"

namespace ugtest {

/// Vertices of {x >= 0, T x = x, sum x = 1} by support enumeration: a
/// support S gives a vertex iff the equations with x = 0 off S have a unique
/// solution, and that solution is positive on S. Exact T only, n <= 12.
std::vector<std::vector<mpq_class>> brute_force_extreme_points(const ugkms::TransferMatrix& t);

/// Every point of depth `len` over the first `window` vertices / 2*window
/// edges (all of them on finite graphs): X_fin points (alpha, E) with
/// |alpha| < len and E inside r(alpha), and prefix classes of paths of
/// length exactly len.
std::vector<ugkms::Point> enumerate_points(const ugkms::Ultragraph& g, std::size_t len, std::uint64_t window);

/// Partition check on enumerate_points, deepened past the longest stem.
ugkms::PartitionResult brute_partition(const ugkms::Ultragraph& g, const std::vector<ugkms::Cylinder>& inside,
                                       const std::vector<ugkms::Cylinder>& outside,
                                       const std::vector<ugkms::Cylinder>& pieces, std::size_t len,
                                       std::uint64_t window);

/// Rank of a rational matrix by fraction-free elimination.
std::size_t rational_rank(std::vector<std::vector<mpq_class>> rows);

/// Bisection on a monotone decreasing function f with f(lo) >= 0 >= f(hi).
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

}  // namespace ugtest
