#pragma once

// Transfer matrices T(v,u) = sum_{e: s(e)=v, u in r(e)} M(e), their
// nonnegative normalized fixed points, spectral radius, the critical
// inverse temperature and ground states.

#include <optional>
#include <string>
#include <vector>

#include "ugkms/number.hpp"
#include "ugkms/state_functions.hpp"
#include "ugkms/ultragraph.hpp"

namespace ugkms {

struct TransferMatrix {
  std::vector<VertexId> vertices;
  std::vector<Number> entries;  // row-major

  [[nodiscard]] std::size_t size() const { return vertices.size(); }
  [[nodiscard]] const Number& at(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }
  [[nodiscard]] bool is_exact() const;
  [[nodiscard]] std::vector<double> to_double() const;
};

/// Throws DomainViolation for families without a finite vertex set.
TransferMatrix build_transfer(const Ultragraph& g, const ScaledWeightM& M);
TransferMatrix build_transfer(const Ultragraph& g, const EdgeWeightN& n, const Number& beta,
                              NumericMode mode = NumericMode::Auto);

/// Strongly connected components of v -> u when adj[v*n+u] is true, in
/// reverse topological order (sinks of the condensation first).
std::vector<std::vector<std::size_t>> strongly_connected_components(const std::vector<bool>& adj, std::size_t n);

struct SpectralResult {
  double rho = 0;
  double lo = 0;  // Collatz-Wielandt bounds
  double hi = 0;
  std::string method = "power";  // power | square | shifted | exact-size-1
  bool converged = true;
};

struct SpectralOptions {
  double tol = 1e-9;
  /// Stop as soon as the bounds exclude this value.
  std::optional<double> decide_against;
  std::size_t max_iterations = 5000;
};

/// Spectral radius of a nonnegative row-major matrix, irreducible block by
/// block, by power iteration from the uniform vector with Collatz-Wielandt
/// bounds. Falls back to A^2, then to (I + A)/2, when the bounds stall.
SpectralResult spectral_radius(const std::vector<double>& a, std::size_t n, const SpectralOptions& opt = {});

struct KmsSolution {
  std::optional<Number> beta;
  std::vector<VertexId> vertices;
  /// Extreme points of {m >= 0, m = T m, sum m = 1}, indexed like vertices.
  std::vector<std::vector<Number>> extreme_points;
  bool exact = true;
  std::vector<std::string> notes;

  [[nodiscard]] bool empty() const { return extreme_points.empty(); }
  [[nodiscard]] MFunction state(std::size_t i) const;
};

struct SolveOptions {
  double tol = 1e-9;
  /// Use doubles even when T is exact.
  bool force_float = false;
};

KmsSolution solve_kms(const TransferMatrix& t, const SolveOptions& opt = {});
KmsSolution solve_kms(const Ultragraph& g, const ScaledWeightM& M, const SolveOptions& opt = {});

/// True iff m >= 0, sum m = 1 and T m = m (exactly, or within tol).
bool is_normalized_fixed_point(const TransferMatrix& t, const std::vector<Number>& m, double tol = 1e-9);

struct CriticalResult {
  bool found = false;
  double beta = 0;
  double rho_lo = 0;  // rho(T_lo)
  double rho_hi = 0;  // rho(T_hi)
  std::string message;
};

/// Bisection for rho(T_beta) = 1 on [lo, hi].
CriticalResult critical_beta(const Ultragraph& g, const EdgeWeightN& n, double lo = 0, double hi = 64,
                             double tol = 1e-9);
double spectral_radius_at(const Ultragraph& g, const EdgeWeightN& n, double beta, double tol = 1e-9);

struct GroundDescription {
  bool empty = true;
  /// Free nonnegative coordinates m(E_k), summing to one.
  std::vector<EmitterId> coordinates;
  [[nodiscard]] MFunction point(const std::vector<Number>& weights) const;
  [[nodiscard]] MFunction extreme_point(std::size_t k) const;
};

/// Ground states: zero on finite-emission atoms, free on minimal emitters.
/// Throws NoExhaustingSequence for families with neither top nor exhaustion.
GroundDescription solve_ground(const Ultragraph& g);

}  // namespace ugkms
