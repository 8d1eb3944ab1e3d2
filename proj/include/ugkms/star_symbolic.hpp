#pragma once

// Spanning elements s_mu p_A s_nu* of the ultragraph algebra, their
// products, the functional phi_{m,beta} and an exhaustive KMS check.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ugkms/number.hpp"
#include "ugkms/state_functions.hpp"
#include "ugkms/ultragraph.hpp"

namespace ugkms {

/// s_mu p_A s_nu*, with A inside r(mu) and r(nu) (an empty path imposes
/// no constraint). A nullopt SpanningElement stands for zero.
struct SpanningElement {
  EdgePath mu;
  GeneralizedVertex a;
  EdgePath nu;
  auto operator<=>(const SpanningElement&) const = default;
};

using MaybeSpanning = std::optional<SpanningElement>;

/// Validates both paths and intersects A with their ranges; zero when empty.
MaybeSpanning make_spanning(const Ultragraph& g, EdgePath mu, const GeneralizedVertex& a, EdgePath nu);

struct AdjointCase {
  enum class Kind { NuPrime, MuPrime, Range, Zero };
  Kind kind = Kind::Zero;
  /// nu' when nu = mu nu', mu' when mu = nu mu'.
  EdgePath rest;
};

/// Case split for s_nu* s_mu.
AdjointCase adjoint_product(const EdgePath& nu, const EdgePath& mu);

MaybeSpanning multiply(const Ultragraph& g, const MaybeSpanning& x, const MaybeSpanning& y);

/// Adjoint (nu, A, mu).
MaybeSpanning adjoint(const MaybeSpanning& x);

struct StateFunctional {
  MFunction m;
  ScaledWeightM M;
};

/// 0 unless mu = nu; then M(mu) m(A).
Number phi_eval(const Ultragraph& g, const StateFunctional& phi, const MaybeSpanning& x);

std::string format_spanning(const Ultragraph& g, const MaybeSpanning& x);
/// `[mu; A; nu]` with space-separated edge names and a lattice expression.
MaybeSpanning parse_spanning(const Ultragraph& g, std::string_view text);

struct KmsCheckResult {
  VerificationReport report;
  std::size_t elements = 0;
  std::size_t pairs = 0;
  std::size_t violations = 0;
  /// beta = 0: N(mu)^-beta = 1 for every path, the functional is a trace
  /// and the extension argument does not single out phi.
  bool trace_case = false;
};

/// Paths of length at most L, including the empty path.
std::vector<EdgePath> paths_up_to(const Ultragraph& g, std::size_t L);

/// Over all spanning elements with path lengths <= L and middle sets drawn
/// from single vertices, ranges and the top: phi(ab) = M(mu)/M(nu) phi(ba)
/// ("kms-pairs"), plus phi(s_mu p_A s_mu*) = sum over e in eps(A) of
/// phi(s_{mu e} p_{r(e)} s_{mu e}*) for |mu| < L ("ck-scalar").
/// Finite ultragraphs only (DomainViolation otherwise).
KmsCheckResult kms_check(const Ultragraph& g, const MFunction& m, const EdgeWeightN& n, const Number& beta,
                         std::size_t L, double tol, NumericMode mode = NumericMode::Auto);

}  // namespace ugkms
