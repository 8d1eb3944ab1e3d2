#pragma once

// Built-in infinite family: vertices w, v1, v2, ...; edges e_i from v_i
// with r(e_i) = {v_i} u B for i <= 3 and {v_(i-3), v_i} for i >= 4, where
// B = {v4, v5, ...}; edges f_i from w with r(f_i) = G0 = {v1, v2, ...}.
// N(e_i) = d and N(f_i) = a^i.

#include <optional>
#include <string>
#include <vector>

#include "ugkms/errors.hpp"
#include "ugkms/number.hpp"
#include "ugkms/state_functions.hpp"
#include "ugkms/ultragraph.hpp"

namespace ugkms::sec6 {

struct Options {
  /// Override of the declared emitter list (default {"w", "B"}); used to
  /// exercise RFUM detection.
  std::optional<std::vector<std::string>> emitters;
  /// Present the family without a maximal element, using the exhausting
  /// sequence {w} u {v1..v_(k+1)} u B instead.
  bool hide_top = false;
};

Ultragraph build(const Options& opt = {});

inline VertexId w() { return VertexId{0}; }
inline VertexId v(std::uint64_t i) { return VertexId{i}; }
inline EdgeId e(std::uint64_t i) { return EdgeId{2 * (i - 1)}; }
inline EdgeId f(std::uint64_t i) { return EdgeId{2 * (i - 1) + 1}; }

class DivergentAtZero : public Error {
 public:
  using Error::Error;
};

class MwOutOfRange : public Error {
 public:
  using Error::Error;
};

struct Params {
  Number d;
  Number a;
  Number beta;
  NumericMode mode = NumericMode::Auto;
};

EdgeWeightN weights(const Number& d, const Number& a);
ScaledWeightM scaled_weights(const Params& p);

/// d^-beta / (1 - d^-beta); throws DivergentAtZero unless d^-beta < 1.
Number dbeta(const Number& d, const Number& beta, NumericMode mode = NumericMode::Auto);

struct Condition {
  bool precondition = false;  // d_beta < 1
  bool holds = false;
  std::optional<Number> value;
};

/// 6 d_beta^2 / (1 - d_beta^2) <= 1.
Condition sufficient_B_condition(const Number& d, const Number& beta, NumericMode mode = NumericMode::Auto);
/// 3 d_beta^2 / (1 - d_beta) <= 1.
Condition exact_B_condition(const Number& d, const Number& beta, NumericMode mode = NumericMode::Auto);

/// sum_{i>=1} a^(-i beta); nullopt when divergent.
std::optional<Number> series_sum(const Number& a, const Number& beta, NumericMode mode = NumericMode::Auto);

struct State {
  Number m_w;
  Number m_B;
  Number d_beta;

  /// m(v_i) = d_beta^(q+1) m_B with i = 3q + r, r in {1,2,3}.
  [[nodiscard]] Number vertex(std::uint64_t i) const;
  [[nodiscard]] MFunction mfunction(const Ultragraph& g) const;
};

struct KmsFamily {
  Params params;
  Number d_beta;
  Number series;  // S
  Number mw_min;  // S / (1 + S)

  /// Throws MwOutOfRange outside [mw_min, 1].
  [[nodiscard]] State state(const Number& m_w) const;
};

/// nullopt when the exact condition fails or the series diverges.
std::optional<KmsFamily> kms_states(const Params& p);

/// Tail sums of M(e) m(r(e)) over the full emission of {w} and B for a
/// given state; used for the exact (m3) check.
EmitterTailSum tail_sums(const Ultragraph& g, const Params& p, const State& s);

/// Ground state with m(B) = t, m(w) = 1 - t, all vertex atoms zero.
MFunction ground_state(const Ultragraph& g, const Number& t);

/// Lattice {empty, {w}, {v1..vL}, B, G0, F0} with all pairwise unions, plus
/// the ranges of e_1..e_L and f_1.
std::vector<GeneralizedVertex> test_lattice(const Ultragraph& g, std::uint64_t L = 30);

}  // namespace ugkms::sec6
