// One line per acceptance criterion: ACCEPT <n> PASS|FAIL <detail>.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "ugkms/errors.hpp"
#include "ugkms/kappa.hpp"
#include "ugkms/kms_solver.hpp"
#include "ugkms/sec6.hpp"
#include "ugkms/shift_space.hpp"
#include "ugkms/star_symbolic.hpp"
#include "ugkms/state_functions.hpp"
#include "ugkms/ultragraph_io.hpp"

using namespace ugkms;

namespace {

// Pinned tolerances.
constexpr double kExactTol = 0;
constexpr double kThresholdBisectTol = 1e-9;
constexpr double kThresholdMatchTol = 2e-9;
constexpr double kCriticalTol = 1e-9;
constexpr double kSecondGraphTol = 1e-6;
constexpr double kStarTol = 1e-12;
constexpr double kPerturbStar = 1e-2;
constexpr std::size_t kPartitionDepth = 6;
constexpr std::size_t kFamilyBruteDepth = 4;

const double kSufficientThreshold = std::log2(1 + std::sqrt(7.0));
const double kExactThreshold = std::log2((3 + std::sqrt(13.0)) / 2);
const double kGoldenBeta = std::log((1 + std::sqrt(5.0)) / 2) / std::log(3.0);

const char* kBranching =
    "vertices: v u\nedge e1 v -> u\nedge e2 v -> u\nedge e3 u -> v\nweight * 2\n";
const char* kGraph3 = "vertices: v u\nedge e1 v -> u v\nedge e2 u -> v\nweight * 3\n";

int failures = 0;

void line(int n, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("ACCEPT %d %s %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

bool residuals_zero(const VerificationReport& r) {
  for (const auto& c : r.conditions) {
    if (!c.residual.is_exact() || !c.residual.is_zero()) return false;
  }
  return true;
}

void criterion1() {
  Ultragraph g = sec6::build();
  sec6::Params p{Number(2), Number(2), Number(2)};
  bool ok = sec6::dbeta(p.d, p.beta) == Number::rational(1, 3);
  auto fam = sec6::kms_states(p);
  if (!fam) return line(1, false, "no family at beta = 2");
  ok = ok && fam->series == Number::rational(1, 3) && fam->mw_min == Number::rational(1, 4);
  auto s = fam->state(Number::rational(1, 2));
  ok = ok && s.m_B == Number::rational(1, 4);
  for (std::uint64_t i = 1; i <= 30; ++i) {
    long q = static_cast<long>((i - 1) / 3);
    ok = ok && s.vertex(i) == pow_int(Number::rational(1, 3), q + 1) / Number(4);
  }
  KmsVerifyOptions opt;
  opt.tol = kExactTol;
  opt.fbound = 8;
  opt.tail = sec6::tail_sums(g, p, s);
  auto r = verify_kms_m(g, s.mfunction(g), sec6::scaled_weights(p), sec6::test_lattice(g, 30), opt);
  bool verified = r.all_pass() && residuals_zero(r);
  auto suff = sec6::sufficient_B_condition(p.d, p.beta);
  bool cond = suff.holds && suff.value && *suff.value == Number::rational(3, 4);
  line(1, ok && verified && cond,
       "d_beta=1/3 S=1/3 range=[" + fam->mw_min.str() + ",1] m_B=" + s.m_B.str() + " verify=" +
           (verified ? "exact-zero-residual" : "failed") + " sufficient_value=" + (suff.value ? suff.value->str() : "-"));
}

double condition_root(const std::function<sec6::Condition(const Number&, const Number&, NumericMode)>& c) {
  auto f = [&](double beta) {
    auto r = c(Number(2), Number(beta), NumericMode::Auto);
    if (!r.precondition || !r.value) return 1.0;
    return r.value->to_double() - 1.0;
  };
  return ugtest::bisect_root(f, 0.5, 5.0, kThresholdBisectTol);
}

void criterion2() {
  double suff = condition_root(sec6::sufficient_B_condition);
  double exact = condition_root(sec6::exact_B_condition);
  bool ok = std::fabs(suff - kSufficientThreshold) <= kThresholdMatchTol &&
            std::fabs(exact - kExactThreshold) <= kThresholdMatchTol;
  ok = ok && sec6::sufficient_B_condition(Number(2), Number(suff + 1e-7)).holds &&
       !sec6::sufficient_B_condition(Number(2), Number(suff - 1e-7)).holds &&
       sec6::exact_B_condition(Number(2), Number(exact + 1e-7)).holds &&
       !sec6::exact_B_condition(Number(2), Number(exact - 1e-7)).holds;
  int grid = 0;
  bool implication = true;
  for (int k = 1; k <= 50; ++k) {
    Number beta = Number::rational(k, 10);
    auto pc = sec6::sufficient_B_condition(Number(2), beta);
    if (!pc.precondition) continue;
    ++grid;
    if (pc.holds && !sec6::exact_B_condition(Number(2), beta).holds) implication = false;
  }
  line(2, ok && implication && grid > 0,
       "sufficient_flip=" + fmt(suff) + " (closed form " + fmt(kSufficientThreshold) + ") exact_flip=" + fmt(exact) +
           " (closed form " + fmt(kExactThreshold) + ") implication_grid=" + std::to_string(grid));
}

void criterion3() {
  Ultragraph g = sec6::build();
  auto lattice = sec6::test_lattice(g, 30);
  bool ok = true;
  for (const char* t : {"0", "1/2", "1"}) {
    ok = ok && verify_ground_m(g, sec6::ground_state(g, Number::parse(t)), lattice, kExactTol).all_pass();
  }
  int perturbed = 0, caught = 0;
  Number eps = Number::rational(1, 1000);
  auto try_bad = [&](const MFunction& bad) {
    ++perturbed;
    auto r = verify_ground_m(g, bad, lattice, kExactTol);
    if (r.all_pass()) return;
    for (const auto& c : r.conditions) {
      if (c.verdict == Verdict::Fail && !c.witness.empty()) {
        ++caught;
        return;
      }
    }
  };
  for (EmitterId k : g.emitters()) {
    MFunction m = sec6::ground_state(g, Number::rational(1, 2));
    m.set_emitter(k, m.emitter_value(g, k) + eps);
    try_bad(m);
  }
  for (std::uint64_t i = 1; i <= 10; ++i) {
    MFunction m = sec6::ground_state(g, Number::rational(1, 2));
    m.set_vertex(sec6::v(i), eps);
    try_bad(m);
  }
  line(3, ok && caught == perturbed,
       "segment endpoints and midpoint pass; perturbations caught " + std::to_string(caught) + "/" +
           std::to_string(perturbed));
}

void criterion4() {
  auto lg = load_ultragraph_text(kBranching);
  auto c = critical_beta(lg.graph, lg.weights, 0, 64, kCriticalTol);
  bool ok = c.found && std::fabs(c.beta - 0.5) <= kCriticalTol;
  auto sol = solve_kms(lg.graph, ScaledWeightM::from_beta(lg.weights, Number::rational(1, 2)));
  ok = ok && sol.extreme_points.size() == 1 &&
       std::fabs(sol.extreme_points[0][0].to_double() - (2 - std::sqrt(2.0))) <= kCriticalTol &&
       std::fabs(sol.extreme_points[0][1].to_double() - (std::sqrt(2.0) - 1)) <= kCriticalTol;
  auto g3 = load_ultragraph_text(kGraph3);
  auto c3 = critical_beta(g3.graph, g3.weights, 0, 64, kCriticalTol);
  bool ok3 = c3.found && std::fabs(c3.beta - kGoldenBeta) <= kSecondGraphTol;
  line(4, ok && ok3,
       "branching beta*=" + fmt(c.beta) + " m=(" + (sol.empty() ? "-" : sol.extreme_points[0][0].str()) + ", " +
           (sol.empty() ? "-" : sol.extreme_points[0][1].str()) + ") second beta*=" + fmt(c3.beta) +
           " closed form " + fmt(kGoldenBeta));
}

bool domain_ok(const Ultragraph& g, EdgeId e, const Cylinder& c) {
  return c.stem.empty() ? g.subset(c.base, g.range(e)) : g.member(g.source(c.stem.front()), g.range(e));
}

void criterion5() {
  ugtest::Rng rng(2024);
  int pairs = 0, partition_ok = 0, additive_ok = 0, scaling_tested = 0, scaling_ok = 0;

  Ultragraph fam = sec6::build();
  sec6::Params p{Number(2), Number(2), Number(2)};
  KappaMeasure fam_kappa(fam, sec6::kms_states(p)->state(Number::rational(1, 2)).mfunction(fam),
                         sec6::scaled_weights(p));

  auto run = [&](const Ultragraph& g, const KappaMeasure& kappa, bool family) {
    std::uint64_t window = family ? 6 : 12;
    Cylinder c = ugtest::random_cylinder(g, rng, 2, window);
    Cylinder c1 = ugtest::random_subcylinder(g, c, rng, window);
    auto pieces = cyl_diff(g, c, c1);
    ++pairs;
    bool part = family ? check_partition(g, {c}, {c1}, pieces).ok &&
                             ugtest::brute_partition(g, {c}, {c1}, pieces, kFamilyBruteDepth, 6).ok
                       : ugtest::brute_partition(g, {c}, {c1}, pieces, kPartitionDepth, 0).ok;
    if (part) ++partition_ok;
    auto all = pieces;
    all.push_back(c1);
    auto add = check_additivity(g, kappa, c, all, kExactTol);
    if (add.pass && add.residual.is_zero()) ++additive_ok;
    std::vector<EdgeId> edges = g.edge_window(family ? 12 : *g.oracle().edge_count());
    for (const Cylinder* v : {&c, &c1}) {
      for (EdgeId e : edges) {
        if (!domain_ok(g, e, *v)) continue;
        ++scaling_tested;
        if (check_scaling(g, kappa, e, *v, kExactTol).pass) ++scaling_ok;
      }
    }
  };

  for (int k = 0; k < 100; ++k) run(fam, fam_kappa, true);
  int finite = 0;
  while (finite < 100) {
    Ultragraph g = ugtest::random_finite_ultragraph(rng, 6, 10);
    ScaledWeightM M;
    if (!ugtest::planted_scaled_weights(g, rng, M)) continue;
    auto sol = solve_kms(g, M);
    if (sol.empty() || !sol.exact) continue;
    KappaMeasure kappa(g, sol.state(0), M);
    for (int k = 0; k < 4 && finite < 100; ++k, ++finite) run(g, kappa, false);
  }
  bool ok = partition_ok == pairs && additive_ok == pairs && scaling_ok == scaling_tested && pairs == 200;
  line(5, ok,
       "pairs=" + std::to_string(pairs) + " partition=" + std::to_string(partition_ok) + " additive=" +
           std::to_string(additive_ok) + " scaling=" + std::to_string(scaling_ok) + "/" +
           std::to_string(scaling_tested));
}

MFunction from_vector(const std::vector<VertexId>& vs, const std::vector<Number>& x) {
  MFunction m;
  for (std::size_t i = 0; i < vs.size(); ++i) m.set_vertex(vs[i], x[i]);
  return m;
}

void criterion6() {
  ugtest::Rng rng(6006);
  int graphs = 0, candidates = 0, agree = 0, nonempty = 0;
  while (graphs < 50) {
    Ultragraph g = ugtest::random_finite_ultragraph(rng, 6, 10);
    ScaledWeightM M;
    if (graphs % 2 == 0) {
      if (!ugtest::planted_scaled_weights(g, rng, M)) continue;
    } else {
      M = ugtest::random_scaled_weights(g, rng);
    }
    ++graphs;
    auto t = build_transfer(g, M);
    auto sol = solve_kms(t);
    if (!sol.empty()) ++nonempty;
    auto brute = ugtest::brute_force_extreme_points(t);
    bool same_count = brute.size() == sol.extreme_points.size();

    std::vector<std::vector<Number>> cands = sol.extreme_points;
    if (sol.extreme_points.size() >= 2) {
      std::vector<Number> mid;
      for (std::size_t i = 0; i < t.size(); ++i) {
        mid.push_back((sol.extreme_points[0][i] + sol.extreme_points[1][i]) / Number(2));
      }
      cands.push_back(mid);
    }
    for (int k = 0; k < 4; ++k) cands.push_back(ugtest::random_distribution(rng, t.size()));
    for (const auto& p : sol.extreme_points) {
      auto bumped = p;
      bumped[0] += Number::rational(1, 1000);
      if (bumped.size() > 1) bumped[1] -= Number::rational(1, 1000);
      cands.push_back(bumped);
    }
    auto lattice = default_test_lattice(g);
    KmsVerifyOptions opt;
    opt.tol = kExactTol;
    for (const auto& x : cands) {
      ++candidates;
      bool fixed = is_normalized_fixed_point(t, x, kExactTol);
      bool verified = verify_kms_m(g, from_vector(t.vertices, x), M, lattice, opt).all_pass();
      if (fixed == verified && same_count) ++agree;
    }
  }
  line(6, agree == candidates,
       "graphs=" + std::to_string(graphs) + " with_states=" + std::to_string(nonempty) + " candidates_agree=" +
           std::to_string(agree) + "/" + std::to_string(candidates));
}

void criterion7() {
  auto lg = load_ultragraph_text(kBranching);
  Number beta = Number::rational(1, 2);
  auto sol = solve_kms(lg.graph, ScaledWeightM::from_beta(lg.weights, beta));
  if (sol.extreme_points.size() != 1) return line(7, false, "no unique solved state");
  auto good = kms_check(lg.graph, sol.state(0), lg.weights, beta, 3, kStarTol);
  std::vector<Number> x = sol.extreme_points[0];
  x[0] += Number(kPerturbStar);
  Number total = x[0] + x[1];
  for (auto& v : x) v /= total;
  auto bad = kms_check(lg.graph, from_vector(sol.vertices, x), lg.weights, beta, 3, kStarTol);
  line(7, good.violations == 0 && good.report.all_pass() && bad.violations >= 1,
       "elements=" + std::to_string(good.elements) + " pairs=" + std::to_string(good.pairs) +
           " violations=" + std::to_string(good.violations) + " perturbed_violations=" +
           std::to_string(bad.violations));
}

void criterion8() {
  ugtest::Rng rng(8008);
  int graphs = 0, empty = 0;
  for (int k = 0; k < 100; ++k) {
    Ultragraph g = ugtest::random_finite_ultragraph(rng, 6, 10);
    ++graphs;
    if (solve_ground(g).empty) ++empty;
  }
  for (const char* text : {kBranching, kGraph3}) {
    ++graphs;
    if (solve_ground(load_ultragraph_text(text).graph).empty) ++empty;
  }
  line(8, empty == graphs, "empty ground sets " + std::to_string(empty) + "/" + std::to_string(graphs));
}

}  // namespace

int main() {
  const std::vector<void (*)()> criteria = {criterion1, criterion2, criterion3, criterion4,
                                            criterion5, criterion6, criterion7, criterion8};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      line(static_cast<int>(i + 1), false, std::string("exception: ") + e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
