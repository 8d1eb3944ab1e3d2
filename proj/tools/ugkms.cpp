// ugkms: command-line front end.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ugkms/errors.hpp"
#include "ugkms/kappa.hpp"
#include "ugkms/kms_solver.hpp"
#include "ugkms/lattice_expr.hpp"
#include "ugkms/points.hpp"
#include "ugkms/report.hpp"
#include "ugkms/sec6.hpp"
#include "ugkms/shift_space.hpp"
#include "ugkms/star_symbolic.hpp"
#include "ugkms/state_functions.hpp"
#include "ugkms/ultragraph_io.hpp"

using namespace ugkms;

namespace {

struct Globals {
  std::size_t depth = 64;
  std::size_t fbound = 8;
  double tol = 1e-9;
  bool exact = false;
  [[nodiscard]] NumericMode mode() const { return exact ? NumericMode::Exact : NumericMode::Auto; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

EdgeWeightN require_weights(const LoadedGraph& lg) {
  if (!lg.weights.defined()) throw Error("the ultragraph file gives no edge weights N");
  return lg.weights;
}

/// `--M`: a beta value (with the file's weights N) or an M file.
ScaledWeightM scaled_from_arg(const LoadedGraph& lg, const std::string& arg, const Globals& gl) {
  try {
    Number beta = Number::parse(arg);
    return ScaledWeightM::from_beta(require_weights(lg), beta, gl.mode());
  } catch (const NumberParseError&) {
    return parse_scaled_weights(lg.graph, read_file(arg));
  }
}

std::vector<GeneralizedVertex> lattice_for(const LoadedGraph& lg, std::uint64_t window) {
  if (lg.sec6) return sec6::test_lattice(lg.graph, window);
  return default_test_lattice(lg.graph, window);
}

int run_check(const std::string& file, const Globals& gl) {
  Report rep;
  std::string text = file.rfind("sec6(", 0) == 0 ? file : read_file(file);
  ParsedGraph pg = parse_ultragraph_text(text);
  if (!pg.sec6) {
    std::string sinks;
    std::string empties;
    for (const auto& issue : pg.builder.issues()) {
      auto& list = issue.kind == FiniteUltragraphBuilder::Issue::Kind::Sink ? sinks : empties;
      list += (list.empty() ? "" : ",") + issue.name;
    }
    rep.add("no-sinks", sinks.empty(), sinks);
    rep.add("nonempty-ranges", empties.empty(), empties);
    if (!sinks.empty() || !empties.empty()) {
      std::cout << rep.str();
      return 1;
    }
  }
  LoadedGraph lg = load_ultragraph_text(text);
  RfumResult r = lg.graph.check_rfum(gl.depth);
  std::string w = r.message;
  if (r.edge) w = lg.graph.edge_name(*r.edge) + (w.empty() ? "" : ": " + w);
  if (r.status == RfumResult::Status::UndecidableAtDepth) w = "at-depth " + w;
  rep.add("rfum", r.status != RfumResult::Status::Violation, w);
  std::cout << rep.str();
  return rep.exit_code();
}

int run_g0(const std::string& file, const std::vector<std::string>& exprs, const std::vector<std::string>& members) {
  LoadedGraph lg = load_ultragraph(file);
  const Ultragraph& g = lg.graph;
  if (exprs.empty()) {
    std::cout << "emitters:";
    for (auto k : g.emitters()) std::cout << " " << g.emitter_name(k);
    std::cout << "\n";
    if (auto top = g.top()) std::cout << "top = " << g.format(*top) << "\n";
  }
  for (const auto& e : exprs) {
    GeneralizedVertex a = canonicalize(g, e);
    std::cout << e << " = " << g.format(a) << "\n";
    for (const auto& name : members) {
      auto v = g.find_vertex(name);
      if (!v) throw Error("unknown vertex '" + name + "'");
      std::cout << "  " << name << (g.member(*v, a) ? " in " : " not in ") << e << "\n";
    }
  }
  return 0;
}

std::optional<Cylinder> cylinder_arg(const Ultragraph& g, const std::string& text) { return parse_cylinder(g, text); }

int run_semiring(const std::string& file, const std::string& op, const std::string& a, const std::string& b) {
  LoadedGraph lg = load_ultragraph(file);
  const Ultragraph& g = lg.graph;
  auto c = cylinder_arg(g, a);
  auto print = [&](const std::vector<Cylinder>& pieces) {
    if (pieces.empty()) std::cout << "(empty)\n";
    for (const auto& p : pieces) std::cout << format_cylinder(g, p) << "\n";
  };
  if (op == "refine") {
    if (!c) throw EmptySetError("cylinder is empty");
    auto pieces = cyl_refine(g, *c);
    print(pieces);
    auto part = check_partition(g, {*c}, {}, pieces);
    Report rep;
    rep.add("partition", part.ok, part.ok ? std::to_string(part.points) + " points" : part.witness);
    std::cout << rep.str();
    return rep.exit_code();
  }
  if (b.empty()) throw UsageError(op + " needs --with");
  auto d = cylinder_arg(g, b);
  if (op == "intersect") {
    std::optional<Cylinder> r;
    if (c && d) r = cyl_intersect(g, *c, *d);
    print(r ? std::vector<Cylinder>{*r} : std::vector<Cylinder>{});
    return 0;
  }
  if (op == "subset") {
    bool s = !c || (d && cyl_subset(g, *c, *d));
    std::cout << (s ? "true" : "false") << "\n";
    return 0;
  }
  if (op == "diff") {
    if (!c) {
      print({});
      return 0;
    }
    std::vector<Cylinder> pieces = d ? cyl_diff(g, *c, *d) : cyl_refine(g, *c);
    print(pieces);
    std::vector<Cylinder> outside;
    if (d) outside.push_back(*d);
    auto part = check_partition(g, {*c}, outside, pieces);
    Report rep;
    rep.add("partition", part.ok, part.ok ? std::to_string(part.points) + " points" : part.witness);
    std::cout << rep.str();
    return rep.exit_code();
  }
  throw UsageError("unknown semiring operation '" + op + "'");
}

int run_measure(const std::string& file, const std::string& mfile, const std::string& marg,
                const std::vector<std::string>& cyls, const Globals& gl) {
  LoadedGraph lg = load_ultragraph(file);
  const Ultragraph& g = lg.graph;
  KappaMeasure kappa(g, parse_mfunction(g, read_file(mfile)), scaled_from_arg(lg, marg, gl));
  std::vector<Cylinder> sets;
  for (const auto& text : cyls) {
    if (auto c = cylinder_arg(g, text)) sets.push_back(*c);
  }
  Number value = sets.size() == 1 ? kappa(sets.front()) : kappa.union_measure(sets);
  std::cout << value.str() << "\n";
  return 0;
}

int run_kms_solve(const std::string& file, const std::string& beta_text, const std::string& out_prefix,
                  const Globals& gl) {
  LoadedGraph lg = load_ultragraph(file);
  const Ultragraph& g = lg.graph;
  Number beta = Number::parse(beta_text);
  ScaledWeightM M = ScaledWeightM::from_beta(require_weights(lg), beta, gl.mode());
  SolveOptions so;
  so.tol = gl.tol;
  KmsSolution sol = solve_kms(g, M, so);
  std::cout << "# beta = " << beta.str() << "\n";
  std::cout << "# extreme points: " << sol.extreme_points.size() << (sol.exact ? " (exact)" : " (float)") << "\n";
  for (const auto& n : sol.notes) std::cout << "# " << n << "\n";
  Report rep;
  if (sol.empty()) std::cout << "# KMS states: empty\n";
  KmsVerifyOptions vo;
  vo.fbound = gl.fbound;
  vo.tol = gl.tol;
  vo.depth = gl.depth;
  auto lattice = default_test_lattice(g);
  for (std::size_t i = 0; i < sol.extreme_points.size(); ++i) {
    MFunction m = sol.state(i);
    std::string text = format_mfunction(g, m);
    if (out_prefix.empty()) {
      std::cout << "# state " << i + 1 << "\n" << text;
    } else {
      write_file(out_prefix + std::to_string(i + 1) + ".m", text);
    }
    rep.add(verify_kms_m(g, m, M, lattice, vo), "state" + std::to_string(i + 1) + "-");
  }
  std::cout << rep.str();
  return rep.exit_code();
}

int run_kms_critical(const std::string& file, double lo, double hi, double tol) {
  LoadedGraph lg = load_ultragraph(file);
  CriticalResult r = critical_beta(lg.graph, require_weights(lg), lo, hi, tol);
  if (!r.found) {
    std::cout << r.message << "\n";
    return 1;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "beta* = %.9f\n", r.beta);
  std::cout << buf;
  return 0;
}

int run_ground(const std::string& file, const Globals& gl) {
  LoadedGraph lg = load_ultragraph(file);
  const Ultragraph& g = lg.graph;
  GroundDescription d = solve_ground(g);
  if (d.empty) {
    std::cout << "# ground states: empty (no minimal infinite emitters)\n";
    Report rep;
    rep.add("ground-empty", true);
    std::cout << rep.str();
    return 0;
  }
  std::cout << "# ground states: m(E) free and nonnegative on";
  for (auto k : d.coordinates) std::cout << " " << g.emitter_name(k);
  std::cout << ", summing to 1; vertex atoms 0\n";
  auto lattice = lattice_for(lg, 30);
  Report rep;
  for (std::size_t k = 0; k < d.coordinates.size(); ++k) {
    MFunction m = d.extreme_point(k);
    std::cout << "# extreme point " << g.emitter_name(d.coordinates[k]) << "\n" << format_mfunction(g, m);
    rep.add(verify_ground_m(g, m, lattice, gl.tol), "ground-" + g.emitter_name(d.coordinates[k]) + "-");
  }
  std::cout << rep.str();
  return rep.exit_code();
}

int run_kmscheck(const std::string& file, const std::string& beta_text, const std::string& mfile, std::size_t len,
                 const std::vector<std::string>& elems, const Globals& gl) {
  LoadedGraph lg = load_ultragraph(file);
  const Ultragraph& g = lg.graph;
  Number beta = Number::parse(beta_text);
  MFunction m = parse_mfunction(g, read_file(mfile));
  EdgeWeightN n = require_weights(lg);
  if (!elems.empty()) {
    StateFunctional phi{m, ScaledWeightM::from_beta(n, beta, gl.mode())};
    for (const auto& e : elems) {
      // CLI11 strips the brackets of list-style values.
      MaybeSpanning x = parse_spanning(g, e.rfind('[', 0) == 0 ? e : "[" + e + "]");
      std::cout << "phi(" << format_spanning(g, x) << ") = " << phi_eval(g, phi, x).str() << "\n";
    }
  }
  KmsCheckResult r = kms_check(g, m, n, beta, len, gl.tol, gl.mode());
  std::cout << "# " << r.elements << " spanning elements, " << r.pairs << " pairs, " << r.violations
            << " violations\n";
  if (r.trace_case) std::cout << "# beta = 0: trace case, the extension from the core is not unique\n";
  Report rep;
  rep.add(r.report);
  std::cout << rep.str();
  return rep.exit_code();
}

struct Sec6Args {
  std::string d = "2";
  std::string a = "2";
  std::string beta = "2";
  std::string mw;
  bool verify = false;
  bool ground = false;
  std::uint64_t window = 30;
  std::string out;
};

int run_sec6(const Sec6Args& s, const Globals& gl) {
  sec6::Params p{Number::parse(s.d), Number::parse(s.a), Number::parse(s.beta), gl.mode()};
  Ultragraph g = sec6::build();
  auto lattice = sec6::test_lattice(g, s.window);
  std::ostringstream head;
  Report rep;
  auto cond = [&](const char* name, const sec6::Condition& c) {
    head << "# " << name << ": ";
    if (!c.precondition) {
      head << "d_beta >= 1\n";
    } else {
      head << c.value->str() << (c.holds ? " <= 1\n" : " > 1\n");
    }
  };
  cond("sufficient condition 6 d^2/(1-d^2)", sec6::sufficient_B_condition(p.d, p.beta, p.mode));
  cond("exact condition 3 d^2/(1-d)", sec6::exact_B_condition(p.d, p.beta, p.mode));
  std::string mtext;
  if (s.ground) {
    head << "# ground states: m(B) + m(w) = 1, vertex atoms 0\n";
    for (const char* t : {"0", "1/2", "1"}) {
      MFunction m = sec6::ground_state(g, Number::parse(t));
      rep.add(verify_ground_m(g, m, lattice, gl.tol), std::string("ground-t=") + t + "-");
      if (std::string(t) != "1/2") continue;
      for (std::uint64_t i = 1; i <= s.window; ++i) m.set_vertex(sec6::v(i), Number(0));
      mtext = format_mfunction(g, m);
    }
  } else {
    auto fam = sec6::kms_states(p);
    if (!fam) {
      head << "# no KMS states: exact condition fails or the series diverges\n";
      std::cout << head.str();
      if (s.verify) {
        rep.add("kms-nonempty", false, "empty at beta = " + p.beta.str());
        std::cout << rep.str();
        return 1;
      }
      return 0;
    }
    head << "# d_beta = " << fam->d_beta.str() << "\n# S = " << fam->series.str() << "\n# m_w range = ["
         << fam->mw_min.str() << ", 1]\n";
    if (!s.mw.empty()) {
      sec6::State st = fam->state(Number::parse(s.mw));
      head << "# m_B = " << st.m_B.str() << "\n";
      MFunction m = st.mfunction(g);
      MFunction listed;
      listed.set_emitter(*g.find_emitter("w"), st.m_w);
      listed.set_emitter(*g.find_emitter("B"), st.m_B);
      for (std::uint64_t i = 1; i <= s.window; ++i) listed.set_vertex(sec6::v(i), st.vertex(i));
      mtext = format_mfunction(g, listed);
      if (s.verify) {
        KmsVerifyOptions vo;
        vo.fbound = gl.fbound;
        vo.tol = gl.tol;
        vo.depth = gl.depth;
        vo.tail = sec6::tail_sums(g, p, st);
        rep.add(verify_kms_m(g, m, sec6::scaled_weights(p), lattice, vo));
      }
    }
  }
  std::cout << head.str();
  if (!s.out.empty() && !mtext.empty()) {
    write_file(s.out, mtext);
  } else {
    std::cout << mtext;
  }
  std::cout << rep.str();
  return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KMS and ground states of ultragraph C*-algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--depth", gl.depth, "emission depth for bounded checks")->capture_default_str();
  app.add_option("--fbound", gl.fbound, "largest finite subset of an infinite emission in (m3)")
      ->capture_default_str();
  app.add_option("--tol", gl.tol, "tolerance for float comparisons")->capture_default_str();
  app.add_flag("--exact", gl.exact, "rational arithmetic only; irrational inputs are errors");

  std::string file;
  auto* check = app.add_subcommand("check", "validate an ultragraph (sinks, ranges, RFUM)");
  check->add_option("file", file, "ultragraph file or sec6(d=..,a=..)")->required();

  std::vector<std::string> exprs;
  std::vector<std::string> members;
  auto* g0 = app.add_subcommand("g0", "canonical forms of lattice expressions");
  g0->add_option("file", file)->required();
  g0->add_option("--expr", exprs, "lattice expression");
  g0->add_option("--member", members, "vertex to test against each expression");

  std::string op;
  std::string cyl_a;
  std::string cyl_b;
  auto* semi = app.add_subcommand("semiring", "cylinder operations");
  semi->add_option("file", file)->required();
  semi->add_option("--op", op, "intersect | diff | subset | refine")->required();
  semi->add_option("--cyl", cyl_a, "(stem ; base ; excluded)")->required();
  semi->add_option("--with", cyl_b, "second cylinder");

  std::string mfile;
  std::string marg;
  std::vector<std::string> cyls;
  auto* measure = app.add_subcommand("measure", "kappa of a cylinder or finite union");
  measure->add_option("file", file)->required();
  measure->add_option("--m", mfile, "m-function file")->required();
  measure->add_option("--M", marg, "beta, or an M file")->required();
  measure->add_option("--cyl", cyls, "cylinder (repeat for a union)")->required();

  std::string beta;
  std::string out_prefix;
  double lo = 0;
  double hi = 64;
  double ctol = 1e-9;
  auto* kms = app.add_subcommand("kms", "KMS states of finite ultragraphs");
  kms->require_subcommand(1);
  auto* solve = kms->add_subcommand("solve", "extreme KMS_beta states");
  solve->add_option("file", file)->required();
  solve->add_option("--beta", beta)->required();
  solve->add_option("--out", out_prefix, "write state i to <prefix>i.m");
  auto* critical = kms->add_subcommand("critical", "beta with spectral radius 1");
  critical->add_option("file", file)->required();
  critical->add_option("--lo", lo)->capture_default_str();
  critical->add_option("--hi", hi)->capture_default_str();
  critical->add_option("--tol", ctol)->capture_default_str();

  auto* ground = app.add_subcommand("ground", "ground states");
  ground->add_option("file", file)->required();

  std::size_t len = 3;
  std::vector<std::string> elems;
  auto* kc = app.add_subcommand("kmscheck", "KMS condition on spanning elements");
  kc->add_option("file", file)->required();
  kc->add_option("--beta", beta)->required();
  kc->add_option("--m", mfile)->required();
  kc->add_option("--len", len)->capture_default_str();
  kc->add_option("--elem", elems, "[mu; A; nu] to evaluate");

  Sec6Args s6;
  auto* sec = app.add_subcommand("sec6", "the built-in infinite family");
  sec->add_option("--d", s6.d)->capture_default_str();
  sec->add_option("--a", s6.a)->capture_default_str();
  sec->add_option("--beta", s6.beta)->capture_default_str();
  sec->add_option("--mw", s6.mw, "m(w) of the state to emit");
  sec->add_flag("--verify", s6.verify, "run the (m1)-(m4) verifier on the emitted state");
  sec->add_flag("--ground", s6.ground, "ground states instead of KMS states");
  sec->add_option("--window", s6.window, "vertices listed and tested")->capture_default_str();
  sec->add_option("--out", s6.out, "write the m-function file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(file, gl);
    if (*g0) return run_g0(file, exprs, members);
    if (*semi) return run_semiring(file, op, cyl_a, cyl_b);
    if (*measure) return run_measure(file, mfile, marg, cyls, gl);
    if (*solve) return run_kms_solve(file, beta, out_prefix, gl);
    if (*critical) return run_kms_critical(file, lo, hi, ctol);
    if (*ground) return run_ground(file, gl);
    if (*kc) return run_kmscheck(file, beta, mfile, len, elems, gl);
    if (*sec) return run_sec6(s6, gl);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InexactError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumberParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
