#include "ugkms/kms_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ugkms/errors.hpp"
#include "ugkms/kernels.hpp"
#include "ugkms/linalg.hpp"

namespace ugkms {

bool TransferMatrix::is_exact() const {
  return std::all_of(entries.begin(), entries.end(), [](const Number& x) { return x.is_exact(); });
}

std::vector<double> TransferMatrix::to_double() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& x : entries) out.push_back(x.to_double());
  return out;
}

TransferMatrix build_transfer(const Ultragraph& g, const ScaledWeightM& M) {
  auto count = g.oracle().vertex_count();
  auto edges = g.oracle().edge_count();
  if (!g.is_finite() || !count || !edges) throw DomainViolation("transfer matrices need a finite ultragraph");
  TransferMatrix t;
  t.vertices = g.vertex_window(*count);
  std::size_t n = t.vertices.size();
  t.entries.assign(n * n, Number(0));
  for (EdgeId e : g.edge_window(*edges)) {
    Number w = M(e);
    std::size_t v = g.source(e).index;
    GeneralizedVertex r = g.range(e);
    for (VertexId u : r.finite_part()) t.entries[v * n + u.index] += w;
  }
  return t;
}

TransferMatrix build_transfer(const Ultragraph& g, const EdgeWeightN& n, const Number& beta, NumericMode mode) {
  return build_transfer(g, ScaledWeightM::from_beta(n, beta, mode));
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const std::vector<bool>& adj, std::size_t n) {
  // Tarjan; components come out sinks first.
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t u = 0; u < n; ++u) {
      if (!adj[v * n + u]) continue;
      if (index[u] < 0) {
        visit(u);
        low[v] = std::min(low[v], low[u]);
      } else if (on_stack[u]) {
        low[v] = std::min(low[v], index[u]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t u;
      do {
        u = stack.back();
        stack.pop_back();
        on_stack[u] = false;
        comp.push_back(u);
      } while (u != v);
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return out;
}

namespace {

struct Iteration {
  double lo = 0;
  double hi = 0;
  bool converged = false;
};

Iteration power_iterate(const std::vector<double>& a, std::size_t n, double tol, std::optional<double> threshold,
                        std::size_t max_it) {
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> y(n);
  Iteration it;
  for (std::size_t k = 0; k < max_it; ++k) {
    kernels::matvec(a.data(), x.data(), y.data(), n);
    kernels::ratio_bounds(y.data(), x.data(), n, &it.lo, &it.hi);
    if (it.hi - it.lo < tol / 10 || (threshold && (it.hi < *threshold || it.lo > *threshold))) {
      it.converged = true;
      return it;
    }
    double top = *std::max_element(y.begin(), y.end());
    if (!(top > 0)) {
      it.lo = it.hi = 0;
      it.converged = true;
      return it;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / top;
  }
  return it;
}

SpectralResult block_radius(const std::vector<double>& a, std::size_t n, const SpectralOptions& opt) {
  SpectralResult r;
  if (n == 1) {
    r.rho = r.lo = r.hi = a[0];
    r.method = "exact-size-1";
    return r;
  }
  auto th = opt.decide_against;
  Iteration it = power_iterate(a, n, opt.tol, th, opt.max_iterations);
  if (it.converged) {
    r.lo = it.lo;
    r.hi = it.hi;
  } else {
    std::vector<double> sq(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        double aik = a[i * n + k];
        if (aik == 0) continue;
        for (std::size_t j = 0; j < n; ++j) sq[i * n + j] += aik * a[k * n + j];
      }
    }
    // Width of the squared bounds scales like 2 rho times the original width.
    double rough = std::max(it.hi, 1e-300);
    it = power_iterate(sq, n, opt.tol * rough, th ? std::optional<double>(*th * *th) : std::nullopt,
                       opt.max_iterations);
    if (it.converged) {
      r.method = "square";
      r.lo = std::sqrt(std::max(it.lo, 0.0));
      r.hi = std::sqrt(std::max(it.hi, 0.0));
    } else {
      std::vector<double> sh(a.size());
      for (std::size_t i = 0; i < n * n; ++i) sh[i] = a[i] / 2;
      for (std::size_t i = 0; i < n; ++i) sh[i * n + i] += 0.5;
      it = power_iterate(sh, n, opt.tol / 2, th ? std::optional<double>((1 + *th) / 2) : std::nullopt,
                         4 * opt.max_iterations);
      r.method = "shifted";
      r.converged = it.converged;
      r.lo = 2 * it.lo - 1;
      r.hi = 2 * it.hi - 1;
    }
  }
  r.rho = (r.lo + r.hi) / 2;
  return r;
}

std::vector<double> submatrix(const std::vector<double>& a, std::size_t n, const std::vector<std::size_t>& idx) {
  std::vector<double> out(idx.size() * idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out[i * idx.size() + j] = a[idx[i] * n + idx[j]];
  }
  return out;
}

}  // namespace

SpectralResult spectral_radius(const std::vector<double>& a, std::size_t n, const SpectralOptions& opt) {
  std::vector<bool> adj(n * n);
  for (std::size_t i = 0; i < n * n; ++i) adj[i] = a[i] > 0;
  SpectralResult best;
  std::string method = "exact-size-1";
  bool any = false;
  for (const auto& comp : strongly_connected_components(adj, n)) {
    SpectralResult r = block_radius(submatrix(a, n, comp), comp.size(), opt);
    if (r.method != "exact-size-1" && (method == "exact-size-1" || method == "power")) method = r.method;
    bool converged = best.converged && r.converged;
    if (!any || r.rho > best.rho) best = r;
    best.converged = converged;
    any = true;
    if (opt.decide_against && r.lo > *opt.decide_against) break;
  }
  best.method = method;
  return best;
}

namespace {

enum class Rho { Below, Equal, Above };

template <class T>
T to_scalar(const Number& x);
template <>
mpq_class to_scalar<mpq_class>(const Number& x) {
  return x.exact();
}
template <>
double to_scalar<double>(const Number& x) {
  return x.to_double();
}

Number from_scalar(const mpq_class& x) { return Number(x); }
Number from_scalar(double x) { return Number(x); }

bool positive(const mpq_class& x) { return sgn(x) > 0; }
bool positive(double x) { return x > 0; }

template <class T>
linalg::Matrix<T> block(const TransferMatrix& t, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  linalg::Matrix<T> out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = to_scalar<T>(t.at(rows[i], cols[j]));
  }
  return out;
}

template <class T>
Rho classify_exact(const TransferMatrix& t, const std::vector<std::size_t>& comp) {
  auto a = block<T>(t, comp, comp);
  std::size_t k = comp.size();
  if (k == 1) {
    int c = cmp(a(0, 0), T(1));
    return c < 0 ? Rho::Below : c == 0 ? Rho::Equal : Rho::Above;
  }
  auto shifted = a;
  for (std::size_t i = 0; i < k; ++i) shifted(i, i) -= T(1);
  auto ns = linalg::nullspace(shifted);
  if (ns.size() == 1) {
    const auto& v = ns.front();
    bool pos = std::all_of(v.begin(), v.end(), [](const T& x) { return sgn(x) > 0; });
    bool neg = std::all_of(v.begin(), v.end(), [](const T& x) { return sgn(x) < 0; });
    if (pos || neg) return Rho::Equal;
  }
  linalg::Matrix<T> ima(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) ima(i, j) = (i == j ? T(1) : T(0)) - a(i, j);
  }
  auto inv = linalg::inverse(ima);
  if (inv && std::all_of(inv->data.begin(), inv->data.end(), [](const T& x) { return sgn(x) >= 0; })) return Rho::Below;
  return Rho::Above;
}

Rho classify_float(const TransferMatrix& t, const std::vector<std::size_t>& comp, double tol, std::string& method) {
  auto a = block<double>(t, comp, comp);
  SpectralOptions opt;
  opt.tol = tol;
  SpectralResult r = block_radius(a.data, comp.size(), opt);
  method = r.method;
  if (std::fabs(r.rho - 1) <= tol) return Rho::Equal;
  return r.rho < 1 ? Rho::Below : Rho::Above;
}

template <class T>
std::optional<std::vector<T>> extreme_vector(const TransferMatrix& t, const std::vector<std::size_t>& comp,
                                             const std::vector<std::size_t>& upstream) {
  std::size_t n = t.size();
  std::size_t k = comp.size();
  linalg::Matrix<T> a = block<T>(t, comp, comp);
  for (std::size_t i = 0; i < k; ++i) a(i, i) -= T(1);
  for (std::size_t j = 0; j < k; ++j) a(k - 1, j) = T(1);
  std::vector<T> rhs(k, T(0));
  rhs[k - 1] = T(1);
  auto xc = linalg::solve(a, rhs);
  if (!xc) return std::nullopt;
  std::vector<T> x(n, T(0));
  for (std::size_t i = 0; i < k; ++i) x[comp[i]] = (*xc)[i];
  if (!upstream.empty()) {
    std::size_t u = upstream.size();
    linalg::Matrix<T> lhs(u, u);
    std::vector<T> b(u, T(0));
    for (std::size_t i = 0; i < u; ++i) {
      for (std::size_t j = 0; j < u; ++j) {
        lhs(i, j) = (i == j ? T(1) : T(0)) - to_scalar<T>(t.at(upstream[i], upstream[j]));
      }
      for (std::size_t j = 0; j < k; ++j) b[i] += to_scalar<T>(t.at(upstream[i], comp[j])) * (*xc)[j];
    }
    auto xu = linalg::solve(lhs, b);
    if (!xu) return std::nullopt;
    for (std::size_t i = 0; i < u; ++i) x[upstream[i]] = (*xu)[i];
  }
  T total(0);
  for (const auto& v : x) total += v;
  if (!positive(total)) return std::nullopt;
  for (auto& v : x) v /= total;
  return x;
}

template <class T>
void fill_solution(const TransferMatrix& t, const SolveOptions& opt, KmsSolution& sol) {
  std::size_t n = t.size();
  std::vector<bool> adj(n * n);
  for (std::size_t i = 0; i < n * n; ++i) adj[i] = !t.entries[i].is_zero();
  auto comps = strongly_connected_components(adj, n);
  std::size_t c = comps.size();
  std::vector<std::size_t> comp_of(n);
  for (std::size_t i = 0; i < c; ++i) {
    for (auto v : comps[i]) comp_of[v] = i;
  }
  // reaches[i][j]: some vertex of class i reaches class j.
  std::vector<std::vector<bool>> reaches(c, std::vector<bool>(c, false));
  for (std::size_t i = 0; i < c; ++i) {
    std::vector<std::size_t> todo{i};
    reaches[i][i] = true;
    while (!todo.empty()) {
      std::size_t cur = todo.back();
      todo.pop_back();
      for (auto v : comps[cur]) {
        for (std::size_t u = 0; u < n; ++u) {
          if (adj[v * n + u] && !reaches[i][comp_of[u]]) {
            reaches[i][comp_of[u]] = true;
            todo.push_back(comp_of[u]);
          }
        }
      }
    }
  }
  std::vector<Rho> status(c);
  for (std::size_t i = 0; i < c; ++i) {
    if constexpr (std::is_same_v<T, mpq_class>) {
      status[i] = classify_exact<T>(t, comps[i]);
    } else {
      std::string method;
      status[i] = classify_float(t, comps[i], opt.tol, method);
      if (method == "square" || method == "shifted") {
        sol.notes.push_back("class of vertex #" + std::to_string(comps[i].front()) + ": spectral radius via " + method +
                            " fallback");
      }
    }
  }
  for (std::size_t i = 0; i < c; ++i) {
    if (status[i] != Rho::Equal) continue;
    std::vector<std::size_t> upstream;
    bool ok = true;
    for (std::size_t j = 0; j < c; ++j) {
      if (j == i || !reaches[j][i]) continue;
      if (status[j] != Rho::Below) ok = false;
      upstream.insert(upstream.end(), comps[j].begin(), comps[j].end());
    }
    if (!ok) continue;
    std::sort(upstream.begin(), upstream.end());
    auto x = extreme_vector<T>(t, comps[i], upstream);
    if (!x) continue;
    std::vector<Number> point;
    point.reserve(n);
    for (const auto& v : *x) point.push_back(from_scalar(v));
    sol.extreme_points.push_back(std::move(point));
  }
}

}  // namespace

KmsSolution solve_kms(const TransferMatrix& t, const SolveOptions& opt) {
  KmsSolution sol;
  sol.vertices = t.vertices;
  sol.exact = t.is_exact() && !opt.force_float;
  if (t.size() == 0) return sol;
  if (sol.exact) {
    fill_solution<mpq_class>(t, opt, sol);
  } else {
    fill_solution<double>(t, opt, sol);
  }
  return sol;
}

KmsSolution solve_kms(const Ultragraph& g, const ScaledWeightM& M, const SolveOptions& opt) {
  return solve_kms(build_transfer(g, M), opt);
}

MFunction KmsSolution::state(std::size_t i) const {
  MFunction m;
  const auto& p = extreme_points.at(i);
  for (std::size_t k = 0; k < vertices.size(); ++k) m.set_vertex(vertices[k], p[k]);
  return m;
}

bool is_normalized_fixed_point(const TransferMatrix& t, const std::vector<Number>& m, double tol) {
  std::size_t n = t.size();
  if (m.size() != n) return false;
  Number total(0);
  for (const auto& x : m) {
    if (!approx_geq(x, Number(0), tol)) return false;
    total += x;
  }
  if (!approx_equal(total, Number(1), tol)) return false;
  for (std::size_t i = 0; i < n; ++i) {
    Number s(0);
    for (std::size_t j = 0; j < n; ++j) s += t.at(i, j) * m[j];
    if (!approx_equal(s, m[i], tol)) return false;
  }
  return true;
}

double spectral_radius_at(const Ultragraph& g, const EdgeWeightN& n, double beta, double tol) {
  auto t = build_transfer(g, n, Number(beta));
  SpectralOptions opt;
  opt.tol = tol;
  return spectral_radius(t.to_double(), t.size(), opt).rho;
}

CriticalResult critical_beta(const Ultragraph& g, const EdgeWeightN& n, double lo, double hi, double tol) {
  if (!(lo < hi)) throw DomainViolation("critical_beta needs lo < hi");
  if (lo < 0) throw DomainViolation("critical_beta needs lo >= 0");
  CriticalResult res;
  res.rho_lo = spectral_radius_at(g, n, lo, tol);
  res.rho_hi = spectral_radius_at(g, n, hi, tol);
  if (res.rho_lo < 1 - tol) {
    res.message = "rho(T_" + format_double(lo) + ") < 1: no KMS state at any beta >= " + format_double(lo);
    return res;
  }
  if (res.rho_hi > 1 + tol) {
    res.message = "rho(T_" + format_double(hi) + ") > 1: critical beta above " + format_double(hi);
    return res;
  }
  SpectralOptions opt;
  opt.tol = tol;
  opt.decide_against = 1.0;
  while (hi - lo > tol) {
    double mid = (lo + hi) / 2;
    auto t = build_transfer(g, n, Number(mid));
    double rho = spectral_radius(t.to_double(), t.size(), opt).rho;
    if (rho >= 1) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  res.found = true;
  res.beta = (lo + hi) / 2;
  return res;
}

MFunction GroundDescription::point(const std::vector<Number>& weights) const {
  if (weights.size() != coordinates.size()) throw std::invalid_argument("one weight per minimal emitter expected");
  MFunction m;
  for (std::size_t k = 0; k < coordinates.size(); ++k) m.set_emitter(coordinates[k], weights[k]);
  m.set_vertex_rule([](VertexId) -> std::optional<Number> { return Number(0); });
  return m;
}

MFunction GroundDescription::extreme_point(std::size_t k) const {
  std::vector<Number> w(coordinates.size(), Number(0));
  w.at(k) = Number(1);
  return point(w);
}

GroundDescription solve_ground(const Ultragraph& g) {
  GroundDescription d;
  if (g.is_finite()) return d;
  if (!g.top() && !g.exhaustion(0)) throw NoExhaustingSequence();
  d.coordinates = g.emitters();
  d.empty = d.coordinates.empty();
  return d;
}

}  // namespace ugkms
