#include "ugkms/shift_space.hpp"

#include <algorithm>
#include <sstream>

#include "ugkms/errors.hpp"
#include "ugkms/lattice_expr.hpp"

namespace ugkms {

namespace {

void sort_unique(std::vector<EdgeId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<EdgeId>& sorted, EdgeId e) { return std::binary_search(sorted.begin(), sorted.end(), e); }

EdgePath extend(EdgePath p, EdgeId e) {
  p.push_back(e);
  return p;
}

bool is_prefix(const EdgePath& a, const EdgePath& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::vector<EdgeId> merged(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  std::vector<EdgeId> out = a;
  out.insert(out.end(), b.begin(), b.end());
  sort_unique(out);
  return out;
}

}  // namespace

bool is_path(const Ultragraph& g, const EdgePath& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!g.member(g.source(p[i + 1]), g.range(p[i]))) return false;
  }
  return true;
}

GeneralizedVertex path_range(const Ultragraph& g, const EdgePath& p) {
  if (p.empty()) throw std::invalid_argument("range of the empty path");
  return g.range(p.back());
}

void validate_ultrapath(const Ultragraph& g, const Ultrapath& x) {
  if (x.terminal.empty()) throw DomainViolation("ultrapath with empty terminal set");
  if (!is_path(g, x.edges)) throw DomainViolation("not a path: " + g.format_path(x.edges));
  if (!x.edges.empty() && !g.subset(x.terminal, path_range(g, x.edges))) {
    throw DomainViolation("terminal set not inside r(" + g.format_path(x.edges) + ")");
  }
}

std::optional<Ultrapath> concat(const Ultragraph& g, const Ultrapath& x, const Ultrapath& y) {
  if (y.edges.empty()) {
    GeneralizedVertex meet = g.intersect(x.terminal, y.terminal);
    if (meet.empty()) return std::nullopt;
    return Ultrapath{x.edges, meet};
  }
  if (!g.member(g.source(y.edges.front()), x.terminal)) return std::nullopt;
  EdgePath edges = x.edges;
  edges.insert(edges.end(), y.edges.begin(), y.edges.end());
  return Ultrapath{edges, y.terminal};
}

Cylinder::Kind Cylinder::kind() const {
  if (base.emitters().size() == 1 && base.finite_part().empty()) return Kind::MinEmitterBase;
  if (base.finite_emission()) return Kind::FiniteEmissionBase;
  return Kind::Mixed;
}

std::optional<Cylinder> make_cylinder(const Ultragraph& g, EdgePath stem, GeneralizedVertex base,
                                      std::vector<EdgeId> excluded) {
  if (!is_path(g, stem)) throw DomainViolation("cylinder stem is not a path: " + g.format_path(stem));
  if (!stem.empty() && !g.subset(base, g.range(stem.back()))) {
    throw DomainViolation("cylinder base " + g.format(base) + " is not inside r(" + g.format_path(stem) + ")");
  }
  if (base.empty()) return std::nullopt;
  sort_unique(excluded);
  for (EdgeId e : excluded) {
    if (!g.member(g.source(e), base)) {
      throw DomainViolation("excluded edge " + g.edge_name(e) + " does not start in " + g.format(base));
    }
  }
  if (base.finite_emission()) {
    std::vector<VertexId> sources;
    std::vector<EdgeId> kept;
    for (EdgeId e : g.emission(base).edges) {
      if (contains(excluded, e)) continue;
      sources.push_back(g.source(e));
    }
    if (sources.empty()) return std::nullopt;
    base = g.vertex_set(sources);
    for (EdgeId e : excluded) {
      if (g.member(g.source(e), base)) kept.push_back(e);
    }
    excluded = std::move(kept);
  }
  return Cylinder{std::move(stem), std::move(base), std::move(excluded)};
}

std::string format_cylinder(const Ultragraph& g, const Cylinder& c) {
  std::string out = "(" + g.format_path(c.stem) + " ; " + g.format(c.base) + " ; ";
  out += g.format_path(c.excluded);
  return out + ")";
}

std::optional<Cylinder> parse_cylinder(const Ultragraph& g, std::string_view text) {
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError(0, "cylinder '" + std::string(text) + "': " + why);
  };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw fail("expected '(stem ; base ; excluded)'");
  s = s.substr(1, s.size() - 2);
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t semi = s.find(';', pos);
    if (semi == std::string_view::npos) {
      parts.push_back(s.substr(pos));
      break;
    }
    parts.push_back(s.substr(pos, semi - pos));
    pos = semi + 1;
  }
  if (parts.size() != 2 && parts.size() != 3) throw fail("expected two or three ';'-separated parts");
  auto edges = [&](std::string_view list) {
    EdgePath out;
    std::istringstream in{std::string(list)};
    std::string tok;
    while (in >> tok) {
      auto e = g.find_edge(tok);
      if (!e) throw fail("unknown edge '" + tok + "'");
      out.push_back(*e);
    }
    return out;
  };
  EdgePath stem = edges(parts[0]);
  GeneralizedVertex base = canonicalize(g, parts[1]);
  std::vector<EdgeId> excluded = parts.size() == 3 ? edges(parts[2]) : std::vector<EdgeId>{};
  return make_cylinder(g, std::move(stem), std::move(base), std::move(excluded));
}

std::vector<EdgeId> allowed_edges(const Ultragraph& g, const Cylinder& c) {
  if (!c.base.finite_emission()) throw std::invalid_argument("allowed_edges needs a finite-emission base");
  std::vector<EdgeId> out;
  for (EdgeId e : g.emission(c.base).edges) {
    if (!contains(c.excluded, e)) out.push_back(e);
  }
  return out;
}

Membership cyl_member(const Ultragraph& g, const Point& p, const Cylinder& c) {
  const auto& stem = c.stem;
  if (p.emitter && p.path == stem) {
    const auto& ems = c.base.emitters();
    return std::binary_search(ems.begin(), ems.end(), *p.emitter) ? Membership::In : Membership::Out;
  }
  if (p.path.size() <= stem.size()) {
    if (!p.emitter && is_prefix(p.path, stem)) return Membership::NeedLongerPrefix;
    return Membership::Out;
  }
  if (!is_prefix(stem, p.path)) return Membership::Out;
  EdgeId next = p.path[stem.size()];
  if (contains(c.excluded, next)) return Membership::Out;
  return g.member(g.source(next), c.base) ? Membership::In : Membership::Out;
}

std::optional<Cylinder> cyl_intersect(const Ultragraph& g, const Cylinder& a, const Cylinder& b) {
  if (a.stem == b.stem) {
    GeneralizedVertex base = g.intersect(a.base, b.base);
    std::vector<EdgeId> excluded;
    for (EdgeId e : merged(a.excluded, b.excluded)) {
      if (g.member(g.source(e), base)) excluded.push_back(e);
    }
    return make_cylinder(g, a.stem, std::move(base), std::move(excluded));
  }
  const Cylinder& shorter = a.stem.size() < b.stem.size() ? a : b;
  const Cylinder& longer = a.stem.size() < b.stem.size() ? b : a;
  if (!is_prefix(shorter.stem, longer.stem)) return std::nullopt;
  EdgeId next = longer.stem[shorter.stem.size()];
  if (contains(shorter.excluded, next) || !g.member(g.source(next), shorter.base)) return std::nullopt;
  return longer;
}

bool cyl_subset(const Ultragraph& g, const Cylinder& small, const Cylinder& big) {
  auto meet = cyl_intersect(g, small, big);
  return meet && *meet == small;
}

namespace {

void append(std::vector<Cylinder>& out, std::vector<Cylinder> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

void append(std::vector<Cylinder>& out, std::optional<Cylinder> c) {
  if (c) out.push_back(std::move(*c));
}

// c and c1 in S, c1 inside c.
std::vector<Cylinder> diff_semiring(const Ultragraph& g, const Cylinder& c, const Cylinder& c1) {
  std::vector<Cylinder> out;
  if (c1.stem.size() == c.stem.size()) {
    if (c1.kind() == Cylinder::Kind::MinEmitterBase) {
      for (EdgeId e : c1.excluded) {
        if (!contains(c.excluded, e)) append(out, cyl_refine(g, extend(c.stem, e), g.range(e)));
      }
      return out;
    }
    append(out, make_cylinder(g, c.stem, c.base, merged(c.excluded, allowed_edges(g, c1))));
    return out;
  }
  EdgeId next = c1.stem[c.stem.size()];
  append(out, make_cylinder(g, c.stem, c.base, merged(c.excluded, {next})));
  for (auto& piece : cyl_refine(g, extend(c.stem, next), g.range(next))) {
    auto meet = cyl_intersect(g, piece, c1);
    if (!meet) {
      out.push_back(std::move(piece));
    } else {
      append(out, diff_semiring(g, piece, *meet));
    }
  }
  return out;
}

}  // namespace

std::vector<Cylinder> cyl_diff(const Ultragraph& g, const Cylinder& c, const Cylinder& c1) {
  if (!cyl_subset(g, c1, c)) {
    throw NotSubset(format_cylinder(g, c1) + " is not contained in " + format_cylinder(g, c));
  }
  std::vector<Cylinder> current = cyl_refine(g, c);
  for (const auto& q : cyl_refine(g, c1)) {
    std::vector<Cylinder> next;
    for (const auto& r : current) {
      auto meet = cyl_intersect(g, r, q);
      if (!meet) {
        next.push_back(r);
      } else {
        append(next, diff_semiring(g, r, *meet));
      }
    }
    current = std::move(next);
  }
  return current;
}

std::vector<Cylinder> cyl_refine(const Ultragraph& g, const EdgePath& stem, const GeneralizedVertex& base,
                                 const std::vector<EdgeId>& excluded) {
  auto whole = make_cylinder(g, stem, base, excluded);
  if (!whole) return {};
  if (whole->in_semiring()) return {*whole};
  const auto& ems = whole->base.emitters();
  std::vector<VertexId> shared;
  for (std::size_t i = 0; i < ems.size(); ++i) {
    for (std::size_t j = i + 1; j < ems.size(); ++j) {
      auto ov = g.emitter_overlap(ems[i], ems[j]);
      shared.insert(shared.end(), ov.begin(), ov.end());
    }
  }
  std::sort(shared.begin(), shared.end());
  shared.erase(std::unique(shared.begin(), shared.end()), shared.end());
  std::vector<Cylinder> out;
  for (EmitterId k : ems) {
    std::vector<EdgeId> fk;
    for (EdgeId e : whole->excluded) {
      if (g.emitter_contains(k, g.source(e))) fk.push_back(e);
    }
    for (VertexId v : shared) {
      if (!g.emitter_contains(k, v)) continue;
      auto em = g.out_edges(v).edges;
      fk.insert(fk.end(), em.begin(), em.end());
    }
    append(out, make_cylinder(g, stem, g.emitter_set(k), std::move(fk)));
  }
  std::vector<VertexId> singles = shared;
  singles.insert(singles.end(), whole->base.finite_part().begin(), whole->base.finite_part().end());
  std::sort(singles.begin(), singles.end());
  for (VertexId v : singles) {
    std::vector<EdgeId> fv;
    for (EdgeId e : whole->excluded) {
      if (g.source(e) == v) fv.push_back(e);
    }
    append(out, make_cylinder(g, stem, g.singleton(v), std::move(fv)));
  }
  return out;
}

std::vector<Cylinder> expand_finite_emission(const Ultragraph& g, const Cylinder& c) {
  std::vector<Cylinder> out;
  for (EdgeId e : allowed_edges(g, c)) append(out, cyl_refine(g, extend(c.stem, e), g.range(e)));
  return out;
}

Cylinder theta_edge(const Ultragraph& g, EdgeId e, const Cylinder& c) {
  GeneralizedVertex r = g.range(e);
  bool ok = c.stem.empty() ? g.subset(c.base, r) : g.member(g.source(c.stem.front()), r);
  if (!ok) throw DomainViolation(format_cylinder(g, c) + " is not in the domain of theta_" + g.edge_name(e));
  EdgePath stem{e};
  stem.insert(stem.end(), c.stem.begin(), c.stem.end());
  return *make_cylinder(g, std::move(stem), c.base, c.excluded);
}

Cylinder theta_inverse(const Ultragraph& g, EdgeId e, const Cylinder& c) {
  if (c.stem.empty() || c.stem.front() != e) {
    throw DomainViolation(format_cylinder(g, c) + " is not in the domain of theta_" + g.edge_name(e) + "^-1");
  }
  return *make_cylinder(g, EdgePath(c.stem.begin() + 1, c.stem.end()), c.base, c.excluded);
}

Cylinder theta_word(const Ultragraph& g, const std::vector<Letter>& word, const Cylinder& c) {
  Cylinder cur = c;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    cur = it->inverse ? theta_inverse(g, it->edge, cur) : theta_edge(g, it->edge, cur);
  }
  return cur;
}

}  // namespace ugkms
