#include "ugkms/lattice_expr.hpp"

#include <algorithm>
#include <cctype>

#include "ugkms/errors.hpp"

namespace ugkms {

LatticeExpr LatticeExpr::range(std::string edge) {
  LatticeExpr e;
  e.kind = Kind::Range;
  e.name = std::move(edge);
  return e;
}

LatticeExpr LatticeExpr::vertices(std::vector<std::string> vs) {
  LatticeExpr e;
  e.kind = Kind::Vertices;
  e.names = std::move(vs);
  return e;
}

LatticeExpr LatticeExpr::named(std::string n) {
  LatticeExpr e;
  e.kind = Kind::Name;
  e.name = std::move(n);
  return e;
}

LatticeExpr LatticeExpr::unite(LatticeExpr a, LatticeExpr b) {
  LatticeExpr e;
  e.kind = Kind::Union;
  e.children = {std::move(a), std::move(b)};
  return e;
}

LatticeExpr LatticeExpr::intersect(LatticeExpr a, LatticeExpr b) {
  LatticeExpr e;
  e.kind = Kind::Intersection;
  e.children = {std::move(a), std::move(b)};
  return e;
}

std::string LatticeExpr::str() const {
  switch (kind) {
    case Kind::Range:
      return "r(" + name + ")";
    case Kind::Name:
      return name;
    case Kind::Vertices: {
      std::string out = "{";
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
      }
      return out + "}";
    }
    case Kind::Union:
    case Kind::Intersection: {
      const char* op = kind == Kind::Union ? " | " : " & ";
      std::string out = "(";
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += op;
        out += children[i].str();
      }
      return out + ")";
    }
  }
  return {};
}

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\''; }

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  LatticeExpr parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(0, "lattice expression '" + std::string(s_) + "': " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  LatticeExpr expr() {
    auto e = term();
    while (eat('|')) e = LatticeExpr::unite(std::move(e), term());
    return e;
  }

  LatticeExpr term() {
    auto e = prim();
    while (eat('&')) e = LatticeExpr::intersect(std::move(e), prim());
    return e;
  }

  LatticeExpr prim() {
    if (eat('(')) {
      auto e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    if (eat('{')) {
      std::vector<std::string> vs;
      if (eat('}')) return LatticeExpr::vertices({});
      do {
        vs.push_back(ident());
      } while (eat(','));
      if (!eat('}')) fail("missing '}'");
      return LatticeExpr::vertices(std::move(vs));
    }
    std::string id = ident();
    if (id == "r" && eat('(')) {
      std::string edge = ident();
      if (!eat(')')) fail("missing ')' after edge");
      return LatticeExpr::range(std::move(edge));
    }
    return LatticeExpr::named(std::move(id));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

VertexId lookup_vertex(const Ultragraph& g, const std::string& name) {
  auto v = g.find_vertex(name);
  if (!v) throw ParseError(0, "unknown vertex '" + name + "'");
  return *v;
}

EdgeId lookup_edge(const Ultragraph& g, const std::string& name) {
  auto e = g.find_edge(name);
  if (!e) throw ParseError(0, "unknown edge '" + name + "'");
  return *e;
}

}  // namespace

LatticeExpr parse_lattice_expr(std::string_view text) { return ExprParser(text).parse(); }

GeneralizedVertex canonicalize(const Ultragraph& g, const LatticeExpr& expr) {
  switch (expr.kind) {
    case LatticeExpr::Kind::Range:
      return g.range(lookup_edge(g, expr.name));
    case LatticeExpr::Kind::Vertices: {
      std::vector<VertexId> vs;
      for (const auto& n : expr.names) vs.push_back(lookup_vertex(g, n));
      return g.vertex_set(vs);
    }
    case LatticeExpr::Kind::Name: {
      if (auto s = g.named_set(expr.name)) return *s;
      if (auto k = g.find_emitter(expr.name)) return g.emitter_set(*k);
      return g.singleton(lookup_vertex(g, expr.name));
    }
    case LatticeExpr::Kind::Union:
    case LatticeExpr::Kind::Intersection: {
      GeneralizedVertex acc = canonicalize(g, expr.children.front());
      for (std::size_t i = 1; i < expr.children.size(); ++i) {
        auto next = canonicalize(g, expr.children[i]);
        acc = expr.kind == LatticeExpr::Kind::Union ? g.unite(acc, next) : g.intersect(acc, next);
      }
      return acc;
    }
  }
  return {};
}

GeneralizedVertex canonicalize(const Ultragraph& g, std::string_view text) {
  return canonicalize(g, parse_lattice_expr(text));
}

GeneralizedVertex canonicalize_nonempty(const Ultragraph& g, std::string_view text) {
  auto a = canonicalize(g, text);
  if (a.empty()) throw EmptySetError("'" + std::string(text) + "' is the empty set");
  return a;
}

namespace {

bool claim_contains(const Ultragraph& g, const SetClaim& claim, VertexId v) {
  if (std::find(claim.vertices.begin(), claim.vertices.end(), v) != claim.vertices.end()) return true;
  for (const auto& name : claim.emitters) {
    auto k = g.find_emitter(name);
    if (k && g.emitter_contains(*k, v)) return true;
  }
  return false;
}

}  // namespace

bool eval_membership(const Ultragraph& g, const LatticeExpr& expr, VertexId v) {
  switch (expr.kind) {
    case LatticeExpr::Kind::Range:
      return g.oracle().range_contains(lookup_edge(g, expr.name), v);
    case LatticeExpr::Kind::Vertices:
      return std::any_of(expr.names.begin(), expr.names.end(),
                         [&](const std::string& n) { return lookup_vertex(g, n) == v; });
    case LatticeExpr::Kind::Name: {
      auto sets = g.oracle().named_sets();
      if (auto it = sets.find(expr.name); it != sets.end()) return claim_contains(g, it->second, v);
      if (auto k = g.find_emitter(expr.name)) return g.emitter_contains(*k, v);
      return lookup_vertex(g, expr.name) == v;
    }
    case LatticeExpr::Kind::Union:
      return std::any_of(expr.children.begin(), expr.children.end(),
                         [&](const LatticeExpr& c) { return eval_membership(g, c, v); });
    case LatticeExpr::Kind::Intersection:
      return std::all_of(expr.children.begin(), expr.children.end(),
                         [&](const LatticeExpr& c) { return eval_membership(g, c, v); });
  }
  return false;
}

}  // namespace ugkms
