#include "ugkms/ultragraph_io.hpp"

#include <fstream>
#include <sstream>

#include "ugkms/errors.hpp"
#include "ugkms/sec6.hpp"

namespace ugkms {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Number parse_number(std::string_view text, int line) {
  try {
    return Number::parse(text);
  } catch (const NumberParseError& e) {
    throw ParseError(line, e.what());
  }
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) f(line, lineno);
    pos = nl + 1;
  }
}

}  // namespace

std::optional<Sec6Selector> parse_sec6_selector(std::string_view text) {
  text = trim(text);
  if (text.substr(0, 4) != "sec6") return std::nullopt;
  std::string_view rest = trim(text.substr(4));
  if (rest.empty() || rest.front() != '(' || rest.back() != ')') return std::nullopt;
  rest = rest.substr(1, rest.size() - 2);
  std::optional<Number> d;
  std::optional<Number> a;
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    std::size_t comma = rest.find(',', pos);
    if (comma == std::string_view::npos) comma = rest.size();
    std::string_view item = trim(rest.substr(pos, comma - pos));
    pos = comma + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError(0, "sec6 parameter without '=': " + std::string(item));
    std::string_view key = trim(item.substr(0, eq));
    Number val = parse_number(trim(item.substr(eq + 1)), 0);
    if (key == "d") {
      d = val;
    } else if (key == "a") {
      a = val;
    } else {
      throw ParseError(0, "unknown sec6 parameter '" + std::string(key) + "'");
    }
  }
  if (!d || !a) throw ParseError(0, "sec6 needs both d and a");
  if (!(*d > Number(1)) || !(*a > Number(1))) throw ParseError(0, "sec6 needs d > 1 and a > 1");
  return Sec6Selector{*d, *a};
}

ParsedGraph parse_ultragraph_text(std::string_view text) {
  ParsedGraph out;
  bool declared = false;
  auto vertex = [&](const std::string& name, int line) {
    if (auto v = out.builder.find_vertex(name)) return *v;
    if (declared) throw ParseError(line, "undeclared vertex '" + name + "'");
    return out.builder.add_vertex(name);
  };
  for_each_line(text, [&](std::string_view line, int lineno) {
    if (auto sel = parse_sec6_selector(line)) {
      out.sec6 = sel;
      return;
    }
    if (line.substr(0, 9) == "vertices:") {
      if (declared || out.builder.vertex_count() > 0) throw ParseError(lineno, "vertices declared twice or too late");
      declared = true;
      for (const auto& name : split_ws(line.substr(9))) {
        if (out.builder.find_vertex(name)) throw ParseError(lineno, "duplicate vertex '" + name + "'");
        out.builder.add_vertex(name);
      }
      return;
    }
    auto toks = split_ws(line);
    if (toks[0] == "edge") {
      if (toks.size() < 5 || toks[3] != "->") throw ParseError(lineno, "expected 'edge <id> <source> -> <targets>'");
      VertexId src = vertex(toks[2], lineno);
      std::vector<VertexId> range;
      for (std::size_t i = 4; i < toks.size(); ++i) range.push_back(vertex(toks[i], lineno));
      try {
        out.builder.add_edge(toks[1], src, std::move(range));
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
      return;
    }
    if (toks[0] == "weight") {
      if (toks.size() != 3) throw ParseError(lineno, "expected 'weight <edge> <value>'");
      Number n = parse_number(toks[2], lineno);
      if (!(n > Number(1))) throw ParseError(lineno, "weight must exceed 1");
      if (toks[1] == "*") {
        out.default_weight = n;
      } else if (!out.weights.emplace(toks[1], n).second) {
        throw ParseError(lineno, "duplicate weight for " + toks[1]);
      }
      return;
    }
    throw ParseError(lineno, "unrecognized statement '" + toks[0] + "'");
  });
  if (out.sec6 && (out.builder.vertex_count() > 0 || !out.weights.empty())) {
    throw ParseError(0, "sec6 selector cannot be mixed with explicit vertices or edges");
  }
  return out;
}

namespace {

LoadedGraph load_sec6(const Sec6Selector& s) {
  return LoadedGraph(sec6::build(), sec6::weights(s.d, s.a), s);
}

}  // namespace

LoadedGraph load_ultragraph_text(std::string_view text) {
  ParsedGraph p = parse_ultragraph_text(text);
  if (p.sec6) return load_sec6(*p.sec6);
  Ultragraph g = p.builder.build();
  EdgeWeightN n;
  if (!p.weights.empty() || p.default_weight) {
    std::map<EdgeId, Number> table;
    for (const auto& [name, val] : p.weights) {
      auto e = g.find_edge(name);
      if (!e) throw ParseError(0, "weight for unknown edge '" + name + "'");
      table.emplace(*e, val);
    }
    n = EdgeWeightN::table(std::move(table), p.default_weight);
  }
  return LoadedGraph(std::move(g), std::move(n), std::nullopt);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedGraph load_ultragraph(std::string_view source) {
  if (auto sel = parse_sec6_selector(source)) return load_sec6(*sel);
  return load_ultragraph_text(read_file(std::string(source)));
}

MFunction parse_mfunction(const Ultragraph& g, std::string_view text) {
  MFunction m;
  for_each_line(text, [&](std::string_view line, int lineno) {
    auto toks = split_ws(line);
    if (toks.size() != 3 || toks[0] != "atom") throw ParseError(lineno, "expected 'atom <name> <value>'");
    Number val = parse_number(toks[2], lineno);
    if (auto k = g.find_emitter(toks[1])) {
      m.set_emitter(*k, val);
    } else if (auto v = g.find_vertex(toks[1])) {
      m.set_vertex(*v, val);
    } else {
      throw ParseError(lineno, "unknown atom '" + toks[1] + "'");
    }
  });
  return m;
}

std::string format_mfunction(const Ultragraph& g, const MFunction& m) {
  std::string out;
  for (const auto& [k, val] : m.emitter_values()) out += "atom " + g.emitter_name(k) + " " + val.str() + "\n";
  for (const auto& [v, val] : m.vertex_values()) out += "atom " + g.vertex_name(v) + " " + val.str() + "\n";
  return out;
}

ScaledWeightM parse_scaled_weights(const Ultragraph& g, std::string_view text) {
  std::map<EdgeId, Number> table;
  for_each_line(text, [&](std::string_view line, int lineno) {
    auto toks = split_ws(line);
    if (toks.size() != 3 || toks[0] != "M") throw ParseError(lineno, "expected 'M <edge> <value>'");
    auto e = g.find_edge(toks[1]);
    if (!e) throw ParseError(lineno, "unknown edge '" + toks[1] + "'");
    table.emplace(*e, parse_number(toks[2], lineno));
  });
  return ScaledWeightM::table(std::move(table));
}

}  // namespace ugkms
