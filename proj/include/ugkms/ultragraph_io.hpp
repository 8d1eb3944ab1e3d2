#pragma once

// Text formats.
//
// Ultragraph files, one statement per line, '#' starts a comment:
//   vertices: v u w
//   edge e1 v -> u w
//   weight e1 2          (decimal or p/q; N(e) must exceed 1)
//   weight * 3/2         (default for edges without their own line)
//   sec6(d=2, a=2)       (selects the built-in family instead)
// Without a vertices line the vertex set is inferred in order of appearance.
//
// m-function files: `atom <name> <value>`, where the name is a declared
// emitter or a vertex (emitter names win).
// M files: `M <edge> <value>`.

#include <optional>
#include <string>
#include <string_view>

#include "ugkms/number.hpp"
#include "ugkms/state_functions.hpp"
#include "ugkms/ultragraph.hpp"

namespace ugkms {

struct Sec6Selector {
  Number d;
  Number a;
};

struct ParsedGraph {
  FiniteUltragraphBuilder builder;
  std::map<std::string, Number> weights;
  std::optional<Number> default_weight;
  std::optional<Sec6Selector> sec6;
};

ParsedGraph parse_ultragraph_text(std::string_view text);

/// `sec6(d=<num>, a=<num>)`, or nullopt when the text is not a selector.
std::optional<Sec6Selector> parse_sec6_selector(std::string_view text);

struct LoadedGraph {
  LoadedGraph(Ultragraph g, EdgeWeightN n, std::optional<Sec6Selector> s)
      : graph(std::move(g)), weights(std::move(n)), sec6(std::move(s)) {}
  Ultragraph graph;
  EdgeWeightN weights;  // undefined when the file gives none
  std::optional<Sec6Selector> sec6;
};

/// Validates ranges and sinks of finite graphs (EmptyRange, SinkDetected).
LoadedGraph load_ultragraph_text(std::string_view text);
/// Accepts a built-in selector or a file path.
LoadedGraph load_ultragraph(std::string_view source);

std::string read_file(const std::string& path);

MFunction parse_mfunction(const Ultragraph& g, std::string_view text);
/// Atoms listed: every emitter with a value, then vertices in index order.
std::string format_mfunction(const Ultragraph& g, const MFunction& m);

ScaledWeightM parse_scaled_weights(const Ultragraph& g, std::string_view text);

}  // namespace ugkms
