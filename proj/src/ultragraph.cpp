#include "ugkms/ultragraph.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "ugkms/errors.hpp"

namespace ugkms {

namespace {

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

class FiniteOracle final : public FamilyOracle {
 public:
  FiniteOracle(std::vector<std::string> vertex_names, std::vector<std::string> edge_names,
               std::vector<VertexId> sources, std::vector<std::vector<VertexId>> ranges)
      : vertex_names_(std::move(vertex_names)),
        edge_names_(std::move(edge_names)),
        sources_(std::move(sources)),
        ranges_(std::move(ranges)),
        out_(vertex_names_.size()) {
    for (std::size_t i = 0; i < vertex_names_.size(); ++i) vertex_index_.emplace(vertex_names_[i], VertexId{i});
    for (std::size_t i = 0; i < edge_names_.size(); ++i) {
      edge_index_.emplace(edge_names_[i], EdgeId{i});
      out_[sources_[i].index].push_back(EdgeId{i});
      sort_unique(ranges_[i]);
    }
  }

  std::string family_name() const override { return "finite"; }
  std::optional<std::uint64_t> vertex_count() const override { return vertex_names_.size(); }
  std::optional<std::uint64_t> edge_count() const override { return edge_names_.size(); }

  std::string vertex_name(VertexId v) const override { return vertex_names_.at(v.index); }
  std::optional<VertexId> find_vertex(std::string_view name) const override {
    auto it = vertex_index_.find(std::string(name));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::string edge_name(EdgeId e) const override { return edge_names_.at(e.index); }
  std::optional<EdgeId> find_edge(std::string_view name) const override {
    auto it = edge_index_.find(std::string(name));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  VertexId source(EdgeId e) const override { return sources_.at(e.index); }
  bool range_contains(EdgeId e, VertexId v) const override {
    const auto& r = ranges_.at(e.index);
    return std::binary_search(r.begin(), r.end(), v);
  }
  SetClaim range_claim(EdgeId e) const override { return SetClaim{{}, ranges_.at(e.index)}; }
  Emission out_edges(VertexId v) const override { return Emission{false, out_.at(v.index)}; }

  std::vector<std::string> declared_emitters() const override { return {}; }
  bool emitter_contains(std::size_t, VertexId) const override { return false; }
  std::optional<EdgeId> emitter_edge(std::size_t, std::uint64_t) const override { return std::nullopt; }
  std::vector<VertexId> emitter_overlap(std::size_t, std::size_t) const override { return {}; }
  std::optional<VertexId> emitter_singleton(std::size_t) const override { return std::nullopt; }

  std::optional<SetClaim> top() const override {
    SetClaim all;
    for (std::size_t i = 0; i < vertex_names_.size(); ++i) all.vertices.push_back(VertexId{i});
    return all;
  }
  std::optional<SetClaim> exhaustion(std::uint64_t) const override { return top(); }
  std::map<std::string, SetClaim> named_sets() const override { return {{"G0", *top()}}; }

  std::vector<VertexId> vertex_window(std::uint64_t) const override { return top()->vertices; }
  std::vector<EdgeId> edge_window(std::uint64_t) const override {
    std::vector<EdgeId> all;
    for (std::size_t i = 0; i < edge_names_.size(); ++i) all.push_back(EdgeId{i});
    return all;
  }

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<VertexId> sources_;
  std::vector<std::vector<VertexId>> ranges_;
  std::vector<std::vector<EdgeId>> out_;
  std::map<std::string, VertexId, std::less<>> vertex_index_;
  std::map<std::string, EdgeId, std::less<>> edge_index_;
};

}  // namespace

Ultragraph::Ultragraph(std::shared_ptr<const FamilyOracle> oracle, Backend backend)
    : oracle_(std::move(oracle)), backend_(backend), emitter_names_(oracle_->declared_emitters()) {
  std::set<std::string> seen;
  for (std::size_t k = 0; k < emitter_names_.size(); ++k) {
    if (!seen.insert(emitter_names_[k]).second) {
      throw Error("minimal emitter '" + emitter_names_[k] + "' declared twice");
    }
    if (auto v = oracle_->emitter_singleton(k)) {
      singleton_emitters_.emplace(*v, EmitterId{static_cast<std::uint32_t>(k)});
    }
  }
}

std::optional<EmitterId> Ultragraph::find_emitter(std::string_view name) const {
  for (std::size_t k = 0; k < emitter_names_.size(); ++k) {
    if (emitter_names_[k] == name) return EmitterId{static_cast<std::uint32_t>(k)};
  }
  return std::nullopt;
}

std::vector<EmitterId> Ultragraph::emitters() const {
  std::vector<EmitterId> out;
  for (std::size_t k = 0; k < emitter_names_.size(); ++k) out.push_back(EmitterId{static_cast<std::uint32_t>(k)});
  return out;
}

std::optional<EmitterId> Ultragraph::singleton_emitter(VertexId v) const {
  auto it = singleton_emitters_.find(v);
  if (it == singleton_emitters_.end()) return std::nullopt;
  return it->second;
}

GeneralizedVertex Ultragraph::normalize(std::vector<EmitterId> emitters, std::vector<VertexId> finite) const {
  sort_unique(finite);
  for (VertexId v : finite) {
    if (auto k = singleton_emitter(v)) emitters.push_back(*k);
  }
  sort_unique(emitters);
  GeneralizedVertex out;
  out.emitters_ = std::move(emitters);
  for (VertexId v : finite) {
    bool covered = std::any_of(out.emitters_.begin(), out.emitters_.end(),
                               [&](EmitterId k) { return emitter_contains(k, v); });
    if (covered) continue;
    if (backend_ == Backend::PresentedFamily && oracle_->out_edges(v).infinite) {
      throw RfumViolation(vertex_name(v), "vertex is an infinite emitter but no singleton emitter is declared");
    }
    out.finite_.push_back(v);
  }
  return out;
}

GeneralizedVertex Ultragraph::singleton(VertexId v) const { return normalize({}, {v}); }

GeneralizedVertex Ultragraph::vertex_set(std::span<const VertexId> vs) const {
  return normalize({}, std::vector<VertexId>(vs.begin(), vs.end()));
}

GeneralizedVertex Ultragraph::emitter_set(EmitterId k) const { return normalize({k}, {}); }

GeneralizedVertex Ultragraph::from_claim(const SetClaim& claim, std::string_view context) const {
  std::vector<EmitterId> ems;
  for (const auto& name : claim.emitters) {
    auto k = find_emitter(name);
    if (!k) throw RfumViolation(std::string(context), "'" + name + "' is not a declared minimal emitter");
    ems.push_back(*k);
  }
  return normalize(std::move(ems), claim.vertices);
}

GeneralizedVertex Ultragraph::range(EdgeId e) const {
  auto gv = from_claim(oracle_->range_claim(e), edge_name(e));
  if (gv.empty()) throw EmptyRange(edge_name(e));
  return gv;
}

GeneralizedVertex Ultragraph::unite(const GeneralizedVertex& a, const GeneralizedVertex& b) const {
  std::vector<EmitterId> ems = a.emitters_;
  ems.insert(ems.end(), b.emitters_.begin(), b.emitters_.end());
  std::vector<VertexId> fin = a.finite_;
  fin.insert(fin.end(), b.finite_.begin(), b.finite_.end());
  return normalize(std::move(ems), std::move(fin));
}

GeneralizedVertex Ultragraph::intersect(const GeneralizedVertex& a, const GeneralizedVertex& b) const {
  std::vector<EmitterId> common;
  std::set_intersection(a.emitters_.begin(), a.emitters_.end(), b.emitters_.begin(), b.emitters_.end(),
                        std::back_inserter(common));
  std::vector<VertexId> fin;
  for (EmitterId x : a.emitters_) {
    for (EmitterId y : b.emitters_) {
      if (x == y) continue;
      auto ov = emitter_overlap(x, y);
      fin.insert(fin.end(), ov.begin(), ov.end());
    }
  }
  for (VertexId v : a.finite_) {
    if (member(v, b)) fin.push_back(v);
  }
  for (VertexId v : b.finite_) {
    if (member(v, a)) fin.push_back(v);
  }
  return normalize(std::move(common), std::move(fin));
}

std::optional<GeneralizedVertex> Ultragraph::top() const {
  auto claim = oracle_->top();
  if (!claim) return std::nullopt;
  return from_claim(*claim, "top");
}

std::optional<GeneralizedVertex> Ultragraph::exhaustion(std::uint64_t k) const {
  auto claim = oracle_->exhaustion(k);
  if (!claim) return std::nullopt;
  return from_claim(*claim, "exhaustion");
}

std::optional<GeneralizedVertex> Ultragraph::named_set(std::string_view name) const {
  auto sets = oracle_->named_sets();
  auto it = sets.find(std::string(name));
  if (it == sets.end()) return std::nullopt;
  return from_claim(it->second, name);
}

bool Ultragraph::member(VertexId v, const GeneralizedVertex& a) const {
  if (std::binary_search(a.finite_.begin(), a.finite_.end(), v)) return true;
  return std::any_of(a.emitters_.begin(), a.emitters_.end(), [&](EmitterId k) { return emitter_contains(k, v); });
}

bool Ultragraph::subset(const GeneralizedVertex& a, const GeneralizedVertex& b) const {
  // An emitter inside b must be one of b's emitters: its intersection with
  // any other minimal emitter or with b's finite part is finite.
  if (!std::includes(b.emitters_.begin(), b.emitters_.end(), a.emitters_.begin(), a.emitters_.end())) return false;
  return std::all_of(a.finite_.begin(), a.finite_.end(), [&](VertexId v) { return member(v, b); });
}

std::vector<VertexId> Ultragraph::emitter_overlap(EmitterId a, EmitterId b) const {
  if (a == b) throw std::invalid_argument("emitter_overlap needs distinct emitters");
  auto lo = std::min(a, b);
  auto hi = std::max(a, b);
  auto out = oracle_->emitter_overlap(lo.index, hi.index);
  sort_unique(out);
  return out;
}

Emission Ultragraph::emission(const GeneralizedVertex& a, std::size_t depth) const {
  Emission out;
  for (VertexId v : a.finite_) {
    auto ev = oracle_->out_edges(v);
    out.edges.insert(out.edges.end(), ev.edges.begin(), ev.edges.end());
  }
  for (EmitterId k : a.emitters_) {
    out.infinite = true;
    for (std::size_t n = 0; n < depth; ++n) {
      auto e = emitter_edge(k, n);
      if (!e) break;
      out.edges.push_back(*e);
    }
  }
  sort_unique(out.edges);
  return out;
}

Decomposition Ultragraph::decompose(const GeneralizedVertex& a) const { return Decomposition{a.emitters_, a.finite_}; }

RfumResult Ultragraph::check_rfum(std::size_t depth, std::uint64_t vertex_limit) const {
  using Status = RfumResult::Status;
  for (EmitterId k : emitters()) {
    for (std::size_t n = 0; n < depth; ++n) {
      auto e = emitter_edge(k, n);
      if (!e) {
        return {Status::UndecidableAtDepth, std::nullopt,
                "emitter " + emitter_name(k) + " yielded only " + std::to_string(n) + " edges"};
      }
      if (!emitter_contains(k, source(*e))) {
        return {Status::Violation, *e, "edge is enumerated for emitter " + emitter_name(k) + " but its source is outside"};
      }
    }
  }
  auto window = vertex_window(vertex_limit);
  for (EmitterId x : emitters()) {
    for (EmitterId y : emitters()) {
      if (!(x < y)) continue;
      auto ov = emitter_overlap(x, y);
      for (VertexId v : window) {
        bool both = emitter_contains(x, v) && emitter_contains(y, v);
        if (both != std::binary_search(ov.begin(), ov.end(), v)) {
          return {Status::Violation, std::nullopt,
                  "declared overlap of " + emitter_name(x) + " and " + emitter_name(y) + " is wrong at " + vertex_name(v)};
        }
      }
    }
  }
  for (EdgeId e : edge_window(depth)) {
    GeneralizedVertex r;
    try {
      r = range(e);
    } catch (const RfumViolation& err) {
      return {Status::Violation, e, err.what()};
    } catch (const EmptyRange& err) {
      return {Status::Violation, e, err.what()};
    }
    for (VertexId v : window) {
      if (oracle_->range_contains(e, v) != member(v, r)) {
        return {Status::Violation, e, "decomposition of r(" + edge_name(e) + ") disagrees at " + vertex_name(v)};
      }
    }
  }
  return {};
}

std::string Ultragraph::format(const GeneralizedVertex& a) const {
  if (a.empty()) return "{}";
  std::string out;
  for (EmitterId k : a.emitters_) {
    if (!out.empty()) out += '|';
    out += emitter_name(k);
  }
  if (!a.finite_.empty()) {
    if (!out.empty()) out += '|';
    out += '{';
    for (std::size_t i = 0; i < a.finite_.size(); ++i) {
      if (i) out += ',';
      out += vertex_name(a.finite_[i]);
    }
    out += '}';
  }
  return out;
}

std::string Ultragraph::format_path(const EdgePath& p) const {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += edge_name(p[i]);
  }
  return out;
}

VertexId FiniteUltragraphBuilder::add_vertex(std::string name) {
  if (find_vertex(name)) throw Error("duplicate vertex " + name);
  vertex_names_.push_back(std::move(name));
  return VertexId{vertex_names_.size() - 1};
}

EdgeId FiniteUltragraphBuilder::add_edge(std::string name, VertexId source, std::vector<VertexId> range) {
  if (std::find(edge_names_.begin(), edge_names_.end(), name) != edge_names_.end()) {
    throw Error("duplicate edge " + name);
  }
  if (source.index >= vertex_names_.size()) throw Error("edge " + name + " has an unknown source");
  for (VertexId v : range) {
    if (v.index >= vertex_names_.size()) throw Error("edge " + name + " has an unknown range vertex");
  }
  edge_names_.push_back(std::move(name));
  sources_.push_back(source);
  ranges_.push_back(std::move(range));
  return EdgeId{edge_names_.size() - 1};
}

std::optional<VertexId> FiniteUltragraphBuilder::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
    if (vertex_names_[i] == name) return VertexId{i};
  }
  return std::nullopt;
}

std::vector<FiniteUltragraphBuilder::Issue> FiniteUltragraphBuilder::issues() const {
  std::vector<Issue> out;
  for (std::size_t i = 0; i < edge_names_.size(); ++i) {
    if (ranges_[i].empty()) out.push_back({Issue::Kind::EmptyRange, edge_names_[i]});
  }
  std::vector<bool> emits(vertex_names_.size(), false);
  for (VertexId s : sources_) emits[s.index] = true;
  for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
    if (!emits[i]) out.push_back({Issue::Kind::Sink, vertex_names_[i]});
  }
  return out;
}

Ultragraph FiniteUltragraphBuilder::build() const {
  for (const auto& issue : issues()) {
    if (issue.kind == Issue::Kind::EmptyRange) throw EmptyRange(issue.name);
    throw SinkDetected(issue.name);
  }
  auto oracle = std::make_shared<FiniteOracle>(vertex_names_, edge_names_, sources_, ranges_);
  return Ultragraph(std::move(oracle), Backend::FiniteExplicit);
}

}  // namespace ugkms
