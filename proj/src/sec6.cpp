#include "ugkms/sec6.hpp"

#include <algorithm>
#include <charconv>

#include "ugkms/errors.hpp"

namespace ugkms::sec6 {

namespace {

std::optional<std::uint64_t> parse_index(std::string_view s) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || out == 0 || s.front() == '0') return std::nullopt;
  return out;
}

// Edge index 2(i-1) is e_i, 2(i-1)+1 is f_i.
std::uint64_t edge_number(EdgeId e) { return e.index / 2 + 1; }
bool is_f(EdgeId e) { return e.index % 2 == 1; }

class Sec6Oracle final : public FamilyOracle {
 public:
  explicit Sec6Oracle(Options opt)
      : opt_(std::move(opt)), emitters_(opt_.emitters.value_or(std::vector<std::string>{"w", "B"})) {}

  std::string family_name() const override { return "sec6"; }
  std::optional<std::uint64_t> vertex_count() const override { return std::nullopt; }
  std::optional<std::uint64_t> edge_count() const override { return std::nullopt; }

  std::string vertex_name(VertexId x) const override {
    return x.index == 0 ? std::string("w") : "v" + std::to_string(x.index);
  }
  std::optional<VertexId> find_vertex(std::string_view name) const override {
    if (name == "w") return w();
    if (name.size() > 1 && name.front() == 'v') {
      if (auto i = parse_index(name.substr(1))) return v(*i);
    }
    return std::nullopt;
  }
  std::string edge_name(EdgeId x) const override {
    return (is_f(x) ? "f" : "e") + std::to_string(edge_number(x));
  }
  std::optional<EdgeId> find_edge(std::string_view name) const override {
    if (name.size() < 2 || (name.front() != 'e' && name.front() != 'f')) return std::nullopt;
    auto i = parse_index(name.substr(1));
    if (!i) return std::nullopt;
    return name.front() == 'e' ? e(*i) : f(*i);
  }

  VertexId source(EdgeId x) const override { return is_f(x) ? w() : v(edge_number(x)); }

  bool range_contains(EdgeId x, VertexId u) const override {
    if (is_f(x)) return u.index >= 1;
    std::uint64_t i = edge_number(x);
    if (i <= 3) return u.index == i || u.index >= 4;
    return u.index == i - 3 || u.index == i;
  }

  SetClaim range_claim(EdgeId x) const override {
    if (is_f(x)) return SetClaim{{"B"}, {v(1), v(2), v(3)}};
    std::uint64_t i = edge_number(x);
    if (i <= 3) return SetClaim{{"B"}, {v(i)}};
    return SetClaim{{}, {v(i - 3), v(i)}};
  }

  Emission out_edges(VertexId u) const override {
    if (u.index == 0) return Emission{true, {}};
    return Emission{false, {e(u.index)}};
  }

  std::vector<std::string> declared_emitters() const override { return emitters_; }

  bool emitter_contains(std::size_t k, VertexId u) const override {
    const auto& name = emitters_.at(k);
    if (name == "w") return u.index == 0;
    if (name == "B") return u.index >= 4;
    return false;
  }

  std::optional<EdgeId> emitter_edge(std::size_t k, std::uint64_t n) const override {
    const auto& name = emitters_.at(k);
    if (name == "w") return f(n + 1);
    if (name == "B") return e(n + 4);
    return std::nullopt;
  }

  std::vector<VertexId> emitter_overlap(std::size_t, std::size_t) const override { return {}; }

  std::optional<VertexId> emitter_singleton(std::size_t k) const override {
    if (emitters_.at(k) == "w") return w();
    return std::nullopt;
  }

  std::optional<SetClaim> top() const override {
    if (opt_.hide_top) return std::nullopt;
    return SetClaim{{"w", "B"}, {v(1), v(2), v(3)}};
  }

  std::optional<SetClaim> exhaustion(std::uint64_t k) const override {
    SetClaim c{{"w", "B"}, {}};
    for (std::uint64_t i = 1; i <= std::min<std::uint64_t>(k + 1, 3); ++i) c.vertices.push_back(v(i));
    return c;
  }

  std::map<std::string, SetClaim> named_sets() const override {
    std::map<std::string, SetClaim> out{{"G0", SetClaim{{"B"}, {v(1), v(2), v(3)}}}};
    if (auto t = top()) out.emplace("F0", *t);
    return out;
  }

  std::vector<VertexId> vertex_window(std::uint64_t limit) const override {
    std::vector<VertexId> out{w()};
    for (std::uint64_t i = 1; i <= limit; ++i) out.push_back(v(i));
    return out;
  }

  std::vector<EdgeId> edge_window(std::uint64_t limit) const override {
    std::vector<EdgeId> out;
    for (std::uint64_t i = 0; i < 2 * limit; ++i) out.push_back(EdgeId{i});
    return out;
  }

 private:
  Options opt_;
  std::vector<std::string> emitters_;
};

}  // namespace

Ultragraph build(const Options& opt) {
  return Ultragraph(std::make_shared<Sec6Oracle>(opt), Backend::PresentedFamily);
}

EdgeWeightN weights(const Number& d, const Number& a) {
  if (!(d > Number(1)) || !(a > Number(1))) throw DomainViolation("sec6 needs d > 1 and a > 1");
  return EdgeWeightN([d, a](EdgeId x) { return is_f(x) ? pow_int(a, static_cast<long>(edge_number(x))) : d; });
}

ScaledWeightM scaled_weights(const Params& p) {
  if (!(p.d > Number(1)) || !(p.a > Number(1))) throw DomainViolation("sec6 needs d > 1 and a > 1");
  if (p.beta < Number(0)) throw DomainViolation("beta must be nonnegative");
  Number md = pow_real(p.d, -p.beta, p.mode);
  Number ma = pow_real(p.a, -p.beta, p.mode);
  return ScaledWeightM([md, ma](EdgeId x) { return is_f(x) ? pow_int(ma, static_cast<long>(edge_number(x))) : md; });
}

Number dbeta(const Number& d, const Number& beta, NumericMode mode) {
  Number x = pow_real(d, -beta, mode);
  if (!(x < Number(1))) throw DivergentAtZero("d^-beta = " + x.str() + " is not below 1");
  return x / (Number(1) - x);
}

Condition sufficient_B_condition(const Number& d, const Number& beta, NumericMode mode) {
  Condition c;
  Number x;
  try {
    x = dbeta(d, beta, mode);
  } catch (const DivergentAtZero&) {
    return c;
  }
  if (!(x < Number(1))) return c;
  c.precondition = true;
  c.value = Number(6) * x * x / (Number(1) - x * x);
  c.holds = *c.value <= Number(1);
  return c;
}

Condition exact_B_condition(const Number& d, const Number& beta, NumericMode mode) {
  Condition c;
  Number x;
  try {
    x = dbeta(d, beta, mode);
  } catch (const DivergentAtZero&) {
    return c;
  }
  if (!(x < Number(1))) return c;
  c.precondition = true;
  c.value = Number(3) * x * x / (Number(1) - x);
  c.holds = *c.value <= Number(1);
  return c;
}

std::optional<Number> series_sum(const Number& a, const Number& beta, NumericMode mode) {
  Number y = pow_real(a, -beta, mode);
  if (!(y < Number(1))) return std::nullopt;
  return y / (Number(1) - y);
}

Number State::vertex(std::uint64_t i) const {
  if (i == 0) throw std::invalid_argument("vertex index starts at 1");
  return pow_int(d_beta, static_cast<long>((i - 1) / 3 + 1)) * m_B;
}

MFunction State::mfunction(const Ultragraph& g) const {
  MFunction m;
  m.set_emitter(*g.find_emitter("w"), m_w);
  m.set_emitter(*g.find_emitter("B"), m_B);
  State copy = *this;
  m.set_vertex_rule([copy](VertexId x) -> std::optional<Number> {
    if (x.index == 0) return std::nullopt;
    return copy.vertex(x.index);
  });
  return m;
}

State KmsFamily::state(const Number& m_w) const {
  if (m_w < mw_min || m_w > Number(1)) {
    throw MwOutOfRange("m_w = " + m_w.str() + " outside [" + mw_min.str() + ", 1]");
  }
  return State{m_w, (Number(1) - m_w) / (Number(1) + Number(3) * d_beta), d_beta};
}

std::optional<KmsFamily> kms_states(const Params& p) {
  Condition c;
  try {
    c = exact_B_condition(p.d, p.beta, p.mode);
  } catch (const DivergentAtZero&) {
    return std::nullopt;
  }
  if (!c.precondition || !c.holds) return std::nullopt;
  auto s = series_sum(p.a, p.beta, p.mode);
  if (!s) return std::nullopt;
  KmsFamily fam{p, dbeta(p.d, p.beta, p.mode), *s, *s / (Number(1) + *s)};
  return fam;
}

EmitterTailSum tail_sums(const Ultragraph& g, const Params& p, const State& s) {
  auto kw = g.find_emitter("w");
  auto kb = g.find_emitter("B");
  auto series = series_sum(p.a, p.beta, p.mode);
  Number m_g0 = s.m_B * (Number(1) + Number(3) * s.d_beta);
  Number b_tail = Number(3) * s.m_B * s.d_beta * s.d_beta / (Number(1) - s.d_beta);
  return [=](EmitterId k) -> std::optional<Number> {
    if (kw && k == *kw) {
      if (!series) return std::nullopt;
      return *series * m_g0;
    }
    if (kb && k == *kb) {
      if (!(s.d_beta < Number(1))) return std::nullopt;
      return b_tail;
    }
    return std::nullopt;
  };
}

MFunction ground_state(const Ultragraph& g, const Number& t) {
  if (t < Number(0) || t > Number(1)) throw DomainViolation("ground-state parameter must lie in [0,1]");
  MFunction m;
  m.set_emitter(*g.find_emitter("w"), Number(1) - t);
  m.set_emitter(*g.find_emitter("B"), t);
  m.set_vertex_rule([](VertexId x) -> std::optional<Number> {
    if (x.index == 0) return std::nullopt;
    return Number(0);
  });
  return m;
}

std::vector<GeneralizedVertex> test_lattice(const Ultragraph& g, std::uint64_t L) {
  std::vector<GeneralizedVertex> base;
  base.push_back(g.singleton(w()));
  for (std::uint64_t i = 1; i <= L; ++i) base.push_back(g.singleton(v(i)));
  base.push_back(g.emitter_set(*g.find_emitter("B")));
  base.push_back(*g.named_set("G0"));
  if (auto top = g.top()) base.push_back(*top);
  std::vector<GeneralizedVertex> out{GeneralizedVertex{}};
  out.insert(out.end(), base.begin(), base.end());
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) out.push_back(g.unite(base[i], base[j]));
  }
  for (std::uint64_t i = 1; i <= L; ++i) out.push_back(g.range(e(i)));
  out.push_back(g.range(f(1)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ugkms::sec6
