#include "ugkms/points.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ugkms/errors.hpp"

namespace ugkms {

namespace {

class PointBuilder {
 public:
  PointBuilder(const Ultragraph& g, const std::vector<Cylinder>& cyls) : g_(g) {
    for (const auto& c : cyls) {
      for (std::size_t n = 0; n <= c.stem.size(); ++n) expanded_.insert(EdgePath(c.stem.begin(), c.stem.begin() + n));
      for (VertexId v : c.base.finite_part()) mentioned_.insert(v);
      for (EdgeId e : c.stem) {
        explicit_.insert(e);
        GeneralizedVertex r = g.range(e);
        for (VertexId v : r.finite_part()) mentioned_.insert(v);
      }
      for (EdgeId e : c.excluded) explicit_.insert(e);
    }
    auto ems = g.emitters();
    for (std::size_t i = 0; i < ems.size(); ++i) {
      for (std::size_t j = i + 1; j < ems.size(); ++j) {
        for (VertexId v : g.emitter_overlap(ems[i], ems[j])) mentioned_.insert(v);
      }
    }
    if (!g.is_finite()) {
      for (VertexId v : mentioned_) {
        auto em = g.out_edges(v);
        if (!em.infinite) explicit_.insert(em.edges.begin(), em.edges.end());
      }
      for (EmitterId k : ems) generic_.push_back(pick_generic(k));
    }
  }

  std::vector<Point> run() {
    walk({});
    return std::move(points_);
  }

 private:
  EdgeId pick_generic(EmitterId k) const {
    for (std::uint64_t n = 0; n < 4096; ++n) {
      auto e = g_.emitter_edge(k, n);
      if (!e) break;
      if (explicit_.count(*e) || mentioned_.count(g_.source(*e))) continue;
      return *e;
    }
    throw Error("no representative edge found for emitter " + g_.emitter_name(k));
  }

  std::vector<EdgeId> children(const EdgePath& alpha) const {
    std::set<EdgeId> cand;
    std::vector<EmitterId> ems;
    if (alpha.empty()) {
      ems = g_.emitters();
    } else {
      ems = g_.range(alpha.back()).emitters();
    }
    if (g_.is_finite()) {
      for (EdgeId e : g_.edge_window(0)) cand.insert(e);
    } else {
      cand = explicit_;
      if (!alpha.empty()) {
        GeneralizedVertex r = g_.range(alpha.back());
        for (VertexId v : r.finite_part()) {
          auto em = g_.out_edges(v).edges;
          cand.insert(em.begin(), em.end());
        }
      }
      for (EmitterId k : ems) cand.insert(generic_.at(k.index));
    }
    std::vector<EdgeId> out;
    for (EdgeId e : cand) {
      if (alpha.empty() || g_.member(g_.source(e), g_.range(alpha.back()))) out.push_back(e);
    }
    return out;
  }

  void walk(const EdgePath& alpha) {
    std::vector<EmitterId> ems = alpha.empty() ? g_.emitters() : g_.range(alpha.back()).emitters();
    for (EmitterId k : ems) points_.push_back(Point{alpha, k});
    for (EdgeId e : children(alpha)) {
      EdgePath next = alpha;
      next.push_back(e);
      if (expanded_.count(next)) {
        walk(next);
      } else {
        points_.push_back(Point{next, std::nullopt});
      }
    }
  }

  const Ultragraph& g_;
  std::set<EdgePath> expanded_;
  std::set<VertexId> mentioned_;
  std::set<EdgeId> explicit_;
  std::vector<EdgeId> generic_;
  std::vector<Point> points_;
};

}  // namespace

std::vector<Point> relevant_points(const Ultragraph& g, const std::vector<Cylinder>& cylinders) {
  return PointBuilder(g, cylinders).run();
}

std::string format_point(const Ultragraph& g, const Point& p) {
  if (p.emitter) return "(" + g.format_path(p.path) + " ; " + g.emitter_name(*p.emitter) + ")";
  return g.format_path(p.path) + "...";
}

bool decided_member(const Ultragraph& g, const Point& p, const Cylinder& c) {
  switch (cyl_member(g, p, c)) {
    case Membership::In:
      return true;
    case Membership::Out:
      return false;
    case Membership::NeedLongerPrefix:
      break;
  }
  throw std::logic_error("point " + format_point(g, p) + " does not decide " + format_cylinder(g, c));
}

PartitionResult check_partition(const Ultragraph& g, const std::vector<Cylinder>& inside,
                                const std::vector<Cylinder>& outside, const std::vector<Cylinder>& pieces) {
  std::vector<Cylinder> all = inside;
  all.insert(all.end(), outside.begin(), outside.end());
  all.insert(all.end(), pieces.begin(), pieces.end());
  PartitionResult res;
  for (const auto& p : relevant_points(g, all)) {
    ++res.points;
    bool want = std::all_of(inside.begin(), inside.end(), [&](const Cylinder& c) { return decided_member(g, p, c); }) &&
                std::none_of(outside.begin(), outside.end(), [&](const Cylinder& c) { return decided_member(g, p, c); });
    long hits = std::count_if(pieces.begin(), pieces.end(), [&](const Cylinder& c) { return decided_member(g, p, c); });
    if (hits > 1 || (hits == 1) != want) {
      res.ok = false;
      res.witness = format_point(g, p) + (hits > 1 ? " lies in several pieces" : want ? " is missed" : " is extra");
      return res;
    }
  }
  return res;
}

}  // namespace ugkms
