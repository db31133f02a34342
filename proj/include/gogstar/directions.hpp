#ifndef GOGSTAR_DIRECTIONS_HPP
#define GOGSTAR_DIRECTIONS_HPP

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gogstar/gog.hpp"

namespace gogstar {

/// The direction (c * iota_e(G_e), e) at the initial vertex of e.
struct Direction {
  std::size_t vertex = 0;
  std::size_t edge = 0;
  std::size_t coset = 0;
  auto operator<=>(const Direction&) const = default;
};

/// Canonical representative of a vertex-group orbit of an unordered pair.
struct Turn {
  std::size_t vertex = 0;
  Direction first;
  Direction second;
  bool degenerate() const { return first == second; }
  auto operator<=>(const Turn&) const = default;
};

/// Coset spaces G_v / iota_e(G_e) for every oriented edge of one graph.
/// Infinite-index edges are recorded and raise IndexInfinite only when used.
class DirectionTable {
 public:
  explicit DirectionTable(GraphPtr graph) : graph_(std::move(graph)) {
    for (const auto& oe : graph_->edges) {
      const Group& gv = graph_->vertices.at(oe.initial).group;
      Subgroup image = oe.inclusion.image();
      if (image.index().has_value())
        spaces_.emplace_back(CosetSpace(gv, image));
      else
        spaces_.emplace_back(std::nullopt);
    }
    for (std::size_t v = 0; v < graph_->vertices.size(); ++v) stars_.push_back(graph_->star(v));
  }

  const GraphOfGroups& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }

  const CosetSpace& space(std::size_t e) const {
    const auto& s = spaces_.at(e);
    if (!s) {
      const auto& oe = graph_->edges[e];
      throw IndexInfinite("edge " + oe.name + " at vertex " + graph_->vertices[oe.initial].name +
                          ": edge group has infinite index in the vertex group");
    }
    return *s;
  }

  /// D_v ordered by (edge id, coset id).
  std::vector<Direction> at(std::size_t v) const {
    std::vector<Direction> out;
    for (std::size_t e : stars_.at(v))
      for (std::size_t c = 0; c < space(e).size(); ++c) out.push_back({v, e, c});
    return out;
  }

  std::size_t count_at(std::size_t v) const {
    std::size_t n = 0;
    for (std::size_t e : stars_.at(v)) n += space(e).size();
    return n;
  }

  /// Left action of the vertex group on its directions.
  Direction act(Element g, const Direction& d) const { return {d.vertex, d.edge, space(d.edge).act(g, d.coset)}; }

  Element representative(const Direction& d) const { return space(d.edge).representative(d.coset); }

  std::string label(const Direction& d) const {
    return "(" + graph_->vertices[d.vertex].name + ", " + graph_->edges[d.edge].name + ", " +
           std::to_string(d.coset) + ")";
  }

 private:
  GraphPtr graph_;
  std::vector<std::optional<CosetSpace>> spaces_;
  std::vector<std::vector<std::size_t>> stars_;
};

inline std::vector<Direction> directions_at(const GraphPtr& g, std::size_t v) { return DirectionTable(g).at(v); }

/// D_v f for every source vertex of a morphism:
/// (a iota_e(G_e), e) -> (f_v(a) g_e iota_{f(e)}(G'_{f(e)}), f(e)).
class InducedMap {
 public:
  /// With shifted_representatives set, each source coset is represented by
  /// rep * iota_e(h) for a nontrivial edge-group element h where possible.
  explicit InducedMap(const BassMorphism& m, bool shifted_representatives = false)
      : morphism_(m), source_(m.source), target_(m.target), shifted_(shifted_representatives) {}

  InducedMap(const BassMorphism& m, DirectionTable source, DirectionTable target)
      : morphism_(m), source_(std::move(source)), target_(std::move(target)) {}

  const BassMorphism& morphism() const { return morphism_; }
  const DirectionTable& source() const { return source_; }
  const DirectionTable& target() const { return target_; }

  Direction operator()(const Direction& d) const {
    const auto& s = *morphism_.source;
    if (d.vertex >= s.vertices.size() || s.edges.at(d.edge).initial != d.vertex)
      throw InputError("direction does not belong to the source graph");
    Element rep = source_.representative(d);
    if (shifted_) {
      const auto& oe = s.edges[d.edge];
      auto gens = oe.group.generators();
      if (!gens.empty()) rep = s.vertices[d.vertex].group.multiply(rep, oe.inclusion(gens.front()));
    }
    const std::size_t w = morphism_.vertex_map[d.vertex];
    const std::size_t fe = morphism_.edge_map[d.edge];
    const Group& gw = morphism_.target->vertices[w].group;
    const Element x = gw.multiply(morphism_.vertex_homs[d.vertex](rep), morphism_.twists[d.edge]);
    return {w, fe, target_.space(fe).coset_of(x)};
  }

  std::vector<Direction> images_at(std::size_t v) const {
    std::vector<Direction> out;
    for (const auto& d : source_.at(v)) out.push_back((*this)(d));
    return out;
  }

 private:
  BassMorphism morphism_;
  DirectionTable source_;
  DirectionTable target_;
  bool shifted_ = false;
};

inline Direction direction_map(const BassMorphism& m, const Direction& d) { return InducedMap(m)(d); }

/// A pair of distinct directions at one source vertex with the same image.
struct Collision {
  std::size_t vertex;
  Direction first;
  Direction second;
};

/// Lexicographically first collision over (vertex, first, second), if any.
inline std::optional<Collision> first_collision(const InducedMap& map) {
  const auto& s = *map.morphism().source;
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    auto dirs = map.source().at(v);
    auto imgs = map.images_at(v);
    for (std::size_t i = 0; i < dirs.size(); ++i)
      for (std::size_t j = i + 1; j < dirs.size(); ++j)
        if (imgs[i] == imgs[j]) return Collision{v, dirs[i], dirs[j]};
  }
  return std::nullopt;
}

inline std::optional<Collision> first_collision(const BassMorphism& m) { return first_collision(InducedMap(m)); }

inline bool is_immersion(const BassMorphism& m) { return !first_collision(m).has_value(); }

/// Orbit representative of {d1, d2} under the diagonal vertex-group action.
inline Turn turn_canonical(const DirectionTable& table, Direction d1, Direction d2) {
  if (d1.vertex != d2.vertex) throw InputError("turn directions are based at different vertices");
  const Group& gv = table.graph().vertices.at(d1.vertex).group;
  const auto gens = gv.generators();
  auto sorted = [](Direction a, Direction b) { return a <= b ? std::pair{a, b} : std::pair{b, a}; };
  std::set<std::pair<Direction, Direction>> orbit{sorted(d1, d2)};
  std::vector<std::pair<Direction, Direction>> queue{*orbit.begin()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Element s : gens) {
      auto next = sorted(table.act(s, queue[i].first), table.act(s, queue[i].second));
      if (orbit.insert(next).second) queue.push_back(next);
    }
  const auto& least = *orbit.begin();
  return {d1.vertex, least.first, least.second};
}

inline Turn turn_canonical(const GraphPtr& g, const Direction& d1, const Direction& d2) {
  return turn_canonical(DirectionTable(g), d1, d2);
}

/// Images of the nondegenerate turns at v. Degenerate images are kept.
inline std::set<Turn> taken_turns(const InducedMap& map, std::size_t v) {
  std::set<Turn> out;
  auto dirs = map.source().at(v);
  auto imgs = map.images_at(v);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j) out.insert(turn_canonical(map.target(), imgs[i], imgs[j]));
  return out;
}

inline std::set<Turn> taken_turns(const BassMorphism& m, std::size_t v) { return taken_turns(InducedMap(m), v); }

inline std::set<Turn> nondegenerate(const std::set<Turn>& turns) {
  std::set<Turn> out;
  for (const auto& t : turns)
    if (!t.degenerate()) out.insert(t);
  return out;
}

namespace detail {

/// Elements of G_w that can act differently on D_w: every element of a finite
/// group, or 0..L-1 for Z with L the lcm of the direction moduli at w.
inline std::vector<Element> translation_candidates(const DirectionTable& table, std::size_t w) {
  const Group& gw = table.graph().vertices.at(w).group;
  if (gw.is_finite()) return gw.elements();
  Element l = 1;
  for (std::size_t e : table.graph().star(w)) l = std::lcm(l, static_cast<Element>(table.space(e).size()));
  std::vector<Element> out;
  for (Element k = 0; k < l; ++k) out.push_back(k);
  return out;
}

}  // namespace detail

/// Whether a and b (same source and target) have the same graph maps and, at
/// each source vertex v, direction maps and f_v that differ by one element of
/// the target vertex group: D_v a = k . D_v b and a_v = k b_v k^-1.
inline bool agrees_up_to_translation(const BassMorphism& a, const BassMorphism& b, std::string* why = nullptr) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (a.vertex_map != b.vertex_map) return fail("vertex maps differ");
  if (a.edge_map != b.edge_map) return fail("edge maps differ");
  InducedMap da(a);
  InducedMap db(b, da.source(), da.target());
  const auto& s = *a.source;
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    const std::size_t w = a.vertex_map[v];
    const Group& gw = a.target->vertices[w].group;
    const auto ia = da.images_at(v);
    const auto ib = db.images_at(v);
    bool found = false;
    for (Element k : detail::translation_candidates(da.target(), w)) {
      bool ok = true;
      for (std::size_t i = 0; i < ia.size() && ok; ++i) ok = ia[i] == da.target().act(k, ib[i]);
      for (Element x : detail::check_elements(s.vertices[v].group)) {
        if (!ok) break;
        ok = a.vertex_homs[v](x) == gw.conjugate(k, b.vertex_homs[v](x));
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) return fail("vertex " + s.vertices[v].name + ": no translation matches the two direction maps");
  }
  return true;
}

struct MonotonicityResult {
  bool ok = true;
  std::size_t vertex = 0;  ///< source vertex of the counterexample
  std::optional<Turn> counterexample;
};

/// Given s: G -> G', f: G -> T, f': G' -> T with f' after s equal to f (up to
/// translation), every nondegenerate turn taken by G at v is taken by G' at s(v).
inline MonotonicityResult check_turn_monotonicity(const BassMorphism& s, const BassMorphism& f,
                                                  const BassMorphism& fprime) {
  if (s.source != f.source && !s.source->same_structure(*f.source))
    throw InputError("monotonicity: s and f have different sources");
  if (f.target != fprime.target && !f.target->same_structure(*fprime.target))
    throw InputError("monotonicity: f and f' have different targets");
  std::string why;
  if (!agrees_up_to_translation(compose(s, fprime), f, &why))
    throw InputError("monotonicity: diagram does not commute: " + why);
  InducedMap mf(f);
  InducedMap mfp(fprime, DirectionTable(fprime.source), mf.target());
  for (std::size_t v = 0; v < f.source->vertices.size(); ++v) {
    const auto here = nondegenerate(taken_turns(mf, v));
    const auto there = taken_turns(mfp, s.vertex_map[v]);
    for (const auto& t : here)
      if (!there.count(t)) return {false, v, t};
  }
  return {};
}

}  // namespace gogstar

#endif
