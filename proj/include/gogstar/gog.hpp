#ifndef GOGSTAR_GOG_HPP
#define GOGSTAR_GOG_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gogstar/groups.hpp"

namespace gogstar {

struct Vertex {
  std::string name;
  Group group;
};

/// One orientation of an edge. The edge group is repeated on both orientations.
struct OrientedEdge {
  std::string name;
  std::size_t reverse;
  std::size_t initial;
  Group group;
  Homomorphism inclusion;  ///< edge group -> group of the initial vertex
};

class GraphOfGroups {
 public:
  std::vector<Vertex> vertices;
  std::vector<OrientedEdge> edges;

  std::size_t add_vertex(std::string name, Group group) {
    vertices.push_back({std::move(name), std::move(group)});
    return vertices.size() - 1;
  }

  /// Adds e: from -> to and its reverse (named name + "~"). Returns the id of e;
  /// the reverse is the next id.
  std::size_t add_edge(const std::string& name, std::size_t from, std::size_t to, const Group& group,
                       Homomorphism inclusion_from, Homomorphism inclusion_to) {
    const std::size_t e = edges.size();
    edges.push_back({name, e + 1, from, group, std::move(inclusion_from)});
    edges.push_back({name + "~", e, to, group, std::move(inclusion_to)});
    return e;
  }

  std::size_t terminal(std::size_t e) const { return edges.at(edges.at(e).reverse).initial; }
  bool is_loop(std::size_t e) const { return edges.at(e).initial == terminal(e); }

  /// Oriented edges with initial vertex v, in id order.
  std::vector<std::size_t> star(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].initial == v) out.push_back(e);
    return out;
  }

  /// Smaller id of {e, reverse(e)}.
  std::size_t unordered(std::size_t e) const { return std::min(e, edges.at(e).reverse); }

  std::optional<std::size_t> find_vertex(const std::string& name) const {
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (vertices[v].name == name) return v;
    return std::nullopt;
  }
  std::optional<std::size_t> find_edge(const std::string& name) const {
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].name == name) return e;
    return std::nullopt;
  }

  /// Structural equality; names are ignored.
  bool same_structure(const GraphOfGroups& other) const {
    if (vertices.size() != other.vertices.size() || edges.size() != other.edges.size()) return false;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (!(vertices[v].group == other.vertices[v].group)) return false;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& a = edges[e];
      const auto& b = other.edges[e];
      if (a.reverse != b.reverse || a.initial != b.initial || !(a.group == b.group) || !(a.inclusion == b.inclusion))
        return false;
    }
    return true;
  }
};

using GraphPtr = std::shared_ptr<const GraphOfGroups>;

inline Report validate_gog(const GraphOfGroups& g) {
  Report r;
  for (const auto& v : g.vertices) r.merge(validate_group(v.group), "vertex " + v.name + ": ");
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& oe = g.edges[e];
    const std::string tag = "edge " + oe.name + ": ";
    if (oe.reverse >= g.edges.size()) {
      r.add(tag + "reverse id out of range");
      continue;
    }
    if (oe.reverse == e) r.add(tag + "reversal has a fixed point");
    if (g.edges[oe.reverse].reverse != e) r.add(tag + "reversal is not an involution");
    if (oe.initial >= g.vertices.size()) {
      r.add(tag + "initial vertex out of range");
      continue;
    }
    if (!(g.edges[oe.reverse].group == oe.group)) r.add(tag + "edge group differs from the reverse edge's group");
    r.merge(validate_group(oe.group), tag);
    if (!(oe.inclusion.source() == oe.group)) r.add(tag + "inclusion does not start at the edge group");
    if (!(oe.inclusion.target() == g.vertices[oe.initial].group))
      r.add(tag + "inclusion does not target the group of vertex " + g.vertices[oe.initial].name);
    Report hom = validate_hom(oe.inclusion);
    r.merge(hom, tag + "inclusion: ");
    if (hom.ok() && !oe.inclusion.injective()) r.add(tag + "inclusion is not injective");
  }
  return r;
}

/// nullopt when reduced; otherwise a non-loop edge whose inclusion is surjective.
inline std::optional<std::size_t> reduced_witness(const GraphOfGroups& g) {
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (!g.is_loop(e) && g.edges[e].inclusion.surjective()) return e;
  return std::nullopt;
}

inline bool is_reduced(const GraphOfGroups& g) { return !reduced_witness(g).has_value(); }

/// A morphism in the sense of Bass. f_e is kept per oriented edge and must agree
/// on e and its reverse; twists[e] is the element g_e of the target group at f(initial(e)).
struct BassMorphism {
  GraphPtr source;
  GraphPtr target;
  std::vector<std::size_t> vertex_map;
  std::vector<std::size_t> edge_map;
  std::vector<Homomorphism> vertex_homs;
  std::vector<Homomorphism> edge_homs;
  std::vector<Element> twists;

  std::size_t image_of_vertex(std::size_t v) const { return vertex_map.at(v); }
  std::size_t image_of_edge(std::size_t e) const { return edge_map.at(e); }
  const Group& target_vertex_group(std::size_t v) const { return target->vertices.at(vertex_map.at(v)).group; }
};

namespace detail {

inline std::vector<Element> check_elements(const Group& g) {
  return g.is_finite() ? g.elements() : std::vector<Element>{1};
}

}  // namespace detail

inline bool is_stallings(const BassMorphism& m) {
  for (const auto& h : m.vertex_homs)
    if (!h.injective()) return false;
  for (const auto& h : m.edge_homs)
    if (!h.injective()) return false;
  return true;
}

/// Graph-map coherence, the Bass equation on every oriented edge and, when
/// require_stallings is set, injectivity of every f_v and f_e.
inline Report validate_morphism(const BassMorphism& m, bool require_stallings = true) {
  Report r;
  if (!m.source || !m.target) {
    r.add("missing source or target");
    return r;
  }
  const auto& s = *m.source;
  const auto& t = *m.target;
  if (m.vertex_map.size() != s.vertices.size() || m.vertex_homs.size() != s.vertices.size()) {
    r.add("vertex data does not cover the source vertices");
    return r;
  }
  if (m.edge_map.size() != s.edges.size() || m.edge_homs.size() != s.edges.size() ||
      m.twists.size() != s.edges.size()) {
    r.add("edge data does not cover the source edges");
    return r;
  }
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    const std::string tag = "vertex " + s.vertices[v].name + ": ";
    if (m.vertex_map[v] >= t.vertices.size()) {
      r.add(tag + "image out of range");
      continue;
    }
    const auto& h = m.vertex_homs[v];
    if (!(h.source() == s.vertices[v].group) || !(h.target() == t.vertices[m.vertex_map[v]].group)) {
      r.add(tag + "f_v has the wrong source or target");
      continue;
    }
    Report hr = validate_hom(h);
    r.merge(hr, tag + "f_v: ");
    if (require_stallings && hr.ok() && !h.injective()) r.add(tag + "f_v is not injective");
  }
  if (!r.ok()) return r;
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    const auto& oe = s.edges[e];
    const std::string tag = "edge " + oe.name + ": ";
    const std::size_t fe = m.edge_map[e];
    if (fe >= t.edges.size()) {
      r.add(tag + "image out of range");
      continue;
    }
    if (m.edge_map[oe.reverse] != t.edges[fe].reverse) r.add(tag + "edge map does not commute with reversal");
    if (m.vertex_map[oe.initial] != t.edges[fe].initial) r.add(tag + "edge map does not respect initial vertices");
    const auto& h = m.edge_homs[e];
    if (!(h == m.edge_homs[oe.reverse])) r.add(tag + "f_e differs between the two orientations");
    if (!(h.source() == oe.group) || !(h.target() == t.edges[fe].group)) {
      r.add(tag + "f_e has the wrong source or target");
      continue;
    }
    Report hr = validate_hom(h);
    r.merge(hr, tag + "f_e: ");
    if (require_stallings && hr.ok() && !h.injective()) r.add(tag + "f_e is not injective");
    if (!r.ok()) continue;
    const Group& tv = t.vertices[t.edges[fe].initial].group;
    const Element g = m.twists[e];
    if (!tv.contains(g)) {
      r.add(tag + "twist " + std::to_string(g) + " is not in the target vertex group");
      continue;
    }
    for (Element x : detail::check_elements(oe.group)) {
      const Element lhs = tv.multiply(m.vertex_homs[oe.initial](oe.inclusion(x)), g);
      const Element rhs = tv.multiply(g, t.edges[fe].inclusion(h(x)));
      if (lhs != rhs) {
        r.add(tag + "Bass equation fails at edge element " + std::to_string(x) + " (" + std::to_string(lhs) +
              " != " + std::to_string(rhs) + ")");
        break;
      }
    }
  }
  return r;
}

inline BassMorphism identity_morphism(const GraphPtr& g) {
  BassMorphism m{g, g, {}, {}, {}, {}, {}};
  for (std::size_t v = 0; v < g->vertices.size(); ++v) {
    m.vertex_map.push_back(v);
    m.vertex_homs.push_back(Homomorphism::identity(g->vertices[v].group));
  }
  for (std::size_t e = 0; e < g->edges.size(); ++e) {
    m.edge_map.push_back(e);
    m.edge_homs.push_back(Homomorphism::identity(g->edges[e].group));
    m.twists.push_back(g->vertices[g->edges[e].initial].group.identity());
  }
  return m;
}

/// first then second. Twists combine as g_e = second_v(first_g_e) * second_g_{first(e)}.
inline BassMorphism compose(const BassMorphism& first, const BassMorphism& second) {
  if (first.target != second.source && !first.target->same_structure(*second.source))
    throw InputError("compose: target of the first morphism is not the source of the second");
  BassMorphism c{first.source, second.target, {}, {}, {}, {}, {}};
  const auto& s = *first.source;
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    const std::size_t mid = first.vertex_map[v];
    c.vertex_map.push_back(second.vertex_map[mid]);
    c.vertex_homs.push_back(then(first.vertex_homs[v], second.vertex_homs[mid]));
  }
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    const std::size_t mid = first.edge_map[e];
    const std::size_t mid_v = first.vertex_map[s.edges[e].initial];
    c.edge_map.push_back(second.edge_map[mid]);
    c.edge_homs.push_back(then(first.edge_homs[e], second.edge_homs[mid]));
    const Group& tv = second.target_vertex_group(mid_v);
    c.twists.push_back(tv.multiply(second.vertex_homs[mid_v](first.twists[e]), second.twists[mid]));
  }
  return c;
}

/// Bijective graph map with every f_v and f_e bijective.
inline bool is_isomorphism(const BassMorphism& m) {
  auto bijective = [](const std::vector<std::size_t>& map, std::size_t n) {
    if (map.size() != n) return false;
    std::vector<char> hit(n, 0);
    for (std::size_t x : map) {
      if (x >= n || hit[x]) return false;
      hit[x] = 1;
    }
    return true;
  };
  if (!bijective(m.vertex_map, m.target->vertices.size()) || !bijective(m.edge_map, m.target->edges.size()))
    return false;
  for (const auto& h : m.vertex_homs)
    if (!h.injective() || !h.surjective()) return false;
  for (const auto& h : m.edge_homs)
    if (!h.injective() || !h.surjective()) return false;
  return true;
}

/// Per-vertex conjugators k_v in the target vertex group and per-edge conjugators
/// t_e in the target edge group (t_e == t_reverse(e)).
struct Gauge {
  std::vector<Element> vertex;
  std::vector<Element> edge;

  static Gauge identity(const BassMorphism& m) {
    Gauge g;
    for (std::size_t v = 0; v < m.source->vertices.size(); ++v) g.vertex.push_back(m.target_vertex_group(v).identity());
    for (std::size_t e = 0; e < m.source->edges.size(); ++e) g.edge.push_back(0);
    return g;
  }
};

/// The morphism with f_v -> k_v f_v k_v^-1, f_e -> t_e f_e t_e^-1 and
/// g_e -> k_{initial(e)} g_e iota_{f(e)}(t_e)^-1. Its direction maps are the
/// originals translated by k_v.
inline BassMorphism apply_gauge(const BassMorphism& m, const Gauge& gauge) {
  BassMorphism out = m;
  const auto& s = *m.source;
  const auto& t = *m.target;
  for (std::size_t v = 0; v < s.vertices.size(); ++v) out.vertex_homs[v] = conjugated(m.vertex_homs[v], gauge.vertex[v]);
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    const std::size_t fe = m.edge_map[e];
    const Element te = gauge.edge[e];
    out.edge_homs[e] = conjugated(m.edge_homs[e], te);
    const Group& tv = t.vertices[t.edges[fe].initial].group;
    const Element shift = tv.inverse(t.edges[fe].inclusion(te));
    out.twists[e] = tv.multiply(tv.multiply(gauge.vertex[s.edges[e].initial], m.twists[e]), shift);
  }
  return out;
}

/// Exact equality of graph maps, homomorphisms and twists.
inline bool same_morphism(const BassMorphism& a, const BassMorphism& b) {
  return a.vertex_map == b.vertex_map && a.edge_map == b.edge_map && a.vertex_homs == b.vertex_homs &&
         a.edge_homs == b.edge_homs && a.twists == b.twists;
}

}  // namespace gogstar

#endif
