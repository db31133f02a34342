#ifndef GOGSTAR_STARGRAPH_HPP
#define GOGSTAR_STARGRAPH_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gogstar/directions.hpp"

namespace gogstar {

/// The g f_v(G_v)-copy of the piece of source vertex v.
struct PieceVertex {
  std::size_t source_vertex;
  std::size_t target_vertex;
  std::size_t coset;     ///< coset id in G_w / f_v(G_v)
  Element representative;
};

/// Bipartite graph on target directions and piece copies. Each Gamma_w holds
/// the directions at w and the pieces of the source vertices over w.
struct StarGraph {
  GraphPtr source;
  GraphPtr target;
  std::vector<Direction> directions;  ///< ordered by (w, edge, coset)
  std::vector<PieceVertex> pieces;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< (piece index, direction index)

  std::size_t direction_index(const Direction& d) const {
    auto it = std::lower_bound(directions.begin(), directions.end(), d);
    if (it == directions.end() || *it != d) throw InputError("unknown direction");
    return static_cast<std::size_t>(it - directions.begin());
  }
};

enum class RepresentativePolicy { Canonical, Shifted };

inline StarGraph build_star_graph(const BassMorphism& m, RepresentativePolicy policy = RepresentativePolicy::Canonical) {
  const bool shifted = policy == RepresentativePolicy::Shifted;
  InducedMap map(m, shifted);
  StarGraph sg{m.source, m.target, {}, {}, {}};
  const auto& t = *m.target;
  for (std::size_t w = 0; w < t.vertices.size(); ++w) {
    auto dw = map.target().at(w);
    sg.directions.insert(sg.directions.end(), dw.begin(), dw.end());
  }
  const auto& s = *m.source;
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    const std::size_t w = m.vertex_map[v];
    const Group& gw = t.vertices[w].group;
    Subgroup image = m.vertex_homs[v].image();
    if (!image.index())
      throw IndexInfinite("vertex " + s.vertices[v].name + ": image of f_v has infinite index in the group of " +
                          t.vertices[w].name);
    CosetSpace copies(gw, image);
    const auto images = map.images_at(v);
    Element shift = gw.identity();
    if (shifted) {
      auto gens = s.vertices[v].group.generators();
      if (!gens.empty()) shift = m.vertex_homs[v](gens.front());
    }
    for (std::size_t c = 0; c < copies.size(); ++c) {
      const Element g = gw.multiply(copies.representative(c), shift);
      const std::size_t piece = sg.pieces.size();
      sg.pieces.push_back({v, w, c, g});
      for (const auto& d : images) sg.edges.emplace_back(piece, sg.direction_index(map.target().act(g, d)));
    }
  }
  return sg;
}

namespace detail {

/// Gamma_w as a local graph: directions first, then pieces.
struct LocalGraph {
  std::vector<std::size_t> direction_ids;  // global direction index per local vertex
  std::vector<std::size_t> piece_ids;
  std::vector<std::vector<std::size_t>> adj;

  std::size_t size() const { return adj.size(); }
};

inline LocalGraph local_graph(const StarGraph& sg, std::size_t w) {
  LocalGraph lg;
  std::map<std::size_t, std::size_t> dloc, ploc;
  for (std::size_t i = 0; i < sg.directions.size(); ++i)
    if (sg.directions[i].vertex == w) {
      dloc[i] = lg.direction_ids.size();
      lg.direction_ids.push_back(i);
    }
  for (std::size_t p = 0; p < sg.pieces.size(); ++p)
    if (sg.pieces[p].target_vertex == w) {
      ploc[p] = lg.direction_ids.size() + lg.piece_ids.size();
      lg.piece_ids.push_back(p);
    }
  lg.adj.assign(lg.direction_ids.size() + lg.piece_ids.size(), {});
  for (const auto& [p, d] : sg.edges) {
    auto pi = ploc.find(p);
    if (pi == ploc.end()) continue;
    const std::size_t a = pi->second;
    const std::size_t b = dloc.at(d);
    lg.adj[a].push_back(b);
    lg.adj[b].push_back(a);
  }
  return lg;
}

/// Components after deleting `removed` (may be npos).
inline std::size_t count_components(const LocalGraph& lg, std::size_t removed = static_cast<std::size_t>(-1)) {
  std::vector<char> seen(lg.size(), 0);
  std::size_t count = 0;
  for (std::size_t start = 0; start < lg.size(); ++start) {
    if (seen[start] || start == removed) continue;
    ++count;
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : lg.adj[x])
        if (!seen[y] && y != removed) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
  }
  return count;
}

/// Articulation points of a connected local graph (iterative lowpoint DFS).
inline std::vector<char> articulation_points(const LocalGraph& lg) {
  const std::size_t n = lg.size();
  std::vector<char> cut(n, 0);
  if (n == 0) return cut;
  std::vector<std::size_t> disc(n, 0), low(n, 0), parent(n, static_cast<std::size_t>(-1)), next(n, 0);
  std::vector<std::size_t> children(n, 0);
  std::size_t time = 1;
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root]) continue;
    std::vector<std::size_t> stack{root};
    disc[root] = low[root] = time++;
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      if (next[x] < lg.adj[x].size()) {
        const std::size_t y = lg.adj[x][next[x]++];
        if (!disc[y]) {
          parent[y] = x;
          ++children[x];
          disc[y] = low[y] = time++;
          stack.push_back(y);
        } else if (y != parent[x]) {
          low[x] = std::min(low[x], disc[y]);
        }
        continue;
      }
      stack.pop_back();
      const std::size_t p = parent[x];
      if (p != static_cast<std::size_t>(-1)) {
        low[p] = std::min(low[p], low[x]);
        if (parent[p] != static_cast<std::size_t>(-1) && low[x] >= disc[p]) cut[p] = 1;
      }
    }
    if (children[root] > 1) cut[root] = 1;
  }
  return cut;
}

}  // namespace detail

/// Connected components of Gamma_w, isolated directions and pieces included.
inline std::size_t component_count(const StarGraph& sg, std::size_t w) {
  if (w >= sg.target->vertices.size()) throw InputError("unknown target vertex " + std::to_string(w));
  return detail::count_components(detail::local_graph(sg, w));
}

/// Direction vertices whose removal disconnects their (connected) Gamma_w.
inline std::vector<Direction> cut_vertices(const StarGraph& sg) {
  std::vector<Direction> out;
  for (std::size_t w = 0; w < sg.target->vertices.size(); ++w) {
    auto lg = detail::local_graph(sg, w);
    if (lg.size() <= 2 || detail::count_components(lg) != 1) continue;
    auto cut = detail::articulation_points(lg);
    for (std::size_t i = 0; i < lg.direction_ids.size(); ++i)
      if (cut[i]) out.push_back(sg.directions[lg.direction_ids[i]]);
  }
  return out;
}

/// Piece copies that are articulation points; diagnostics only.
inline std::vector<std::size_t> cut_pieces(const StarGraph& sg) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < sg.target->vertices.size(); ++w) {
    auto lg = detail::local_graph(sg, w);
    if (lg.size() <= 2 || detail::count_components(lg) != 1) continue;
    auto cut = detail::articulation_points(lg);
    for (std::size_t i = 0; i < lg.piece_ids.size(); ++i)
      if (cut[lg.direction_ids.size() + i]) out.push_back(lg.piece_ids[i]);
  }
  return out;
}

struct StarVerdict {
  enum class Kind { Disconnected, CutVertex, Neither };
  Kind kind = Kind::Neither;
  std::size_t disconnected_at = 0;   ///< first Gamma_w with two or more components
  std::vector<Direction> cut;        ///< cut directions when kind == CutVertex
  std::vector<std::size_t> components;  ///< per target vertex
};

inline std::string to_string(StarVerdict::Kind k) {
  switch (k) {
    case StarVerdict::Kind::Disconnected: return "Disconnected";
    case StarVerdict::Kind::CutVertex: return "CutVertex";
    default: return "Neither";
  }
}

inline StarVerdict verdict(const StarGraph& sg) {
  StarVerdict v;
  bool disconnected = false;
  for (std::size_t w = 0; w < sg.target->vertices.size(); ++w) {
    const auto lg = detail::local_graph(sg, w);
    const std::size_t c = detail::count_components(lg);
    v.components.push_back(c);
    // A Gamma_w without directions is vacuously connected.
    if (c >= 2 && !lg.direction_ids.empty() && !disconnected) {
      disconnected = true;
      v.disconnected_at = w;
    }
  }
  if (disconnected) {
    v.kind = StarVerdict::Kind::Disconnected;
    return v;
  }
  v.cut = cut_vertices(sg);
  v.kind = v.cut.empty() ? StarVerdict::Kind::Neither : StarVerdict::Kind::CutVertex;
  return v;
}

/// Brute-force cut directions: delete each direction and recount. Used to
/// cross-check the lowpoint computation.
inline std::vector<Direction> cut_vertices_by_deletion(const StarGraph& sg) {
  std::vector<Direction> out;
  for (std::size_t w = 0; w < sg.target->vertices.size(); ++w) {
    auto lg = detail::local_graph(sg, w);
    if (lg.size() <= 2 || detail::count_components(lg) != 1) continue;
    for (std::size_t i = 0; i < lg.direction_ids.size(); ++i)
      if (detail::count_components(lg, i) > 1) out.push_back(sg.directions[lg.direction_ids[i]]);
  }
  return out;
}

inline std::string direction_label(const StarGraph& sg, const Direction& d) {
  return "(" + sg.target->vertices[d.vertex].name + ", " + sg.target->edges[d.edge].name + ", " +
         std::to_string(d.coset) + ")";
}

inline std::string piece_label(const StarGraph& sg, const PieceVertex& p) {
  return "(" + sg.source->vertices[p.source_vertex].name + ", " + std::to_string(p.coset) + ")";
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string export_dot(const StarGraph& sg) {
  std::ostringstream os;
  os << "graph star {\n";
  for (std::size_t w = 0; w < sg.target->vertices.size(); ++w) {
    os << "  subgraph cluster_" << w << " {\n";
    os << "    label=" << detail::dot_quote(sg.target->vertices[w].name) << ";\n";
    for (std::size_t i = 0; i < sg.directions.size(); ++i)
      if (sg.directions[i].vertex == w)
        os << "    d" << i << " [label=" << detail::dot_quote(direction_label(sg, sg.directions[i])) << "];\n";
    for (std::size_t p = 0; p < sg.pieces.size(); ++p)
      if (sg.pieces[p].target_vertex == w)
        os << "    p" << p << " [shape=box, label=" << detail::dot_quote(piece_label(sg, sg.pieces[p])) << "];\n";
    os << "  }\n";
  }
  for (const auto& [p, d] : sg.edges) os << "  p" << p << " -- d" << d << ";\n";
  os << "}\n";
  return os.str();
}

/// Pieces described by (source vertex, sorted neighbour list), sorted. Two star
/// graphs of one morphism are isomorphic by relabelling pieces iff these agree.
inline std::vector<std::pair<std::size_t, std::vector<std::size_t>>> canonical_form(const StarGraph& sg) {
  std::vector<std::vector<std::size_t>> nbrs(sg.pieces.size());
  for (const auto& [p, d] : sg.edges) nbrs[p].push_back(d);
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> out;
  for (std::size_t p = 0; p < sg.pieces.size(); ++p) {
    std::sort(nbrs[p].begin(), nbrs[p].end());
    out.emplace_back(sg.pieces[p].source_vertex, nbrs[p]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Bipartiteness, piece valence and edge-count formula, no double edges for
/// immersions, and distance-two pairs versus taken turns.
inline Report check_star_graph(const StarGraph& sg, const BassMorphism& m) {
  Report r;
  InducedMap map(m);
  std::vector<std::size_t> valence(sg.pieces.size(), 0);
  for (const auto& [p, d] : sg.edges) {
    if (p >= sg.pieces.size() || d >= sg.directions.size()) {
      r.add("edge endpoint is not a piece/direction pair");
      return r;
    }
    if (sg.pieces[p].target_vertex != sg.directions[d].vertex) r.add("edge joins different Gamma_w");
    ++valence[p];
  }
  std::size_t expected = 0;
  for (std::size_t p = 0; p < sg.pieces.size(); ++p) {
    const std::size_t dv = map.source().count_at(sg.pieces[p].source_vertex);
    expected += dv;
    if (valence[p] != dv) r.add("piece " + piece_label(sg, sg.pieces[p]) + " has the wrong valence");
  }
  if (expected != sg.edges.size()) r.add("edge count differs from the sum of |D_v| over pieces");
  if (is_immersion(m)) {
    auto sorted = sg.edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      r.add("star graph of an immersion has a loop of length two");
  }
  const auto& t = *m.target;
  for (std::size_t w = 0; w < t.vertices.size(); ++w) {
    std::set<Turn> taken;
    for (std::size_t v = 0; v < m.source->vertices.size(); ++v)
      if (m.vertex_map[v] == w) {
        auto tv = nondegenerate(taken_turns(map, v));
        taken.insert(tv.begin(), tv.end());
      }
    auto lg = detail::local_graph(sg, w);
    const std::size_t nd = lg.direction_ids.size();
    for (std::size_t i = 0; i < nd; ++i)
      for (std::size_t j = i + 1; j < nd; ++j) {
        bool close = false;
        for (std::size_t p : lg.adj[i]) {
          if (std::find(lg.adj[p].begin(), lg.adj[p].end(), j) != lg.adj[p].end()) {
            close = true;
            break;
          }
        }
        const Turn turn =
            turn_canonical(map.target(), sg.directions[lg.direction_ids[i]], sg.directions[lg.direction_ids[j]]);
        if (close != (taken.count(turn) > 0))
          r.add("distance-two relation disagrees with taken turns at " +
                direction_label(sg, sg.directions[lg.direction_ids[i]]) + ", " +
                direction_label(sg, sg.directions[lg.direction_ids[j]]));
      }
  }
  return r;
}

}  // namespace gogstar

#endif
