#ifndef GOGSTAR_FOLDS_HPP
#define GOGSTAR_FOLDS_HPP

// Stallings folds relative to a fixed target graph of groups. Every folded
// vertex and edge group is kept as a subgroup of the corresponding target
// group, so enlargements never leave the three group backends.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gogstar/directions.hpp"

namespace gogstar {

struct RelativeVertex {
  std::string name;
  std::size_t image;
  Subgroup group;  ///< f_v(G_v) inside the target vertex group
};

struct RelativeEdge {
  std::string name;
  std::size_t image;
  std::size_t reverse;
  std::size_t initial;
  Subgroup group;  ///< f_e(G_e) inside the target edge group
  Element twist;   ///< g_e
};

/// A Stallings morphism with its source groups replaced by their images. The
/// inclusion of an edge is forced: b -> g_e iota_{f(e)}(b) g_e^-1.
struct RelativeGraph {
  GraphPtr target;
  std::vector<RelativeVertex> vertices;
  std::vector<RelativeEdge> edges;
};

inline RelativeGraph relative_of(const BassMorphism& m) {
  RelativeGraph r{m.target, {}, {}};
  const auto& s = *m.source;
  for (std::size_t v = 0; v < s.vertices.size(); ++v)
    r.vertices.push_back({s.vertices[v].name, m.vertex_map[v], m.vertex_homs[v].image()});
  for (std::size_t e = 0; e < s.edges.size(); ++e)
    r.edges.push_back({s.edges[e].name, m.edge_map[e], s.edges[e].reverse, s.edges[e].initial,
                       m.edge_homs[e].image(), m.twists[e]});
  return r;
}

/// The residual morphism from the graph of groups presented by r to its target.
inline BassMorphism realize(const RelativeGraph& r) {
  auto source = std::make_shared<GraphOfGroups>();
  const auto& t = *r.target;
  std::vector<RealizedSubgroup> rv;
  for (const auto& v : r.vertices) {
    rv.push_back(realize(v.group));
    source->add_vertex(v.name, rv.back().group);
  }
  std::vector<std::optional<RealizedSubgroup>> re(r.edges.size());
  for (std::size_t e = 0; e < r.edges.size(); ++e) {
    const std::size_t key = std::min(e, r.edges[e].reverse);
    if (!re[key]) re[key] = realize(r.edges[key].group);
  }
  for (std::size_t e = 0; e < r.edges.size(); ++e) {
    const auto& edge = r.edges[e];
    const auto& sub = *re[std::min(e, edge.reverse)];
    const auto& vert = rv.at(edge.initial);
    const Group& gw = t.vertices[t.edges[edge.image].initial].group;
    const auto& iota = t.edges[edge.image].inclusion;
    std::vector<Element> images;
    for (Element b : detail::check_elements(sub.group)) {
      const Element y = gw.conjugate(edge.twist, iota(sub.embedding(b)));
      auto x = vert.embedding.preimage(y);
      if (!x)
        throw InternalError("edge " + edge.name + ": conjugated edge group is not inside the group of vertex " +
                            r.vertices[edge.initial].name);
      images.push_back(*x);
    }
    source->edges.push_back({edge.name, edge.reverse, edge.initial, sub.group,
                             Homomorphism(sub.group, vert.group, std::move(images))});
  }
  BassMorphism m{source, r.target, {}, {}, {}, {}, {}};
  for (std::size_t v = 0; v < r.vertices.size(); ++v) {
    m.vertex_map.push_back(r.vertices[v].image);
    m.vertex_homs.push_back(rv[v].embedding);
  }
  for (std::size_t e = 0; e < r.edges.size(); ++e) {
    m.edge_map.push_back(r.edges[e].image);
    m.edge_homs.push_back(re[std::min(e, r.edges[e].reverse)]->embedding);
    m.twists.push_back(r.edges[e].twist);
  }
  return m;
}

/// The morphism q: m.source -> residual.source with compose(q, residual) equal
/// to apply_gauge(m, gauge) on the nose.
inline BassMorphism quotient_morphism(const BassMorphism& m, const BassMorphism& residual,
                                      const std::vector<std::size_t>& vertex_map,
                                      const std::vector<std::size_t>& edge_map, const Gauge& gauge) {
  const auto& s = *m.source;
  const auto& t = *m.target;
  BassMorphism q{m.source, residual.source, vertex_map, edge_map, {}, {}, {}};
  auto pull = [](const Homomorphism& emb, Element y, const std::string& what) {
    auto x = emb.preimage(y);
    if (!x) throw InternalError("fold quotient: " + what + " leaves the folded group");
    return *x;
  };
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    const std::size_t qv = vertex_map[v];
    const Group& gw = t.vertices[m.vertex_map[v]].group;
    const auto& emb = residual.vertex_homs[qv];
    std::vector<Element> images;
    for (Element x : detail::check_elements(s.vertices[v].group))
      images.push_back(pull(emb, gw.conjugate(gauge.vertex[v], m.vertex_homs[v](x)), "vertex " + s.vertices[v].name));
    q.vertex_homs.emplace_back(s.vertices[v].group, residual.source->vertices[qv].group, std::move(images));
  }
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    const std::size_t qe = edge_map[e];
    const std::size_t fe = m.edge_map[e];
    const Group& ge = t.edges[fe].group;
    const auto& emb = residual.edge_homs[qe];
    std::vector<Element> images;
    for (Element b : detail::check_elements(s.edges[e].group))
      images.push_back(pull(emb, ge.conjugate(gauge.edge[e], m.edge_homs[e](b)), "edge " + s.edges[e].name));
    q.edge_homs.emplace_back(s.edges[e].group, residual.source->edges[qe].group, std::move(images));
    const std::size_t v = s.edges[e].initial;
    const Group& gw = t.vertices[m.vertex_map[v]].group;
    Element gamma = gw.multiply(gauge.vertex[v], m.twists[e]);
    gamma = gw.multiply(gamma, gw.inverse(t.edges[fe].inclusion(gauge.edge[e])));
    gamma = gw.multiply(gamma, gw.inverse(residual.twists[qe]));
    q.twists.push_back(pull(residual.vertex_homs[vertex_map[v]], gamma, "twist of edge " + s.edges[e].name));
  }
  return q;
}

struct FoldMove {
  enum class Kind { TypeI, TypeII };
  Kind kind = Kind::TypeI;
  std::size_t vertex = 0;
  Direction first;
  Direction second;
  Element element = 0;  ///< TypeII: the edge-group element s with iota(s) = g^-1 a g
};

inline std::string to_string(FoldMove::Kind k) { return k == FoldMove::Kind::TypeI ? "TypeI" : "TypeII"; }

struct FoldResult {
  FoldMove move;
  BassMorphism quotient;  ///< input source -> folded source
  BassMorphism residual;  ///< folded source -> target
  Gauge gauge;            ///< compose(quotient, residual) == apply_gauge(input, gauge)
};

namespace detail {

struct CollisionData {
  Element a1, a2;  // f_x of the two coset representatives
  Element g1, g2;  // twists
};

inline CollisionData collision_data(const BassMorphism& m, const DirectionTable& src, const Direction& d1,
                                    const Direction& d2) {
  return {m.vertex_homs[d1.vertex](src.representative(d1)), m.vertex_homs[d2.vertex](src.representative(d2)),
          m.twists[d1.edge], m.twists[d2.edge]};
}

inline Element type_two_element(const BassMorphism& m, const CollisionData& c, std::size_t edge) {
  const auto& t = *m.target;
  const std::size_t fe = m.edge_map[edge];
  const Group& gx = t.vertices[t.edges[fe].initial].group;
  const Element a = gx.multiply(gx.inverse(c.a1), c.a2);
  const Element z = gx.multiply(gx.multiply(gx.inverse(c.g1), a), c.g1);
  auto s = t.edges[fe].inclusion.preimage(z);
  if (!s) throw InternalError("colliding directions do not differ by an edge-group element");
  return *s;
}

inline Subgroup conjugate_subgroup(const Subgroup& h, Element k) {
  std::vector<Element> gens;
  for (Element x : h.generators()) gens.push_back(h.parent().conjugate(k, x));
  return subgroup_generated(h.parent(), gens);
}

}  // namespace detail

/// The lexicographically first collision of the direction maps, classified.
inline std::optional<FoldMove> find_foldable_pair(const BassMorphism& m) {
  InducedMap map(m);
  auto c = first_collision(map);
  if (!c) return std::nullopt;
  FoldMove move;
  move.vertex = c->vertex;
  move.first = c->first;
  move.second = c->second;
  if (c->first.edge == c->second.edge) {
    move.kind = FoldMove::Kind::TypeII;
    move.element = detail::type_two_element(m, detail::collision_data(m, map.source(), c->first, c->second),
                                            c->first.edge);
  }
  return move;
}

inline FoldResult apply_fold(const BassMorphism& m, const FoldMove& move) {
  InducedMap map(m);
  const auto& s = *m.source;
  const auto& t = *m.target;
  if (move.first.vertex != move.vertex || move.second.vertex != move.vertex || move.first == move.second)
    throw InputError("fold move: directions must be distinct and based at the fold vertex");
  if (map(move.first) != map(move.second)) throw InputError("fold move: the two directions have different images");
  const bool same_edge = move.first.edge == move.second.edge;
  if (same_edge != (move.kind == FoldMove::Kind::TypeII)) throw InputError("fold move: wrong fold type");

  RelativeGraph rel = relative_of(m);
  Gauge gauge = Gauge::identity(m);
  std::vector<std::size_t> vmap(s.vertices.size()), emap(s.edges.size());
  for (std::size_t v = 0; v < vmap.size(); ++v) vmap[v] = v;
  for (std::size_t e = 0; e < emap.size(); ++e) emap[e] = e;
  RelativeGraph folded = rel;
  auto cd = detail::collision_data(m, map.source(), move.first, move.second);

  if (move.kind == FoldMove::Kind::TypeII) {
    const std::size_t e = move.first.edge;
    if (detail::type_two_element(m, cd, e) != move.element) throw InputError("fold move: wrong Type II element");
    const std::size_t re = s.edges[e].reverse;
    const std::size_t u = s.terminal(e);
    const std::size_t fre = m.edge_map[re];
    const Group& gu = t.vertices[t.edges[fre].initial].group;
    Subgroup b = enlarge(rel.edges[e].group, {move.element});
    folded.edges[e].group = b;
    folded.edges[re].group = b;
    const Element extra = gu.conjugate(rel.edges[re].twist, t.edges[fre].inclusion(move.element));
    folded.vertices[u].group = enlarge(rel.vertices[u].group, {extra});
  } else {
    std::size_t e1 = move.first.edge, e2 = move.second.edge;
    std::size_t u = s.terminal(e1), u2 = s.terminal(e2);
    const std::size_t x = move.vertex;
    if (u2 == x) {
      std::swap(e1, e2);
      std::swap(u, u2);
      std::swap(cd.a1, cd.a2);
      std::swap(cd.g1, cd.g2);
    }
    if (u == u2)
      throw BackendUnsupported("fold of edges " + s.edges[e1].name + " and " + s.edges[e2].name +
                               " would identify a vertex with itself (Type III); the morphism is not a homotopy "
                               "equivalence onto its image");
    const std::size_t eps = m.edge_map[e1];
    const std::size_t eps_bar = t.edges[eps].reverse;
    const Group& gx = t.vertices[t.edges[eps].initial].group;
    const Group& gu = t.vertices[t.edges[eps_bar].initial].group;
    Element z = gx.multiply(gx.inverse(cd.g1), gx.inverse(cd.a1));
    z = gx.multiply(gx.multiply(z, cd.a2), cd.g2);
    auto tt = t.edges[eps].inclusion.preimage(z);
    if (!tt) throw InternalError("Type I collision without an edge-group element");
    const std::size_t r1 = s.edges[e1].reverse, r2 = s.edges[e2].reverse;
    Element k = gu.multiply(rel.edges[r1].twist, t.edges[eps_bar].inclusion(*tt));
    k = gu.multiply(k, gu.inverse(rel.edges[r2].twist));
    gauge.vertex[u2] = k;
    gauge.edge[e2] = *tt;
    gauge.edge[r2] = *tt;

    // Merge u2 into u and e2 into e1, then renumber.
    Subgroup bnew = enlarge(rel.edges[e1].group, detail::conjugate_subgroup(rel.edges[e2].group, *tt).generators());
    Subgroup unew = enlarge(rel.vertices[u].group, detail::conjugate_subgroup(rel.vertices[u2].group, k).generators());
    std::vector<std::size_t> vnew(s.vertices.size()), enew(s.edges.size());
    folded.vertices.clear();
    for (std::size_t v = 0; v < s.vertices.size(); ++v) {
      if (v == u2) continue;
      vnew[v] = folded.vertices.size();
      folded.vertices.push_back(rel.vertices[v]);
    }
    vnew[u2] = vnew[u];
    folded.vertices[vnew[u]].group = unew;
    folded.edges.clear();
    for (std::size_t e = 0; e < s.edges.size(); ++e) {
      if (e == e2 || e == r2) continue;
      enew[e] = folded.edges.size();
      folded.edges.push_back(rel.edges[e]);
    }
    enew[e2] = enew[e1];
    enew[r2] = enew[r1];
    for (auto& edge : folded.edges) {
      if (edge.initial == u2) edge.twist = gu.multiply(k, edge.twist);
      edge.initial = vnew[edge.initial];
      edge.reverse = enew[edge.reverse];
    }
    folded.edges[enew[e1]].group = bnew;
    folded.edges[enew[r1]].group = bnew;
    vmap = vnew;
    emap = enew;
  }

  FoldResult result{move, {}, realize(folded), gauge};
  result.quotient = quotient_morphism(m, result.residual, vmap, emap, gauge);
  Report qr = validate_morphism(result.quotient);
  if (!qr.ok()) throw InternalError("fold quotient is not a Stallings morphism: " + qr.first());
  Report rr = validate_morphism(result.residual);
  if (!rr.ok()) throw InternalError("fold residual is not a Stallings morphism: " + rr.first());
  if (!same_morphism(compose(result.quotient, result.residual), apply_gauge(m, gauge)))
    throw InternalError("fold quotient followed by residual does not reproduce the input");
  return result;
}

/// Edge count plus the subgroup-chain budget; every fold lowers it by at least one.
inline std::size_t fold_budget(const BassMorphism& m) {
  RelativeGraph r = relative_of(m);
  std::size_t budget = 0;
  for (const auto& v : r.vertices) budget += chain_length_above(v.group);
  for (std::size_t e = 0; e < r.edges.size(); ++e)
    if (e < r.edges[e].reverse) budget += 1 + chain_length_above(r.edges[e].group);
  return budget;
}

inline std::vector<FoldResult> fold_to_immersion(const BassMorphism& m) {
  std::vector<FoldResult> stages;
  const std::size_t budget = fold_budget(m);
  BassMorphism current = m;
  while (auto move = find_foldable_pair(current)) {
    if (stages.size() >= budget) throw InternalError("fold sequence exceeded its step bound");
    stages.push_back(apply_fold(current, *move));
    current = stages.back().residual;
  }
  return stages;
}

/// Composite of the quotient maps of the first n stages (identity for n == 0).
inline BassMorphism composite_quotient(const BassMorphism& m, const std::vector<FoldResult>& stages, std::size_t n) {
  BassMorphism q = identity_morphism(m.source);
  for (std::size_t i = 0; i < n; ++i) q = compose(q, stages[i].quotient);
  return q;
}

/// One fold to an isomorphism. The homotopy-equivalence hypothesis is the caller's.
inline bool is_almost_G(const BassMorphism& m) {
  if (is_immersion(m)) return false;
  auto stages = fold_to_immersion(m);
  return stages.size() == 1 && is_isomorphism(stages.front().residual);
}

// ---------------------------------------------------------------------------
// Generators of almost-G instances (inverse folds), for tests.

namespace detail {

inline Element random_element(const Group& g, std::mt19937_64& rng) {
  if (g.is_finite()) return std::uniform_int_distribution<Element>(0, static_cast<Element>(g.order()) - 1)(rng);
  return std::uniform_int_distribution<Element>(-6, 6)(rng);
}

inline BassMorphism random_gauge(const BassMorphism& m, std::mt19937_64& rng) {
  Gauge g = Gauge::identity(m);
  for (std::size_t v = 0; v < g.vertex.size(); ++v) g.vertex[v] = random_element(m.target_vertex_group(v), rng);
  const auto& s = *m.source;
  for (std::size_t e = 0; e < s.edges.size(); ++e)
    if (e < s.edges[e].reverse) {
      g.edge[e] = random_element(m.target->edges[m.edge_map[e]].group, rng);
      g.edge[s.edges[e].reverse] = g.edge[e];
    }
  return apply_gauge(m, g);
}

inline RelativeGraph whole_copy(const GraphPtr& target) {
  RelativeGraph r{target, {}, {}};
  const auto& t = *target;
  for (std::size_t w = 0; w < t.vertices.size(); ++w)
    r.vertices.push_back({t.vertices[w].name, w, Subgroup::whole(t.vertices[w].group)});
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    r.edges.push_back({t.edges[e].name, e, t.edges[e].reverse, t.edges[e].initial, Subgroup::whole(t.edges[e].group),
                       t.vertices[t.edges[e].initial].group.identity()});
  return r;
}

inline std::optional<RelativeGraph> unfold_type_one(const GraphPtr& target, std::mt19937_64& rng) {
  const auto& t = *target;
  if (t.edges.empty()) return std::nullopt;
  const std::size_t eps = std::uniform_int_distribution<std::size_t>(0, t.edges.size() - 1)(rng);
  const std::size_t eps_bar = t.edges[eps].reverse;
  const std::size_t x = t.edges[eps].initial;
  const std::size_t w = t.terminal(eps);
  const Subgroup c = t.edges[eps_bar].inclusion.image();
  RelativeGraph r = whole_copy(target);
  const std::size_t w2 = r.vertices.size();
  r.vertices.push_back({t.vertices[w].name + "'", w, c});
  std::bernoulli_distribution coin(0.5);
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    if (t.edges[e].initial != w || e == eps_bar || e == eps) continue;
    if (!t.edges[e].inclusion.image().is_subgroup_of(c)) continue;
    if (coin(rng)) r.edges[e].initial = w2;
  }
  const std::size_t n = r.edges.size();
  const Element idx = t.vertices[x].group.identity();
  const Element idw = t.vertices[w].group.identity();
  r.edges.push_back({t.edges[eps].name + "'", eps, n + 1, x, Subgroup::whole(t.edges[eps].group), idx});
  r.edges.push_back({t.edges[eps].name + "'~", eps_bar, n, w2, Subgroup::whole(t.edges[eps].group), idw});
  return r;
}

inline std::vector<Subgroup> proper_subgroup_candidates(const Group& g) {
  std::vector<Subgroup> out;
  if (!g.is_finite()) {
    for (Element d = 2; d <= 24; ++d) out.push_back(Subgroup::multiples(g, d));
    return out;
  }
  for (Element x : g.elements()) {
    Subgroup h = subgroup_generated(g, {x});
    if (!h.is_whole() && std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
  }
  return out;
}

inline std::optional<RelativeGraph> unfold_type_two(const GraphPtr& target, std::mt19937_64& rng) {
  const auto& t = *target;
  std::vector<std::size_t> loops;
  for (std::size_t e = 0; e < t.edges.size(); ++e)
    if (t.is_loop(e) && t.edges[t.edges[e].reverse].inclusion.surjective() && !t.edges[e].inclusion.surjective())
      loops.push_back(e);
  if (loops.empty()) return std::nullopt;
  const std::size_t eps = loops[std::uniform_int_distribution<std::size_t>(0, loops.size() - 1)(rng)];
  const std::size_t eps_bar = t.edges[eps].reverse;
  const std::size_t u = t.edges[eps].initial;
  const Group& ge = t.edges[eps].group;
  const Group& gu = t.vertices[u].group;
  auto candidates = proper_subgroup_candidates(ge);
  std::shuffle(candidates.begin(), candidates.end(), rng);
  auto image_of = [&](std::size_t e, const Subgroup& b) {
    std::vector<Element> gens;
    for (Element y : b.generators()) gens.push_back(t.edges[e].inclusion(y));
    return subgroup_generated(gu, gens);
  };
  for (const auto& b : candidates) {
    const Subgroup a = image_of(eps_bar, b);
    if (!image_of(eps, b).is_subgroup_of(a)) continue;
    bool fits = true;
    for (std::size_t e : t.star(u))
      if (e != eps && e != eps_bar && !t.edges[e].inclusion.image().is_subgroup_of(a)) fits = false;
    if (!fits) continue;
    std::vector<Element> elems = ge.is_finite() ? ge.elements() : std::vector<Element>{};
    if (!ge.is_finite())
      for (Element k = 1; k <= 24; ++k) elems.push_back(k);
    bool enlarges = false;
    for (Element s : elems)
      if (a.contains(t.edges[eps].inclusion(s)) && !b.contains(s) && enlarge(b, {s}).is_whole()) {
        enlarges = true;
        break;
      }
    if (!enlarges) continue;
    RelativeGraph r = whole_copy(target);
    r.vertices[u].group = a;
    r.edges[eps].group = b;
    r.edges[eps_bar].group = b;
    return r;
  }
  return std::nullopt;
}

}  // namespace detail

/// A random almost-G morphism onto `target` whose single fold has the requested
/// kind. Deterministic in seed.
inline BassMorphism unfold_random(const GraphPtr& target, std::uint64_t seed, FoldMove::Kind kind) {
  std::mt19937_64 rng(seed);
  constexpr int attempts = 64;
  bool any_candidate = false;
  for (int i = 0; i < attempts; ++i) {
    auto rel = kind == FoldMove::Kind::TypeI ? detail::unfold_type_one(target, rng)
                                             : detail::unfold_type_two(target, rng);
    if (!rel) continue;
    any_candidate = true;
    BassMorphism m = detail::random_gauge(realize(*rel), rng);
    if (!validate_morphism(m).ok()) continue;
    auto move = find_foldable_pair(m);
    if (!move || move->kind != kind) continue;
    try {
      if (is_almost_G(m)) return m;
    } catch (const BackendUnsupported&) {
    }
  }
  throw NoUnfoldAvailable(any_candidate ? "no " + to_string(kind) + " unfold found after " +
                                              std::to_string(attempts) + " attempts"
                                        : "target admits no " + to_string(kind) + " unfold");
}

}  // namespace gogstar

#endif
