#ifndef GOGSTAR_CERTIFICATE_HPP
#define GOGSTAR_CERTIFICATE_HPP

// Checks a splitting certificate for a collection C represented by a Stallings
// graph of groups s: G_C -> G. The certificate supplies f: G -> G, a
// factorisation phi: G_C -> G with f.phi = s, and the subgraphs of G that are
// preimages of the collapsed vertices.

#include <set>
#include <string>
#include <vector>

#include "gogstar/folds.hpp"
#include "gogstar/format.hpp"
#include "gogstar/stargraph.hpp"

namespace gogstar {

struct Subgraph {
  std::set<std::size_t> vertices;
  std::set<std::size_t> edges;  ///< both orientations
};

struct Certificate {
  BassMorphism f;
  BassMorphism s;
  BassMorphism factor;
  std::vector<Subgraph> subgraphs;
};

enum class CheckStatus { Pass, Fail, Skipped };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "skipped";
  }
}

struct CertificateCheck {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct CertificateReport {
  std::vector<CertificateCheck> checks;
  std::optional<StarVerdict> verdict;
  std::optional<StarGraph> star;
  bool f_isomorphism = false;
  std::size_t folds = 0;
  std::vector<Direction> isolated;  ///< directions on the complementary edge
  bool theorem_violation = false;

  bool accepted() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return verdict.has_value();
  }
  const CertificateCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Resolves vertex and edge names of `g`; naming an edge includes its reverse.
inline Subgraph resolve_subgraph(const GraphOfGroups& g, const std::vector<std::string>& ids) {
  Subgraph h;
  for (const auto& id : ids) {
    if (auto v = g.find_vertex(id)) {
      h.vertices.insert(*v);
    } else if (auto e = g.find_edge(id)) {
      h.edges.insert(*e);
      h.edges.insert(g.edges[*e].reverse);
    } else {
      throw InputError("subgraph names unknown id '" + id + "'");
    }
  }
  return h;
}

inline Certificate certificate_from(const Document& doc) {
  if (!doc.certificate) throw InputError("document has no [certificate] section");
  const auto& spec = *doc.certificate;
  Certificate c{doc.map(spec.morphism), doc.map(spec.stallings), doc.map(spec.factor), {}};
  for (const auto& ids : spec.subgraphs) c.subgraphs.push_back(resolve_subgraph(*c.f.source, ids));
  return c;
}

namespace detail {

inline std::vector<std::size_t> component_labels(const GraphOfGroups& g) {
  std::vector<std::size_t> label(g.vertices.size(), static_cast<std::size_t>(-1));
  std::size_t next = 0;
  for (std::size_t v0 = 0; v0 < g.vertices.size(); ++v0) {
    if (label[v0] != static_cast<std::size_t>(-1)) continue;
    std::vector<std::size_t> stack{v0};
    label[v0] = next;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t e : g.star(v)) {
        const std::size_t u = g.terminal(e);
        if (label[u] == static_cast<std::size_t>(-1)) {
          label[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  return label;
}

inline bool same_graph(const GraphPtr& a, const GraphPtr& b) { return a == b || a->same_structure(*b); }

}  // namespace detail

inline CertificateReport check_simplicity_certificate(const Certificate& cert) {
  CertificateReport rep;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, ok ? std::string{} : detail});
    return ok;
  };
  auto skip = [&](std::string name, std::string why) {
    rep.checks.push_back({std::move(name), CheckStatus::Skipped, std::move(why)});
  };

  bool ok = true;
  for (const auto& [name, m] : {std::pair{"f validates", &cert.f}, std::pair{"s validates", &cert.s},
                                std::pair{"factor validates", &cert.factor}}) {
    Report r = validate_morphism(*m);
    ok = add(name, r.ok(), r.first()) && ok;
  }
  if (ok) {
    auto w = reduced_witness(*cert.f.target);
    ok = add("target reduced", !w.has_value(),
             w ? "edge " + cert.f.target->edges[*w].name + " can be collapsed" : std::string{}) && ok;
  }
  const bool shapes = detail::same_graph(cert.factor.source, cert.s.source) &&
                      detail::same_graph(cert.factor.target, cert.f.source) &&
                      detail::same_graph(cert.s.target, cert.f.target);
  ok = add("diagram shapes", shapes, "factor must run from the source of s to the source of f, and s, f share a target") && ok;
  if (ok) {
    std::string why;
    ok = add("factorisation commutes", agrees_up_to_translation(compose(cert.factor, cert.f), cert.s, &why), why) && ok;
  }

  const auto& g = *cert.f.source;
  bool subgraphs_ok = cert.subgraphs.size() == 1 || cert.subgraphs.size() == 2;
  std::string sub_why = subgraphs_ok ? "" : "expected one or two subgraphs";
  for (const auto& h : cert.subgraphs) {
    for (std::size_t e : h.edges)
      if (!h.vertices.count(g.edges[e].initial)) {
        subgraphs_ok = false;
        sub_why = "edge " + g.edges[e].name + " has an endpoint outside its subgraph";
      }
  }
  if (cert.subgraphs.size() == 2) {
    const auto& a = cert.subgraphs[0];
    const auto& b = cert.subgraphs[1];
    for (std::size_t v : a.vertices)
      if (b.vertices.count(v)) {
        subgraphs_ok = false;
        sub_why = "subgraphs share vertex " + g.vertices[v].name;
      }
  }
  ok = add("subgraphs disjoint", subgraphs_ok, sub_why) && ok;

  if (ok) {
    const auto& gc = *cert.s.source;
    const auto comp = detail::component_labels(gc);
    std::string why;
    std::vector<std::set<std::size_t>> homes(comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1);
    for (std::size_t v = 0; v < gc.vertices.size(); ++v)
      for (std::size_t i = 0; i < cert.subgraphs.size(); ++i)
        if (cert.subgraphs[i].vertices.count(cert.factor.vertex_map[v])) homes[comp[v]].insert(i);
    bool inside = true;
    for (std::size_t c = 0; c < homes.size() && inside; ++c) {
      bool found = false;
      for (std::size_t i : homes[c]) {
        bool all = true;
        for (std::size_t v = 0; v < gc.vertices.size(); ++v)
          if (comp[v] == c && !cert.subgraphs[i].vertices.count(cert.factor.vertex_map[v])) all = false;
        for (std::size_t e = 0; e < gc.edges.size(); ++e)
          if (comp[gc.edges[e].initial] == c && !cert.subgraphs[i].edges.count(cert.factor.edge_map[e])) all = false;
        found = found || all;
      }
      if (!found) {
        inside = false;
        why = "a component of the source of s is not carried into a single subgraph";
      }
    }
    ok = add("components carried by subgraphs", inside, why) && ok;
  }
  if (!ok) return rep;

  StarGraph star = build_star_graph(cert.s);
  StarVerdict v = verdict(star);
  rep.f_isomorphism = is_isomorphism(cert.f);

  if (rep.f_isomorphism) {
    skip("fold sequence", "f is an isomorphism");
    const auto& t = *cert.f.target;
    std::set<std::size_t> covered;
    for (const auto& h : cert.subgraphs)
      for (std::size_t e : h.edges) covered.insert(cert.f.edge_map[e]);
    std::vector<std::size_t> rest;
    for (std::size_t e = 0; e < t.edges.size(); ++e)
      if (!covered.count(e) && e < t.edges[e].reverse) rest.push_back(e);
    if (!add("single complementary edge", rest.size() == 1,
             std::to_string(rest.size()) + " edges lie outside the image of the subgraphs"))
      return rep;
    const std::size_t e = rest.front(), re = t.edges[e].reverse;
    bool hit = false;
    for (std::size_t x : cert.s.edge_map) hit = hit || x == e || x == re;
    if (!add("complementary edge unhit", !hit, "s crosses edge " + t.edges[e].name)) return rep;
    bool isolated = true;
    for (std::size_t i = 0; i < star.directions.size(); ++i) {
      const auto& d = star.directions[i];
      if (d.edge != e && d.edge != re) continue;
      rep.isolated.push_back(d);
      for (const auto& pe : star.edges) isolated = isolated && pe.second != i;
    }
    add("complementary directions isolated", isolated, "a piece meets a direction on the complementary edge");
  } else {
    auto stages = fold_to_immersion(cert.f);
    rep.folds = stages.size();
    if (!add("fold sequence", !stages.empty() && is_isomorphism(stages.back().residual),
             stages.empty() ? "f is an immersion but not an isomorphism" : "folding f does not end in an isomorphism"))
      return rep;
    const std::size_t k = stages.size();
    const BassMorphism& almost = k == 1 ? cert.f : stages[k - 2].residual;
    add("almost-G stage", is_almost_G(almost), "the last fold stage is not almost G");
    const BassMorphism to_almost = compose(cert.factor, composite_quotient(cert.f, stages, k - 1));
    auto mono = check_turn_monotonicity(to_almost, cert.s, almost);
    add("turn monotonicity", mono.ok,
        mono.ok ? "" : "a turn taken at " + cert.s.source->vertices[mono.vertex].name + " is lost");
    StarVerdict av = verdict(build_star_graph(almost));
    add("almost-G cut vertex", av.kind == StarVerdict::Kind::CutVertex, "star graph of the almost-G stage is " + to_string(av.kind));
    if (v.kind == StarVerdict::Kind::CutVertex) {
      bool shared = false;
      for (const auto& d : av.cut) shared = shared || std::find(v.cut.begin(), v.cut.end(), d) != v.cut.end();
      add("cut vertex inherited", shared, "no cut direction of the almost-G stage cuts the star graph of s");
    } else {
      skip("cut vertex inherited", "star graph of s is " + to_string(v.kind));
    }
  }
  rep.verdict = v;
  // Every hypothesis held, so a Neither verdict contradicts the dichotomy.
  rep.theorem_violation = rep.accepted() && v.kind == StarVerdict::Kind::Neither;
  add("dichotomy", v.kind != StarVerdict::Kind::Neither, "star graph of s is connected without a cut vertex");
  rep.star = std::move(star);
  return rep;
}

}  // namespace gogstar

#endif
