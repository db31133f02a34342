#ifndef GOGSTAR_FORMAT_HPP
#define GOGSTAR_FORMAT_HPP

// Line-oriented text format for graphs of groups, morphisms and certificates.
// The grammar is documented in docs/format.md.

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gogstar/gog.hpp"

namespace gogstar {

struct CertificateSpec {
  std::vector<std::vector<std::string>> subgraphs;
  std::string morphism = "f";
  std::string stallings = "s";
  std::string factor = "phi";
  std::size_t line = 0;
};

struct Document {
  std::vector<std::string> graph_order;
  std::map<std::string, GraphPtr> graphs;
  std::vector<std::string> map_order;
  std::map<std::string, BassMorphism> maps;
  std::map<std::string, std::size_t> map_lines;
  std::optional<CertificateSpec> certificate;

  const GraphPtr& graph(const std::string& name) const {
    auto it = graphs.find(name);
    if (it == graphs.end()) throw InputError("document has no graph '" + name + "'");
    return it->second;
  }
  const BassMorphism& map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw InputError("document has no morphism '" + name + "'");
    return it->second;
  }
  bool has_map(const std::string& name) const { return maps.count(name) > 0; }
};

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

struct Section {
  std::size_t line;
  std::vector<std::string> header;
  std::vector<Line> body;
};

class Tokens {
 public:
  explicit Tokens(const Line& line) : line_(line) {}

  bool done() const { return pos_ >= line_.tokens.size(); }
  const std::string& peek() const { return line_.tokens[pos_]; }
  std::size_t number() const { return line_.number; }

  std::string next(const char* what) {
    if (done()) fail(std::string("expected ") + what);
    return line_.tokens[pos_++];
  }

  bool accept(std::string_view word) {
    if (!done() && peek() == word) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int64_t integer(const char* what) {
    std::string tok = next(what);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) fail(std::string("expected ") + what + ", got '" + tok + "'");
    return value;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_.number, msg); }

  void finish() const {
    if (!done()) fail("unexpected token '" + peek() + "'");
  }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

inline std::vector<Section> split_sections(std::istream& in) {
  std::vector<Section> sections;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<std::string> tokens;
    for (std::string t; ss >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.front().front() == '[') {
      std::string joined;
      for (const auto& t : tokens) joined += (joined.empty() ? "" : " ") + t;
      if (joined.back() != ']') throw ParseError(number, "unterminated section header");
      std::istringstream hs(joined.substr(1, joined.size() - 2));
      Section s{number, {}, {}};
      for (std::string t; hs >> t;) s.header.push_back(t);
      if (s.header.empty()) throw ParseError(number, "empty section header");
      sections.push_back(std::move(s));
    } else {
      if (sections.empty()) throw ParseError(number, "content before the first section header");
      sections.back().body.push_back({number, std::move(tokens)});
    }
  }
  return sections;
}

inline Group parse_group(Tokens& t) {
  const std::string kind = t.next("a group");
  if (kind == "trivial") return Group::trivial();
  if (kind == "Z") return Group::infinite_cyclic();
  if (kind == "cyclic") {
    const auto n = t.integer("a cyclic group order");
    if (n < 1) t.fail("cyclic group order must be positive");
    return Group::cyclic(static_cast<std::size_t>(n));
  }
  if (kind == "table") {
    const auto n = t.integer("a group order");
    if (n < 1) t.fail("group order must be positive");
    std::vector<Element> entries;
    for (std::int64_t i = 0; i < n * n; ++i) entries.push_back(t.integer("a multiplication table entry"));
    if (n == 1) return entries.front() == 0 ? Group::trivial() : Group::table(1, entries);
    return Group::table(static_cast<std::size_t>(n), std::move(entries));
  }
  t.fail("unknown group '" + kind + "' (expected trivial, Z, cyclic N or table N ...)");
}

/// After `keyword`, the images of a homomorphism out of `source`.
inline std::vector<Element> parse_images(Tokens& t, const Group& source) {
  const std::size_t count = source.is_finite() ? source.order() : 1;
  std::vector<Element> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(t.integer("a homomorphism image"));
  return out;
}

inline std::vector<Element> default_images(const Tokens& t, const Group& source, const char* what) {
  if (!source.is_trivial()) t.fail(std::string("missing '") + what + "' for a nontrivial group");
  return {0};
}

inline Homomorphism checked_hom(const Tokens& t, const Group& src, const Group& tgt, std::vector<Element> images) {
  for (Element y : images)
    if (!tgt.contains(y)) t.fail("image " + std::to_string(y) + " is not an element of " + tgt.describe());
  return Homomorphism(src, tgt, std::move(images));
}

inline std::size_t vertex_id(const Tokens& t, const GraphOfGroups& g, const std::string& name) {
  auto v = g.find_vertex(name);
  if (!v) t.fail("undeclared vertex '" + name + "'");
  return *v;
}

inline GraphPtr parse_graph(const Section& section) {
  auto g = std::make_shared<GraphOfGroups>();
  struct Pending {
    std::size_t line;
    std::size_t id;
    std::string reverse;
  };
  std::vector<Pending> pending;
  std::map<std::string, std::size_t> seen;
  auto declare = [&](const Tokens& t, const std::string& name) {
    if (!seen.emplace(name, t.number()).second) t.fail("duplicate name '" + name + "'");
  };
  for (const auto& line : section.body) {
    Tokens t(line);
    const std::string kw = t.next("a declaration");
    if (kw == "vertex") {
      const std::string name = t.next("a vertex name");
      declare(t, name);
      g->add_vertex(name, parse_group(t));
    } else if (kw == "edge") {
      const std::string name = t.next("an edge name");
      declare(t, name);
      declare(t, name + "~");
      const std::size_t from = vertex_id(t, *g, t.next("an initial vertex"));
      const std::size_t to = vertex_id(t, *g, t.next("a terminal vertex"));
      Group group = parse_group(t);
      std::optional<std::vector<Element>> incl, incl_rev;
      while (!t.done()) {
        if (t.accept("incl") && !incl) incl = parse_images(t, group);
        else if (t.accept("incl~") && !incl_rev) incl_rev = parse_images(t, group);
        else t.fail("unexpected token '" + t.peek() + "'");
      }
      if (!incl) incl = default_images(t, group, "incl");
      if (!incl_rev) incl_rev = default_images(t, group, "incl~");
      g->add_edge(name, from, to, group, checked_hom(t, group, g->vertices[from].group, *incl),
                  checked_hom(t, group, g->vertices[to].group, *incl_rev));
    } else if (kw == "half-edge") {
      const std::string name = t.next("an edge name");
      declare(t, name);
      const std::size_t from = vertex_id(t, *g, t.next("an initial vertex"));
      const std::string reverse = t.next("a reverse edge name");
      Group group = parse_group(t);
      std::vector<Element> incl = t.accept("incl") ? parse_images(t, group) : default_images(t, group, "incl");
      t.finish();
      pending.push_back({line.number, g->edges.size(), reverse});
      g->edges.push_back({name, 0, from, group, checked_hom(t, group, g->vertices[from].group, incl)});
    } else {
      t.fail("unknown declaration '" + kw + "' in a graph section");
    }
  }
  for (const auto& p : pending) {
    auto r = g->find_edge(p.reverse);
    if (!r) throw ParseError(p.line, "undeclared reverse edge '" + p.reverse + "'");
    g->edges[p.id].reverse = *r;
  }
  return g;
}

inline BassMorphism parse_map(const Section& section, const GraphPtr& source, const GraphPtr& target) {
  const auto& s = *source;
  const auto& tg = *target;
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  BassMorphism m{source, target, std::vector<std::size_t>(s.vertices.size(), unset),
                 std::vector<std::size_t>(s.edges.size(), unset), {}, {}, std::vector<Element>(s.edges.size(), 0)};
  std::vector<std::optional<Homomorphism>> vh(s.vertices.size()), eh(s.edges.size());
  for (const auto& line : section.body) {
    Tokens t(line);
    const std::string kw = t.next("a map line");
    const std::string from = t.next("a source name");
    if (!t.accept("->")) t.fail("expected '->'");
    const std::string to = t.next("a target name");
    if (kw == "vertex") {
      const std::size_t v = vertex_id(t, s, from);
      auto w = tg.find_vertex(to);
      if (!w) t.fail("undeclared target vertex '" + to + "'");
      if (m.vertex_map[v] != unset) t.fail("vertex '" + from + "' mapped twice");
      m.vertex_map[v] = *w;
      const Group& src = s.vertices[v].group;
      auto images = t.accept("hom") ? parse_images(t, src) : default_images(t, src, "hom");
      t.finish();
      vh[v] = checked_hom(t, src, tg.vertices[*w].group, images);
    } else if (kw == "edge") {
      auto e = s.find_edge(from);
      if (!e) t.fail("undeclared edge '" + from + "'");
      auto f = tg.find_edge(to);
      if (!f) t.fail("undeclared target edge '" + to + "'");
      const std::size_t re = s.edges[*e].reverse;
      if (m.edge_map[*e] != unset) t.fail("edge '" + from + "' mapped twice");
      const Group& src = s.edges[*e].group;
      std::optional<std::vector<Element>> images;
      std::optional<Element> g, g_rev;
      while (!t.done()) {
        if (t.accept("hom") && !images) images = parse_images(t, src);
        else if (t.accept("g") && !g) g = t.integer("a twist element");
        else if (t.accept("g~") && !g_rev) g_rev = t.integer("a twist element");
        else t.fail("unexpected token '" + t.peek() + "'");
      }
      if (!images) images = default_images(t, src, "hom");
      const std::size_t rf = tg.edges[*f].reverse;
      m.edge_map[*e] = *f;
      m.edge_map[re] = rf;
      eh[*e] = checked_hom(t, src, tg.edges[*f].group, *images);
      eh[re] = eh[*e];
      m.twists[*e] = g.value_or(0);
      if (re == *e && g_rev && *g_rev != m.twists[*e]) t.fail("conflicting twists on a self-reverse edge");
      if (re != *e) m.twists[re] = g_rev.value_or(0);
    } else {
      t.fail("unknown map line '" + kw + "'");
    }
  }
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    if (m.vertex_map[v] == unset) throw ParseError(section.line, "vertex '" + s.vertices[v].name + "' is not mapped");
    m.vertex_homs.push_back(*vh[v]);
  }
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    if (m.edge_map[e] == unset) throw ParseError(section.line, "edge '" + s.edges[e].name + "' is not mapped");
    m.edge_homs.push_back(*eh[e]);
  }
  return m;
}

inline CertificateSpec parse_certificate(const Section& section) {
  CertificateSpec c;
  c.line = section.line;
  for (const auto& line : section.body) {
    Tokens t(line);
    const std::string kw = t.next("a certificate line");
    if (kw == "subgraph") {
      std::vector<std::string> ids;
      while (!t.done()) ids.push_back(t.next("an id"));
      if (ids.empty()) t.fail("empty subgraph");
      c.subgraphs.push_back(std::move(ids));
    } else if (kw == "morphism" || kw == "stallings" || kw == "factor") {
      std::string name = t.next("a morphism name");
      t.finish();
      (kw == "morphism" ? c.morphism : kw == "stallings" ? c.stallings : c.factor) = std::move(name);
    } else {
      t.fail("unknown certificate line '" + kw + "'");
    }
  }
  return c;
}

}  // namespace detail

inline Document parse_document(std::istream& in) {
  auto sections = detail::split_sections(in);
  Document doc;
  struct MapHeader {
    const detail::Section* section;
    std::string name, source, target;
  };
  std::vector<MapHeader> maps;
  auto add_graph = [&](const detail::Section& s, const std::string& name) {
    if (doc.graphs.count(name)) throw ParseError(s.line, "duplicate graph '" + name + "'");
    doc.graphs[name] = detail::parse_graph(s);
    doc.graph_order.push_back(name);
  };
  for (const auto& s : sections) {
    const auto& h = s.header;
    if ((h[0] == "target" || h[0] == "source") && h.size() == 1) {
      add_graph(s, h[0]);
    } else if (h[0] == "graph" && h.size() == 2) {
      add_graph(s, h[1]);
    } else if (h[0] == "map" && h.size() == 1) {
      maps.push_back({&s, "f", "source", "target"});
    } else if (h[0] == "map" && h.size() == 5 && h[3] == "->") {
      maps.push_back({&s, h[1], h[2], h[4]});
    } else if (h[0] == "certificate" && h.size() == 1) {
      if (doc.certificate) throw ParseError(s.line, "duplicate certificate section");
      doc.certificate = detail::parse_certificate(s);
    } else {
      throw ParseError(s.line, "unknown section header");
    }
  }
  for (const auto& mh : maps) {
    if (doc.maps.count(mh.name)) throw ParseError(mh.section->line, "duplicate morphism '" + mh.name + "'");
    for (const auto* g : {&mh.source, &mh.target})
      if (!doc.graphs.count(*g)) throw ParseError(mh.section->line, "undeclared graph '" + *g + "'");
    doc.maps.emplace(mh.name, detail::parse_map(*mh.section, doc.graphs[mh.source], doc.graphs[mh.target]));
    doc.map_order.push_back(mh.name);
    doc.map_lines[mh.name] = mh.section->line;
  }
  if (doc.certificate)
    for (const auto* name : {&doc.certificate->morphism, &doc.certificate->stallings, &doc.certificate->factor})
      if (!doc.maps.count(*name)) throw ParseError(doc.certificate->line, "undeclared morphism '" + *name + "'");
  return doc;
}

inline Document parse_document(const std::string& text) {
  std::istringstream in(text);
  return parse_document(in);
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::string write_group(const Group& g) {
  if (g.kind() == Group::Kind::Trivial) return "trivial";
  if (!g.is_finite()) return "Z";
  std::string out = "table " + std::to_string(g.order());
  for (Element x : g.entries()) out += " " + std::to_string(x);
  return out;
}

inline std::string write_images(const Homomorphism& h) {
  std::string out;
  for (Element x : check_elements(h.source())) out += " " + std::to_string(h(x));
  return out;
}

}  // namespace detail

inline std::string write_graph(const GraphOfGroups& g) {
  std::ostringstream out;
  for (const auto& v : g.vertices) out << "vertex " << v.name << " " << detail::write_group(v.group) << "\n";
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& oe = g.edges[e];
    const bool paired = oe.reverse == e + 1 && g.edges[e + 1].name == oe.name + "~";
    const bool trivial = oe.group.is_trivial();
    if (paired) {
      const auto& re = g.edges[e + 1];
      out << "edge " << oe.name << " " << g.vertices[oe.initial].name << " " << g.vertices[re.initial].name << " "
          << detail::write_group(oe.group);
      if (!trivial) out << " incl" << detail::write_images(oe.inclusion) << " incl~" << detail::write_images(re.inclusion);
      out << "\n";
      ++e;
    } else {
      out << "half-edge " << oe.name << " " << g.vertices[oe.initial].name << " " << g.edges[oe.reverse].name << " "
          << detail::write_group(oe.group);
      if (!trivial) out << " incl" << detail::write_images(oe.inclusion);
      out << "\n";
    }
  }
  return out.str();
}

inline std::string write_map(const BassMorphism& m) {
  const auto& s = *m.source;
  const auto& t = *m.target;
  std::ostringstream out;
  for (std::size_t v = 0; v < s.vertices.size(); ++v) {
    out << "vertex " << s.vertices[v].name << " -> " << t.vertices[m.vertex_map[v]].name;
    if (!s.vertices[v].group.is_trivial()) out << " hom" << detail::write_images(m.vertex_homs[v]);
    out << "\n";
  }
  for (std::size_t e = 0; e < s.edges.size(); ++e) {
    const std::size_t re = s.edges[e].reverse;
    if (re < e) continue;
    out << "edge " << s.edges[e].name << " -> " << t.edges[m.edge_map[e]].name;
    if (!s.edges[e].group.is_trivial()) out << " hom" << detail::write_images(m.edge_homs[e]);
    out << " g " << m.twists[e];
    if (re != e) out << " g~ " << m.twists[re];
    out << "\n";
  }
  return out.str();
}

/// A self-contained document with [target], [source] and [map] for one morphism.
inline std::string write_morphism(const BassMorphism& m) {
  return "[target]\n" + write_graph(*m.target) + "\n[source]\n" + write_graph(*m.source) + "\n[map]\n" + write_map(m);
}

}  // namespace gogstar

#endif
