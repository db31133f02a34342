// Acceptance runner: one PASS/FAIL line per criterion, with runtime limits.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gogstar/gogstar.hpp"

using namespace gogstar;

namespace {

BassMorphism fixture(const std::string& name) {
  std::ifstream in(std::string(GOGSTAR_FIXTURES) + "/" + name);
  if (!in) throw InputError("missing fixture " + name);
  return parse_document(in).map("f");
}

Direction dir(const GraphOfGroups& g, const std::string& edge, std::size_t coset) {
  const std::size_t e = *g.find_edge(edge);
  return {g.edges[e].initial, e, coset};
}

/// Collects failures for one criterion; the first few are printed.
struct Tally {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

/// Star graphs built anywhere are also audited for criterion 6.
struct StructuralAudit {
  Tally tally;
  std::size_t graphs = 0;

  StarGraph build(const BassMorphism& m, const std::string& label) {
    StarGraph sg = build_star_graph(m);
    ++graphs;
    Report r = check_star_graph(sg, m);
    tally.expect(r.ok(), label + ": " + r.first());
    for (const auto& [p, d] : sg.edges)
      tally.expect(p < sg.pieces.size() && d < sg.directions.size(), label + ": edge is not piece-direction");
    if (sg.pieces.size() + sg.directions.size() <= 40)
      tally.expect(canonical_form(sg) == canonical_form(build_star_graph(m, RepresentativePolicy::Shifted)),
                   label + ": star graph depends on coset representatives");
    return sg;
  }
};

StructuralAudit audit;

bool report(int number, const std::string& title, const Tally& t, double seconds, double limit) {
  const bool ok = t.failures.empty() && (limit <= 0 || seconds < limit);
  std::ostringstream time;
  time.precision(3);
  time << std::fixed << seconds << " s";
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " (" << t.checks << " checks, "
            << time.str();
  if (limit > 0) std::cout << ", limit " << limit << " s";
  std::cout << ")\n";
  for (std::size_t i = 0; i < t.failures.size() && i < 5; ++i) std::cout << "    " << t.failures[i] << "\n";
  if (t.failures.size() > 5) std::cout << "    ... " << t.failures.size() - 5 << " more\n";
  return ok;
}

template <typename F>
bool timed(int number, const std::string& title, double limit, F&& body) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report(number, title, t, secs, limit);
}

std::set<Direction> as_set(const std::vector<Direction>& v) { return {v.begin(), v.end()}; }

void criterion_one(Tally& t) {
  BassMorphism m = fixture("immersionex.gog");
  const auto& g = *m.target;
  t.expect(validate_morphism(m).ok(), "fixture does not validate");
  t.expect(is_reduced(g), "target not reduced");
  t.expect(is_immersion(m), "not an immersion");
  StarGraph sg = audit.build(m, "immersionex");
  t.expect(sg.directions.size() == 12, "direction count " + std::to_string(sg.directions.size()));
  t.expect(sg.pieces.size() == 15, "piece count " + std::to_string(sg.pieces.size()));
  for (std::size_t w = 0; w < g.vertices.size(); ++w)
    t.expect(component_count(sg, w) == 1, "Gamma_" + g.vertices[w].name + " disconnected");
  t.expect(as_set(cut_vertices(sg)) == std::set<Direction>{dir(g, "r~", 0), dir(g, "r~", 1)}, "cut set differs");
}

void criterion_two(Tally& t) {
  BassMorphism m = fixture("bs16.gog");
  const auto& s = *m.source;
  const auto& g = *m.target;
  auto dv = directions_at(m.source, 0);
  std::vector<Direction> expected{dir(s, "e", 0)};
  for (std::size_t k = 0; k < 6; ++k) expected.push_back(dir(s, "e~", k));
  t.expect(dv == expected, "D_v differs from {e} and the six cosets of ebar");
  t.expect(direction_map(m, dir(s, "e", 0)) == dir(g, "e", 0), "e does not map to e");
  for (std::size_t k = 0; k < 6; ++k)
    t.expect(direction_map(m, dir(s, "e~", k)) == dir(g, "e~", (3 * k) % 6), "coset " + std::to_string(k) + " misplaced");
  StarGraph sg = audit.build(m, "bs16");
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b) {
      const std::size_t ia = sg.direction_index(dir(g, "e~", a)), ib = sg.direction_index(dir(g, "e~", b));
      bool close = false;
      for (const auto& [p, d] : sg.edges)
        if (d == ia)
          for (const auto& [q, d2] : sg.edges) close = close || (q == p && d2 == ib);
      t.expect(close == ((b - a) % 3 == 0), "distance two wrong for cosets " + std::to_string(a) + "," + std::to_string(b));
    }
  t.expect(as_set(cut_vertices(sg)) == std::set<Direction>{dir(g, "e", 0)}, "cut set is not {e}");
  auto stages = fold_to_immersion(m);
  t.expect(stages.size() == 1 && stages[0].move.kind == FoldMove::Kind::TypeII, "expected one Type II fold");
}

GraphPtr amalgam_c4_c6() {
  auto g = std::make_shared<GraphOfGroups>();
  const Group c2 = Group::cyclic(2), c4 = Group::cyclic(4), c6 = Group::cyclic(6);
  g->add_vertex("x", c4);
  g->add_vertex("y", c6);
  g->add_edge("e", 0, 1, c2, Homomorphism(c2, c4, {0, 2}), Homomorphism(c2, c6, {0, 3}));
  return g;
}

GraphPtr bs14() {
  auto g = std::make_shared<GraphOfGroups>();
  const Group z = Group::infinite_cyclic();
  g->add_vertex("v", z);
  g->add_edge("e", 0, 0, z, Homomorphism(z, z, {1}), Homomorphism(z, z, {4}));
  return g;
}

struct Instance {
  std::string label;
  BassMorphism m;
};

std::vector<Instance> unfold_instances;

void criterion_three(Tally& t) {
  struct Target {
    std::string name;
    GraphPtr graph;
    bool type_two;
  };
  const std::vector<Target> targets{{"immersionex", fixture("immersionex.gog").target, false},
                                    {"BS(1,6)", fixture("bs16.gog").target, true},
                                    {"rose(2)", rose(2), false},
                                    {"C4*C6", amalgam_c4_c6(), false},
                                    {"BS(1,4)", bs14(), true}};
  std::size_t type_two = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto& target = targets[i % targets.size()];
    const auto kind = target.type_two && (i / targets.size()) % 2 ? FoldMove::Kind::TypeII : FoldMove::Kind::TypeI;
    const std::string label = target.name + " seed " + std::to_string(i) + " " + to_string(kind);
    type_two += kind == FoldMove::Kind::TypeII;
    BassMorphism m = unfold_random(target.graph, i, kind);
    t.expect(is_almost_G(m), label + ": not almost G");
    StarVerdict v = verdict(audit.build(m, label));
    t.expect(v.kind == StarVerdict::Kind::CutVertex && !v.cut.empty(), label + ": verdict " + to_string(v.kind));
    unfold_instances.push_back({label, std::move(m)});
  }
  t.expect(type_two > 0, "no Type II instances generated");
}

void check_pipeline(Tally& t, const BassMorphism& m, const std::string& label) {
  auto stages = fold_to_immersion(m);
  const BassMorphism* previous = &m;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    auto r = check_turn_monotonicity(stages[i].quotient, *previous, stages[i].residual);
    t.expect(r.ok, label + ": stage " + std::to_string(i + 1) + " loses a turn");
    previous = &stages[i].residual;
  }
  if (!stages.empty()) {
    auto r = check_turn_monotonicity(composite_quotient(m, stages, stages.size()), m, stages.back().residual);
    t.expect(r.ok, label + ": composite loses a turn");
    audit.build(stages.back().residual, label + " folded");
  }
}

void criterion_four(Tally& t) {
  for (const auto& inst : unfold_instances) check_pipeline(t, inst.m, inst.label);
  t.expect(unfold_instances.size() == 200, "criterion 3 pipelines missing");
  std::mt19937_64 rng(4);
  std::size_t pipelines = 0;
  while (pipelines < 50) {
    const std::size_t rank = 2 + rng() % 2;
    auto letter = [&] { return (static_cast<int>(rng() % rank) + 1) * (rng() % 2 ? 1 : -1); };
    Letters w;
    for (int i = 0, n = 2 + static_cast<int>(rng() % 6); i < n; ++i) w.push_back(letter());
    CyclicWord c;
    try {
      c = cyclic_reduce(w, rank);
    } catch (const EmptyWord&) {
      continue;
    }
    // a spur inside the word forces at least one Type I fold
    Letters raw = c.letters;
    const int x = letter();
    raw.insert(raw.begin() + 1, {x, -x});
    ++pipelines;
    check_pipeline(t, word_graph({raw}, rank), "word " + CyclicWord{rank, raw}.text());
  }
}

void criterion_five(Tally& t) {
  for (std::size_t r = 2; r <= 4; ++r)
    for (std::size_t k = 1; k <= r; ++k) {
      BassMorphism m = word_stallings({cyclic_reduce(letter_name(k), r)}, r);
      StarVerdict v = verdict(audit.build(m, "basis letter"));
      t.expect(v.kind == StarVerdict::Kind::Disconnected, "letter " + letter_name(k) + " in rank " + std::to_string(r));
    }
  BassMorphism comm = word_stallings({cyclic_reduce("abAB", 2)}, 2);
  t.expect(verdict(audit.build(comm, "commutator")).kind == StarVerdict::Kind::Neither, "commutator is not Neither");
  // distance-two versus taken turns is part of check_star_graph, run by the audit
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rank = 2 + rng() % 3;
    Letters w;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 10); i < n; ++i)
      w.push_back((static_cast<int>(rng() % rank) + 1) * (rng() % 2 ? 1 : -1));
    try {
      CyclicWord c = cyclic_reduce(w, rank);
      BassMorphism m = word_stallings({c}, rank);
      t.expect(is_immersion(m), c.text() + ": not an immersion");
      const std::size_t before = audit.tally.failures.size();
      audit.build(m, "word " + c.text());
      t.expect(audit.tally.failures.size() == before, c.text() + ": distance-two check failed");
    } catch (const EmptyWord&) {
    }
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= timed(1, "immersion example golden values", 1.0, criterion_one);
  ok &= timed(2, "BS(1,6) golden values", 1.0, criterion_two);
  ok &= timed(3, "almost-G unfolds have a cut vertex", 30.0, criterion_three);
  ok &= timed(4, "taken turns are monotone along fold pipelines", 0, criterion_four);
  ok &= timed(5, "free-group sanity", 5.0, criterion_five);
  Tally six = audit.tally;
  six.expect(audit.graphs > 400, "only " + std::to_string(audit.graphs) + " star graphs audited");
  ok &= report(6, "structural invariants on " + std::to_string(audit.graphs) + " star graphs", six, 0, 0);
  return ok ? 0 : 1;
}
