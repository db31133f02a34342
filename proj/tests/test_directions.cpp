#include <gtest/gtest.h>

#include "support.hpp"

namespace gogstar {
namespace {

using testing::dir;
using testing::fixture_map;

TEST(Directions, BaumslagSolitarVertexHasSeven) {
  BassMorphism m = fixture_map("bs16.gog");
  auto d = directions_at(m.source, 0);
  ASSERT_EQ(d.size(), 7u);
  const auto& g = *m.source;
  EXPECT_EQ(d[0], dir(g, "e", 0));
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(d[k + 1], dir(g, "e~", k));
}

TEST(Directions, ImmersionTargetCounts) {
  BassMorphism m = fixture_map("immersionex.gog");
  const auto& t = *m.target;
  EXPECT_EQ(directions_at(m.target, *t.find_vertex("c")).size(), 6u);
  std::size_t total = 0;
  for (std::size_t w = 0; w < t.vertices.size(); ++w) total += directions_at(m.target, w).size();
  EXPECT_EQ(total, 12u);
}

TEST(Directions, IsolatedVertexHasNone) {
  auto g = std::make_shared<GraphOfGroups>();
  g->add_vertex("x", Group::cyclic(2));
  EXPECT_TRUE(directions_at(g, 0).empty());
}

TEST(Directions, CountIsSumOfIndices) {
  for (const char* name : {"immersionex.gog", "bs16.gog"}) {
    BassMorphism m = fixture_map(name);
    for (const auto& gp : {m.source, m.target})
      for (std::size_t v = 0; v < gp->vertices.size(); ++v) {
        std::size_t expected = 0;
        for (std::size_t e : gp->star(v)) expected += *gp->edges[e].inclusion.image().index();
        EXPECT_EQ(directions_at(gp, v).size(), expected);
      }
  }
}

TEST(Directions, InfiniteIndexIsReported) {
  auto g = std::make_shared<GraphOfGroups>();
  const Group z = Group::infinite_cyclic();
  const Group one = Group::trivial();
  g->add_vertex("x", z);
  g->add_edge("e", 0, 0, one, Homomorphism::trivial(one, z), Homomorphism::trivial(one, z));
  EXPECT_THROW(directions_at(g, 0), IndexInfinite);
}

TEST(DirectionMap, TimesThreeOnCosets) {
  BassMorphism m = fixture_map("bs16.gog");
  const auto& g = *m.source;
  EXPECT_EQ(direction_map(m, dir(g, "e", 0)), dir(*m.target, "e", 0));
  for (std::size_t k = 0; k < 6; ++k)
    EXPECT_EQ(direction_map(m, dir(g, "e~", k)), dir(*m.target, "e~", (3 * k) % 6)) << k;
}

TEST(DirectionMap, IdentityFixesDirections) {
  for (const char* name : {"immersionex.gog", "bs16.gog"}) {
    auto g = fixture_map(name).target;
    BassMorphism id = identity_morphism(g);
    for (std::size_t v = 0; v < g->vertices.size(); ++v)
      for (const auto& d : directions_at(g, v)) EXPECT_EQ(direction_map(id, d), d);
  }
}

TEST(DirectionMap, ImmersionLeafTurnsLandApart) {
  // q1 and q5 both sit over R; each meets r in both cosets.
  BassMorphism m = fixture_map("immersionex.gog");
  const auto& s = *m.source;
  const auto& t = *m.target;
  EXPECT_EQ(direction_map(m, dir(s, "s1~", 0)), dir(t, "r", 0));
  EXPECT_EQ(direction_map(m, dir(s, "s2", 0)), dir(t, "r", 1));
  EXPECT_EQ(direction_map(m, dir(s, "s5~", 0)), dir(t, "r", 0));
  EXPECT_EQ(direction_map(m, dir(s, "s6", 0)), dir(t, "r", 1));
  // the C2 leaf over R
  EXPECT_EQ(direction_map(m, dir(s, "u", 0)), dir(t, "r", 0));
  EXPECT_EQ(direction_map(m, dir(s, "u", 1)), dir(t, "r", 1));
}

TEST(DirectionMap, RepresentativeIndependence) {
  for (const char* name : {"immersionex.gog", "bs16.gog"}) {
    BassMorphism m = fixture_map(name);
    InducedMap plain(m), shifted(m, true);
    for (std::size_t v = 0; v < m.source->vertices.size(); ++v)
      EXPECT_EQ(plain.images_at(v), shifted.images_at(v)) << name;
  }
}

TEST(DirectionMap, EquivariantUnderVertexGroup) {
  BassMorphism m = fixture_map("immersionex.gog");
  InducedMap map(m);
  for (std::size_t v = 0; v < m.source->vertices.size(); ++v) {
    const Group& gv = m.source->vertices[v].group;
    for (Element g : gv.elements())
      for (const auto& d : map.source().at(v))
        EXPECT_EQ(map(map.source().act(g, d)), map.target().act(m.vertex_homs[v](g), map(d)));
  }
  BassMorphism bs = fixture_map("bs16.gog");
  InducedMap bmap(bs);
  for (Element g = -7; g <= 7; ++g)
    for (const auto& d : bmap.source().at(0))
      EXPECT_EQ(bmap(bmap.source().act(g, d)), bmap.target().act(bs.vertex_homs[0](g), bmap(d)));
}

TEST(Immersion, Examples) {
  EXPECT_TRUE(is_immersion(fixture_map("immersionex.gog")));
  EXPECT_TRUE(is_immersion(identity_morphism(rose(2))));
  BassMorphism bs = fixture_map("bs16.gog");
  auto c = first_collision(bs);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->first, dir(*bs.source, "e~", 0));
  EXPECT_EQ(c->second, dir(*bs.source, "e~", 2));
}

/// Brute force: a map is an immersion iff no nondegenerate turn at any vertex
/// becomes degenerate.
bool immersion_by_turns(const BassMorphism& m) {
  InducedMap map(m);
  for (std::size_t v = 0; v < m.source->vertices.size(); ++v) {
    auto dirs = map.source().at(v);
    for (std::size_t i = 0; i < dirs.size(); ++i)
      for (std::size_t j = i + 1; j < dirs.size(); ++j)
        if (turn_canonical(map.target(), map(dirs[i]), map(dirs[j])).degenerate()) return false;
  }
  return true;
}

TEST(Immersion, AgreesWithTurnCriterion) {
  for (const char* name : {"immersionex.gog", "bs16.gog", "words_aa_a.gog"}) {
    BassMorphism m = fixture_map(name);
    EXPECT_EQ(is_immersion(m), immersion_by_turns(m)) << name;
  }
  for (const char* w : {"abAB", "aab", "abBa", "aA", "abcCBA"}) {
    BassMorphism m = word_graph({parse_letters(w)}, 3);
    EXPECT_EQ(is_immersion(m), immersion_by_turns(m)) << w;
  }
}

TEST(Turns, DegenerateAndSingletonOrbits) {
  BassMorphism bs = fixture_map("bs16.gog");
  const auto& t = *bs.target;
  const Direction d = dir(t, "e~", 1);
  EXPECT_TRUE(turn_canonical(bs.target, d, d).degenerate());

  auto r = rose(2);
  Turn turn = turn_canonical(r, dir(*r, "b", 0), dir(*r, "a~", 0));
  EXPECT_EQ(turn.first, dir(*r, "a~", 0));
  EXPECT_EQ(turn.second, dir(*r, "b", 0));
}

TEST(Turns, IntegersActOnPairs) {
  auto g = fixture_map("bs16.gog").target;
  const auto& t = *g;
  Turn a = turn_canonical(g, dir(t, "e~", 0), dir(t, "e~", 3));
  Turn b = turn_canonical(g, dir(t, "e~", 1), dir(t, "e~", 4));
  Turn c = turn_canonical(g, dir(t, "e~", 4), dir(t, "e~", 1));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_NE(a, turn_canonical(g, dir(t, "e~", 0), dir(t, "e~", 2)));
  EXPECT_THROW(turn_canonical(g, dir(t, "e~", 0), Direction{1, 0, 0}), InputError);
}

TEST(TakenTurns, Examples) {
  // valence one, trivial group: a single direction, no pairs
  BassMorphism w = word_graph({parse_letters("abB")}, 2);
  auto hairy = fold_to_immersion(w);
  ASSERT_EQ(hairy.size(), 1u);
  const auto& folded = hairy.back().residual;
  for (std::size_t v = 0; v < folded.source->vertices.size(); ++v)
    if (folded.source->star(v).size() == 1) {
      EXPECT_TRUE(taken_turns(folded, v).empty());
    }

  BassMorphism bs = fixture_map("bs16.gog");
  const auto& t = *bs.target;
  auto taken = taken_turns(bs, 0);
  EXPECT_TRUE(taken.count(turn_canonical(bs.target, dir(t, "e", 0), dir(t, "e~", 0))));
}

TEST(TakenTurns, ImmersionCentre) {
  BassMorphism m = fixture_map("immersionex.gog");
  const auto& s = *m.source;
  const auto& t = *m.target;
  auto taken = taken_turns(m, *s.find_vertex("Cen"));
  // Cen sees s6~ -> (r~,0), t~ -> (o~,0), u~ -> (r~,1)
  std::set<Turn> expected{turn_canonical(m.target, dir(t, "r~", 0), dir(t, "o~", 0)),
                          turn_canonical(m.target, dir(t, "r~", 1), dir(t, "o~", 0)),
                          turn_canonical(m.target, dir(t, "r~", 0), dir(t, "r~", 1))};
  EXPECT_EQ(taken, expected);
  for (const auto& turn : taken) EXPECT_FALSE(turn.degenerate());
}

TEST(Monotonicity, IdentityFactor) {
  for (const char* name : {"immersionex.gog", "bs16.gog"}) {
    BassMorphism f = fixture_map(name);
    EXPECT_TRUE(check_turn_monotonicity(identity_morphism(f.source), f, f).ok);
  }
}

TEST(Monotonicity, NonCommutingDiagramIsRejected) {
  BassMorphism f = fixture_map("immersionex.gog");
  BassMorphism broken = f;
  broken.twists[*f.source->find_edge("s2")] = 0;
  EXPECT_THROW(check_turn_monotonicity(identity_morphism(f.source), f, broken), InputError);
}

TEST(Monotonicity, FoldStagesAreMonotone) {
  BassMorphism bs = fixture_map("bs16.gog");
  auto stages = fold_to_immersion(bs);
  ASSERT_EQ(stages.size(), 1u);
  auto r = check_turn_monotonicity(stages[0].quotient, bs, stages[0].residual);
  EXPECT_TRUE(r.ok);
}

}  // namespace
}  // namespace gogstar
