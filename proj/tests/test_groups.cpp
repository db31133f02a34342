#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "support.hpp"

namespace gogstar {
namespace {

using testing::c6;
using testing::s3;

TEST(ValidateGroup, TrivialIsOk) { EXPECT_TRUE(validate_group(Group::trivial()).ok()); }

TEST(ValidateGroup, CyclicTwoIsOk) {
  EXPECT_TRUE(validate_group(Group::table(2, {0, 1, 1, 0})).ok());
  EXPECT_TRUE(validate_group(s3()).ok());
}

TEST(ValidateGroup, MissingInverseIsNamed) {
  Report r = validate_group(Group::table(2, {0, 1, 1, 1}));
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.first().find("inverse"), std::string::npos) << r.first();
  EXPECT_NE(r.first().find("1"), std::string::npos);
}

TEST(ValidateGroup, OtherAxioms) {
  EXPECT_NE(validate_group(Group::table(2, {0, 1, 1, 2})).first().find("closure"), std::string::npos);
  EXPECT_NE(validate_group(Group::table(2, {1, 0, 0, 1})).first().find("identity"), std::string::npos);
  EXPECT_NE(validate_group(Group::table(2, {0, 1})).first().find("entries"), std::string::npos);
  // Identity and inverses exist, yet (1*1)*2 = 0*2 = 2 while 1*(1*2) = 1*0 = 1.
  Group bad = Group::table(3, {0, 1, 2, 1, 0, 0, 2, 0, 0});
  EXPECT_NE(validate_group(bad).first().find("associativity"), std::string::npos);
}

TEST(SubgroupGenerated, EmptyGeneratesTrivial) {
  Subgroup h = subgroup_generated(Group::cyclic(2), {});
  EXPECT_EQ(h.order(), std::optional<std::size_t>{1});
  EXPECT_TRUE(h.contains(0));
  EXPECT_FALSE(h.contains(1));
}

TEST(SubgroupGenerated, IntegersGiveGcd) {
  Group z = Group::infinite_cyclic();
  Subgroup h = subgroup_generated(z, {6, 3});
  EXPECT_EQ(h.modulus(), 3);
  EXPECT_EQ(h.index(), std::optional<std::size_t>{3});
  // gcd oracle over a grid
  for (Element a = -12; a <= 12; ++a)
    for (Element b = 0; b <= 12; ++b)
      EXPECT_EQ(subgroup_generated(z, {a, b}).modulus(), std::gcd(a < 0 ? -a : a, b));
}

TEST(SubgroupGenerated, OrderTwoElementOfC6) {
  // Brute-force closure oracle: keep multiplying until nothing new appears.
  Group g = c6();
  std::set<Element> closure{0};
  for (bool grew = true; grew;) {
    grew = false;
    for (Element x : std::set<Element>(closure))
      if (closure.insert(g.multiply(x, 3)).second) grew = true;
  }
  Subgroup h = subgroup_generated(g, {3});
  EXPECT_EQ(std::set<Element>(h.members().begin(), h.members().end()), closure);
  EXPECT_EQ(h.order(), std::optional<std::size_t>{2});
}

TEST(SubgroupGenerated, RejectsForeignElement) {
  EXPECT_THROW(subgroup_generated(Group::cyclic(2), {5}), InputError);
}

TEST(SubgroupGenerated, Idempotent) {
  for (const Group& g : {c6(), s3()})
    for (Element x : g.elements())
      for (Element y : g.elements()) {
        Subgroup h = subgroup_generated(g, {x, y});
        EXPECT_EQ(subgroup_generated(g, h.members()), h);
        EXPECT_EQ(subgroup_generated(g, h.generators()), h);
        EXPECT_TRUE(validate_subgroup(h).ok());
      }
}

TEST(CosetSpace, IntegersModSix) {
  Group z = Group::infinite_cyclic();
  CosetSpace cs(z, Subgroup::multiples(z, 6));
  ASSERT_EQ(cs.size(), 6u);
  for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(cs.representative(c), static_cast<Element>(c));
  for (Element k = -20; k <= 20; ++k)
    for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(cs.act(k, c), static_cast<std::size_t>(((k + Element(c)) % 6 + 6) % 6));
}

TEST(CosetSpace, FullGroupActsRegularly) {
  Group c2 = Group::cyclic(2);
  CosetSpace cs(c2, Subgroup::trivial(c2));
  EXPECT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs.act(1, 0), 1u);
  EXPECT_EQ(cs.act(1, 1), 0u);
}

TEST(CosetSpace, InfiniteIndexThrows) {
  Group z = Group::infinite_cyclic();
  EXPECT_THROW(CosetSpace(z, Subgroup::multiples(z, 0)), IndexInfinite);
}

TEST(CosetSpace, PartitionAndActionLaws) {
  Group g = s3();
  for (Element x : g.elements()) {
    Subgroup h = subgroup_generated(g, {x});
    CosetSpace cs(g, h);
    // cosets partition: each element lands in exactly one, all have |H| elements
    std::vector<std::size_t> sizes(cs.size(), 0);
    for (Element y : g.elements()) ++sizes[cs.coset_of(y)];
    for (std::size_t s : sizes) EXPECT_EQ(s, *h.order());
    // least element represents its coset
    for (std::size_t c = 0; c < cs.size(); ++c)
      for (Element y : g.elements())
        if (cs.coset_of(y) == c) {
          EXPECT_LE(cs.representative(c), y);
        }
    for (Element a : g.elements())
      for (Element b : g.elements())
        for (std::size_t c = 0; c < cs.size(); ++c) EXPECT_EQ(cs.act(a, cs.act(b, c)), cs.act(g.multiply(a, b), c));
    for (Element k : h.members()) EXPECT_EQ(cs.act(k, 0), 0u);
  }
}

TEST(ValidateHom, Examples) {
  Group c2 = Group::cyclic(2);
  Homomorphism id = Homomorphism::identity(c2);
  EXPECT_TRUE(validate_hom(id).ok());
  EXPECT_TRUE(id.injective());

  Group z = Group::infinite_cyclic();
  Homomorphism times3(z, z, {3});
  EXPECT_TRUE(validate_hom(times3).ok());
  EXPECT_TRUE(times3.injective());
  EXPECT_EQ(times3(5), 15);
  EXPECT_EQ(times3.preimage(9), std::optional<Element>{3});
  EXPECT_EQ(times3.preimage(10), std::nullopt);

  Homomorphism lying(c2, c2, {0, 0}, true);
  Report r = validate_hom(lying);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.first().find("injectivity"), std::string::npos);
}

TEST(ValidateHom, CyclicIntoFiniteIsNeverInjective) {
  Group z = Group::infinite_cyclic();
  Homomorphism onto(z, Group::cyclic(6), {1});
  EXPECT_FALSE(onto.injective());
  EXPECT_TRUE(onto.surjective());
  EXPECT_TRUE(validate_hom(onto).ok());
  EXPECT_FALSE(validate_hom(Homomorphism(z, Group::cyclic(6), {1}, true)).ok());
}

TEST(ValidateHom, NotMultiplicative) {
  Group c2 = Group::cyclic(2);
  Report r = validate_hom(Homomorphism(c2, c6(), {0, 1}));
  EXPECT_FALSE(r.ok());
}

TEST(Realize, SubgroupsBecomeGroups) {
  Group z = Group::infinite_cyclic();
  auto r3 = realize(Subgroup::multiples(z, 3));
  EXPECT_FALSE(r3.group.is_finite());
  EXPECT_EQ(r3.embedding(2), 6);
  EXPECT_TRUE(realize(Subgroup::multiples(z, 0)).group.is_trivial());

  auto rs = realize(subgroup_generated(s3(), {4}));
  EXPECT_EQ(rs.group.order(), 3u);
  EXPECT_TRUE(validate_group(rs.group).ok());
  EXPECT_TRUE(validate_hom(rs.embedding).ok());
  EXPECT_TRUE(rs.embedding.injective());
}

TEST(ChainLength, Bounds) {
  Group z = Group::infinite_cyclic();
  EXPECT_EQ(chain_length_above(Subgroup::multiples(z, 12)), 3u);
  EXPECT_EQ(chain_length_above(Subgroup::multiples(z, 1)), 0u);
  EXPECT_EQ(chain_length_above(Subgroup::trivial(s3())), 2u);
}

}  // namespace
}  // namespace gogstar
