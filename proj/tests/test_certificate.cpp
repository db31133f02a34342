#include <gtest/gtest.h>

#include "support.hpp"

namespace gogstar {
namespace {

using testing::load_fixture;

CertificateReport check_fixture(const std::string& name) {
  return check_simplicity_certificate(certificate_from(load_fixture(name)));
}

CheckStatus status(const CertificateReport& r, const std::string& name) {
  const auto* c = r.find(name);
  EXPECT_NE(c, nullptr) << name;
  return c ? c->status : CheckStatus::Fail;
}

TEST(Certificate, FreeSplittingIsDisconnected) {
  CertificateReport r = check_fixture("f2_certificate.gog");
  ASSERT_TRUE(r.accepted());
  EXPECT_TRUE(r.f_isomorphism);
  EXPECT_EQ(r.verdict->kind, StarVerdict::Kind::Disconnected);
  EXPECT_FALSE(r.theorem_violation);
  EXPECT_EQ(status(r, "fold sequence"), CheckStatus::Skipped);
  EXPECT_EQ(status(r, "complementary directions isolated"), CheckStatus::Pass);
  // the b-loop contributes both of its directions
  EXPECT_EQ(r.isolated.size(), 2u);
}

TEST(Certificate, BaumslagSolitarHasCutVertex) {
  CertificateReport r = check_fixture("bs16_certificate.gog");
  ASSERT_TRUE(r.accepted());
  EXPECT_FALSE(r.f_isomorphism);
  EXPECT_EQ(r.folds, 1u);
  EXPECT_EQ(r.verdict->kind, StarVerdict::Kind::CutVertex);
  const Document doc = load_fixture("bs16_certificate.gog");
  const auto& t = *doc.graph("target");
  const Direction e0 = testing::dir(t, "e", 0);
  EXPECT_NE(std::find(r.verdict->cut.begin(), r.verdict->cut.end(), e0), r.verdict->cut.end());
  for (const char* check : {"almost-G stage", "turn monotonicity", "almost-G cut vertex", "cut vertex inherited"})
    EXPECT_EQ(status(r, check), CheckStatus::Pass) << check;
}

TEST(Certificate, CorruptedFactorIsRejected) {
  CertificateReport r = check_fixture("corrupted_certificate.gog");
  EXPECT_FALSE(r.accepted());
  EXPECT_EQ(status(r, "factorisation commutes"), CheckStatus::Fail);
  EXPECT_FALSE(r.verdict.has_value());
  EXPECT_FALSE(r.theorem_violation);
}

TEST(Certificate, OverlappingSubgraphsAreRejected) {
  Certificate c = certificate_from(load_fixture("f2_certificate.gog"));
  c.subgraphs.push_back(c.subgraphs.front());
  CertificateReport r = check_simplicity_certificate(c);
  EXPECT_FALSE(r.accepted());
  EXPECT_EQ(status(r, "subgraphs disjoint"), CheckStatus::Fail);
}

TEST(Certificate, ComplementMustBeOneEdge) {
  Certificate c = certificate_from(load_fixture("f2_certificate.gog"));
  const auto& g = *c.f.source;
  c.subgraphs = {resolve_subgraph(g, {"v"})};
  CertificateReport r = check_simplicity_certificate(c);
  EXPECT_FALSE(r.accepted());
  // the word's a-loop is no longer inside the subgraph
  EXPECT_EQ(status(r, "components carried by subgraphs"), CheckStatus::Fail);
}

TEST(Certificate, UnknownSubgraphId) {
  EXPECT_THROW(resolve_subgraph(*rose(2), {"v", "zz"}), InputError);
  Document doc = load_fixture("bs16.gog");
  EXPECT_THROW(certificate_from(doc), InputError);
}

}  // namespace
}  // namespace gogstar
