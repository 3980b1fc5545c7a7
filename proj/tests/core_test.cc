// Copyright 2026 The tagdesc Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tagdesc/core.h"

#include <cstdint>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "tagdesc/cluster_io.h"
#include "tagdesc/csv.h"
#include "tagdesc/error.h"
#include "test_util.h"

namespace tagdesc {
namespace {

using testing::MakeCluster;
using testing::NumberedUniverse;

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kGeneric;
}

template <typename Fn>
ErrorKind KindOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::kInternal;
}

TEST(TagUniverseTest, LooksUpNames) {
  TagUniverse u({"a", "b", "c"});
  EXPECT_EQ(u.size(), 3u);
  EXPECT_EQ(u.Lookup("b"), 1u);
  EXPECT_FALSE(u.Find("z").has_value());
  EXPECT_EQ(KindOf([&] { u.Lookup("z"); }), ErrorKind::kConfig);
}

TEST(TagUniverseTest, RejectsDuplicateAndEmptyNames) {
  EXPECT_THROW(TagUniverse({"a", "a"}), Error);
  EXPECT_THROW(TagUniverse({"a", ""}), Error);
}

TEST(TaggedClusterTest, RejectsUntaggedItemsUnlessAllowed) {
  auto u = NumberedUniverse(3);
  std::vector<Item> items = {{"x", u->EmptySet()}};
  EXPECT_EQ(CodeOf([&] { TaggedCluster(u, "c", items); }), ErrorCode::kUntaggedItem);
  TaggedCluster ok(u, "c", items, /*allow_untagged=*/true);
  EXPECT_EQ(ok.UntaggedItems(), std::vector<std::string>{"x"});
}

TEST(TaggedClusterTest, RejectsDuplicateIdsAndWrongWidth) {
  auto u = NumberedUniverse(3);
  TagSet s = u->EmptySet();
  s.set(0);
  EXPECT_THROW(TaggedCluster(u, "c", {{"x", s}, {"x", s}}), Error);
  TagSet wide(4);
  wide.set(0);
  EXPECT_THROW(TaggedCluster(u, "c", {{"x", wide}}), Error);
}

TEST(DescriptorTest, ValidityOnThreeItemExample) {
  // T1={t1,t2,t5}, T2={t3,t4,t5}, T3={t3,t4,t6}
  const TaggedCluster c = MakeCluster(6, {{0, 1, 4}, {2, 3, 4}, {2, 3, 5}});
  EXPECT_TRUE(IsValidDescriptor(c, {{0, 3, 5}}));
  EXPECT_FALSE(IsValidDescriptor(c, {{0, 4}}));
  EXPECT_TRUE(IsValidDescriptor(c, {{1, 2}}));
  EXPECT_FALSE(IsValidDescriptor(c, {{}}));
}

TEST(DescriptorTest, ValidityAgreesWithDirectCheck) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sets = testing::RandomMasks(rng, 8, 10, 0.3);
    const TaggedCluster c = testing::ClusterFromMasks(8, sets);
    std::vector<TagId> d;
    for (TagId t = 0; t < 8; ++t) {
      if (UniformUnit(rng) < 0.4) d.push_back(t);
    }
    EXPECT_EQ(IsValidDescriptor(c, {d}), testing::HitsAll(sets, d));
  }
}

TEST(DescriptorTest, OutOfRangeTagIsMalformed) {
  const TaggedCluster c = MakeCluster(3, {{0}});
  EXPECT_EQ(CodeOf([&] { IsValidDescriptor(c, {{7}}); }), ErrorCode::kMalformedDescriptor);
}

TEST(CnfDescriptorTest, Disjointness) {
  EXPECT_TRUE((CnfDescriptor{{{0, 2}}, {{4, 5}}}).ClausesDisjoint());
  EXPECT_FALSE((CnfDescriptor{{{0, 2}}, {{2, 5}}}).ClausesDisjoint());
  EXPECT_EQ((CnfDescriptor{{{0, 2}}, {{4, 5}}}).size(), 4u);
}

TEST(CandidateMaskTest, ComposesByAnd) {
  CandidateMask a = CandidateMask::All(4);
  CandidateMask b = CandidateMask::All(4);
  a.Exclude(1);
  b.Exclude(3);
  const CandidateMask c = a & b;
  EXPECT_EQ(c.admissible_count(), 2u);
  EXPECT_TRUE(c.admissible(0));
  EXPECT_FALSE(c.admissible(1));
  EXPECT_THROW(a & CandidateMask::All(5), Error);
}

TEST(TagFrequenciesTest, CountsAndSubset) {
  const TaggedCluster c = MakeCluster(4, {{0, 1}, {1}, {1, 3}});
  EXPECT_EQ(TagFrequencies(c), (std::vector<std::size_t>{1, 3, 0, 1}));
  const std::vector<std::size_t> subset = {0, 2};
  EXPECT_EQ(TagFrequencies(c, subset), (std::vector<std::size_t>{1, 2, 0, 1}));
  const std::vector<std::size_t> bad = {5};
  EXPECT_THROW(TagFrequencies(c, bad), Error);
}

// Thousandths of a percent by long division, rounding half up.
std::int64_t OracleThousandths(std::size_t count, std::size_t n) {
  const std::uint64_t num = static_cast<std::uint64_t>(count) * 100000;
  std::uint64_t q = num / n;
  if ((num % n) * 2 >= n) ++q;
  return static_cast<std::int64_t>(q);
}

TEST(TagCoverageTest, RoundingMatchesLongDivision) {
  for (std::size_t n = 1; n <= 200; ++n) {
    for (std::size_t count = 0; count <= n; ++count) {
      TagCoverage c{0, count, n};
      ASSERT_EQ(c.rounded_thousandths(), OracleThousandths(count, n)) << count << "/" << n;
    }
  }
}

TEST(TagCoverageTest, ReferenceFigures) {
  // Cluster of 90: 61 items carry the tag, 90 carry another.
  EXPECT_EQ((TagCoverage{0, 61, 90}).Formatted(), "67.778");
  EXPECT_EQ((TagCoverage{0, 90, 90}).Formatted(), "100.000");
  EXPECT_EQ((TagCoverage{0, 4, 90}).Formatted(), "4.444");
  EXPECT_EQ((TagCoverage{0, 0, 80}).Formatted(), "0.000");
  EXPECT_EQ((TagCoverage{0, 71, 80}).Formatted(), "88.750");
  EXPECT_EQ(FormatThousandths(5), "0.005");
}

TEST(TagCoverageTest, EmptyClusterIsAnError) {
  TaggedCluster empty(NumberedUniverse(2), "e", {});
  EXPECT_EQ(CodeOf([&] { TagCoveragePercentages(empty); }), ErrorCode::kEmptyCluster);
}

TEST(TagCoverageTest, ComplementaryPairsSumToHundred) {
  // Each item carries exactly one of (t1, t2).
  const TaggedCluster c = MakeCluster(2, {{0}, {1}, {1}, {0}, {0}, {0}, {1}});
  const TagStats s = TagCoveragePercentages(c);
  EXPECT_DOUBLE_EQ(s.per_tag[0].percentage() + s.per_tag[1].percentage(), 100.0);
}

TEST(CsvTest, ParsesQuotesAndBlankLines) {
  const DataTable t = ParseCsv("\xEF\xBB\xBF" "a,b,c\n1,\"x,y\",\" z \"\n\n2, 3 ,\"q\"\"r\"\n");
  ASSERT_EQ(t.row_count(), 2u);
  EXPECT_EQ(t.cell(0, 1), "x,y");
  EXPECT_EQ(t.cell(0, 2), " z ");
  EXPECT_EQ(t.cell(1, 1), "3");
  EXPECT_EQ(t.cell(1, 2), "q\"r");
  EXPECT_EQ(t.ColumnIndex("c"), 2u);
  EXPECT_THROW(t.ColumnIndex("nope"), Error);
}

TEST(CsvTest, RaggedRowsAreErrors) {
  EXPECT_THROW(ParseCsv("a,b\n1\n"), Error);
}

TEST(CsvTest, MissingCells) {
  for (const char* s : {"", "NA", "N/A", "NaN", "nan", "?", "null"}) EXPECT_TRUE(IsMissingCell(s));
  EXPECT_FALSE(IsMissingCell("0"));
}

TEST(CsvTest, EscapeRoundTrips) {
  const std::string text = "h\n" + CsvEscape("a,\"b\"") + "\n";
  EXPECT_EQ(ParseCsv(text).cell(0, 0), "a,\"b\"");
}

TEST(CsvTest, MissingFileIsIoError) {
  EXPECT_EQ(KindOf([] { ReadFile("/nonexistent/x.csv"); }), ErrorKind::kIo);
}

TEST(ClusterIoTest, JsonRoundTrip) {
  const ClusterSet set = LoadClusterSet(testing::FixturePath("examples/three_items.json"));
  ASSERT_EQ(set.clusters.size(), 1u);
  EXPECT_EQ(set.clusters[0].size(), 3u);
  const ClusterSet again = ParseClusterSetJson(ClusterSetToJson(set));
  EXPECT_EQ(*again.universe, *set.universe);
  EXPECT_EQ(again.clusters[0].items(), set.clusters[0].items());
}

TEST(ClusterIoTest, BinaryMatrixRoundTrip) {
  const ClusterSet set = LoadClusterSet(testing::FixturePath("examples/greedy_trace.json"));
  const ClusterSet again = ParseBinaryMatrix(ParseCsv(ClusterSetToBinaryMatrix(set)));
  EXPECT_EQ(*again.universe, *set.universe);
  EXPECT_EQ(again.clusters[0].items(), set.clusters[0].items());
}

TEST(ClusterIoTest, RejectsBadDocuments) {
  EXPECT_EQ(KindOf([] { ParseClusterSetJson("{"); }), ErrorKind::kInvalidData);
  EXPECT_THROW(ParseClusterSetJson(R"({"universe":["a"],"clusters":[{"cluster_id":"1",
      "items":[{"id":"x","tags":[3]}]}]})"),
               Error);
  EXPECT_THROW(ParseClusterSetJson(R"({"universe":["a"],"clusters":[{"cluster_id":"1",
      "items":[{"id":"x","tags":[0,0]}]}]})"),
               Error);
  EXPECT_THROW(ParseBinaryMatrix(ParseCsv("cluster_id,item_id,a\n1,x,2\n")), Error);
}

TEST(ClusterIoTest, ClusterIdOrdering) {
  EXPECT_TRUE(ClusterIdLess("2", "10"));
  EXPECT_FALSE(ClusterIdLess("10", "2"));
  EXPECT_TRUE(ClusterIdLess("9", "a"));
  EXPECT_TRUE(ClusterIdLess("a", "b"));
}

}  // namespace
}  // namespace tagdesc
