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


#include "tagdesc/pipeline.h"

#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "tagdesc/error.h"
#include "tagdesc/random.h"

namespace tagdesc {
namespace {

NumericMatrix FromRows(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < rows[0].size(); ++c) names.push_back("c" + std::to_string(c));
  std::vector<double> data;
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return NumericMatrix(rows.size(), names, data);
}

// `per_blob` points around each center, spread `spread`.
NumericMatrix Blobs(const std::vector<std::vector<double>>& centers, std::size_t per_blob,
                    double spread, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> rows;
  for (const auto& c : centers) {
    for (std::size_t i = 0; i < per_blob; ++i) {
      std::vector<double> p = c;
      for (auto& x : p) x += (UniformUnit(rng) - 0.5) * spread;
      rows.push_back(p);
    }
  }
  return FromRows(rows);
}

double ColumnMean(const NumericMatrix& m, std::size_t c) {
  double s = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) s += m.at(r, c);
  return s / m.rows();
}

TEST(NumericMatrixTest, RejectsNonFiniteAndRagged) {
  EXPECT_THROW(NumericMatrix(1, {"a"}, {NAN}), Error);
  EXPECT_THROW(NumericMatrix(2, {"a"}, {1.0}), Error);
}

TEST(IngestTest, OneHotAndExclude) {
  const DataTable t = ParseCsv("id,x,color\na,1,red\nb,2,blue\nc,3,red\n");
  const NumericMatrix m = ToNumericMatrix(t, {{}, {"id"}, {"color"}});
  EXPECT_EQ(m.column_names(), (std::vector<std::string>{"x", "color=red", "color=blue"}));
  EXPECT_DOUBLE_EQ(m.at(1, 2), 1.0);
  EXPECT_DOUBLE_EQ(m.at(2, 1), 1.0);
  EXPECT_THROW(ToNumericMatrix(t), Error);  // "id" is not numeric
  EXPECT_THROW(ToNumericMatrix(ParseCsv("x\n1\n?\n")), Error);
}

TEST(StandardizeTest, SimpleColumn) {
  const NumericMatrix s = Standardize(FromRows({{1}, {2}, {3}}));
  EXPECT_NEAR(s.at(0, 0), -std::sqrt(1.5), 1e-12);
  EXPECT_NEAR(s.at(1, 0), 0.0, 1e-12);
}

TEST(StandardizeTest, IdempotentAndMoments) {
  Rng rng(3);
  std::vector<std::vector<double>> rows(50, std::vector<double>(4));
  for (auto& r : rows) {
    for (auto& x : r) x = UniformUnit(rng) * 100 - 20;
  }
  const NumericMatrix s = Standardize(FromRows(rows));
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_NEAR(ColumnMean(s, c), 0.0, 1e-9);
    double v = 0;
    for (std::size_t r = 0; r < s.rows(); ++r) v += s.at(r, c) * s.at(r, c);
    EXPECT_NEAR(v / s.rows(), 1.0, 1e-9);
  }
  const NumericMatrix twice = Standardize(s);
  for (std::size_t i = 0; i < s.data().size(); ++i) {
    EXPECT_NEAR(twice.data()[i], s.data()[i], 1e-12);
  }
}

TEST(StandardizeTest, ConstantColumnNamed) {
  try {
    Standardize(FromRows({{1, 5}, {2, 5}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVariance);
    EXPECT_NE(std::string(e.what()).find("'c1'"), std::string::npos);
  }
}

TEST(KMeansTest, SeparatedGroupsRecovered) {
  const NumericMatrix m = Blobs({{0, 0}, {100, 100}}, 20, 1.0, 1);
  const KMeansResult r = KMeans(m, 2, 42);
  for (std::size_t i = 1; i < 20; ++i) EXPECT_EQ(r.labels[i], r.labels[0]);
  for (std::size_t i = 21; i < 40; ++i) EXPECT_EQ(r.labels[i], r.labels[20]);
  EXPECT_NE(r.labels[0], r.labels[20]);
}

TEST(KMeansTest, KEqualsRowsGivesZeroSse) {
  const NumericMatrix m = Blobs({{0, 0}}, 12, 5.0, 2);
  EXPECT_DOUBLE_EQ(KMeans(m, 12, 7).sse, 0.0);
}

TEST(KMeansTest, Deterministic) {
  const NumericMatrix m = Blobs({{0, 0}, {5, 5}, {0, 9}}, 30, 6.0, 3);
  const KMeansResult a = KMeans(m, 3, 123);
  const KMeansResult b = KMeans(m, 3, 123);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.sse, b.sse);
  EXPECT_EQ(a.sse_history, b.sse_history);
}

TEST(KMeansTest, InvariantsOverSeeds) {
  const NumericMatrix m = Blobs({{0, 0, 0}, {4, 4, 0}, {0, 4, 4}, {4, 0, 4}}, 25, 5.0, 4);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (std::size_t k : {1, 2, 4, 7}) {
      const KMeansResult r = KMeans(m, k, seed);
      ASSERT_EQ(r.labels.size(), m.rows());
      std::set<std::size_t> used(r.labels.begin(), r.labels.end());
      EXPECT_EQ(used.size(), k);
      for (std::size_t i = 1; i < r.sse_history.size(); ++i) {
        EXPECT_LE(r.sse_history[i], r.sse_history[i - 1] * (1 + 1e-12));
      }
      // SSE equals the direct sum against the returned centroids.
      double sse = 0;
      for (std::size_t row = 0; row < m.rows(); ++row) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
          const double d = m.at(row, c) - r.centroids[r.labels[row] * m.cols() + c];
          sse += d * d;
        }
      }
      EXPECT_NEAR(sse, r.sse, 1e-9 * (1 + sse));
    }
  }
}

TEST(KMeansTest, DuplicateRowsStillFillEveryCluster) {
  const NumericMatrix m = FromRows({{1, 1}, {1, 1}, {1, 1}, {2, 2}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const KMeansResult r = KMeans(m, 3, seed);
    std::set<std::size_t> used(r.labels.begin(), r.labels.end());
    EXPECT_EQ(used.size(), 3u);
  }
}

TEST(KMeansTest, Errors) {
  const NumericMatrix m = FromRows({{1}, {2}});
  EXPECT_THROW(KMeans(m, 3, 0), Error);
  EXPECT_THROW(KMeans(m, 0, 0), Error);
  EXPECT_THROW(KMeans(NumericMatrix(), 1, 0), Error);
}

TEST(ElbowTest, SingleKIsTotalSumOfSquares) {
  const NumericMatrix m = Blobs({{0, 0}, {3, 1}}, 15, 4.0, 5);
  const auto curve = ElbowCurve(m, 1, 1, 9);
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_NEAR(curve[0].sse, TotalSumOfSquares(m), 1e-9);
  // Total sum of squares = n * (sum of population variances).
  double var_sum = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const double mean = ColumnMean(m, c);
    double v = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) v += (m.at(r, c) - mean) * (m.at(r, c) - mean);
    var_sum += v / m.rows();
  }
  EXPECT_NEAR(curve[0].sse, var_sum * m.rows(), 1e-9);
}

TEST(ElbowTest, NonIncreasingWithRestarts) {
  const NumericMatrix m = Blobs({{0, 0}, {10, 0}, {5, 9}}, 20, 3.0, 6);
  const auto curve = ElbowCurve(m, 1, 8, 11, 300, 5);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    EXPECT_LE(curve[i].sse, curve[i - 1].sse * (1 + 1e-9)) << "k=" << curve[i].k;
  }
}

TEST(ElbowTest, ThreeBlobsBendAtThree) {
  const NumericMatrix m = Blobs({{0, 0}, {20, 0}, {10, 17}}, 30, 2.0, 7);
  const auto curve = ElbowCurve(m, 1, 5, 13, 300, 5);
  const double drop_to_3 = curve[1].sse - curve[2].sse;
  const double drop_after_3 = curve[2].sse - curve[3].sse;
  EXPECT_GT(drop_to_3, 10 * drop_after_3);
}

TEST(ElbowTest, CsvAndRangeErrors) {
  const std::vector<ElbowPoint> pts = {{1, 10.5}, {2, 3.0}};
  EXPECT_EQ(ElbowCsv(pts), "k,sse\n1,10.5\n2,3\n");
  const NumericMatrix m = FromRows({{1}, {2}});
  EXPECT_THROW(ElbowCurve(m, 2, 1, 0), Error);
  EXPECT_THROW(ElbowCurve(m, 1, 3, 0), Error);
}

}  // namespace
}  // namespace tagdesc
