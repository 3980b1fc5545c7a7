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

// Upstream plumbing: numeric ingestion, standardization, k-means and the
// elbow curve.

#ifndef TAGDESC_PIPELINE_H_
#define TAGDESC_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tagdesc/csv.h"

namespace tagdesc {

// Row-major matrix of finite values with named columns.
class NumericMatrix {
 public:
  NumericMatrix() = default;
  // Throws if data.size() != rows * names.size() or any value is non-finite.
  NumericMatrix(std::size_t rows, std::vector<std::string> column_names,
                std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return names_.size(); }
  const std::vector<std::string>& column_names() const { return names_; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols(), cols()};
  }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::vector<std::string> names_;
  std::vector<double> data_;
};

struct IngestOptions {
  // Columns to use; empty means every column not excluded or one-hot encoded.
  std::vector<std::string> columns;
  std::vector<std::string> exclude;
  // Categorical columns expanded to 0/1 dummies named "<col>=<label>", labels
  // in first-appearance order.
  std::vector<std::string> one_hot;
};

// Missing or non-numeric cells in used columns throw, naming row and column.
NumericMatrix ToNumericMatrix(const DataTable& table, const IngestOptions& options = {});

// Column mean 0, population variance 1. Zero-variance columns throw.
NumericMatrix Standardize(const NumericMatrix& data);

struct KMeansResult {
  std::vector<std::size_t> labels;  // 0..k-1, every cluster non-empty
  double sse = 0.0;
  std::size_t iterations = 0;
  // SSE after each centroid update.
  std::vector<double> sse_history;
  std::vector<double> centroids;  // k x cols, row-major
};

// Lloyd's algorithm from k distinct rows sampled with `seed`; stops at an
// assignment fixpoint or after max_iter updates. Empty clusters take the
// point farthest from its current centroid.
KMeansResult KMeans(const NumericMatrix& data, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter = 300);

// Best (lowest SSE) of `restarts` runs with seeds derived from `seed`.
KMeansResult KMeansBestOf(const NumericMatrix& data, std::size_t k, std::uint64_t seed,
                          std::size_t max_iter, std::size_t restarts);

struct ElbowPoint {
  std::size_t k;
  double sse;
};

std::vector<ElbowPoint> ElbowCurve(const NumericMatrix& data, std::size_t k_min,
                                   std::size_t k_max, std::uint64_t seed,
                                   std::size_t max_iter = 300, std::size_t restarts = 1);

// "k,sse" with a header row.
std::string ElbowCsv(std::span<const ElbowPoint> curve);

// Sum of squared distances to the column means.
double TotalSumOfSquares(const NumericMatrix& data);

}  // namespace tagdesc

#endif  // TAGDESC_PIPELINE_H_
