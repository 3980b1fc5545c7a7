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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "tagdesc/error.h"
#include "tagdesc/random.h"
#include "tagdesc/simd/kernels.h"
#include "tagdesc/tagging.h"

namespace tagdesc {
namespace {

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

bool Contains(const std::vector<std::string>& list, const std::string& s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

}  // namespace

NumericMatrix::NumericMatrix(std::size_t rows, std::vector<std::string> column_names,
                             std::vector<double> data)
    : rows_(rows), names_(std::move(column_names)), data_(std::move(data)) {
  if (data_.size() != rows_ * names_.size()) {
    throw DataError("numeric matrix: data size does not match rows x columns");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw DataError("numeric matrix: non-finite value at row " +
                      std::to_string(i / names_.size() + 1) + ", column '" +
                      names_[i % names_.size()] + "'");
    }
  }
}

NumericMatrix ToNumericMatrix(const DataTable& table, const IngestOptions& options) {
  for (const auto& c : options.columns) table.ColumnIndex(c);
  for (const auto& c : options.exclude) table.ColumnIndex(c);
  for (const auto& c : options.one_hot) table.ColumnIndex(c);

  std::vector<std::string> numeric_cols;
  if (!options.columns.empty()) {
    for (const auto& c : options.columns) {
      if (!Contains(options.one_hot, c) && !Contains(options.exclude, c)) {
        numeric_cols.push_back(c);
      }
    }
  } else {
    for (const auto& c : table.header()) {
      if (!Contains(options.one_hot, c) && !Contains(options.exclude, c)) {
        numeric_cols.push_back(c);
      }
    }
  }

  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  for (const auto& c : numeric_cols) {
    names.push_back(c);
    columns.push_back(NumericColumn(table, c));
  }
  for (const auto& c : options.one_hot) {
    const std::vector<std::string> labels = table.Column(c);
    for (std::size_t r = 0; r < labels.size(); ++r) {
      if (IsMissingCell(labels[r])) {
        throw DataError("row " + std::to_string(r + 1) + ", column '" + c +
                            "': missing value",
                        ErrorCode::kMissingValue);
      }
    }
    for (const auto& [label, group] : IdentityGrouping(labels)) {
      names.push_back(c + "=" + label);
      std::vector<double> dummy(labels.size());
      for (std::size_t r = 0; r < labels.size(); ++r) dummy[r] = labels[r] == label ? 1.0 : 0.0;
      columns.push_back(std::move(dummy));
    }
  }
  if (names.empty()) throw ConfigError("no numeric columns selected");

  const std::size_t rows = table.row_count();
  std::vector<double> data(rows * names.size());
  for (std::size_t c = 0; c < names.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) data[r * names.size() + c] = columns[c][r];
  }
  return NumericMatrix(rows, std::move(names), std::move(data));
}

NumericMatrix Standardize(const NumericMatrix& data) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n == 0) throw DataError("cannot standardize an empty matrix");
  std::vector<double> out = data.data();
  for (std::size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += data.at(r, c);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double dev = data.at(r, c) - mean;
      var += dev * dev;
    }
    var /= static_cast<double>(n);
    if (!(var > 0.0)) {
      throw Error(ErrorKind::kInvalidData, ErrorCode::kZeroVariance,
                  "column '" + data.column_names()[c] + "' has zero variance");
    }
    const double sd = std::sqrt(var);
    for (std::size_t r = 0; r < n; ++r) out[r * d + c] = (data.at(r, c) - mean) / sd;
  }
  return NumericMatrix(n, data.column_names(), std::move(out));
}

double TotalSumOfSquares(const NumericMatrix& data) {
  double total = 0.0;
  for (std::size_t c = 0; c < data.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < data.rows(); ++r) mean += data.at(r, c);
    mean /= static_cast<double>(data.rows());
    for (std::size_t r = 0; r < data.rows(); ++r) {
      const double dev = data.at(r, c) - mean;
      total += dev * dev;
    }
  }
  return total;
}

KMeansResult KMeans(const NumericMatrix& data, std::size_t k, std::uint64_t seed,
                    std::size_t max_iter) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n == 0 || d == 0) throw DataError("k-means: empty data");
  if (k < 1) throw ConfigError("k-means: k must be at least 1");
  if (k > n) {
    throw ConfigError("k-means: k = " + std::to_string(k) + " exceeds the " +
                      std::to_string(n) + " rows");
  }
  if (max_iter < 1) throw ConfigError("k-means: max_iter must be at least 1");

  // k distinct rows by a partial Fisher-Yates shuffle.
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + UniformIndex(rng, n - i);
    std::swap(order[i], order[j]);
  }
  KMeansResult result;
  std::vector<double>& centroids = result.centroids;
  centroids.resize(k * d);
  for (std::size_t j = 0; j < k; ++j) {
    auto row = data.row(order[j]);
    std::copy(row.begin(), row.end(), centroids.begin() + static_cast<std::ptrdiff_t>(j * d));
  }
  auto centroid = [&](std::size_t j) {
    return std::span<const double>(centroids.data() + j * d, d);
  };

  std::vector<std::size_t> labels(n, 0), next(n, 0);
  std::vector<double> dist(n, 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    for (std::size_t r = 0; r < n; ++r) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < k; ++j) {
        const double dj = simd::SquaredDistance(data.row(r), centroid(j));
        if (dj < best) {
          best = dj;
          best_j = j;
        }
      }
      next[r] = best_j;
      dist[r] = best;
    }
    if (iter > 0 && next == labels) break;
    labels = next;

    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t label : labels) ++counts[label];
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] != 0) continue;
      // Farthest point from its centroid, among clusters that can spare one.
      std::size_t far = n;
      for (std::size_t r = 0; r < n; ++r) {
        if (counts[labels[r]] > 1 && (far == n || dist[r] > dist[far])) far = r;
      }
      --counts[labels[far]];
      labels[far] = j;
      counts[j] = 1;
      dist[far] = 0.0;
    }
    std::fill(centroids.begin(), centroids.end(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      auto row = data.row(r);
      double* c = centroids.data() + labels[r] * d;
      for (std::size_t f = 0; f < d; ++f) c[f] += row[f];
    }
    for (std::size_t j = 0; j < k; ++j) {
      double* c = centroids.data() + j * d;
      for (std::size_t f = 0; f < d; ++f) c[f] /= static_cast<double>(counts[j]);
    }
    double sse = 0.0;
    for (std::size_t r = 0; r < n; ++r) sse += simd::SquaredDistance(data.row(r), centroid(labels[r]));
    result.sse_history.push_back(sse);
    ++result.iterations;
  }
  result.labels = std::move(labels);
  result.sse = result.sse_history.back();
  return result;
}

KMeansResult KMeansBestOf(const NumericMatrix& data, std::size_t k, std::uint64_t seed,
                          std::size_t max_iter, std::size_t restarts) {
  if (restarts < 1) throw ConfigError("k-means: restarts must be at least 1");
  KMeansResult best = KMeans(data, k, seed, max_iter);
  for (std::size_t r = 1; r < restarts; ++r) {
    KMeansResult candidate = KMeans(data, k, MixSeed(seed, r), max_iter);
    if (candidate.sse < best.sse) best = std::move(candidate);
  }
  return best;
}

std::vector<ElbowPoint> ElbowCurve(const NumericMatrix& data, std::size_t k_min,
                                   std::size_t k_max, std::uint64_t seed,
                                   std::size_t max_iter, std::size_t restarts) {
  if (k_min < 1 || k_min > k_max || k_max > data.rows()) {
    throw ConfigError("elbow: k range " + std::to_string(k_min) + ".." +
                      std::to_string(k_max) + " must lie within 1.." +
                      std::to_string(data.rows()));
  }
  std::vector<ElbowPoint> curve;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    curve.push_back({k, KMeansBestOf(data, k, seed, max_iter, restarts).sse});
  }
  return curve;
}

std::string ElbowCsv(std::span<const ElbowPoint> curve) {
  std::string out = "k,sse\n";
  for (const auto& p : curve) out += std::to_string(p.k) + "," + FormatDouble(p.sse) + "\n";
  return out;
}

}  // namespace tagdesc
