// Copyright 2026 The chirpmfcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Product of Gaussians over likelihood distributions and the percentage
// overlap used to compare class separation between two feature types.

#ifndef CHIRPMFCC_POG_HPP_
#define CHIRPMFCC_POG_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chirpmfcc {

class Gaussian1D {
 public:
  // Throws InputError unless variance > 0 and both values are finite.
  Gaussian1D(double mean, double variance);

  double mean() const { return mean_; }
  double variance() const { return variance_; }

  friend bool operator==(const Gaussian1D&, const Gaussian1D&) = default;

 private:
  double mean_;
  double variance_;
};

// Frame-wise likelihoods of data class `data` scored by model `model`.
struct LikelihoodSet {
  std::string model;
  std::string data;
  std::vector<double> samples;
};

// Sample mean and unbiased (n-1) variance. Needs two distinct values.
Gaussian1D fit_gaussian(std::span<const double> samples);
Gaussian1D fit_gaussian(const LikelihoodSet& set);

Gaussian1D pog(const Gaussian1D& g1, const Gaussian1D& g2);

// kSquared: exp(-[(mu-mu1)^2/(2 s1^2) + (mu-mu2)^2/(2 s2^2)]) * 100 where mu
// is the product mean. kLiteral drops the squares; its exponent cancels to 0
// for every pair, so it always reports 100. Kept only for auditing.
enum class OverlapForm { kSquared, kLiteral };

double percent_overlap(const Gaussian1D& g1, const Gaussian1D& g2,
                       OverlapForm form = OverlapForm::kSquared);

// D = O_vanilla - O_chirp; positive means chirp features separate better.
double overlap_difference(double overlap_vanilla, double overlap_chirp);

enum class MatrixKind { kOverlap, kDifference };

// Rows are models (M1), columns are data classes (P2). Cells are empty on the
// diagonal and wherever no likelihood set was supplied.
struct OverlapMatrix {
  std::string tag;  // "vanilla", "chirp" or "difference"
  MatrixKind kind = MatrixKind::kOverlap;
  std::vector<std::string> models;
  std::vector<std::string> classes;
  std::vector<std::vector<std::optional<double>>> cells;

  // Mean of the populated cells of a row; nullopt if the row is empty.
  std::optional<double> row_average(std::size_t row) const;
  // Mean over every populated cell.
  std::optional<double> pooled_mean() const;
};

// For every model M with a self set (M, M): cell(M, P) =
// percent_overlap(fit(M, M), fit(M, P)) for each cross set (M, P != M).
// Throws InputError naming a model that has cross sets but no self set.
OverlapMatrix overlap_matrix(std::span<const LikelihoodSet> sets, const std::string& tag,
                             OverlapForm form = OverlapForm::kSquared);

// Same assembly from already-fitted Gaussians; used when parameters are known
// in closed form.
struct GaussianEntry {
  std::string model;
  std::string data;
  Gaussian1D gaussian;
};
OverlapMatrix overlap_matrix(std::span<const GaussianEntry> entries, const std::string& tag,
                             OverlapForm form = OverlapForm::kSquared);

// Cell-wise vanilla - chirp over the union of labels; a cell is populated only
// where both inputs are.
OverlapMatrix difference_matrix(const OverlapMatrix& vanilla, const OverlapMatrix& chirp);

}  // namespace chirpmfcc

#endif  // CHIRPMFCC_POG_HPP_
