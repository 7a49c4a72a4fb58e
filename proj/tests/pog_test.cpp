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

#include <doctest.h>

#include <cmath>
#include <random>

#include "chirpmfcc/error.hpp"
#include "chirpmfcc/pog.hpp"

using namespace chirpmfcc;

TEST_CASE("Gaussian1D validation") {
  CHECK_THROWS_AS(Gaussian1D(0.0, 0.0), InputError);
  CHECK_THROWS_AS(Gaussian1D(0.0, -1.0), InputError);
  CHECK_THROWS_AS(Gaussian1D(NAN, 1.0), InputError);
  CHECK_THROWS_AS(Gaussian1D(0.0, INFINITY), InputError);
}

TEST_CASE("pog closed form") {
  const auto g = pog({1.0, 4.0}, {3.0, 1.0});
  CHECK(g.mean() == doctest::Approx(2.6).epsilon(1e-12));
  CHECK(g.variance() == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("property: pog is commutative and adds precisions") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> mean(-50, 50), var(0.01, 30);
  for (int i = 0; i < 1000; ++i) {
    const Gaussian1D a(mean(rng), var(rng)), b(mean(rng), var(rng));
    const auto ab = pog(a, b), ba = pog(b, a);
    CHECK(ab.mean() == doctest::Approx(ba.mean()).epsilon(1e-12));
    CHECK(ab.variance() == doctest::Approx(ba.variance()).epsilon(1e-12));
    CHECK(1.0 / ab.variance() == doctest::Approx(1.0 / a.variance() + 1.0 / b.variance()).epsilon(1e-12));
    CHECK(ab.mean() >= std::min(a.mean(), b.mean()) - 1e-9);
    CHECK(ab.mean() <= std::max(a.mean(), b.mean()) + 1e-9);
    CHECK(percent_overlap(a, b) == doctest::Approx(percent_overlap(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("percent_overlap") {
  CHECK(percent_overlap({0.0, 1.0}, {4.0, 1.0}) == doctest::Approx(100.0 * std::exp(-4.0)).epsilon(1e-12));
  CHECK(percent_overlap({0.0, 1.0}, {4.0, 1.0}) == doctest::Approx(1.8316).epsilon(1e-4));
  CHECK(percent_overlap({2.0, 3.0}, {2.0, 0.5}) == doctest::Approx(100.0));
  CHECK(percent_overlap({0.0, 1.0}, {40.0, 1.0}) < 1e-100);
  // The unsquared form cancels to zero exponent for every pair.
  CHECK(percent_overlap({0.0, 1.0}, {4.0, 1.0}, OverlapForm::kLiteral) == doctest::Approx(100.0));
  CHECK(percent_overlap({-3.0, 2.0}, {9.0, 0.1}, OverlapForm::kLiteral) == doctest::Approx(100.0));
}

TEST_CASE("overlap_difference") {
  CHECK(overlap_difference(99.56, 84.30) == doctest::Approx(15.26).epsilon(1e-12));
  CHECK(overlap_difference(10.0, 20.0) == -10.0);
}

TEST_CASE("fit_gaussian") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const auto g = fit_gaussian(x);
  CHECK(g.mean() == 2.5);
  CHECK(g.variance() == doctest::Approx(5.0 / 3.0));
  CHECK_THROWS_WITH_AS(fit_gaussian(std::vector<double>{2.0, 2.0}), doctest::Contains("zero-variance"), InputError);
  CHECK_THROWS_AS(fit_gaussian(std::vector<double>{1.0}), InputError);
}

namespace {

std::vector<GaussianEntry> synthetic(double spread) {
  std::vector<GaussianEntry> e;
  const char* names[] = {"aa", "iy", "uw"};
  for (int m = 0; m < 3; ++m) {
    for (int p = 0; p < 3; ++p) {
      const double mean = m == p ? 0.0 : -spread * (1 + std::abs(m - p));
      e.push_back({names[m], names[p], Gaussian1D(mean, 1.0 + 0.1 * p)});
    }
  }
  return e;
}

}  // namespace

TEST_CASE("overlap_matrix from closed-form Gaussians") {
  const auto entries = synthetic(1.0);
  const auto m = overlap_matrix(entries, "vanilla");
  CHECK(m.tag == "vanilla");
  CHECK(m.models == std::vector<std::string>{"aa", "iy", "uw"});
  CHECK(m.classes == m.models);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK_FALSE(m.cells[i][i].has_value());
    double sum = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const auto& self = entries[i * 3 + i].gaussian;
      const auto& cross = entries[i * 3 + j].gaussian;
      REQUIRE(m.cells[i][j].has_value());
      CHECK(*m.cells[i][j] == doctest::Approx(percent_overlap(self, cross)).epsilon(1e-12));
      sum += *m.cells[i][j];
    }
    CHECK(*m.row_average(i) == doctest::Approx(sum / 2));
  }
  CHECK(m.pooled_mean().has_value());

  const auto chirp = overlap_matrix(synthetic(2.0), "chirp");
  const auto d = difference_matrix(m, chirp);
  CHECK(d.kind == MatrixKind::kDifference);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      CHECK(*d.cells[i][j] == doctest::Approx(*m.cells[i][j] - *chirp.cells[i][j]));
      CHECK(*d.cells[i][j] > 0.0);  // wider separation lowers the chirp overlap
    }
  }
  const auto rev = difference_matrix(chirp, m);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) CHECK(*rev.cells[i][j] == -*d.cells[i][j]);
    }
  }
}

TEST_CASE("overlap_matrix from likelihood samples") {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<LikelihoodSet> sets;
  for (const char* data : {"a", "b"}) {
    LikelihoodSet s{"a", data, {}};
    for (int i = 0; i < 200; ++i) s.samples.push_back(n(rng) + (data[0] == 'a' ? 0.0 : -3.0));
    sets.push_back(s);
  }
  const auto m = overlap_matrix(sets, "vanilla");
  CHECK(m.models == std::vector<std::string>{"a"});
  CHECK(m.classes == std::vector<std::string>{"a", "b"});
  CHECK(*m.cells[0][1] == doctest::Approx(percent_overlap(fit_gaussian(sets[0]), fit_gaussian(sets[1]))));

  std::vector<LikelihoodSet> missing{sets[1]};
  CHECK_THROWS_WITH_AS(overlap_matrix(missing, "vanilla"), doctest::Contains("missing self likelihood set for model a"), InputError);
  std::vector<LikelihoodSet> dup{sets[0], sets[0]};
  CHECK_THROWS_AS(overlap_matrix(dup, "vanilla"), InputError);
}
