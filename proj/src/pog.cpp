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

#include "chirpmfcc/pog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "chirpmfcc/error.hpp"

namespace chirpmfcc {
namespace {

std::size_t index_of(const std::vector<std::string>& labels, const std::string& label) {
  return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), label) - labels.begin());
}

}  // namespace

Gaussian1D::Gaussian1D(double mean, double variance) : mean_(mean), variance_(variance) {
  if (!std::isfinite(mean) || !std::isfinite(variance)) throw InputError("Gaussian parameters must be finite");
  if (!(variance > 0.0)) throw InputError("Gaussian variance must be positive");
}

Gaussian1D fit_gaussian(std::span<const double> samples) {
  if (samples.size() < 2) throw InputError("zero-variance likelihood set: need at least 2 samples");
  double mean = 0.0;
  for (double s : samples) {
    if (!std::isfinite(s)) throw InputError("likelihood set contains non-finite values");
    mean += s;
  }
  mean /= static_cast<double>(samples.size());
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double var = ss / static_cast<double>(samples.size() - 1);
  if (!(var > 0.0)) throw InputError("zero-variance likelihood set");
  return Gaussian1D(mean, var);
}

Gaussian1D fit_gaussian(const LikelihoodSet& set) {
  try {
    return fit_gaussian(set.samples);
  } catch (const InputError& e) {
    throw InputError(std::string(e.what()) + " (model " + set.model + ", data " + set.data + ")");
  }
}

Gaussian1D pog(const Gaussian1D& g1, const Gaussian1D& g2) {
  const double v1 = g1.variance();
  const double v2 = g2.variance();
  const double sum = v1 + v2;
  return Gaussian1D((g1.mean() * v2 + g2.mean() * v1) / sum, v1 * v2 / sum);
}

double percent_overlap(const Gaussian1D& g1, const Gaussian1D& g2, OverlapForm form) {
  const double mu = pog(g1, g2).mean();
  const double d1 = mu - g1.mean();
  const double d2 = mu - g2.mean();
  const double exponent = form == OverlapForm::kSquared
                              ? d1 * d1 / (2.0 * g1.variance()) + d2 * d2 / (2.0 * g2.variance())
                              : d1 / (2.0 * g1.variance()) + d2 / (2.0 * g2.variance());
  return std::exp(-exponent) * 100.0;
}

double overlap_difference(double overlap_vanilla, double overlap_chirp) {
  return overlap_vanilla - overlap_chirp;
}

std::optional<double> OverlapMatrix::row_average(std::size_t row) const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : cells.at(row)) {
    if (c) {
      sum += *c;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::optional<double> OverlapMatrix::pooled_mean() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& row : cells) {
    for (const auto& c : row) {
      if (c) {
        sum += *c;
        ++n;
      }
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

OverlapMatrix overlap_matrix(std::span<const GaussianEntry> entries, const std::string& tag,
                             OverlapForm form) {
  std::set<std::string> model_set;
  std::set<std::string> class_set;
  std::map<std::pair<std::string, std::string>, const Gaussian1D*> by_key;
  for (const auto& e : entries) {
    if (!by_key.emplace(std::pair{e.model, e.data}, &e.gaussian).second) {
      throw InputError("duplicate likelihood set for model " + e.model + ", data " + e.data);
    }
    model_set.insert(e.model);
    class_set.insert(e.model);
    class_set.insert(e.data);
  }

  OverlapMatrix m;
  m.tag = tag;
  m.kind = MatrixKind::kOverlap;
  m.models.assign(model_set.begin(), model_set.end());
  m.classes.assign(class_set.begin(), class_set.end());
  m.cells.assign(m.models.size(), std::vector<std::optional<double>>(m.classes.size()));

  for (std::size_t r = 0; r < m.models.size(); ++r) {
    const std::string& model = m.models[r];
    const auto self = by_key.find({model, model});
    bool has_cross = false;
    for (const auto& [key, g] : by_key) has_cross = has_cross || (key.first == model && key.second != model);
    if (self == by_key.end()) {
      if (has_cross) throw InputError("missing self likelihood set for model " + model);
      continue;
    }
    for (const auto& [key, g] : by_key) {
      if (key.first != model || key.second == model) continue;
      m.cells[r][index_of(m.classes, key.second)] = percent_overlap(*self->second, *g, form);
    }
  }
  return m;
}

OverlapMatrix overlap_matrix(std::span<const LikelihoodSet> sets, const std::string& tag,
                             OverlapForm form) {
  std::vector<GaussianEntry> entries;
  entries.reserve(sets.size());
  for (const auto& s : sets) entries.push_back({s.model, s.data, fit_gaussian(s)});
  return overlap_matrix(entries, tag, form);
}

OverlapMatrix difference_matrix(const OverlapMatrix& vanilla, const OverlapMatrix& chirp) {
  std::set<std::string> models(vanilla.models.begin(), vanilla.models.end());
  models.insert(chirp.models.begin(), chirp.models.end());
  std::set<std::string> classes(vanilla.classes.begin(), vanilla.classes.end());
  classes.insert(chirp.classes.begin(), chirp.classes.end());

  OverlapMatrix d;
  d.tag = "difference";
  d.kind = MatrixKind::kDifference;
  d.models.assign(models.begin(), models.end());
  d.classes.assign(classes.begin(), classes.end());
  d.cells.assign(d.models.size(), std::vector<std::optional<double>>(d.classes.size()));

  auto lookup = [](const OverlapMatrix& m, const std::string& model,
                   const std::string& cls) -> std::optional<double> {
    const std::size_t r = index_of(m.models, model);
    const std::size_t c = index_of(m.classes, cls);
    if (r >= m.models.size() || c >= m.classes.size()) return std::nullopt;
    return m.cells[r][c];
  };
  for (std::size_t r = 0; r < d.models.size(); ++r) {
    for (std::size_t c = 0; c < d.classes.size(); ++c) {
      const auto v = lookup(vanilla, d.models[r], d.classes[c]);
      const auto ch = lookup(chirp, d.models[r], d.classes[c]);
      if (v && ch) d.cells[r][c] = overlap_difference(*v, *ch);
    }
  }
  return d;
}

}  // namespace chirpmfcc
