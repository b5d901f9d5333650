// Copyright 2026 latentstego authors.
//
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

#include "stego/security.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace stego {
namespace {

// sup_x |F_n(x) - F(x)| for a sorted sample against the given CDF values.
double ks_statistic(std::vector<double> sorted_cdf_values) {
  std::sort(sorted_cdf_values.begin(), sorted_cdf_values.end());
  const double n = static_cast<double>(sorted_cdf_values.size());
  double d = 0.0;
  for (size_t i = 0; i < sorted_cdf_values.size(); ++i) {
    const double f = sorted_cdf_values[i];
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

GoodnessReport ks_report(const std::string& name, std::span<const double> samples,
                         std::vector<double> cdf_values, double alpha) {
  require(samples.size() >= 100, name + ": need at least 100 samples");
  GoodnessReport rep;
  rep.test = name;
  rep.n = samples.size();
  rep.alpha = alpha;
  rep.statistic = ks_statistic(std::move(cdf_values));
  rep.p_value = kolmogorov_p_value(std::sqrt(static_cast<double>(rep.n)) * rep.statistic);
  rep.pass = rep.p_value > alpha;
  return rep;
}

}  // namespace

double kolmogorov_p_value(double t) {
  if (t <= 0.0) return 1.0;
  if (t < 0.2) return 1.0;  // Q(t) = 1 to double precision below this point
  if (t < 1.18) {
    // Dual theta series, fast for small t.
    const double pi = 3.14159265358979323846264338327950288;
    const double v = pi * pi / (8.0 * t * t);
    double sum = 0.0;
    for (int k = 1; k <= 20; k += 2) {  // odd k
      const double term = std::exp(-static_cast<double>(k) * k * v);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return 1.0 - std::sqrt(2.0 * pi) / t * sum;
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * static_cast<double>(k) * k * t * t);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18 * std::fabs(sum)) break;
  }
  return std::max(0.0, 2.0 * sum);
}

GoodnessReport ks_test_gaussian(std::span<const double> samples, double alpha) {
  std::vector<double> cdf(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    require(!std::isnan(samples[i]), "ks_test_gaussian: NaN sample");
    cdf[i] = normal_cdf(samples[i]);
  }
  return ks_report("ks_gaussian", samples, std::move(cdf), alpha);
}

GoodnessReport ks_test_uniform(std::span<const double> samples, double alpha) {
  std::vector<double> cdf(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    require(!std::isnan(samples[i]), "ks_test_uniform: NaN sample");
    cdf[i] = std::clamp(samples[i], 0.0, 1.0);
  }
  return ks_report("ks_uniform", samples, std::move(cdf), alpha);
}

double empirical_kl(std::span<const double> samples, int bins) {
  require(bins >= 8, "empirical_kl: need at least 8 bins");
  require(samples.size() >= 100 * static_cast<size_t>(bins),
          "empirical_kl: need at least 100 samples per bin");
  const double lo = -4.0, hi = 4.0;
  const double width = (hi - lo) / bins;

  std::vector<double> counts(bins, 0.0);
  for (double x : samples) {
    require(!std::isnan(x), "empirical_kl: NaN sample");
    int idx = static_cast<int>(std::floor((x - lo) / width));
    idx = std::clamp(idx, 0, bins - 1);  // edge cells absorb the tails
    counts[idx] += 1.0;
  }
  double total = 0.0;
  for (double& c : counts) {
    if (c == 0.0) c = 1.0;  // add-one smoothing on empty cells
    total += c;
  }

  double kl = 0.0;
  for (int i = 0; i < bins; ++i) {
    const double a = i == 0 ? 0.0 : normal_cdf(lo + i * width);
    const double b = i == bins - 1 ? 1.0 : normal_cdf(lo + (i + 1) * width);
    const double q = b - a;
    const double p = counts[i] / total;
    kl += p * std::log(p / q);
  }
  return kl;
}

GoodnessReport half_interval_balance(const UniformVector& s, double expected_ones_rate) {
  require(s.size() >= 1, "half_interval_balance: empty sample");
  require(expected_ones_rate >= 0.0 && expected_ones_rate <= 1.0,
          "half_interval_balance: rate out of [0,1]");
  const double n = static_cast<double>(s.size());
  double ones = 0.0;
  for (double v : s.values) {
    if (v >= 0.5) ones += 1.0;
  }
  const double frac = ones / n;
  const double sigma = std::sqrt(expected_ones_rate * (1.0 - expected_ones_rate) / n);
  GoodnessReport rep;
  rep.test = "half_interval_balance";
  rep.n = s.size();
  rep.statistic = frac - expected_ones_rate;
  rep.p_value = 0.0;  // not a p-value test; pass gate is the 3-sigma band
  rep.alpha = 0.0;
  rep.pass = std::fabs(frac - expected_ones_rate) <= 3.0 * sigma;
  return rep;
}

GoodnessReport uniformity_test(const UniformVector& s, double expected_ones_rate,
                               double alpha) {
  require(s.size() >= 1000, "uniformity_test: need at least 1000 samples");
  const GoodnessReport ks = ks_test_uniform(std::span(s.values), alpha);
  const GoodnessReport balance = half_interval_balance(s, expected_ones_rate);
  GoodnessReport rep = ks;
  rep.test = "uniformity";
  rep.pass = ks.pass && balance.pass;
  return rep;
}

std::string report_json(const GoodnessReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "{\"test\":\"%s\",\"n\":%zu,\"statistic\":%.17g,\"p_value\":%.17g,"
                "\"alpha\":%.17g,\"pass\":%s}",
                report.test.c_str(), report.n, report.statistic, report.p_value,
                report.alpha, report.pass ? "true" : "false");
  return buf;
}

}  // namespace stego
