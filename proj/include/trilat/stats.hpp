/*
 * Copyright (c) 2026 The trilat developers.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <span>

namespace trilat::stats {

struct ChiSquareReport {
  double statistic = 0.0;
  int dof = 0;
  double critical_value = 0.0;
  bool pass = false;
};

/// Upper-tail probability P(X >= x) for a chi-square variable with `dof`
/// degrees of freedom (regularized incomplete gamma Q(dof/2, x/2)).
double chi_square_survival(double x, int dof);

/// Critical value c with P(X >= c) = significance.
double chi_square_critical(int dof, double significance);

/// Goodness-of-fit of observed counts against expected probabilities.
/// Bins with zero expected probability are excluded; dof = bins - 1.
ChiSquareReport chi_square_test(std::span<const double> expected_probs,
                                std::span<const std::uint64_t> counts,
                                double significance);

/// Exact one-sided binomial tail P(Bin(n, 1/2) >= k).
double binomial_upper_tail(int n, int k);

struct SignTestResult {
  int wins = 0;    // pairs with a[i] > b[i]
  int losses = 0;  // pairs with a[i] < b[i]
  int ties = 0;
  double p_value = 1.0;  // P(wins this large | no effect), ties dropped
};

/// One-sided sign test for the hypothesis that a tends to exceed b.
SignTestResult sign_test_greater(std::span<const double> a, std::span<const double> b);

}  // namespace trilat::stats
