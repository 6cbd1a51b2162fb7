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

#include "trilat/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "trilat/types.hpp"

namespace trilat::stats {

namespace {

// Regularized lower incomplete gamma P(a, x) by series expansion (x < a + 1).
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz continued fraction
// (x >= a + 1).
double gamma_q_cf(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

}  // namespace

double chi_square_survival(double x, int dof) {
  if (dof <= 0) throw std::invalid_argument("chi_square_survival: dof must be positive");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * x);
}

double chi_square_critical(int dof, double significance) {
  if (dof <= 0) throw std::invalid_argument("chi_square_critical: dof must be positive");
  if (significance <= 0.0 || significance >= 1.0)
    throw std::invalid_argument("chi_square_critical: significance must lie in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  while (chi_square_survival(hi, dof) > significance) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi_square_survival(mid, dof) > significance) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ChiSquareReport chi_square_test(std::span<const double> expected_probs,
                                std::span<const std::uint64_t> counts,
                                double significance) {
  if (expected_probs.size() != counts.size())
    throw std::invalid_argument("chi_square_test: size mismatch");
  std::uint64_t n = 0;
  for (std::uint64_t c : counts) n += c;
  if (n == 0) throw std::invalid_argument("chi_square_test: no observations");

  double statistic = 0.0;
  int bins = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = expected_probs[i];
    if (p < 0.0) throw InvariantError("chi_square_test: negative expected probability");
    if (p == 0.0) {
      if (counts[i] != 0)
        statistic = std::numeric_limits<double>::infinity();  // impossible bin observed
      continue;
    }
    ++bins;
    const double expected = p * static_cast<double>(n);
    const double diff = static_cast<double>(counts[i]) - expected;
    statistic += diff * diff / expected;
  }

  ChiSquareReport report;
  report.statistic = statistic;
  report.dof = bins - 1;
  if (report.dof == 0) {
    // Degenerate single-support distribution: any mass off the support already
    // produced an infinite statistic above.
    report.critical_value = 0.0;
    report.pass = statistic == 0.0;
    return report;
  }
  report.critical_value = chi_square_critical(report.dof, significance);
  report.pass = statistic < report.critical_value;
  return report;
}

double binomial_upper_tail(int n, int k) {
  if (n < 0) throw std::invalid_argument("binomial_upper_tail: n must be nonnegative");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  // Exact sum of C(n, i) / 2^n for i in [k, n]; n stays small (seed counts).
  long double coeff = 1.0L;  // C(n, k), built incrementally
  for (int i = 0; i < k; ++i) coeff = coeff * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  long double tail = 0.0L;
  long double c = coeff;
  for (int i = k; i <= n; ++i) {
    tail += c;
    c = c * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
  }
  return static_cast<double>(tail * std::exp2l(-static_cast<long double>(n)));
}

SignTestResult sign_test_greater(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sign_test_greater: size mismatch");
  SignTestResult result;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) {
      ++result.wins;
    } else if (a[i] < b[i]) {
      ++result.losses;
    } else {
      ++result.ties;
    }
  }
  result.p_value = binomial_upper_tail(result.wins + result.losses, result.wins);
  return result;
}

}  // namespace trilat::stats
