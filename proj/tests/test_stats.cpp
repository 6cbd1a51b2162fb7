#include <doctest.h>

#include <vector>

#include "trilat/stats.hpp"

using namespace trilat;

TEST_SUITE("stats") {

// Reference quantiles computed independently with scipy.stats.chi2.isf.
TEST_CASE("chi-square critical values match an independent implementation") {
  CHECK(stats::chi_square_critical(8, 1e-3) == doctest::Approx(26.1244815584).epsilon(1e-8));
  CHECK(stats::chi_square_critical(1, 0.05) == doctest::Approx(3.8414588207).epsilon(1e-8));
  CHECK(stats::chi_square_critical(10, 0.01) == doctest::Approx(23.2092511590).epsilon(1e-8));
  CHECK(stats::chi_square_critical(2, 1e-3) == doctest::Approx(13.8155105580).epsilon(1e-8));
  CHECK(stats::chi_square_critical(26, 1e-3) == doctest::Approx(54.0519623886).epsilon(1e-8));
  CHECK(stats::chi_square_critical(80, 1e-3) == doctest::Approx(124.8392240158).epsilon(1e-8));
}

TEST_CASE("survival function is consistent with the critical value") {
  for (int dof : {1, 4, 8, 26}) {
    const double crit = stats::chi_square_critical(dof, 1e-3);
    CHECK(stats::chi_square_survival(crit, dof) == doctest::Approx(1e-3).epsilon(1e-6));
  }
  CHECK(stats::chi_square_survival(0.0, 5) == doctest::Approx(1.0));
}

TEST_CASE("goodness of fit on exact counts passes, degenerate delta handled") {
  const std::vector<double> probs{0.25, 0.75};
  const std::vector<std::uint64_t> counts{2500, 7500};
  const auto report = stats::chi_square_test(probs, counts, 1e-3);
  CHECK(report.statistic == doctest::Approx(0.0));
  CHECK(report.dof == 1);
  CHECK(report.pass);

  const std::vector<double> delta{1.0, 0.0, 0.0};
  const std::vector<std::uint64_t> delta_counts{1000, 0, 0};
  const auto delta_report = stats::chi_square_test(delta, delta_counts, 1e-3);
  CHECK(delta_report.statistic == 0.0);
  CHECK(delta_report.dof == 0);
  CHECK(delta_report.pass);

  // Mass observed on a zero-probability bin can never pass.
  const std::vector<std::uint64_t> off_support{999, 1, 0};
  CHECK_FALSE(stats::chi_square_test(delta, off_support, 1e-3).pass);
}

// Tail values verified against an exact Python evaluation of the binomial sum.
TEST_CASE("binomial tails are exact") {
  CHECK(stats::binomial_upper_tail(20, 15) == doctest::Approx(0.0206947327).epsilon(1e-8));
  CHECK(stats::binomial_upper_tail(20, 14) == doctest::Approx(0.0576591492).epsilon(1e-8));
  CHECK(stats::binomial_upper_tail(10, 9) == doctest::Approx(0.0107421875).epsilon(1e-12));
  CHECK(stats::binomial_upper_tail(20, 0) == doctest::Approx(1.0));
  CHECK(stats::binomial_upper_tail(20, 21) == doctest::Approx(0.0));
}

TEST_CASE("sign test counts wins and drops ties") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> b{0.0, 2.0, 1.0, 1.0, 1.0};
  const auto result = stats::sign_test_greater(a, b);
  CHECK(result.wins == 4);
  CHECK(result.losses == 0);
  CHECK(result.ties == 1);
  CHECK(result.p_value == doctest::Approx(1.0 / 16.0));
}

}  // TEST_SUITE
