#include <doctest.h>

#include <cmath>
#include <vector>

#include "trilat/ensemble.hpp"
#include "trilat/lattice.hpp"
#include "trilat/stats.hpp"

using namespace trilat;

namespace {

Ensemble random_ensemble(std::size_t n, std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    x = rng.next_unit() + 1e-6;
    total += x;
  }
  for (double& x : p) x /= total;
  return make_ensemble(std::move(p));
}

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("point and uniform ensembles satisfy the invariants") {
  const Ensemble delta = point_ensemble(0, 9);
  CHECK(delta.probabilities[0] == 1.0);
  for (std::size_t m = 1; m < 9; ++m) CHECK(delta.probabilities[m] == 0.0);

  const Ensemble one = uniform_ensemble(1);
  CHECK(one.probabilities[0] == doctest::Approx(1.0));

  const Ensemble nine = uniform_ensemble(9);
  double total = 0.0;
  for (double p : nine.probabilities) {
    CHECK(p == doctest::Approx(1.0 / 9.0));
    total += p;
  }
  CHECK(std::fabs(total - 1.0) <= 1e-12);

  CHECK_THROWS_AS(point_ensemble(9, 9), std::out_of_range);
  CHECK_THROWS_AS(make_ensemble({0.5, 0.4}), InvariantError);
  CHECK_THROWS_AS(make_ensemble({1.5, -0.5}), InvariantError);
}

TEST_CASE("push-forward moves the delta along the classical step") {
  const auto cfg = LatticeConfig::make(1, 1, 1);  // 9 dynamical states
  const auto perm = step_permutation(cfg);
  for (StateIndex m = 0; m < perm.size(); ++m) {
    const Ensemble pushed = push_forward(point_ensemble(m, perm.size()), perm);
    const StateIndex successor = encode(step_classical(decode_dynamical(m, cfg), cfg), cfg);
    for (StateIndex i = 0; i < perm.size(); ++i)
      CHECK(pushed.probabilities[i] == (i == successor ? 1.0 : 0.0));
  }
}

TEST_CASE("push-forward through the identity changes nothing") {
  const Ensemble e = random_ensemble(32, 7);
  std::vector<StateIndex> identity(32);
  for (StateIndex i = 0; i < 32; ++i) identity[i] = i;
  CHECK(push_forward(e, identity).probabilities == e.probabilities);
}

TEST_CASE("push-forward preserves mass and rejects non-bijections") {
  const auto cfg = LatticeConfig::make(2, 1, 1);
  const auto perm = step_permutation(cfg);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Ensemble e = random_ensemble(perm.size(), seed);
    const Ensemble pushed = push_forward(e, perm);
    double before = 0.0, after = 0.0;
    for (double p : e.probabilities) before += p;
    for (double p : pushed.probabilities) after += p;
    CHECK(std::fabs(before - after) <= 1e-12);
  }
  std::vector<StateIndex> bad(perm.begin(), perm.end());
  bad[1] = bad[0];
  CHECK_THROWS_AS(push_forward(random_ensemble(bad.size(), 1), bad), InvariantError);
}

TEST_CASE("uniform ensembles are invariant under any bijection") {
  for (const auto& cfg : {LatticeConfig::make(1, 1, 1), LatticeConfig::make(2, 1, 1)}) {
    const auto perm = step_permutation(cfg);
    const Ensemble u = uniform_ensemble(perm.size());
    CHECK(push_forward(u, perm).probabilities == u.probabilities);
  }
}

TEST_CASE("iterated delta push-forward equals the classical trajectory") {
  // The statistical description shadows the classical one exactly.
  for (const auto& cfg : {LatticeConfig::make(1, 1, 1), LatticeConfig::make(2, 1, 1),
                          LatticeConfig::make(3, 1, 1)}) {
    const auto perm = step_permutation(cfg);
    for (StateIndex start = 0; start < perm.size(); ++start) {
      Ensemble e = point_ensemble(start, perm.size());
      DynamicalState s = decode_dynamical(start, cfg);
      for (int t = 0; t < 6; ++t) {
        e = push_forward(e, perm);
        s = step_classical(s, cfg);
        CHECK(e.probabilities[encode(s, cfg)] == 1.0);
      }
    }
  }
}

TEST_CASE("sampling a delta always returns its support") {
  const Ensemble delta = point_ensemble(4, 9);
  for (std::uint64_t seed : {1ULL, 99ULL, 12345ULL}) {
    SeededRng rng(seed);
    CHECK(sample(delta, rng) == 4);
  }
}

TEST_CASE("equal seeds give identical sample streams") {
  const Ensemble e = random_ensemble(20, 3);
  SeededRng a(777), b(777);
  for (int i = 0; i < 1000; ++i) CHECK(sample(e, a) == sample(e, b));
}

TEST_CASE("sample frequencies on the uniform 9-state ensemble pass chi-square") {
  const Ensemble u = uniform_ensemble(9);
  SeededRng rng(2024);
  std::vector<std::uint64_t> counts(9, 0);
  for (int i = 0; i < 100000; ++i) ++counts[sample(u, rng)];
  const auto report = stats::chi_square_test(u.probabilities, counts, 1e-3);
  CHECK(report.dof == 8);
  CHECK(report.pass);
}

TEST_CASE("zero-probability indices are never sampled") {
  Ensemble e = make_ensemble({0.0, 0.5, 0.0, 0.5, 0.0});
  SeededRng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const StateIndex m = sample(e, rng);
    CHECK((m == 1 || m == 3));
  }
}

TEST_CASE("quantize snaps to the level grid and renormalizes exactly") {
  // Hand computation: grid 1/4, [0.26, 0.74] -> [0.25, 0.75], sum exactly 1.
  const Ensemble q = quantize(make_ensemble({0.26, 0.74}), 5);
  CHECK(q.probabilities[0] == 0.25);
  CHECK(q.probabilities[1] == 0.75);
}

TEST_CASE("quantize leaves deltas unchanged for every K") {
  const Ensemble delta = point_ensemble(2, 6);
  for (int k : {2, 3, 5, 17}) CHECK(quantize(delta, k).probabilities == delta.probabilities);
}

TEST_CASE("quantize is idempotent") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Ensemble e = random_ensemble(11, seed);
    for (int k : {3, 5, 9}) {
      const Ensemble once = quantize(e, k);
      const Ensemble twice = quantize(once, k);
      CHECK(once.probabilities == twice.probabilities);
    }
  }
}

TEST_CASE("quantize rejects a grid too coarse for the distribution") {
  // Every P equals 1/9 < half a grid cell of 1/4: plain rounding erases all.
  CHECK_THROWS_AS(quantize(uniform_ensemble(9), 5), InvariantError);
  CHECK_THROWS_AS(quantize(uniform_ensemble(9), 1), std::invalid_argument);
}

}  // TEST_SUITE
