#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "trilat/kernels.hpp"
#include "trilat/rng.hpp"

using namespace trilat;

namespace {

struct Workload {
  std::vector<double> moduli, phases, energy;
  std::vector<StateIndex> perm;
  std::vector<std::uint32_t> labels;
};

Workload random_workload(std::size_t n, std::uint64_t seed, std::uint32_t n_labels) {
  Workload w;
  SeededRng rng(seed);
  w.moduli.resize(n);
  w.phases.resize(n);
  w.energy.resize(n);
  w.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.moduli[i] = rng.next_unit();
    w.phases[i] = rng.next_unit() * 6.28;
    w.energy[i] = rng.next_unit() * 10.0;
    w.labels[i] = static_cast<std::uint32_t>(rng.next_below(n_labels));
  }
  // Random permutation via Fisher-Yates.
  w.perm.resize(n);
  std::iota(w.perm.begin(), w.perm.end(), StateIndex{0});
  for (std::size_t i = n; i > 1; --i)
    std::swap(w.perm[i - 1], w.perm[rng.next_below(i)]);
  return w;
}

}  // namespace

TEST_SUITE("kernels") {

// The parallel kernels must be bit-identical to the serial reference for any
// thread count; scatter targets are disjoint and reductions use fixed blocks.
TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
  for (std::size_t n : {std::size_t{1}, std::size_t{100}, std::size_t{4096},
                        std::size_t{10000}, std::size_t{100001}}) {
    const Workload w = random_workload(n, 99 + n, 7);

    std::vector<double> m_serial(n), p_serial(n), m_par(n), p_par(n);
    kernels::serial::permute_phase(w.moduli, w.phases, w.perm, w.energy, 0.37, m_serial,
                                   p_serial);
    kernels::parallel::permute_phase(w.moduli, w.phases, w.perm, w.energy, 0.37, m_par,
                                     p_par);
    CHECK(m_serial == m_par);
    CHECK(p_serial == p_par);

    std::vector<double> sq_serial(n), sq_par(n);
    kernels::serial::squared(w.moduli, sq_serial);
    kernels::parallel::squared(w.moduli, sq_par);
    CHECK(sq_serial == sq_par);

    CHECK(kernels::serial::block_sum(w.moduli) == kernels::parallel::block_sum(w.moduli));

    std::vector<double> sc_serial(n), sc_par(n);
    kernels::serial::scatter(w.moduli, w.perm, sc_serial);
    kernels::parallel::scatter(w.moduli, w.perm, sc_par);
    CHECK(sc_serial == sc_par);

    CHECK(kernels::serial::partition_weights(w.moduli, w.labels, 7) ==
          kernels::parallel::partition_weights(w.moduli, w.labels, 7));
  }
}

TEST_CASE("block sum agrees with a plain fold up to rounding") {
  const Workload w = random_workload(54321, 5, 3);
  const double naive = std::accumulate(w.moduli.begin(), w.moduli.end(), 0.0);
  CHECK(kernels::serial::block_sum(w.moduli) == doctest::Approx(naive).epsilon(1e-12));
}

TEST_CASE("partition weights sum the squared moduli per label") {
  const std::vector<double> moduli{0.5, 0.5, std::sqrt(0.5)};
  const std::vector<std::uint32_t> labels{0, 1, 0};
  const auto weights = kernels::serial::partition_weights(moduli, labels, 2);
  CHECK(weights[0] == doctest::Approx(0.75));
  CHECK(weights[1] == doctest::Approx(0.25));
  CHECK_THROWS_AS(kernels::serial::partition_weights(moduli, labels, 1), InvariantError);
}

TEST_CASE("phase rotation lands in the principal range") {
  const std::vector<double> moduli{1.0};
  const std::vector<double> phases{6.0};
  const std::vector<double> energy{10.0};
  const std::vector<StateIndex> perm{0};
  std::vector<double> m(1), p(1);
  kernels::serial::permute_phase(moduli, phases, perm, energy, 1.0, m, p);
  CHECK(p[0] >= 0.0);
  CHECK(p[0] < 6.2831853072);
}

}  // TEST_SUITE
