#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "trilat/lattice.hpp"

using namespace trilat;

namespace {

// Independent counting oracle: odometer enumeration of every assignment of
// base values to the slots, without using the closed-form power.
std::uint64_t enumerate_configurations(const LatticeConfig& cfg) {
  std::vector<int> odometer(cfg.n_slots(), -cfg.half_range);
  std::uint64_t count = 0;
  while (true) {
    ++count;
    int slot = 0;
    while (slot < cfg.n_slots()) {
      if (odometer[slot] < cfg.half_range) {
        ++odometer[slot];
        break;
      }
      odometer[slot] = -cfg.half_range;
      ++slot;
    }
    if (slot == cfg.n_slots()) return count;
  }
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("configuration counts match exhaustive enumeration") {
  struct Case {
    int n, m, l;
    std::uint64_t expected;
  };
  // Expected values from the enumeration oracle, not the power formula.
  for (const auto& c : {Case{1, 1, 0, 1}, Case{2, 1, 1, 9}, Case{2, 2, 1, 81}}) {
    const auto cfg = LatticeConfig::make(c.n, c.m, c.l);
    CHECK(configuration_count(cfg) == c.expected);
    CHECK(enumerate_configurations(cfg) == c.expected);
  }
}

TEST_CASE("register accounting follows the counting identities") {
  const auto cfg = LatticeConfig::make(2, 1, 1);
  const RegisterReport report = register_accounting(cfg);
  CHECK(report.classical_registers == 2);
  CHECK(report.classical_register_capacity == 3);
  CHECK(report.statistical_registers == 9);
  CHECK(report.quantum_registers == 18);
  CHECK(report.statistical_registers == enumerate_configurations(cfg));

  const RegisterReport trivial = register_accounting(LatticeConfig::make(1, 1, 0));
  CHECK(trivial.classical_registers == 1);
  CHECK(trivial.statistical_registers == 1);
  CHECK(trivial.quantum_registers == 2);

  const RegisterReport three = register_accounting(LatticeConfig::make(3, 1, 1));
  CHECK(three.classical_registers == 3);
  CHECK(three.statistical_registers == 27);
  CHECK(three.quantum_registers == 54);
}

TEST_CASE("construction rejects overflowing state counts") {
  CHECK_THROWS_AS(LatticeConfig::make(41, 1, 1), CapError);  // 3^41 > 2^64
  CHECK_NOTHROW(LatticeConfig::make(40, 1, 1));              // 3^40 still fits
  CHECK_THROWS_AS(LatticeConfig::make(0, 1, 1), ConfigError);
  CHECK_THROWS_AS(LatticeConfig::make(1, 1, -1), ConfigError);
}

TEST_CASE("encoding is the documented little-endian mixed radix") {
  const auto cfg = LatticeConfig::make(2, 1, 1);
  // All-zero fields: both digits equal L = 1, so m = 1*1 + 1*3 = 4.
  CHECK(encode(zero_configuration(cfg), cfg) == 4);
  CHECK(encode(FieldConfiguration{{-1, -1}}, cfg) == 0);
  CHECK(encode(FieldConfiguration{{1, 1}}, cfg) == configuration_count(cfg) - 1);
  CHECK(decode_configuration(0, cfg) == FieldConfiguration{{-1, -1}});
  CHECK(decode_configuration(8, cfg) == FieldConfiguration{{1, 1}});
}

TEST_CASE("encode and decode are mutually inverse on every small space") {
  for (const auto& cfg : {LatticeConfig::make(2, 1, 1), LatticeConfig::make(2, 2, 1),
                          LatticeConfig::make(1, 1, 2), LatticeConfig::make(3, 1, 2)}) {
    const StateIndex count = configuration_count(cfg);
    for (StateIndex m = 0; m < count; ++m)
      CHECK(encode(decode_configuration(m, cfg), cfg) == m);

    const StateIndex pairs = dynamical_state_count(cfg);
    for (StateIndex m = 0; m < pairs; ++m)
      CHECK(encode(decode_dynamical(m, cfg), cfg) == m);
  }
}

TEST_CASE("decode rejects out-of-range indices") {
  const auto cfg = LatticeConfig::make(2, 1, 1);
  CHECK_THROWS_AS(decode_configuration(9, cfg), std::out_of_range);
  CHECK_THROWS_AS(decode_dynamical(81, cfg), std::out_of_range);
}

TEST_CASE("the all-zero state is a fixed point") {
  const auto cfg = LatticeConfig::make(4, 2, 3);
  const DynamicalState zero{zero_configuration(cfg), zero_configuration(cfg)};
  CHECK(step_classical(zero, cfg) == zero);
}

// Trajectory of a single-site excitation, frozen from a straight-line
// reference implementation kept in a scripting scratchpad.
TEST_CASE("single-site excitation follows the reference trajectory") {
  const auto cfg = LatticeConfig::make(3, 1, 1);
  DynamicalState s{FieldConfiguration{{1, 0, 0}}, FieldConfiguration{{0, 0, 0}}};
  const std::vector<std::vector<std::int32_t>> expected_current{
      {1, 0, 0},  {1, 1, 1},    {-1, 0, 0}, {1, 1, 1},    {1, 0, 0},   {0, 0, 0},
      {-1, 0, 0}, {-1, -1, -1}, {1, 0, 0},  {-1, -1, -1}, {-1, 0, 0}};
  const auto trajectory = evolve_classical(s, cfg, 10);
  REQUIRE(trajectory.size() == 11);
  for (std::size_t k = 0; k < trajectory.size(); ++k)
    CHECK(trajectory[k].current.values == expected_current[k]);
}

TEST_CASE("step_backward inverts step_classical exhaustively") {
  for (const auto& cfg : {LatticeConfig::make(1, 1, 1), LatticeConfig::make(3, 1, 1),
                          LatticeConfig::make(2, 2, 1)}) {
    const StateIndex pairs = dynamical_state_count(cfg);
    for (StateIndex m = 0; m < pairs; ++m) {
      const DynamicalState s = decode_dynamical(m, cfg);
      CHECK(step_backward(step_classical(s, cfg), cfg) == s);
      CHECK(step_classical(step_backward(s, cfg), cfg) == s);
    }
  }
}

TEST_CASE("one step propagates a perturbation no farther than the radius") {
  for (int radius : {1, 2}) {
    const auto cfg = LatticeConfig::make(9, 1, 1, 1, radius);
    const DynamicalState base{zero_configuration(cfg), zero_configuration(cfg)};
    DynamicalState poked = base;
    const int site = 4;
    poked.current.values[site] = 1;
    const DynamicalState next_base = step_classical(base, cfg);
    const DynamicalState next_poked = step_classical(poked, cfg);
    for (int i = 0; i < cfg.n_sites; ++i) {
      const int ring_distance = std::min(std::abs(i - site), cfg.n_sites - std::abs(i - site));
      if (ring_distance > radius) {
        CHECK(next_base.current.values[i] == next_poked.current.values[i]);
      }
      if (i != site) CHECK(next_base.previous.values[i] == next_poked.previous.values[i]);
    }
  }
}

TEST_CASE("trajectories on a finite space are eventually periodic") {
  const auto cfg = LatticeConfig::make(1, 1, 1);  // 9 dynamical states
  const StateIndex pairs = dynamical_state_count(cfg);
  DynamicalState s = decode_dynamical(5, cfg);
  std::set<StateIndex> seen;
  bool revisited = false;
  for (StateIndex k = 0; k <= pairs * pairs; ++k) {
    const StateIndex m = encode(s, cfg);
    if (!seen.insert(m).second) {
      revisited = true;
      break;
    }
    s = step_classical(s, cfg);
  }
  CHECK(revisited);
}

TEST_CASE("evolve_classical with zero steps returns only the initial state") {
  const auto cfg = LatticeConfig::make(2, 1, 1);
  const DynamicalState s{zero_configuration(cfg), zero_configuration(cfg)};
  const auto trajectory = evolve_classical(s, cfg, 0);
  REQUIRE(trajectory.size() == 1);
  CHECK(trajectory[0] == s);
}

TEST_CASE("step permutation is a bijection agreeing with the step rule") {
  const auto cfg = LatticeConfig::make(2, 1, 1);
  const auto perm = step_permutation(cfg);
  REQUIRE(perm.size() == 81);
  std::vector<bool> hit(perm.size(), false);
  for (StateIndex m = 0; m < perm.size(); ++m) {
    CHECK(perm[m] == encode(step_classical(decode_dynamical(m, cfg), cfg), cfg));
    CHECK_FALSE(hit[perm[m]]);
    hit[perm[m]] = true;
  }
}

TEST_CASE("state energy sums adjacent squared differences around the ring") {
  const auto cfg = LatticeConfig::make(3, 1, 1);
  // Differences around the ring for (1, 0, -1): -1, -1, +2.
  CHECK(state_energy(FieldConfiguration{{1, 0, -1}}, cfg) == doctest::Approx(6.0));
  CHECK(state_energy(zero_configuration(cfg), cfg) == doctest::Approx(0.0));
  const auto table = energy_table(cfg);
  REQUIRE(table.size() == dynamical_state_count(cfg));
  for (StateIndex m : {StateIndex{0}, StateIndex{100}, StateIndex{728}})
    CHECK(table[m] == state_energy(decode_dynamical(m, cfg).current, cfg));
}

}  // TEST_SUITE
