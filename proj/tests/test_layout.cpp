#include "doctest.h"

#include <random>

#include "adaptvqe/errors.hpp"
#include "adaptvqe/layout.hpp"
#include "oracles.hpp"

using namespace adaptvqe;

namespace {

AnsatzElement find_single(const Pool& p, int a, int b) {
  for (const auto& e : p.elements)
    if (e.kind == ElementKind::qeb_single && e.indices == std::vector<int>{a, b}) return e;
  throw std::runtime_error("missing single");
}

CommutationRelation sequential_relation() {
  // nothing commutes: every element gets its own layer
  return {RelationTag::custom,
          [](const AnsatzElement&, const AnsatzElement&) { return false; }};
}

}  // namespace

TEST_CASE("greedy layering packs compatible elements as early as possible") {
  Pool p = build_pool(PoolKind::qeb, 4);
  AnsatzCircuit c;
  c.entries.push_back({find_single(p, 0, 1), 0.1, 1});
  c.entries.push_back({find_single(p, 2, 3), 0.2, 1});
  c.entries.push_back({find_single(p, 0, 2), 0.3, 2});
  auto layers = decompose_into_layers(c, support_relation());
  REQUIRE(layers.size() == 2);
  CHECK(layers[0].entries.size() == 2);
  CHECK(layers[1].entries.size() == 1);
  CHECK(layers[1].entries[0].element.indices == std::vector<int>{0, 2});

  // an element compatible with layer 1 but not layer 0 lands in layer 1
  c.entries.push_back({find_single(p, 1, 3), 0.4, 3});
  layers = decompose_into_layers(c, support_relation());
  REQUIRE(layers.size() == 2);
  CHECK(layers[1].entries.size() == 2);
}

TEST_CASE("layering is idempotent and preserves the prepared state") {
  std::mt19937_64 rng(71);
  Pool p = build_pool(PoolKind::qeb, 6);
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  std::uniform_real_distribution<double> angle(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    AnsatzCircuit c;
    for (int k = 0; k < 8; ++k) c.entries.push_back({p.elements[pick(rng)], angle(rng), k});
    auto layers = decompose_into_layers(c, support_relation());

    AnsatzCircuit flat;
    for (const auto& l : layers)
      for (const auto& e : l.entries) flat.entries.push_back(e);
    auto again = decompose_into_layers(flat, support_relation());
    REQUIRE(again.size() == layers.size());
    for (std::size_t l = 0; l < layers.size(); ++l)
      CHECK(again[l].entries.size() == layers[l].entries.size());

    // elements within a layer commute, so reordering preserves the state
    StateVector psi0 = oracles::random_state(6, rng);
    StateVector a = run_circuit(c, psi0);
    StateVector b = run_circuit(flat, psi0);
    CHECK((oracles::to_eigen(a) - oracles::to_eigen(b)).norm() < 1e-12);
  }
}

TEST_CASE("default schedule: gate counts and layer durations") {
  GateSchedule s = default_gate_schedule();
  Pool p = build_pool(PoolKind::qeb, 4);

  SUBCASE("2-qubit exchange: 2 entanglers in 5 columns") {
    Layer l{0, {{find_single(p, 0, 1), 0.1, 1}}};
    auto cols = transpile_layer(l, s);
    CHECK(cols.size() == 5);
    LayerTiming t = cnot_accounting({l}, 4, s);
    CHECK(t.n_ii == 2);
    CHECK(t.tau[0] == doctest::Approx(3 * 35.5e-9 + 2 * 295.1e-9));
  }

  SUBCASE("4-qubit exchange: 13 entanglers in 21 columns") {
    AnsatzElement dbl = p.elements[6];
    REQUIRE(dbl.kind == ElementKind::qeb_double);
    Layer l{0, {{dbl, 0.1, 1}}};
    auto cols = transpile_layer(l, s);
    CHECK(cols.size() == 21);
    LayerTiming t = cnot_accounting({l}, 4, s);
    CHECK(t.n_ii == 13);
    CHECK(t.tau[0] == doctest::Approx(12 * 295.1e-9 + 9 * 35.5e-9));
    // control is always the higher physical qubit
    for (const auto& col : cols)
      for (const auto& g : col)
        if (g.is_cnot) CHECK(g.control > g.target);
  }

  SUBCASE("Pauli rotation on q qubits: 2(q-1) entanglers in 2q+1 columns") {
    Pool qp = build_pool(PoolKind::qubit, 6);
    for (const auto& e : qp.elements) {
      int q = e.support_size();
      Layer l{0, {{e, 0.1, 1}}};
      auto cols = transpile_layer(l, s);
      CHECK(int(cols.size()) == 2 * q + 1);
      LayerTiming t = cnot_accounting({l}, 6, s);
      CHECK(t.n_ii == 2 * (q - 1));
    }
  }
}

TEST_CASE("slot resolution targets the element's own support qubits") {
  GateSchedule s = default_gate_schedule();
  Pool p = build_pool(PoolKind::qeb, 6);
  Layer l{0, {{find_single(p, 1, 4), 0.3, 1}}};
  auto cols = transpile_layer(l, s);
  for (const auto& col : cols)
    for (const auto& g : col) {
      if (g.is_cnot) {
        CHECK(g.control == 4);
        CHECK(g.target == 1);
      } else {
        CHECK((g.q == 1 || g.q == 4));
      }
    }
}

TEST_CASE("entangler totals are invariant under re-layering") {
  std::mt19937_64 rng(72);
  Pool p = build_pool(PoolKind::qeb, 6);
  GateSchedule s = default_gate_schedule();
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  AnsatzCircuit c;
  for (int k = 0; k < 10; ++k) c.entries.push_back({p.elements[pick(rng)], 0.1, k});

  LayerTiming packed = cnot_accounting(decompose_into_layers(c, support_relation()), 6, s);
  LayerTiming serial = cnot_accounting(decompose_into_layers(c, sequential_relation()), 6, s);
  CHECK(packed.n_ii == serial.n_ii);
  CHECK(packed.depth_element_layers <= serial.depth_element_layers);
  CHECK(serial.depth_element_layers == 10);

  // per-qubit target counts add up to the total
  long long sum = 0;
  for (const auto& row : packed.m)
    for (int v : row) sum += v;
  CHECK(sum == packed.n_ii);
}

TEST_CASE("disjoint singles share one layer up to the width bound") {
  Pool p = build_pool(PoolKind::qeb, 8);
  AnsatzCircuit c;
  for (int q = 0; q < 8; q += 2) c.entries.push_back({find_single(p, q, q + 1), 0.1, 1});
  auto layers = decompose_into_layers(c, support_relation());
  CHECK(layers.size() == 1);
  CHECK(layers[0].entries.size() == 4);  // floor(N/2) parallel 2-qubit elements
}

TEST_CASE("missing schedule entries are reported, not guessed") {
  GateSchedule s = default_gate_schedule();
  Pool f = build_pool(PoolKind::fermionic, 4);
  Layer l{0, {{f.elements[0], 0.1, 1}}};
  CHECK_THROWS_AS(transpile_layer(l, s), ValidationError);
  CHECK_THROWS_AS(cnot_accounting({l}, 4, s), ValidationError);
}

TEST_CASE("gate schedules survive a JSON round trip") {
  GateSchedule s = default_gate_schedule();
  s.times.t1 = 40e-9;
  GateSchedule back = schedule_from_json(schedule_to_json(s));
  CHECK(back.times.t1 == doctest::Approx(s.times.t1));
  CHECK(back.times.t2 == doctest::Approx(s.times.t2));
  REQUIRE(back.table.size() == s.table.size());
  for (const auto& [key, cols] : s.table) {
    REQUIRE(back.table.count(key) == 1);
    const auto& bcols = back.table.at(key);
    REQUIRE(bcols.size() == cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      REQUIRE(bcols[c].size() == cols[c].size());
      for (std::size_t g = 0; g < cols[c].size(); ++g) {
        CHECK(bcols[c][g].is_cnot == cols[c][g].is_cnot);
        CHECK(bcols[c][g].a == cols[c][g].a);
        if (cols[c][g].is_cnot) CHECK(bcols[c][g].b == cols[c][g].b);
      }
    }
  }
  CHECK_THROWS_AS(schedule_from_json("{ not json"), ParseError);
  CHECK_THROWS_AS(schedule_from_json("{\"t1_ns\": 35.5}"), ParseError);
}
