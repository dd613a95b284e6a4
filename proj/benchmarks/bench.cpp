#include <benchmark/benchmark.h>

#include <random>

#include "adaptvqe/adapt.hpp"
#include "adaptvqe/layout.hpp"
#include "adaptvqe/simulator.hpp"

using namespace adaptvqe;

namespace {

StateVector random_state(int n, std::uint64_t seed) {
  StateVector psi(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 1);
  for (auto& a : psi.amps) a = cplx(g(rng), g(rng));
  psi.normalize();
  return psi;
}

QubitHamiltonian random_hamiltonian(int n, int terms, std::uint64_t seed) {
  QubitHamiltonian h(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t(1) << n) - 1);
  std::uniform_real_distribution<double> coeff(-1, 1);
  for (int t = 0; t < terms; ++t)
    h.terms.push_back({coeff(rng), PauliString(n, mask(rng), mask(rng))});
  h.normalize();
  return h;
}

AnsatzCircuit random_circuit(int n, int len, std::uint64_t seed) {
  Pool p = build_pool(PoolKind::qeb, n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  std::uniform_real_distribution<double> angle(-1, 1);
  AnsatzCircuit c;
  for (int k = 0; k < len; ++k) c.entries.push_back({p.elements[pick(rng)], angle(rng), k});
  return c;
}

void bm_apply_element(benchmark::State& state) {
  const int n = int(state.range(0));
  Pool p = build_pool(PoolKind::qeb, n);
  StateVector psi = random_state(n, 1);
  const AnsatzElement& e = p.elements.back();
  for (auto _ : state) benchmark::DoNotOptimize(apply_element(e, 0.3, psi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_apply_element)->DenseRange(6, 14, 2);

void bm_expectation(benchmark::State& state) {
  const int n = int(state.range(0));
  QubitHamiltonian h = random_hamiltonian(n, 100, 2);
  StateVector psi = random_state(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(expectation(h, psi));
}
BENCHMARK(bm_expectation)->DenseRange(6, 14, 2);

void bm_gradient_scan(benchmark::State& state) {
  const int n = int(state.range(0));
  Pool p = build_pool(PoolKind::qeb, n);
  QubitHamiltonian h = random_hamiltonian(n, 50, 4);
  StateVector psi = random_state(n, 5);
  StateVector h_psi = apply_hamiltonian(h, psi);
  for (auto _ : state) {
    double best = 0;
    for (const auto& e : p.elements) best = std::min(best, gradient_loss_with(h_psi, psi, e));
    benchmark::DoNotOptimize(best);
  }
}
BENCHMARK(bm_gradient_scan)->DenseRange(6, 10, 2);

void bm_energy_gradient(benchmark::State& state) {
  const int n = 8;
  AnsatzCircuit c = random_circuit(n, int(state.range(0)), 6);
  QubitHamiltonian h = random_hamiltonian(n, 60, 7);
  StateVector psi0 = random_state(n, 8);
  for (auto _ : state) benchmark::DoNotOptimize(energy_gradient(h, c, psi0));
}
BENCHMARK(bm_energy_gradient)->Arg(8)->Arg(16)->Arg(32);

void bm_layer_decomposition(benchmark::State& state) {
  AnsatzCircuit c = random_circuit(10, int(state.range(0)), 9);
  auto rel = support_relation();
  for (auto _ : state) benchmark::DoNotOptimize(decompose_into_layers(c, rel));
}
BENCHMARK(bm_layer_decomposition)->Arg(16)->Arg(64)->Arg(256);

void bm_subpool_exploration(benchmark::State& state) {
  const int n = int(state.range(0));
  Pool p = build_pool(PoolKind::qeb, n);
  std::vector<int> ids(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) ids[i] = int(i);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-1, 0);
  std::vector<double> losses(p.size());
  for (auto& v : losses) v = u(rng);
  auto rel = support_relation();
  for (auto _ : state) {
    LossOracle oracle;
    oracle.fn = [&](const AnsatzElement& e) { return losses[e.id]; };
    Counters cnt;
    benchmark::DoNotOptimize(subpool_exploration(p, ids, oracle, {0}, rel, cnt));
  }
}
BENCHMARK(bm_subpool_exploration)->DenseRange(6, 12, 2);

}  // namespace

BENCHMARK_MAIN();
