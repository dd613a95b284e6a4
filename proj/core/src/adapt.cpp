#include "adaptvqe/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <set>

#include "adaptvqe/errors.hpp"

namespace adaptvqe {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::standard: return "standard";
    case Algorithm::explore: return "explore";
    case Algorithm::static_layered: return "static";
    case Algorithm::dynamic_layered: return "dynamic";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "standard") return Algorithm::standard;
  if (s == "explore") return Algorithm::explore;
  if (s == "static") return Algorithm::static_layered;
  if (s == "dynamic") return Algorithm::dynamic_layered;
  throw ConfigError("unknown algorithm: " + s);
}

CommutationRelation relation_from_tag(RelationTag tag) {
  switch (tag) {
    case RelationTag::op: return operator_relation();
    case RelationTag::support: return support_relation();
    default: throw ConfigError("custom relations must be supplied programmatically");
  }
}

void RunConfig::validate() const {
  if (!(epsilon > 0)) throw ConfigError("epsilon must be positive");
  if (t_max < 1) throw ConfigError("t_max must be >= 1");
  if (initial_subpool_size < 1) throw ConfigError("initial subpool size must be >= 1");
  if (pool_kind == PoolKind::fermionic && relation == RelationTag::support)
    throw ConfigError(
        "support-relation layering is undefined for the fermionic pool "
        "(use relation=operator)");
}

double LossOracle::value(const Pool& pool, int id) {
  auto it = cache.find(id);
  if (it != cache.end()) return it->second;
  double v = fn(pool.elements.at(id));
  cache.emplace(id, v);
  ++fresh_calls;
  return v;
}

void score_set(const Pool& pool, const std::vector<int>& ids, LossOracle& loss,
               Counters& counters) {
  long long before = loss.fresh_calls;
  for (int id : ids) loss.value(pool, id);
  counters.loss_function_calls += loss.fresh_calls - before;
  counters.loss_expectation_evals += (long long)ids.size() + 1;
}

namespace {

int argmin_ids(const Pool& pool, const std::vector<int>& ids, LossOracle& loss) {
  int best = -1;
  double best_v = 0;
  for (int id : ids) {
    double v = loss.value(pool, id);
    if (best < 0 || v < best_v || (v == best_v && id < best)) {
      best = id;
      best_v = v;
    }
  }
  return best;
}

}  // namespace

ExplorationResult subpool_exploration(const Pool& pool, const std::vector<int>& subset_ids,
                                      LossOracle& loss, const std::vector<int>& initial_ids,
                                      const CommutationRelation& rel, Counters& counters) {
  if (initial_ids.empty()) throw ValidationError("initial subpool must be non-empty");
  ExplorationResult res;
  std::set<int> searched(initial_ids.begin(), initial_ids.end());
  std::vector<int> s0(searched.begin(), searched.end());
  score_set(pool, s0, loss, counters);
  int best = argmin_ids(pool, s0, loss);
  int m_s = 0;

  while (true) {
    std::vector<int> remaining;
    remaining.reserve(subset_ids.size());
    for (int id : subset_ids)
      if (!searched.count(id)) remaining.push_back(id);
    std::vector<int> next = noncommuting_set(pool, remaining, best, rel);
    if (next.empty()) break;
    score_set(pool, next, loss, counters);
    searched.insert(next.begin(), next.end());
    ++m_s;
    int cand = argmin_ids(pool, next, loss);
    if (loss.value(pool, cand) < loss.value(pool, best) - 1e-12)
      best = cand;
    else
      break;
  }
  counters.subpools_searched.push_back(m_s);
  counters.searched_set_sizes.push_back((long long)searched.size());
  res.chosen = best;
  res.searched.assign(searched.begin(), searched.end());
  return res;
}

int select_standard(const Pool& pool, const std::vector<int>& subset_ids, LossOracle& loss,
                    Counters& counters) {
  if (subset_ids.empty()) throw ValidationError("cannot select from an empty pool");
  score_set(pool, subset_ids, loss, counters);
  return argmin_ids(pool, subset_ids, loss);
}

namespace {

std::vector<int> sample_initial(const std::vector<int>& available, int k, std::mt19937_64& rng) {
  std::vector<int> ids = available;
  int n = int(ids.size());
  k = std::min(k, n);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> dist(i, n - 1);
    std::swap(ids[i], ids[dist(rng)]);
  }
  ids.resize(k);
  return ids;
}

void remove_ball(const Pool& pool, std::vector<int>& available, int chosen,
                 const CommutationRelation& rel) {
  std::vector<int> ball = noncommuting_set(pool, available, chosen, rel);
  std::set<int> gone(ball.begin(), ball.end());
  gone.insert(chosen);
  std::erase_if(available, [&](int id) { return gone.count(id) > 0; });
}

}  // namespace

std::vector<int> build_static_layer(const Pool& pool, std::vector<int> available,
                                    LossOracle& loss, double l_max, int n_max,
                                    const CommutationRelation& rel, Counters& counters,
                                    std::mt19937_64& rng, int initial_subpool_size) {
  std::vector<int> layer;
  while (!available.empty()) {
    if (n_max > 0 && int(layer.size()) >= n_max) break;
    std::vector<int> initial = sample_initial(available, initial_subpool_size, rng);
    ExplorationResult res = subpool_exploration(pool, available, loss, initial, rel, counters);
    if (loss.value(pool, res.chosen) < l_max) layer.push_back(res.chosen);
    remove_ball(pool, available, res.chosen, rel);
  }
  return layer;
}

double energy_selection_loss(const QubitHamiltonian& h, const AnsatzCircuit& circuit,
                             const StateVector& psi0, const AnsatzElement& e) {
  StateVector psi = run_circuit(circuit, psi0);
  const double pi = 3.14159265358979323846;
  auto f = [&](double theta) { return expectation(h, apply_element(e, theta, psi)); };
  return minimize_scalar(f, -pi, pi, 65, 1e-10).f;
}

namespace {

struct Driver {
  const QubitHamiltonian& h;
  const StateVector& psi0;
  RunConfig cfg;
  std::optional<double> reference;
  GateSchedule schedule;
  CommutationRelation rel;
  Pool pool;
  std::vector<int> all_ids;
  std::mt19937_64 rng;

  RunRecord record;
  AnsatzCircuit circuit;
  StateVector psi;
  double energy = 0.0;

  Driver(const QubitHamiltonian& h_, const StateVector& psi0_, const RunConfig& cfg_,
         std::optional<double> ref, const GateSchedule* sched)
      : h(h_), psi0(psi0_), cfg(cfg_), reference(ref),
        schedule(sched ? *sched : default_gate_schedule()),
        rel(relation_from_tag(cfg_.relation)),
        pool(build_pool(cfg_.pool_kind, h_.n_qubits, cfg_.v_sizes)),
        rng(cfg_.seed),
        psi(psi0_) {
    cfg.validate();
    all_ids.resize(pool.size());
    std::iota(all_ids.begin(), all_ids.end(), 0);
    energy = expectation(h, psi);
    record.algorithm = to_string(cfg.algorithm);
    record.pool = to_string(cfg.pool_kind);
    record.relation = cfg.relation == RelationTag::support ? "support" : "operator";
    record.selection = cfg.selection == SelectionRule::gradient ? "gradient" : "energy";
    record.seed = cfg.seed;
    record.initial_energy = energy;
    record.reference_energy = reference;
  }

  LossOracle make_oracle() {
    LossOracle oracle;
    if (cfg.selection == SelectionRule::gradient) {
      auto hpsi = std::make_shared<StateVector>(apply_hamiltonian(h, psi));
      auto state = std::make_shared<StateVector>(psi);
      oracle.fn = [hpsi, state](const AnsatzElement& e) {
        return gradient_loss_with(*hpsi, *state, e);
      };
    } else {
      auto snapshot = std::make_shared<AnsatzCircuit>(circuit);
      const QubitHamiltonian* hp = &h;
      const StateVector* p0 = &psi0;
      oracle.fn = [snapshot, hp, p0](const AnsatzElement& e) {
        return energy_selection_loss(*hp, *snapshot, *p0, e);
      };
    }
    return oracle;
  }

  // Loss gate for the layered builders. Gradient losses are non-positive
  // (gate: < l_max, default 0); energy-selection losses are energies
  // (gate: improves the current bound by at least epsilon).
  double loss_gate() const {
    return cfg.selection == SelectionRule::gradient ? cfg.l_max : energy - cfg.epsilon;
  }

  void optimize_all() {
    const std::size_t p = circuit.size();
    auto objective = [&](const std::vector<double>& x) {
      AnsatzCircuit c = circuit;
      c.set_parameters(x);
      return energy_landscape(h, c, psi0);
    };
    auto gradient = [&](const std::vector<double>& x) {
      AnsatzCircuit c = circuit;
      c.set_parameters(x);
      return energy_gradient(h, c, psi0);
    };
    BfgsResult res = bfgs_minimize(objective, gradient, circuit.parameters(), cfg.optimizer);
    record.counters.optimizer_calls += 1;
    record.counters.optimizer_expectation_evals +=
        res.n_objective_evals + (long long)res.n_gradient_evals * (long long)(p + 1);
    circuit.set_parameters(res.x);
    psi = run_circuit(circuit, psi0);
    energy = expectation(h, psi);
  }

  void record_iteration(int t, const std::vector<int>& new_ids) {
    IterationRecord it;
    it.t = t;
    it.bound = energy;
    it.delta = reference ? energy - *reference : std::nan("");
    it.n_params = int(circuit.size());
    it.new_element_ids = new_ids;
    it.parameters = circuit.parameters();
    std::vector<Layer> layers = decompose_into_layers(circuit, rel);
    it.depth_element_layers = int(layers.size());
    try {
      LayerTiming timing = cnot_accounting(layers, h.n_qubits, schedule);
      it.depth_columns = timing.depth_columns;
      it.duration_s = timing.total_duration;
      it.n_ii = timing.n_ii;
    } catch (const ValidationError&) {
      record.schedule_incomplete = true;
    }
    it.loss_calls = record.counters.loss_function_calls;
    it.loss_evals = record.counters.loss_expectation_evals;
    it.opt_calls = record.counters.optimizer_calls;
    it.opt_evals = record.counters.optimizer_expectation_evals;
    it.var_h = variance(h, psi);
    record.iterations.push_back(std::move(it));
  }

  void append_elements(const std::vector<int>& ids, int t) {
    for (int id : ids) circuit.entries.push_back({pool.elements.at(id), 0.0, t});
  }

  RunRecord finish() {
    record.final_circuit = circuit;
    return std::move(record);
  }

  RunRecord run_standard_or_explore() {
    double prev = energy;
    for (int t = 1; t <= cfg.t_max; ++t) {
      LossOracle oracle = make_oracle();
      int chosen;
      if (cfg.algorithm == Algorithm::standard) {
        chosen = select_standard(pool, all_ids, oracle, record.counters);
      } else {
        std::vector<int> initial = sample_initial(all_ids, cfg.initial_subpool_size, rng);
        chosen = subpool_exploration(pool, all_ids, oracle, initial, rel, record.counters).chosen;
      }
      append_elements({chosen}, t);
      optimize_all();
      record_iteration(t, {chosen});
      if (prev - energy < cfg.epsilon) {
        record.halt_reason = "epsilon";
        return finish();
      }
      prev = energy;
    }
    record.halt_reason = "t_max";
    return finish();
  }

  RunRecord run_static() {
    double prev = energy;
    for (int t = 1; t <= cfg.t_max; ++t) {
      LossOracle oracle = make_oracle();
      std::vector<int> layer = build_static_layer(pool, all_ids, oracle, loss_gate(), cfg.n_max,
                                                  rel, record.counters, rng,
                                                  cfg.initial_subpool_size);
      if (layer.empty()) {
        record.halt_reason = "empty_layer";
        return finish();
      }
      append_elements(layer, t);
      optimize_all();
      record_iteration(t, layer);
      if (prev - energy < cfg.epsilon * double(layer.size())) {
        record.halt_reason = "epsilon";
        return finish();
      }
      prev = energy;
    }
    record.halt_reason = "t_max";
    return finish();
  }

  RunRecord run_dynamic() {
    for (int t = 1; t <= cfg.t_max; ++t) {
      std::vector<int> available = all_ids;
      std::vector<int> layer;
      LossOracle oracle = make_oracle();
      while (!available.empty()) {
        if (cfg.n_max > 0 && int(layer.size()) >= cfg.n_max) break;
        std::vector<int> initial = sample_initial(available, cfg.initial_subpool_size, rng);
        ExplorationResult res =
            subpool_exploration(pool, available, oracle, initial, rel, record.counters);
        if (oracle.value(pool, res.chosen) < loss_gate()) {
          AnsatzCircuit backup = circuit;
          double backup_energy = energy;
          StateVector backup_psi = psi;
          append_elements({res.chosen}, t);
          optimize_all();
          if (backup_energy - energy >= cfg.epsilon) {
            layer.push_back(res.chosen);
            oracle = make_oracle();  // state changed; cached losses stale
          } else {
            circuit = std::move(backup);
            psi = std::move(backup_psi);
            energy = backup_energy;
          }
        }
        remove_ball(pool, available, res.chosen, rel);
      }
      if (layer.empty()) {
        record.halt_reason = "empty_layer";
        return finish();
      }
      record_iteration(t, layer);
    }
    record.halt_reason = "t_max";
    return finish();
  }
};

}  // namespace

RunRecord adapt_vqe(const QubitHamiltonian& h, const StateVector& psi0, const RunConfig& config,
                    std::optional<double> reference_energy, const GateSchedule* schedule) {
  Driver d(h, psi0, config, reference_energy, schedule);
  return d.run_standard_or_explore();
}

RunRecord static_adapt_vqe(const QubitHamiltonian& h, const StateVector& psi0,
                           const RunConfig& config, std::optional<double> reference_energy,
                           const GateSchedule* schedule) {
  Driver d(h, psi0, config, reference_energy, schedule);
  return d.run_static();
}

RunRecord dynamic_adapt_vqe(const QubitHamiltonian& h, const StateVector& psi0,
                            const RunConfig& config, std::optional<double> reference_energy,
                            const GateSchedule* schedule) {
  Driver d(h, psi0, config, reference_energy, schedule);
  return d.run_dynamic();
}

RunRecord run_adapt(const QubitHamiltonian& h, const StateVector& psi0, const RunConfig& config,
                    std::optional<double> reference_energy, const GateSchedule* schedule) {
  switch (config.algorithm) {
    case Algorithm::standard:
    case Algorithm::explore:
      return adapt_vqe(h, psi0, config, reference_energy, schedule);
    case Algorithm::static_layered:
      return static_adapt_vqe(h, psi0, config, reference_energy, schedule);
    case Algorithm::dynamic_layered:
      return dynamic_adapt_vqe(h, psi0, config, reference_energy, schedule);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace adaptvqe
