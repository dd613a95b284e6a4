#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adaptvqe/bfgs.hpp"
#include "adaptvqe/layout.hpp"
#include "adaptvqe/pauli.hpp"
#include "adaptvqe/pools.hpp"
#include "adaptvqe/simulator.hpp"
#include "adaptvqe/statevector.hpp"

namespace adaptvqe {

enum class Algorithm { standard, explore, static_layered, dynamic_layered };
enum class SelectionRule { gradient, energy };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct RunConfig {
  PoolKind pool_kind = PoolKind::qeb;
  RelationTag relation = RelationTag::support;
  Algorithm algorithm = Algorithm::standard;
  SelectionRule selection = SelectionRule::gradient;
  double epsilon = 1e-8;      // Ha, halting / acceptance threshold
  double l_max = 0.0;         // loss gate for layered builders
  int n_max = 0;              // max accepted elements per layer, 0 = unlimited
  int t_max = 50;
  BfgsSettings optimizer;
  int initial_subpool_size = 1;
  std::uint64_t seed = 1;
  std::vector<int> v_sizes = {2, 4};

  void validate() const;
};

struct Counters {
  long long loss_function_calls = 0;
  long long loss_expectation_evals = 0;
  long long optimizer_calls = 0;
  long long optimizer_expectation_evals = 0;
  std::vector<int> subpools_searched;        // m_s per exploration
  std::vector<long long> searched_set_sizes; // |S| per exploration
};

struct IterationRecord {
  int t = 0;
  double bound = 0.0;                 // energy after this iteration
  double delta = 0.0;                 // bound - reference (NaN when no reference)
  int n_params = 0;
  std::vector<int> new_element_ids;   // pool ids added this iteration
  std::vector<double> parameters;     // full optimal parameter vector
  int depth_element_layers = 0;
  int depth_columns = 0;
  double duration_s = 0.0;
  long long n_ii = 0;
  long long loss_calls = 0;           // counters snapshot (cumulative)
  long long loss_evals = 0;
  long long opt_calls = 0;
  long long opt_evals = 0;
  double var_h = 0.0;
};

struct RunRecord {
  std::string algorithm;
  std::string pool;
  std::string relation;
  std::string selection;
  std::uint64_t seed = 0;
  double initial_energy = 0.0;
  std::optional<double> reference_energy;
  std::vector<IterationRecord> iterations;
  AnsatzCircuit final_circuit;
  Counters counters;
  std::string halt_reason;
  bool schedule_incomplete = false;  // column metrics unavailable for this pool
  std::string hamiltonian_hash;
  std::string input_path;
};

// Loss evaluator with per-state caching and call counting.
struct LossOracle {
  std::function<double(const AnsatzElement&)> fn;
  std::map<int, double> cache;

  double value(const Pool& pool, int id);  // cached, counts a call on miss
  void invalidate() { cache.clear(); }
  long long fresh_calls = 0;  // calls actually made (cache misses)
};

// Charges |ids|+1 expectation evals and one loss call per cache miss.
void score_set(const Pool& pool, const std::vector<int>& ids, LossOracle& loss,
               Counters& counters);

struct ExplorationResult {
  int chosen = -1;
  std::vector<int> searched;
};

// Local search over successive non-commuting sets (ties: lowest id).
ExplorationResult subpool_exploration(const Pool& pool, const std::vector<int>& subset_ids,
                                      LossOracle& loss, const std::vector<int>& initial_ids,
                                      const CommutationRelation& rel, Counters& counters);

// Full-pool argmin.
int select_standard(const Pool& pool, const std::vector<int>& subset_ids, LossOracle& loss,
                    Counters& counters);

// Greedy layer construction on a shrinking pool; returns accepted ids in order.
std::vector<int> build_static_layer(const Pool& pool, std::vector<int> available,
                                    LossOracle& loss, double l_max, int n_max,
                                    const CommutationRelation& rel, Counters& counters,
                                    std::mt19937_64& rng, int initial_subpool_size = 1);

double energy_selection_loss(const QubitHamiltonian& h, const AnsatzCircuit& circuit,
                             const StateVector& psi0, const AnsatzElement& e);

RunRecord adapt_vqe(const QubitHamiltonian& h, const StateVector& psi0, const RunConfig& config,
                    std::optional<double> reference_energy = std::nullopt,
                    const GateSchedule* schedule = nullptr);
RunRecord static_adapt_vqe(const QubitHamiltonian& h, const StateVector& psi0,
                           const RunConfig& config,
                           std::optional<double> reference_energy = std::nullopt,
                           const GateSchedule* schedule = nullptr);
RunRecord dynamic_adapt_vqe(const QubitHamiltonian& h, const StateVector& psi0,
                            const RunConfig& config,
                            std::optional<double> reference_energy = std::nullopt,
                            const GateSchedule* schedule = nullptr);

// Dispatch on config.algorithm.
RunRecord run_adapt(const QubitHamiltonian& h, const StateVector& psi0, const RunConfig& config,
                    std::optional<double> reference_energy = std::nullopt,
                    const GateSchedule* schedule = nullptr);

CommutationRelation relation_from_tag(RelationTag tag);

}  // namespace adaptvqe
