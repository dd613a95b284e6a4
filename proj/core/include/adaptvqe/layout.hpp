#pragma once

#include <map>
#include <string>
#include <vector>

#include "adaptvqe/pools.hpp"
#include "adaptvqe/simulator.hpp"

namespace adaptvqe {

struct Layer {
  int index = 0;
  std::vector<CircuitEntry> entries;  // pairwise commuting under the layering relation
};

// One native gate inside an element's schedule, indices are slots into the
// element's sorted support (slot 0 = lowest support qubit).
struct ScheduledGate {
  bool is_cnot = false;
  int a = 0;  // single: qubit slot; cnot: control slot
  int b = 0;  // cnot: target slot
};

struct GateTimes {
  double t1 = 35.5e-9;   // single-qubit gate (s)
  double t2 = 295.1e-9;  // two-qubit CNOT (s)
};

// kind key -> ordered columns of gates. Keys: "qeb_single", "qeb_double",
// "pauli_<q>" for Pauli rotations on q support qubits.
struct GateSchedule {
  std::map<std::string, std::vector<std::vector<ScheduledGate>>> table;
  GateTimes times;

  const std::vector<std::vector<ScheduledGate>>& columns_for(const AnsatzElement& e) const;
};

GateSchedule default_gate_schedule();
GateSchedule schedule_from_json(const std::string& text);
std::string schedule_to_json(const GateSchedule& s);

// Gate on physical qubits after slot resolution.
struct ConcreteGate {
  bool is_cnot = false;
  int q = 0;        // single-qubit target
  int control = 0;  // cnot
  int target = 0;   // cnot
};

std::vector<Layer> decompose_into_layers(const AnsatzCircuit& circuit,
                                         const CommutationRelation& rel);

std::vector<std::vector<ConcreteGate>> transpile_layer(const Layer& layer,
                                                       const GateSchedule& schedule);

double layer_duration(const std::vector<std::vector<ConcreteGate>>& columns,
                      const GateTimes& times);

struct LayerTiming {
  std::vector<double> tau;              // per-layer duration (s)
  std::vector<std::vector<int>> m;      // [layer][qubit] CNOT-target counts
  long long n_ii = 0;                   // total CNOT count
  int depth_element_layers = 0;
  int depth_columns = 0;
  double total_duration = 0.0;
};

LayerTiming cnot_accounting(const std::vector<Layer>& layers, int n_qubits,
                            const GateSchedule& schedule);

}  // namespace adaptvqe
