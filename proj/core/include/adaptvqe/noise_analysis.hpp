#pragma once

#include <string>
#include <vector>

#include "adaptvqe/density_matrix.hpp"
#include "adaptvqe/layout.hpp"
#include "adaptvqe/pauli.hpp"
#include "adaptvqe/statevector.hpp"

namespace adaptvqe {

enum class NoiseModel { damping, dephasing, depolarizing };

std::string to_string(NoiseModel m);

struct NoiseSpec {
  double t1_s = 0.0;       // relaxation time T1 (s); 0 = disabled
  double t2_star_s = 0.0;  // dephasing time T2* (s); 0 = disabled
  double p_depol = 0.0;    // depolarizing probability per CNOT target
  bool omega_z_main_text = false;  // use omega_z = 2/T2* - 1/T1 instead
  GateTimes gate_times;

  double omega1() const { return t1_s > 0 ? 1.0 / t1_s : 0.0; }
  double omega_z() const;
};

// Layered circuit with its timing data, the unit of all noisy evaluation.
struct LayeredCircuit {
  std::vector<Layer> layers;
  LayerTiming timing;
  int n_qubits = 0;
};

LayeredCircuit layer_circuit(const AnsatzCircuit& circuit, int n_qubits,
                             const CommutationRelation& rel, const GateSchedule& schedule);

// Applies each layer's unitary, then the model's noise channel with strength
// alpha (omega1, omega_z, or p); returns Tr[H rho_L].
double noisy_energy(const QubitHamiltonian& h, const LayeredCircuit& lc,
                    const StateVector& psi0, NoiseModel model, double alpha);

// Energy of the circuit with linear map M inserted on qubit r after layer l.
// M in {dF, Z, X, Y}; dF evaluated as four weighted statevector branches.
enum class InsertedMap { dF, Z, X, Y };
double perturbed_expectation(const QubitHamiltonian& h, const LayeredCircuit& lc,
                             const StateVector& psi0, InsertedMap m, int r, int l,
                             int n_threads = 1);

struct SusceptibilityResult {
  double chi_f = 0.0;  // Ha*s per unit omega1
  double chi_c = 0.0;  // Ha*s per unit omega_z
  double chi_d = 0.0;  // Ha per unit p
  // fluctuation tables delta_e[map][l][r] with map order dF, Z, X, Y
  std::vector<std::vector<std::vector<double>>> delta_e;
  double de_damping = 0.0;     // dE(Lambda, F)
  double de_dephasing = 0.0;   // dE(Lambda, C)
  double de_depolarizing = 0.0;  // dE(Lambda, D)
  int l_t = 0;
  int n_qubits = 0;
  long long n_ii = 0;
  double e0 = 0.0;  // noiseless energy
};

SusceptibilityResult susceptibility(const QubitHamiltonian& h, const LayeredCircuit& lc,
                                    const StateVector& psi0, int n_threads = 1);

struct FidelityRequirements {
  double t1_min_s = 0.0;
  double t2_star_min_s = 0.0;
  double p_max = 0.0;
  bool p_unbounded = false;
};

FidelityRequirements fidelity_requirements(double chi_f, double chi_c, double chi_d,
                                           double target_ha = 1e-3);

}  // namespace adaptvqe
