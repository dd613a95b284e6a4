#pragma once

#include <vector>

#include "adaptvqe/pauli.hpp"
#include "adaptvqe/pools.hpp"
#include "adaptvqe/statevector.hpp"

namespace adaptvqe {

struct CircuitEntry {
  AnsatzElement element;
  double theta = 0.0;
  int iteration = 0;  // ADAPT iteration that added the element
};

struct AnsatzCircuit {
  std::vector<CircuitEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<double> parameters() const;
  void set_parameters(const std::vector<double>& theta);
};

// psi' = exp(theta * T_e) psi
StateVector apply_element(const AnsatzElement& e, double theta, const StateVector& psi);
// inverse rotation
StateVector apply_element_inverse(const AnsatzElement& e, double theta, const StateVector& psi);
// phi = T_e psi (the anti-Hermitian generator itself)
StateVector apply_generator(const AnsatzElement& e, const StateVector& psi);

StateVector run_circuit(const AnsatzCircuit& circuit, const StateVector& psi0);

double energy_landscape(const QubitHamiltonian& h, const AnsatzCircuit& circuit,
                        const StateVector& psi0);

// L(A) = -|Tr([H,T_A] rho)| = -|2 Re <H psi | T_A psi>| for pure states.
double gradient_loss(const QubitHamiltonian& h, const StateVector& psi, const AnsatzElement& e);
// Same, with H|psi> precomputed (caching across a pool scan).
double gradient_loss_with(const StateVector& h_psi, const StateVector& psi,
                          const AnsatzElement& e);

// dE/dtheta_k for all k, analytic adjoint sweep.
std::vector<double> energy_gradient(const QubitHamiltonian& h, const AnsatzCircuit& circuit,
                                    const StateVector& psi0);

}  // namespace adaptvqe
