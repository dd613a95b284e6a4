#pragma once

#include <cstdint>
#include <vector>

#include "adaptvqe/pauli.hpp"

namespace adaptvqe {

struct StateVector {
  int n_qubits = 0;
  std::vector<cplx> amps;

  StateVector() = default;
  explicit StateVector(int n) : n_qubits(n), amps(std::size_t(1) << n, cplx(0)) {}

  static StateVector basis_state(int n, std::uint64_t index);

  std::size_t dim() const { return amps.size(); }
  double norm() const;
  void normalize();
};

cplx inner(const StateVector& a, const StateVector& b);  // <a|b>

StateVector apply_pauli_string(const PauliString& p, const StateVector& psi);

// H|psi>
StateVector apply_hamiltonian(const QubitHamiltonian& h, const StateVector& psi);

// <psi|H|psi>; throws if the imaginary residue exceeds 1e-10.
double expectation(const QubitHamiltonian& h, const StateVector& psi);
double expectation_with(const StateVector& h_psi, const StateVector& psi);

// <H^2> - <H>^2 for a pure state.
double variance(const QubitHamiltonian& h, const StateVector& psi);

}  // namespace adaptvqe
