#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adaptvqe/pauli.hpp"
#include "adaptvqe/statevector.hpp"

namespace adaptvqe {

// Spin-orbital integrals of a second-quantized electronic Hamiltonian
//   H = E_core + sum_pq h1[p][q] a+_p a_q
//            + sum_pqrs h2[p][q][r][s] a+_p a+_q a_r a_s
// (the 1/2 from the physical Hamiltonian is folded into h2).
struct FermionicIntegrals {
  int n_spin_orbitals = 0;
  int n_electrons = 0;
  double core_energy = 0.0;
  std::vector<double> one_body;  // dense N*N, row-major (p,q)
  std::vector<double> two_body;  // dense N^4, (p,q,r,s)

  double& h1(int p, int q) { return one_body[std::size_t(p) * n_spin_orbitals + q]; }
  double h1(int p, int q) const { return one_body[std::size_t(p) * n_spin_orbitals + q]; }
  double& h2(int p, int q, int r, int s) {
    std::size_t n = n_spin_orbitals;
    return two_body[((std::size_t(p) * n + q) * n + r) * n + s];
  }
  double h2(int p, int q, int r, int s) const {
    std::size_t n = n_spin_orbitals;
    return two_body[((std::size_t(p) * n + q) * n + r) * n + s];
  }
};

// FCIDUMP reader (spatial orbitals, chemists' index order); expands to spin
// orbitals with interleaved ordering: spatial i -> spin orbitals 2i, 2i+1.
FermionicIntegrals parse_fcidump(std::istream& in);
FermionicIntegrals parse_fcidump_file(const std::string& path);

QubitHamiltonian jordan_wigner(const FermionicIntegrals& ints);

// Text format: one term per line, "coeff [P<q>]..." with P in {X,Y,Z};
// '#' comments and blank lines allowed; duplicate strings merged.
QubitHamiltonian parse_pauli_hamiltonian(const std::string& text);
std::string serialize_pauli_hamiltonian(const QubitHamiltonian& h);

StateVector hartree_fock_state(int n_qubits, int n_electrons);

// Smallest eigenvalue. Dense Hermitian solve for N <= 10, matrix-free Lanczos
// for 10 < N <= cap (default 16).
double exact_ground_energy(const QubitHamiltonian& h, int n_qubit_cap = 16);

}  // namespace adaptvqe
