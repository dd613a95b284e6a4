#pragma once

#include <Eigen/Dense>
#include <variant>

#include "adaptvqe/pauli.hpp"
#include "adaptvqe/simulator.hpp"
#include "adaptvqe/statevector.hpp"

namespace adaptvqe {

struct DensityMatrix {
  int n_qubits = 0;
  Eigen::MatrixXcd mat;

  DensityMatrix() = default;
  explicit DensityMatrix(int n)
      : n_qubits(n), mat(Eigen::MatrixXcd::Zero(std::int64_t(1) << n, std::int64_t(1) << n)) {}

  static DensityMatrix from_statevector(const StateVector& psi);
  std::int64_t dim() const { return mat.rows(); }
  double trace_real() const { return mat.trace().real(); }
};

// rho -> U rho U+ for one ansatz element.
DensityMatrix apply_element_density(const AnsatzElement& e, double theta,
                                    const DensityMatrix& rho);
DensityMatrix run_circuit_density(const AnsatzCircuit& circuit, const DensityMatrix& rho0);

double expectation_density(const QubitHamiltonian& h, const DensityMatrix& rho);

// --- single-qubit channels / linear maps on qubit r ---

struct AmplitudeDamping { double gamma; int r; };
struct Dephasing { double p_z; int r; };
struct Depolarizing { double p; int r; };
struct PauliMap { char letter; int r; };       // rho -> P rho P
struct DampingDerivative { int r; };           // dF = F(3/4) + R/4, not CPTP

using Channel = std::variant<AmplitudeDamping, Dephasing, Depolarizing, PauliMap,
                             DampingDerivative>;

void apply_channel(const Channel& ch, DensityMatrix& rho);

// The four statevector branches (2x2 operators K with weights w) whose
// weighted expectation sum reproduces Tr[H dF_r(rho)] for pure rho.
struct BranchOp {
  Eigen::Matrix2cd k;
  double weight;
};
std::vector<BranchOp> damping_derivative_branches();

// Apply a 2x2 operator to qubit r of a statevector (not generally unitary).
StateVector apply_one_qubit_op(const Eigen::Matrix2cd& k, int r, const StateVector& psi);

}  // namespace adaptvqe
