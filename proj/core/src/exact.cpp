#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

#include "adaptvqe/errors.hpp"
#include "adaptvqe/hamiltonian.hpp"

namespace adaptvqe {

StateVector hartree_fock_state(int n_qubits, int n_electrons) {
  if (n_electrons < 0 || n_electrons > n_qubits)
    throw ValidationError("electron count outside [0, n_qubits]");
  std::uint64_t index = (n_electrons == 0) ? 0 : ((std::uint64_t(1) << n_electrons) - 1);
  return StateVector::basis_state(n_qubits, index);
}

namespace {

double dense_ground_energy(const QubitHamiltonian& h) {
  const std::size_t dim = std::size_t(1) << h.n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& term : h.terms) {
    const PauliString& p = term.string;
    const int ny = p.n_y() & 3;
    for (std::size_t b = 0; b < dim; ++b) {
      int ph = (ny + 2 * (std::popcount(b & p.z) & 1)) & 3;
      m(b ^ p.x, b) += term.coeff * kIPow[ph];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Matrix-free Lanczos with full reorthogonalization.
double lanczos_ground_energy(const QubitHamiltonian& h) {
  const std::size_t dim = std::size_t(1) << h.n_qubits;
  const int max_iter = 300;

  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector v(h.n_qubits);
  for (auto& a : v.amps) a = cplx(gauss(rng), gauss(rng));
  v.normalize();

  std::vector<StateVector> basis;
  std::vector<double> alpha, beta;
  basis.push_back(v);
  double prev = std::numeric_limits<double>::infinity();

  for (int j = 0; j < max_iter && j < int(dim); ++j) {
    StateVector w = apply_hamiltonian(h, basis[j]);
    double a_j = inner(basis[j], w).real();
    alpha.push_back(a_j);
    // w -= alpha_j v_j + beta_{j-1} v_{j-1}, then reorthogonalize fully
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        cplx c = inner(b, w);
        for (std::size_t i = 0; i < dim; ++i) w.amps[i] -= c * b.amps[i];
      }
    double b_j = w.norm();

    // ground state of the tridiagonal projection
    int m = int(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
    double e0 = es.eigenvalues()(0);
    if (b_j < 1e-12 || std::abs(e0 - prev) < 1e-13) return e0;
    prev = e0;

    beta.push_back(b_j);
    for (auto& a : w.amps) a /= b_j;
    basis.push_back(std::move(w));
  }
  return prev;
}

}  // namespace

double exact_ground_energy(const QubitHamiltonian& h, int n_qubit_cap) {
  if (h.n_qubits > n_qubit_cap)
    throw ResourceError("exact solve: " + std::to_string(h.n_qubits) +
                        " qubits exceeds cap of " + std::to_string(n_qubit_cap));
  if (h.n_qubits <= 10) return dense_ground_energy(h);
  return lanczos_ground_energy(h);
}

}  // namespace adaptvqe
