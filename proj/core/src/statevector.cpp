#include "adaptvqe/statevector.hpp"

#include <cmath>

#include "adaptvqe/errors.hpp"

namespace adaptvqe {

StateVector StateVector::basis_state(int n, std::uint64_t index) {
  StateVector s(n);
  s.amps.at(index) = cplx(1, 0);
  return s;
}

double StateVector::norm() const {
  double s = 0;
  for (const auto& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  double n = norm();
  if (n == 0) throw ValidationError("cannot normalize the zero vector");
  for (auto& a : amps) a /= n;
}

cplx inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw ValidationError("statevector dimension mismatch");
  cplx s(0);
  for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
  return s;
}

static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

StateVector apply_pauli_string(const PauliString& p, const StateVector& psi) {
  if ((std::size_t(1) << p.n_qubits) != psi.dim())
    throw ValidationError("Pauli string / statevector dimension mismatch");
  StateVector out(psi.n_qubits);
  const int ny = p.n_y() & 3;
  for (std::size_t b = 0; b < psi.dim(); ++b) {
    if (psi.amps[b] == cplx(0)) continue;
    int ph = (ny + 2 * (std::popcount(b & p.z) & 1)) & 3;
    out.amps[b ^ p.x] += kIPow[ph] * psi.amps[b];
  }
  return out;
}

StateVector apply_hamiltonian(const QubitHamiltonian& h, const StateVector& psi) {
  StateVector out(psi.n_qubits);
  for (const auto& term : h.terms) {
    const PauliString& p = term.string;
    const int ny = p.n_y() & 3;
    for (std::size_t b = 0; b < psi.dim(); ++b) {
      const cplx& a = psi.amps[b];
      if (a == cplx(0)) continue;
      int ph = (ny + 2 * (std::popcount(b & p.z) & 1)) & 3;
      out.amps[b ^ p.x] += term.coeff * kIPow[ph] * a;
    }
  }
  return out;
}

double expectation(const QubitHamiltonian& h, const StateVector& psi) {
  cplx e(0);
  for (const auto& term : h.terms) {
    const PauliString& p = term.string;
    const int ny = p.n_y() & 3;
    cplx t(0);
    for (std::size_t b = 0; b < psi.dim(); ++b) {
      const cplx& a = psi.amps[b];
      if (a == cplx(0)) continue;
      int ph = (ny + 2 * (std::popcount(b & p.z) & 1)) & 3;
      t += std::conj(psi.amps[b ^ p.x]) * kIPow[ph] * a;
    }
    e += term.coeff * t;
  }
  if (std::abs(e.imag()) > 1e-10)
    throw ValidationError("expectation value has non-negligible imaginary part");
  return e.real();
}

double expectation_with(const StateVector& h_psi, const StateVector& psi) {
  return inner(psi, h_psi).real();
}

double variance(const QubitHamiltonian& h, const StateVector& psi) {
  StateVector hpsi = apply_hamiltonian(h, psi);
  double e = inner(psi, hpsi).real();
  double e2 = inner(hpsi, hpsi).real();
  double v = e2 - e * e;
  return v;
}

}  // namespace adaptvqe
