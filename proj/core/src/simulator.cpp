#include "adaptvqe/simulator.hpp"

#include <cmath>

#include "adaptvqe/errors.hpp"

namespace adaptvqe {

std::vector<double> AnsatzCircuit::parameters() const {
  std::vector<double> t;
  t.reserve(entries.size());
  for (const auto& e : entries) t.push_back(e.theta);
  return t;
}

void AnsatzCircuit::set_parameters(const std::vector<double>& theta) {
  if (theta.size() != entries.size())
    throw ValidationError("parameter count does not match element count");
  for (std::size_t i = 0; i < theta.size(); ++i) entries[i].theta = theta[i];
}

namespace {

// Sign of applying an ordered fermionic operator product to basis state |b>;
// ops given left-to-right, applied right-to-left. Returns 0 when annihilated.
int fermionic_apply_sign(std::uint64_t& b, const std::vector<std::pair<int, bool>>& ops) {
  int sign = 1;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    auto [idx, dagger] = *it;
    bool occ = (b >> idx) & 1;
    if (dagger == occ) return 0;
    std::uint64_t below = b & ((std::uint64_t(1) << idx) - 1);
    if (std::popcount(below) & 1) sign = -sign;
    b ^= std::uint64_t(1) << idx;
  }
  return sign;
}

// Each excitation generator is a direct sum of 2x2 plane rotations between
// basis pairs (b, b^mask) with T|b> = s|b'>, T|b'> = -s|b>.
struct ExcitationGeometry {
  std::uint64_t cre_mask = 0;  // must be unoccupied in b
  std::uint64_t ann_mask = 0;  // must be occupied in b
  bool fermionic = false;
  std::vector<std::pair<int, bool>> ops;  // for fermionic signs
};

ExcitationGeometry geometry(const AnsatzElement& e) {
  ExcitationGeometry g;
  switch (e.kind) {
    case ElementKind::qeb_single:
    case ElementKind::fermionic_single:
      g.cre_mask = std::uint64_t(1) << e.indices[0];
      g.ann_mask = std::uint64_t(1) << e.indices[1];
      g.fermionic = e.kind == ElementKind::fermionic_single;
      g.ops = {{e.indices[0], true}, {e.indices[1], false}};
      break;
    case ElementKind::qeb_double:
    case ElementKind::fermionic_double:
      g.cre_mask = (std::uint64_t(1) << e.indices[0]) | (std::uint64_t(1) << e.indices[1]);
      g.ann_mask = (std::uint64_t(1) << e.indices[2]) | (std::uint64_t(1) << e.indices[3]);
      g.fermionic = e.kind == ElementKind::fermionic_double;
      g.ops = {{e.indices[0], true},
               {e.indices[1], true},
               {e.indices[2], false},
               {e.indices[3], false}};
      break;
    default:
      throw ValidationError("not an excitation element");
  }
  return g;
}

int pair_sign(const ExcitationGeometry& g, std::uint64_t b) {
  if (!g.fermionic) return 1;
  std::uint64_t tmp = b;
  int s = fermionic_apply_sign(tmp, g.ops);
  return s;
}

template <typename Rot>
void for_each_pair(const ExcitationGeometry& g, std::size_t dim, Rot&& rot) {
  const std::uint64_t mask = g.cre_mask | g.ann_mask;
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & g.cre_mask) != 0) continue;
    if ((b & g.ann_mask) != g.ann_mask) continue;
    rot(b, b ^ mask, pair_sign(g, b));
  }
}

}  // namespace

StateVector apply_element(const AnsatzElement& e, double theta, const StateVector& psi) {
  if (e.n_qubits != psi.n_qubits)
    throw ValidationError("element / state qubit count mismatch");
  if (e.kind == ElementKind::pauli_rotation) {
    // exp(theta * iP) = cos(theta) I + sin(theta) iP
    StateVector p_psi = apply_pauli_string(e.pauli, psi);
    StateVector out(psi.n_qubits);
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx is(0, s);
    for (std::size_t i = 0; i < psi.dim(); ++i) out.amps[i] = c * psi.amps[i] + is * p_psi.amps[i];
    return out;
  }
  ExcitationGeometry g = geometry(e);
  StateVector out = psi;
  const double c = std::cos(theta), s = std::sin(theta);
  for_each_pair(g, psi.dim(), [&](std::uint64_t b, std::uint64_t bp, int sg) {
    cplx u = psi.amps[b], v = psi.amps[bp];
    out.amps[b] = c * u - sg * s * v;
    out.amps[bp] = sg * s * u + c * v;
  });
  return out;
}

StateVector apply_element_inverse(const AnsatzElement& e, double theta, const StateVector& psi) {
  return apply_element(e, -theta, psi);
}

StateVector apply_generator(const AnsatzElement& e, const StateVector& psi) {
  if (e.kind == ElementKind::pauli_rotation) {
    StateVector out = apply_pauli_string(e.pauli, psi);
    for (auto& a : out.amps) a *= cplx(0, 1);
    return out;
  }
  ExcitationGeometry g = geometry(e);
  StateVector out(psi.n_qubits);
  for_each_pair(g, psi.dim(), [&](std::uint64_t b, std::uint64_t bp, int sg) {
    out.amps[bp] += double(sg) * psi.amps[b];
    out.amps[b] -= double(sg) * psi.amps[bp];
  });
  return out;
}

StateVector run_circuit(const AnsatzCircuit& circuit, const StateVector& psi0) {
  StateVector psi = psi0;
  for (const auto& entry : circuit.entries) psi = apply_element(entry.element, entry.theta, psi);
  return psi;
}

double energy_landscape(const QubitHamiltonian& h, const AnsatzCircuit& circuit,
                        const StateVector& psi0) {
  return expectation(h, run_circuit(circuit, psi0));
}

double gradient_loss_with(const StateVector& h_psi, const StateVector& psi,
                          const AnsatzElement& e) {
  StateVector t_psi = apply_generator(e, psi);
  return -std::abs(2.0 * inner(h_psi, t_psi).real());
}

double gradient_loss(const QubitHamiltonian& h, const StateVector& psi, const AnsatzElement& e) {
  return gradient_loss_with(apply_hamiltonian(h, psi), psi, e);
}

std::vector<double> energy_gradient(const QubitHamiltonian& h, const AnsatzCircuit& circuit,
                                    const StateVector& psi0) {
  const std::size_t p = circuit.size();
  std::vector<double> grad(p, 0.0);
  StateVector psi = run_circuit(circuit, psi0);
  StateVector lambda = apply_hamiltonian(h, psi);
  for (std::size_t k = p; k-- > 0;) {
    const auto& entry = circuit.entries[k];
    StateVector t_psi = apply_generator(entry.element, psi);
    grad[k] = 2.0 * inner(lambda, t_psi).real();
    psi = apply_element_inverse(entry.element, entry.theta, psi);
    lambda = apply_element_inverse(entry.element, entry.theta, lambda);
  }
  return grad;
}

}  // namespace adaptvqe
