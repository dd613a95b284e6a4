#include "adaptvqe/noise_analysis.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "adaptvqe/errors.hpp"

namespace adaptvqe {

std::string to_string(NoiseModel m) {
  switch (m) {
    case NoiseModel::damping: return "damping";
    case NoiseModel::dephasing: return "dephasing";
    case NoiseModel::depolarizing: return "depolarizing";
  }
  return "?";
}

double NoiseSpec::omega_z() const {
  if (t2_star_s <= 0) return 0.0;
  double inv_t1 = t1_s > 0 ? 1.0 / t1_s : 0.0;
  if (omega_z_main_text) return 2.0 / t2_star_s - inv_t1;
  return 1.0 / t2_star_s - 0.5 * inv_t1;
}

LayeredCircuit layer_circuit(const AnsatzCircuit& circuit, int n_qubits,
                             const CommutationRelation& rel, const GateSchedule& schedule) {
  LayeredCircuit lc;
  lc.n_qubits = n_qubits;
  lc.layers = decompose_into_layers(circuit, rel);
  lc.timing = cnot_accounting(lc.layers, n_qubits, schedule);
  return lc;
}

double noisy_energy(const QubitHamiltonian& h, const LayeredCircuit& lc,
                    const StateVector& psi0, NoiseModel model, double alpha) {
  if (lc.n_qubits > 10)
    throw ResourceError("density-matrix run limited to 10 qubits");
  DensityMatrix rho = DensityMatrix::from_statevector(psi0);
  for (std::size_t l = 0; l < lc.layers.size(); ++l) {
    for (const auto& entry : lc.layers[l].entries)
      rho = apply_element_density(entry.element, entry.theta, rho);
    double tau = lc.timing.tau[l];
    switch (model) {
      case NoiseModel::damping: {
        double gamma = 1.0 - std::exp(-alpha * tau);
        for (int r = 0; r < lc.n_qubits; ++r) apply_channel(AmplitudeDamping{gamma, r}, rho);
        break;
      }
      case NoiseModel::dephasing: {
        double pz = 0.5 * (1.0 - std::exp(-alpha * tau));
        for (int r = 0; r < lc.n_qubits; ++r) apply_channel(Dephasing{pz, r}, rho);
        break;
      }
      case NoiseModel::depolarizing: {
        for (int r = 0; r < lc.n_qubits; ++r)
          for (int rep = 0; rep < lc.timing.m[l][r]; ++rep)
            apply_channel(Depolarizing{alpha, r}, rho);
        break;
      }
    }
  }
  return expectation_density(h, rho);
}

namespace {

StateVector apply_layers_from(const LayeredCircuit& lc, std::size_t first, StateVector psi) {
  for (std::size_t l = first; l < lc.layers.size(); ++l)
    for (const auto& entry : lc.layers[l].entries)
      psi = apply_element(entry.element, entry.theta, psi);
  return psi;
}

Eigen::Matrix2cd pauli_op(InsertedMap m) {
  Eigen::Matrix2cd k;
  switch (m) {
    case InsertedMap::Z: k << 1, 0, 0, -1; break;
    case InsertedMap::X: k << 0, 1, 1, 0; break;
    case InsertedMap::Y: k << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: throw ValidationError("not a Pauli map");
  }
  return k;
}

double perturbed_from_prefix(const QubitHamiltonian& h, const LayeredCircuit& lc,
                             const StateVector& prefix, InsertedMap m, int r, int l) {
  if (m == InsertedMap::dF) {
    double e = 0;
    for (const auto& br : damping_derivative_branches()) {
      StateVector phi = apply_one_qubit_op(br.k, r, prefix);
      phi = apply_layers_from(lc, std::size_t(l) + 1, std::move(phi));
      StateVector hphi = apply_hamiltonian(h, phi);
      e += br.weight * inner(phi, hphi).real();
    }
    return e;
  }
  StateVector phi = apply_one_qubit_op(pauli_op(m), r, prefix);
  phi = apply_layers_from(lc, std::size_t(l) + 1, std::move(phi));
  return expectation(h, phi);
}

}  // namespace

double perturbed_expectation(const QubitHamiltonian& h, const LayeredCircuit& lc,
                             const StateVector& psi0, InsertedMap m, int r, int l,
                             int /*n_threads*/) {
  if (r < 0 || r >= lc.n_qubits) throw ValidationError("qubit index out of range");
  if (l < 0 || l >= int(lc.layers.size())) throw ValidationError("layer index out of range");
  StateVector prefix = psi0;
  for (int k = 0; k <= l; ++k)
    for (const auto& entry : lc.layers[k].entries)
      prefix = apply_element(entry.element, entry.theta, prefix);
  return perturbed_from_prefix(h, lc, prefix, m, r, l);
}

SusceptibilityResult susceptibility(const QubitHamiltonian& h, const LayeredCircuit& lc,
                                    const StateVector& psi0, int n_threads) {
  SusceptibilityResult res;
  const int big_l = int(lc.layers.size());
  const int n = lc.n_qubits;
  res.l_t = big_l;
  res.n_qubits = n;
  res.n_ii = lc.timing.n_ii;
  res.e0 = expectation(h, apply_layers_from(lc, 0, psi0));
  res.delta_e.assign(4, std::vector<std::vector<double>>(big_l, std::vector<double>(n, 0.0)));

  // prefix states after each layer
  std::vector<StateVector> prefix;
  prefix.reserve(big_l);
  StateVector cur = psi0;
  for (int l = 0; l < big_l; ++l) {
    for (const auto& entry : lc.layers[l].entries)
      cur = apply_element(entry.element, entry.theta, cur);
    prefix.push_back(cur);
  }

  const InsertedMap maps[4] = {InsertedMap::dF, InsertedMap::Z, InsertedMap::X, InsertedMap::Y};
  auto worker = [&](int l_begin, int l_end) {
    for (int l = l_begin; l < l_end; ++l)
      for (int r = 0; r < n; ++r)
        for (int mi = 0; mi < 4; ++mi)
          res.delta_e[mi][l][r] =
              perturbed_from_prefix(h, lc, prefix[l], maps[mi], r, l) - res.e0;
  };
  if (n_threads <= 1 || big_l <= 1) {
    worker(0, big_l);
  } else {
    int nt = std::min(n_threads, big_l);
    std::vector<std::thread> threads;
    int chunk = (big_l + nt - 1) / nt;
    for (int i = 0; i < nt; ++i)
      threads.emplace_back(worker, i * chunk, std::min(big_l, (i + 1) * chunk));
    for (auto& t : threads) t.join();
  }

  for (int l = 0; l < big_l; ++l) {
    double tau = lc.timing.tau[l];
    for (int r = 0; r < n; ++r) {
      res.chi_f += tau * res.delta_e[0][l][r];
      res.chi_c += 0.5 * tau * res.delta_e[1][l][r];
      res.chi_d += (lc.timing.m[l][r] / 3.0) *
                   (res.delta_e[1][l][r] + res.delta_e[2][l][r] + res.delta_e[3][l][r]);
    }
  }
  double ln = double(big_l) * double(n);
  res.de_damping = ln > 0 ? res.chi_f / ln : 0.0;
  res.de_dephasing = ln > 0 ? res.chi_c / ln : 0.0;
  res.de_depolarizing = res.n_ii > 0 ? res.chi_d / double(res.n_ii) : 0.0;
  return res;
}

FidelityRequirements fidelity_requirements(double chi_f, double chi_c, double chi_d,
                                           double target_ha) {
  FidelityRequirements req;
  req.t1_min_s = std::abs(chi_f) / target_ha;
  req.t2_star_min_s = std::abs(chi_c) / target_ha;
  if (std::abs(chi_d) == 0.0) {
    req.p_unbounded = true;
    req.p_max = std::numeric_limits<double>::infinity();
  } else {
    req.p_max = target_ha / std::abs(chi_d);
  }
  return req;
}

}  // namespace adaptvqe
