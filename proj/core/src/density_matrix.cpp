#include "adaptvqe/density_matrix.hpp"

#include <cmath>

#include "adaptvqe/errors.hpp"

namespace adaptvqe {

DensityMatrix DensityMatrix::from_statevector(const StateVector& psi) {
  DensityMatrix rho(psi.n_qubits);
  Eigen::Map<const Eigen::VectorXcd> v(psi.amps.data(), psi.amps.size());
  rho.mat = v * v.adjoint();
  return rho;
}

DensityMatrix apply_element_density(const AnsatzElement& e, double theta,
                                    const DensityMatrix& rho) {
  const std::int64_t dim = rho.dim();
  DensityMatrix out(rho.n_qubits);
  StateVector col(rho.n_qubits);
  // U rho
  Eigen::MatrixXcd tmp(dim, dim);
  for (std::int64_t c = 0; c < dim; ++c) {
    for (std::int64_t r = 0; r < dim; ++r) col.amps[r] = rho.mat(r, c);
    StateVector applied = apply_element(e, theta, col);
    for (std::int64_t r = 0; r < dim; ++r) tmp(r, c) = applied.amps[r];
  }
  // (U rho) U+ = (U (U rho)+)+
  Eigen::MatrixXcd adj = tmp.adjoint();
  for (std::int64_t c = 0; c < dim; ++c) {
    for (std::int64_t r = 0; r < dim; ++r) col.amps[r] = adj(r, c);
    StateVector applied = apply_element(e, theta, col);
    for (std::int64_t r = 0; r < dim; ++r) adj(r, c) = applied.amps[r];
  }
  out.mat = adj.adjoint();
  return out;
}

DensityMatrix run_circuit_density(const AnsatzCircuit& circuit, const DensityMatrix& rho0) {
  DensityMatrix rho = rho0;
  for (const auto& entry : circuit.entries)
    rho = apply_element_density(entry.element, entry.theta, rho);
  return rho;
}

double expectation_density(const QubitHamiltonian& h, const DensityMatrix& rho) {
  // Tr[H rho] via Pauli action on columns of rho
  static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::int64_t dim = rho.dim();
  cplx e(0);
  for (const auto& term : h.terms) {
    const PauliString& p = term.string;
    const int ny = p.n_y() & 3;
    cplx t(0);
    for (std::int64_t b = 0; b < dim; ++b) {
      int ph = (ny + 2 * (std::popcount(std::uint64_t(b) & p.z) & 1)) & 3;
      // <b^x| P |b> = phase; Tr[P rho] = sum_b phase(b) rho(b, b^x)
      t += kIPow[ph] * rho.mat(b, std::int64_t(std::uint64_t(b) ^ p.x));
    }
    e += term.coeff * t;
  }
  if (std::abs(e.imag()) > 1e-8)
    throw ValidationError("density expectation has non-negligible imaginary part");
  return e.real();
}

namespace {

// Apply a single-qubit linear map given by its action on a 2x2 block.
template <typename BlockFn>
void transform_blocks(DensityMatrix& rho, int r, BlockFn&& fn) {
  const std::int64_t dim = rho.dim();
  const std::int64_t bit = std::int64_t(1) << r;
  for (std::int64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    for (std::int64_t j = 0; j < dim; ++j) {
      if (j & bit) continue;
      Eigen::Matrix2cd b;
      b << rho.mat(i, j), rho.mat(i, j | bit), rho.mat(i | bit, j), rho.mat(i | bit, j | bit);
      Eigen::Matrix2cd nb = fn(b);
      rho.mat(i, j) = nb(0, 0);
      rho.mat(i, j | bit) = nb(0, 1);
      rho.mat(i | bit, j) = nb(1, 0);
      rho.mat(i | bit, j | bit) = nb(1, 1);
    }
  }
}

Eigen::Matrix2cd pauli2(char letter) {
  Eigen::Matrix2cd m;
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw ValidationError("unknown Pauli letter");
  }
  return m;
}

void check01(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string(name) + " outside [0,1]");
}

}  // namespace

void apply_channel(const Channel& ch, DensityMatrix& rho) {
  if (std::holds_alternative<AmplitudeDamping>(ch)) {
    auto [gamma, r] = std::get<AmplitudeDamping>(ch);
    check01(gamma, "gamma");
    double s = std::sqrt(1.0 - gamma);
    transform_blocks(rho, r, [&](const Eigen::Matrix2cd& b) {
      Eigen::Matrix2cd nb;
      nb << b(0, 0) + gamma * b(1, 1), s * b(0, 1), s * b(1, 0), (1.0 - gamma) * b(1, 1);
      return nb;
    });
  } else if (std::holds_alternative<Dephasing>(ch)) {
    auto [pz, r] = std::get<Dephasing>(ch);
    check01(pz, "p_z");
    double f = 1.0 - 2.0 * pz;  // (1-p) rho + p Z rho Z
    transform_blocks(rho, r, [&](const Eigen::Matrix2cd& b) {
      Eigen::Matrix2cd nb = b;
      nb(0, 1) *= f;
      nb(1, 0) *= f;
      return nb;
    });
  } else if (std::holds_alternative<Depolarizing>(ch)) {
    auto [p, r] = std::get<Depolarizing>(ch);
    check01(p, "p");
    Eigen::Matrix2cd x = pauli2('X'), y = pauli2('Y'), z = pauli2('Z');
    transform_blocks(rho, r, [&](const Eigen::Matrix2cd& b) {
      return ((1.0 - p) * b + (p / 3.0) * (x * b * x + y * b * y + z * b * z)).eval();
    });
  } else if (std::holds_alternative<PauliMap>(ch)) {
    auto [letter, r] = std::get<PauliMap>(ch);
    Eigen::Matrix2cd pm = pauli2(letter);
    transform_blocks(rho, r, [&](const Eigen::Matrix2cd& b) { return (pm * b * pm).eval(); });
  } else {
    auto [r] = std::get<DampingDerivative>(ch);
    // dF = F(3/4) + R/4 with R[rho] = K1 rho K1+ - K2 rho K2+,
    // K1 = |0><1|, K2 = |1><1|
    transform_blocks(rho, r, [&](const Eigen::Matrix2cd& b) {
      Eigen::Matrix2cd nb;
      nb << b(0, 0) + 0.75 * b(1, 1) + 0.25 * b(1, 1), 0.5 * b(0, 1), 0.5 * b(1, 0),
          0.25 * b(1, 1) - 0.25 * b(1, 1);
      return nb;
    });
  }
}

std::vector<BranchOp> damping_derivative_branches() {
  Eigen::Matrix2cd k1, k2, ka, kb;
  // F(3/4) Kraus pair
  k1 << 1, 0, 0, 0.5;
  k2 << 0, std::sqrt(0.75), 0, 0;
  // R = Ka rho Ka+ - Kb rho Kb+
  ka << 0, 1, 0, 0;
  kb << 0, 0, 0, 1;
  return {{k1, 1.0}, {k2, 1.0}, {ka, 0.25}, {kb, -0.25}};
}

StateVector apply_one_qubit_op(const Eigen::Matrix2cd& k, int r, const StateVector& psi) {
  StateVector out(psi.n_qubits);
  const std::size_t bit = std::size_t(1) << r;
  for (std::size_t b = 0; b < psi.dim(); ++b) {
    if (b & bit) continue;
    cplx a0 = psi.amps[b], a1 = psi.amps[b | bit];
    out.amps[b] = k(0, 0) * a0 + k(0, 1) * a1;
    out.amps[b | bit] = k(1, 0) * a0 + k(1, 1) * a1;
  }
  return out;
}

}  // namespace adaptvqe
