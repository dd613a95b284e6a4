#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace adaptvqe {

using cplx = std::complex<double>;

// Pauli string on up to 64 qubits, stored as X/Z bitmasks.
// Semantics: P = i^{n_Y} * X^x * Z^z with n_Y = |x & z|, so that every qubit
// carries I, X, Y or Z depending on its (x,z) bits. Qubit 0 is the least
// significant bit of the amplitude index.
struct PauliString {
  int n_qubits = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  PauliString() = default;
  PauliString(int n, std::uint64_t x_mask, std::uint64_t z_mask)
      : n_qubits(n), x(x_mask), z(z_mask) {}

  char letter(int q) const {
    bool bx = (x >> q) & 1, bz = (z >> q) & 1;
    if (bx && bz) return 'Y';
    if (bx) return 'X';
    if (bz) return 'Z';
    return 'I';
  }
  void set_letter(int q, char c);

  std::uint64_t support() const { return x | z; }
  int weight() const { return std::popcount(support()); }
  int n_y() const { return std::popcount(x & z); }
  bool is_identity() const { return (x | z) == 0; }

  bool operator==(const PauliString& o) const {
    return n_qubits == o.n_qubits && x == o.x && z == o.z;
  }
  bool operator<(const PauliString& o) const {
    return std::pair(x, z) < std::pair(o.x, o.z);
  }

  std::string to_string() const;  // e.g. "X0 Y2"
};

// True iff [P1, P2] = 0: the letters differ on an even number of qubits in
// the mutual support (symplectic inner product test).
bool pauli_strings_commute(const PauliString& a, const PauliString& b);

// P = phase * (a*b) with phase in {1, i, -1, -i}.
struct PauliProduct {
  PauliString string;
  cplx phase;
};
PauliProduct pauli_product(const PauliString& a, const PauliString& b);

struct PauliTerm {
  double coeff = 0.0;
  PauliString string;
};

// Hermitian qubit operator: real-weighted Pauli-string sum, canonicalized
// (strings sorted, duplicates merged, tiny coefficients pruned).
struct QubitHamiltonian {
  int n_qubits = 0;
  std::vector<PauliTerm> terms;

  QubitHamiltonian() = default;
  explicit QubitHamiltonian(int n) : n_qubits(n) {}

  // Merge duplicates, sort by (x,z), drop |c| < prune.
  void normalize(double prune = 0.0);
  std::size_t size() const { return terms.size(); }
};

}  // namespace adaptvqe
