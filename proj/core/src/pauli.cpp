#include "adaptvqe/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "adaptvqe/errors.hpp"

namespace adaptvqe {

void PauliString::set_letter(int q, char c) {
  std::uint64_t bit = std::uint64_t(1) << q;
  x &= ~bit;
  z &= ~bit;
  switch (c) {
    case 'I': break;
    case 'X': x |= bit; break;
    case 'Y': x |= bit; z |= bit; break;
    case 'Z': z |= bit; break;
    default: throw ValidationError(std::string("unknown Pauli letter '") + c + "'");
  }
}

std::string PauliString::to_string() const {
  std::string s;
  for (int q = 0; q < n_qubits; ++q) {
    char c = letter(q);
    if (c == 'I') continue;
    if (!s.empty()) s += ' ';
    s += c;
    s += std::to_string(q);
  }
  if (s.empty()) s = "I";
  return s;
}

bool pauli_strings_commute(const PauliString& a, const PauliString& b) {
  int sym = std::popcount(a.x & b.z) + std::popcount(a.z & b.x);
  return (sym & 1) == 0;
}

PauliProduct pauli_product(const PauliString& a, const PauliString& b) {
  PauliString r(a.n_qubits, a.x ^ b.x, a.z ^ b.z);
  // i^{nY(a)+nY(b)} (-1)^{|z_a & x_b|} = phase * i^{nY(r)}
  int ipow = a.n_y() + b.n_y() - r.n_y() + 2 * std::popcount(a.z & b.x);
  ipow = ((ipow % 4) + 4) % 4;
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {r, table[ipow]};
}

void QubitHamiltonian::normalize(double prune) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> acc;
  for (const auto& t : terms) acc[{t.string.x, t.string.z}] += t.coeff;
  terms.clear();
  for (const auto& [key, c] : acc) {
    if (std::abs(c) <= prune) continue;
    terms.push_back({c, PauliString(n_qubits, key.first, key.second)});
  }
}

}  // namespace adaptvqe
