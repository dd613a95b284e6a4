#include <array>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "adaptvqe/errors.hpp"
#include "adaptvqe/hamiltonian.hpp"

namespace adaptvqe {

FermionicIntegrals parse_fcidump(std::istream& in) {
  std::string line;
  int lineno = 0;

  // Header: from the &FCI line through the line containing &END or a bare '/'.
  std::string header;
  bool header_done = false;
  while (!header_done && std::getline(in, line)) {
    ++lineno;
    header += line + "\n";
    if (lineno == 1) {
      if (line.find("&FCI") == std::string::npos && line.find("&fci") == std::string::npos)
        throw ParseError("FCIDUMP line 1: missing &FCI header");
    }
    if (line.find("&END") != std::string::npos || line.find("&end") != std::string::npos ||
        line.find('/') != std::string::npos)
      header_done = true;
  }
  if (!header_done) throw ParseError("FCIDUMP: unterminated header (no &END)");

  auto header_int = [&](const char* key) -> int {
    std::regex re(std::string(key) + R"(\s*=\s*(-?\d+))", std::regex::icase);
    std::smatch m;
    if (!std::regex_search(header, m, re))
      throw ParseError(std::string("FCIDUMP header: missing ") + key);
    return std::stoi(m[1]);
  };
  const int norb = header_int("NORB");
  const int nelec = header_int("NELEC");
  if (norb <= 0 || norb > 32) throw ValidationError("FCIDUMP: NORB out of range");
  if (nelec < 0 || nelec > 2 * norb) throw ValidationError("FCIDUMP: NELEC out of range");

  const int n = 2 * norb;  // spin orbitals, interleaved: spatial i -> 2i, 2i+1
  FermionicIntegrals ints;
  ints.n_spin_orbitals = n;
  ints.n_electrons = nelec;
  ints.one_body.assign(std::size_t(n) * n, 0.0);
  ints.two_body.assign(std::size_t(n) * n * n * n, 0.0);

  // Spatial-orbital accumulators (1-based file indices mapped to 0-based).
  std::vector<double> h_sp(std::size_t(norb) * norb, 0.0);
  std::vector<double> eri(std::size_t(norb) * norb * norb * norb, 0.0);
  auto eri_at = [&](int i, int j, int k, int l) -> double& {
    return eri[((std::size_t(i) * norb + j) * norb + k) * norb + l];
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    double v;
    int i, j, k, l;
    if (!(ss >> v)) {
      // skip blank lines
      std::string rest;
      if (!(std::istringstream(line) >> rest)) continue;
      throw ParseError("FCIDUMP line " + std::to_string(lineno) + ": malformed record");
    }
    if (!(ss >> i >> j >> k >> l))
      throw ParseError("FCIDUMP line " + std::to_string(lineno) + ": expected 4 indices");
    for (int idx : {i, j, k, l})
      if (idx < 0 || idx > norb)
        throw ValidationError("FCIDUMP line " + std::to_string(lineno) +
                              ": orbital index " + std::to_string(idx) + " out of range");
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      ints.core_energy = v;
    } else if (j == 0 && k == 0 && l == 0) {
      // orbital-energy record; not needed for the operator
    } else if (k == 0 && l == 0) {
      h_sp[std::size_t(i - 1) * norb + (j - 1)] = v;
      h_sp[std::size_t(j - 1) * norb + (i - 1)] = v;
    } else {
      // chemists' (ij|kl); apply 8-fold permutation symmetry once per tuple
      std::array<std::array<int, 4>, 8> perms = {{{i, j, k, l}, {j, i, k, l}, {i, j, l, k},
                                                  {j, i, l, k}, {k, l, i, j}, {l, k, i, j},
                                                  {k, l, j, i}, {l, k, j, i}}};
      std::set<std::array<int, 4>> uniq(perms.begin(), perms.end());
      for (const auto& p : uniq) eri_at(p[0] - 1, p[1] - 1, p[2] - 1, p[3] - 1) = v;
    }
  }

  for (int i = 0; i < norb; ++i)
    for (int j = 0; j < norb; ++j) {
      double v = h_sp[std::size_t(i) * norb + j];
      if (v == 0.0) continue;
      for (int s = 0; s < 2; ++s) ints.h1(2 * i + s, 2 * j + s) += v;
    }
  // 1/2 (ij|kl) a+_{i s} a+_{k t} a_{l t} a_{j s}
  for (int i = 0; i < norb; ++i)
    for (int j = 0; j < norb; ++j)
      for (int k = 0; k < norb; ++k)
        for (int l = 0; l < norb; ++l) {
          double v = eri_at(i, j, k, l);
          if (v == 0.0) continue;
          for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
              ints.h2(2 * i + s, 2 * k + t, 2 * l + t, 2 * j + s) += 0.5 * v;
        }
  return ints;
}

FermionicIntegrals parse_fcidump_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open FCIDUMP file: " + path);
  return parse_fcidump(f);
}

QubitHamiltonian parse_pauli_hamiltonian(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int max_q = -1;
  std::vector<std::pair<double, std::vector<std::pair<char, int>>>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double c;
    if (!(ss >> c)) {
      std::string tok;
      if (std::istringstream(line) >> tok)
        throw ParseError("Pauli sum line " + std::to_string(lineno) + ": expected coefficient");
      continue;
    }
    std::vector<std::pair<char, int>> ops;
    std::string tok;
    while (ss >> tok) {
      if (tok == "I") continue;
      char p = tok[0];
      if (p != 'X' && p != 'Y' && p != 'Z')
        throw ParseError("Pauli sum line " + std::to_string(lineno) + ": unknown letter in '" +
                         tok + "'");
      std::size_t pos = 0;
      int q;
      try {
        q = std::stoi(tok.substr(1), &pos);
      } catch (const std::exception&) {
        throw ParseError("Pauli sum line " + std::to_string(lineno) + ": bad qubit index in '" +
                         tok + "'");
      }
      if (pos != tok.size() - 1 || q < 0)
        throw ParseError("Pauli sum line " + std::to_string(lineno) + ": bad qubit index in '" +
                         tok + "'");
      ops.emplace_back(p, q);
      max_q = std::max(max_q, q);
    }
    rows.emplace_back(c, std::move(ops));
  }
  QubitHamiltonian h(max_q + 1);
  for (const auto& [c, ops] : rows) {
    PauliString p(h.n_qubits, 0, 0);
    for (auto [letter, q] : ops) {
      if (p.letter(q) != 'I')
        throw ParseError("duplicate qubit index within one Pauli term");
      p.set_letter(q, letter);
    }
    h.terms.push_back({c, p});
  }
  h.normalize();
  return h;
}

std::string serialize_pauli_hamiltonian(const QubitHamiltonian& h) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : h.terms) {
    out << t.coeff;
    if (!t.string.is_identity()) out << ' ' << t.string.to_string();
    out << '\n';
  }
  return out.str();
}

}  // namespace adaptvqe
