#include <cmath>
#include <map>

#include "adaptvqe/errors.hpp"
#include "adaptvqe/hamiltonian.hpp"

namespace adaptvqe {

namespace {

using WeightedPauli = std::pair<PauliString, cplx>;
using OpSum = std::vector<WeightedPauli>;

// a+_p = (X_p - iY_p)/2 * Z_{q<p},  a_p = (X_p + iY_p)/2 * Z_{q<p}
OpSum ladder(int n, int p, bool dagger) {
  std::uint64_t chain = (std::uint64_t(1) << p) - 1;
  std::uint64_t bit = std::uint64_t(1) << p;
  PauliString xs(n, bit, chain);
  PauliString ys(n, bit, chain | bit);
  cplx yc = dagger ? cplx(0, -0.5) : cplx(0, 0.5);
  return {{xs, cplx(0.5, 0)}, {ys, yc}};
}

OpSum product(const OpSum& a, const OpSum& b) {
  OpSum out;
  out.reserve(a.size() * b.size());
  for (const auto& [pa, ca] : a)
    for (const auto& [pb, cb] : b) {
      auto pr = pauli_product(pa, pb);
      out.push_back({pr.string, ca * cb * pr.phase});
    }
  return out;
}

}  // namespace

QubitHamiltonian jordan_wigner(const FermionicIntegrals& ints) {
  const int n = ints.n_spin_orbitals;
  std::map<std::pair<std::uint64_t, std::uint64_t>, cplx> acc;
  auto add = [&](const OpSum& ops, double coeff) {
    for (const auto& [p, c] : ops) acc[{p.x, p.z}] += coeff * c;
  };

  std::vector<OpSum> cre(n), ann(n);
  for (int p = 0; p < n; ++p) {
    cre[p] = ladder(n, p, true);
    ann[p] = ladder(n, p, false);
  }

  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      double v = ints.h1(p, q);
      if (v == 0.0) continue;
      add(product(cre[p], ann[q]), v);
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (q == p) continue;  // a+_p a+_p = 0
      OpSum left = product(cre[p], cre[q]);
      for (int r = 0; r < n; ++r) {
        bool any = false;
        for (int s = 0; s < n && !any; ++s) any = ints.h2(p, q, r, s) != 0.0;
        if (!any) continue;
        OpSum three = product(left, ann[r]);
        for (int s = 0; s < n; ++s) {
          double v = ints.h2(p, q, r, s);
          if (v == 0.0) continue;
          add(product(three, ann[s]), v);
        }
      }
    }

  QubitHamiltonian h(n);
  for (const auto& [key, c] : acc) {
    if (std::abs(c.imag()) > 1e-9)
      throw ValidationError("Jordan-Wigner result not Hermitian: complex coefficient");
    h.terms.push_back({c.real(), PauliString(n, key.first, key.second)});
  }
  h.terms.push_back({ints.core_energy, PauliString(n, 0, 0)});
  h.normalize(1e-12);
  return h;
}

}  // namespace adaptvqe
