#include "doctest.h"

#include <random>

#include "adaptvqe/pauli.hpp"
#include "adaptvqe/statevector.hpp"
#include "oracles.hpp"

using namespace adaptvqe;
using oracles::Mat;
using oracles::Vec;

namespace {
PauliString from_letters(const std::string& s) {
  PauliString p(int(s.size()), 0, 0);
  for (int q = 0; q < p.n_qubits; ++q) p.set_letter(q, s[q]);
  return p;
}
}  // namespace

TEST_CASE("letter round trip and counts") {
  PauliString p = from_letters("XYZI");
  CHECK(p.letter(0) == 'X');
  CHECK(p.letter(1) == 'Y');
  CHECK(p.letter(2) == 'Z');
  CHECK(p.letter(3) == 'I');
  CHECK(p.weight() == 3);
  CHECK(p.n_y() == 1);
  CHECK(p.support() == 0b0111);
  CHECK(p.to_string() == "X0 Y1 Z2");
  CHECK(from_letters("III").is_identity());
}

TEST_CASE("single-qubit products match the Pauli multiplication table") {
  const std::string letters = "IXYZ";
  for (char a : letters) {
    for (char b : letters) {
      PauliString pa = from_letters(std::string(1, a));
      PauliString pb = from_letters(std::string(1, b));
      PauliProduct pr = pauli_product(pa, pb);
      Mat lhs = oracles::pauli2(a) * oracles::pauli2(b);
      Mat rhs = pr.phase * oracles::dense_pauli(pr.string);
      CHECK((lhs - rhs).norm() == doctest::Approx(0).epsilon(1e-14));
    }
  }
}

TEST_CASE("random products and commutation agree with dense matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> mask(0, 31);
  for (int trial = 0; trial < 200; ++trial) {
    PauliString a(5, mask(rng), mask(rng));
    PauliString b(5, mask(rng), mask(rng));
    Mat ma = oracles::dense_pauli(a), mb = oracles::dense_pauli(b);
    PauliProduct pr = pauli_product(a, b);
    CHECK((ma * mb - pr.phase * oracles::dense_pauli(pr.string)).norm() < 1e-12);
    bool dense_commute = (ma * mb - mb * ma).norm() < 1e-12;
    CHECK(pauli_strings_commute(a, b) == dense_commute);
  }
}

TEST_CASE("apply_pauli_string matches the dense matrix") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::uint64_t> mask(0, 15);
  for (int trial = 0; trial < 50; ++trial) {
    PauliString p(4, mask(rng), mask(rng));
    StateVector psi = oracles::random_state(4, rng);
    Vec got = oracles::to_eigen(apply_pauli_string(p, psi));
    Vec want = oracles::dense_pauli(p) * oracles::to_eigen(psi);
    CHECK((got - want).norm() < 1e-13);
  }
}

TEST_CASE("apply_pauli_string on basis states") {
  // X0 |00> = |01>  (qubit 0 is the least significant bit)
  StateVector psi = StateVector::basis_state(2, 0);
  StateVector out = apply_pauli_string(from_letters("XI"), psi);
  CHECK(std::abs(out.amps[1] - cplx(1)) < 1e-15);
  // Y1 |00> = i|10>
  out = apply_pauli_string(from_letters("IY"), psi);
  CHECK(std::abs(out.amps[2] - cplx(0, 1)) < 1e-15);
  // Z0 |01> = -|01>
  out = apply_pauli_string(from_letters("ZI"), StateVector::basis_state(2, 1));
  CHECK(std::abs(out.amps[1] - cplx(-1)) < 1e-15);
}

TEST_CASE("hamiltonian normalize merges, sorts, prunes") {
  QubitHamiltonian h(2);
  h.terms.push_back({0.5, from_letters("XI")});
  h.terms.push_back({0.25, from_letters("XI")});
  h.terms.push_back({1e-14, from_letters("ZZ")});
  h.terms.push_back({-2.0, from_letters("II")});
  h.normalize(1e-12);
  REQUIRE(h.size() == 2);
  CHECK(h.terms[0].string.is_identity());
  CHECK(h.terms[0].coeff == doctest::Approx(-2.0));
  CHECK(h.terms[1].coeff == doctest::Approx(0.75));
}

TEST_CASE("expectation, apply_hamiltonian and variance match dense oracles") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    QubitHamiltonian h = oracles::random_hamiltonian(4, 8, rng);
    StateVector psi = oracles::random_state(4, rng);
    Mat m = oracles::dense_hamiltonian(h);
    Vec v = oracles::to_eigen(psi);
    CHECK((oracles::to_eigen(apply_hamiltonian(h, psi)) - m * v).norm() < 1e-12);
    double e_dense = (v.adjoint() * m * v)(0).real();
    CHECK(expectation(h, psi) == doctest::Approx(e_dense).epsilon(1e-11));
    double var_dense = (v.adjoint() * m * m * v)(0).real() - e_dense * e_dense;
    CHECK(variance(h, psi) == doctest::Approx(var_dense).epsilon(1e-9));
  }
}

TEST_CASE("inner product and eigenstate variance") {
  std::mt19937_64 rng(14);
  StateVector a = oracles::random_state(3, rng), b = oracles::random_state(3, rng);
  cplx dense = (oracles::to_eigen(a).adjoint() * oracles::to_eigen(b))(0);
  CHECK(std::abs(inner(a, b) - dense) < 1e-14);

  QubitHamiltonian h(2);
  h.terms.push_back({1.0, from_letters("ZZ")});
  StateVector basis = StateVector::basis_state(2, 3);
  CHECK(expectation(h, basis) == doctest::Approx(1.0));
  CHECK(variance(h, basis) == doctest::Approx(0.0).epsilon(1e-14));
}
