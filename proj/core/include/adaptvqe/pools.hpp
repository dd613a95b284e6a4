#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "adaptvqe/pauli.hpp"

namespace adaptvqe {

enum class PoolKind { fermionic, qeb, qubit };
enum class ElementKind {
  fermionic_single,
  fermionic_double,
  qeb_single,
  qeb_double,
  pauli_rotation,
};

std::string to_string(PoolKind k);
std::string to_string(ElementKind k);
PoolKind pool_kind_from_string(const std::string& s);

// One generator T from a pool; exp(theta*T) is the ansatz element.
// Excitation kinds: indices = (creators..., annihilators...) with the
// canonical ordering k0 < k1, l0 < l1, k0 = smallest index overall.
struct AnsatzElement {
  ElementKind kind = ElementKind::qeb_single;
  int n_qubits = 0;
  std::vector<int> indices;  // excitation kinds only
  PauliString pauli;         // pauli_rotation kind only
  std::uint64_t support_mask = 0;
  int id = -1;

  int support_size() const;
  std::string describe() const;
};

struct Pool {
  PoolKind kind = PoolKind::qeb;
  int n_qubits = 0;
  std::vector<int> v_sizes;  // even support sizes, default {2,4}
  std::vector<AnsatzElement> elements;

  std::size_t size() const { return elements.size(); }
};

Pool build_pool(PoolKind kind, int n_qubits, std::vector<int> v_sizes = {2, 4});

enum class RelationTag { op, support, custom };

struct CommutationRelation {
  RelationTag tag = RelationTag::op;
  std::function<bool(const AnsatzElement&, const AnsatzElement&)> commutes;
};

CommutationRelation operator_relation();
CommutationRelation support_relation();

bool operator_commute(const AnsatzElement& a, const AnsatzElement& b);
bool support_commute(const AnsatzElement& a, const AnsatzElement& b);

// {B in subset : not commutes(a,B)}, excluding B.id == a.id.
std::vector<int> noncommuting_set(const Pool& pool, const std::vector<int>& subset_ids, int a_id,
                                  const CommutationRelation& rel);

// Closed-form |N_G(full pool, a)| for an element of support size q.
// Supported for QEB and qubit pools only.
long long noncommuting_set_cardinality(PoolKind kind, RelationTag relation, int q, int n_qubits,
                                       const std::vector<int>& v_sizes = {2, 4});

int pool_distance(const AnsatzElement& a, const AnsatzElement& b, const CommutationRelation& rel);

// True iff loss(a) = min over N_G(pool, a) u {a}. loss_values keyed by id.
bool is_local_minimum(const Pool& pool, const std::vector<int>& subset_ids, int a_id,
                      const std::map<int, double>& loss_values, const CommutationRelation& rel);

std::string pool_to_json(const Pool& pool);

}  // namespace adaptvqe
