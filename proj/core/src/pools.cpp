#include "adaptvqe/pools.hpp"

#include <algorithm>
#include <bit>

#include "adaptvqe/errors.hpp"
#include "json.hpp"

namespace adaptvqe {

std::string to_string(PoolKind k) {
  switch (k) {
    case PoolKind::fermionic: return "fermionic";
    case PoolKind::qeb: return "qeb";
    case PoolKind::qubit: return "qubit";
  }
  return "?";
}

std::string to_string(ElementKind k) {
  switch (k) {
    case ElementKind::fermionic_single: return "fermionic_single";
    case ElementKind::fermionic_double: return "fermionic_double";
    case ElementKind::qeb_single: return "qeb_single";
    case ElementKind::qeb_double: return "qeb_double";
    case ElementKind::pauli_rotation: return "pauli_rotation";
  }
  return "?";
}

PoolKind pool_kind_from_string(const std::string& s) {
  if (s == "fermionic") return PoolKind::fermionic;
  if (s == "qeb") return PoolKind::qeb;
  if (s == "qubit") return PoolKind::qubit;
  throw ConfigError("unknown pool kind: " + s);
}

int AnsatzElement::support_size() const { return std::popcount(support_mask); }

std::string AnsatzElement::describe() const {
  std::string s = to_string(kind) + "(";
  if (kind == ElementKind::pauli_rotation) {
    s += pauli.to_string();
  } else {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(indices[i]);
    }
  }
  return s + ")";
}

namespace {

std::uint64_t mask_of(const std::vector<int>& idx) {
  std::uint64_t m = 0;
  for (int i : idx) m |= std::uint64_t(1) << i;
  return m;
}

void subsets_of_size(int n, int q, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick(q);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == q) {
      fn(pick);
      return;
    }
    for (int i = start; i <= n - (q - depth); ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

Pool build_pool(PoolKind kind, int n_qubits, std::vector<int> v_sizes) {
  if (n_qubits < 2) throw ValidationError("pool requires at least 2 qubits");
  std::sort(v_sizes.begin(), v_sizes.end());
  for (int q : v_sizes)
    if (q < 2 || q % 2 != 0) throw ValidationError("pool support sizes must be even and >= 2");

  Pool pool;
  pool.kind = kind;
  pool.n_qubits = n_qubits;
  pool.v_sizes = v_sizes;

  auto push = [&](AnsatzElement e) {
    e.n_qubits = n_qubits;
    e.id = int(pool.elements.size());
    pool.elements.push_back(std::move(e));
  };

  for (int q : v_sizes) {
    if (q > n_qubits) continue;
    if (kind == PoolKind::qubit) {
      // odd-Y strings over the {X,Y} alphabet on each q-qubit support
      subsets_of_size(n_qubits, q, [&](const std::vector<int>& sup) {
        for (std::uint64_t pattern = 0; pattern < (std::uint64_t(1) << q); ++pattern) {
          if ((std::popcount(pattern) & 1) == 0) continue;  // odd number of Y
          AnsatzElement e;
          e.kind = ElementKind::pauli_rotation;
          e.pauli = PauliString(n_qubits, 0, 0);
          for (int i = 0; i < q; ++i)
            e.pauli.set_letter(sup[i], ((pattern >> i) & 1) ? 'Y' : 'X');
          e.support_mask = e.pauli.support();
          push(std::move(e));
        }
      });
    } else if (q == 2) {
      subsets_of_size(n_qubits, 2, [&](const std::vector<int>& sup) {
        AnsatzElement e;
        e.kind = (kind == PoolKind::qeb) ? ElementKind::qeb_single : ElementKind::fermionic_single;
        e.indices = {sup[0], sup[1]};  // creator, annihilator
        e.support_mask = mask_of(e.indices);
        push(std::move(e));
      });
    } else if (q == 4) {
      // (k0,k1 | l0,l1): k0 the smallest index, l-pair any 2 of the other 3
      subsets_of_size(n_qubits, 4, [&](const std::vector<int>& sup) {
        int k0 = sup[0];
        const std::array<std::array<int, 3>, 3> splits = {{{sup[1], sup[2], sup[3]},
                                                           {sup[2], sup[1], sup[3]},
                                                           {sup[3], sup[1], sup[2]}}};
        for (const auto& sp : splits) {
          AnsatzElement e;
          e.kind = (kind == PoolKind::qeb) ? ElementKind::qeb_double : ElementKind::fermionic_double;
          e.indices = {k0, sp[0], sp[1], sp[2]};  // creators k0<k1, annihilators l0<l1
          e.support_mask = mask_of(e.indices);
          push(std::move(e));
        }
      });
    } else {
      throw ValidationError("excitation pools support only sizes {2,4}");
    }
  }

  // canonical order: (support size, index tuple / string letters), stable ids
  std::stable_sort(pool.elements.begin(), pool.elements.end(),
                   [](const AnsatzElement& a, const AnsatzElement& b) {
                     if (a.support_size() != b.support_size())
                       return a.support_size() < b.support_size();
                     if (a.kind == ElementKind::pauli_rotation)
                       return std::pair(a.pauli.x, a.pauli.z) < std::pair(b.pauli.x, b.pauli.z);
                     return a.indices < b.indices;
                   });
  for (std::size_t i = 0; i < pool.elements.size(); ++i) pool.elements[i].id = int(i);
  return pool;
}

static bool is_fermionic(ElementKind k) {
  return k == ElementKind::fermionic_single || k == ElementKind::fermionic_double;
}
static bool is_qeb(ElementKind k) {
  return k == ElementKind::qeb_single || k == ElementKind::qeb_double;
}

bool operator_commute(const AnsatzElement& a, const AnsatzElement& b) {
  if (a.kind == ElementKind::pauli_rotation && b.kind == ElementKind::pauli_rotation)
    return pauli_strings_commute(a.pauli, b.pauli);
  if ((is_qeb(a.kind) && is_qeb(b.kind)) || (is_fermionic(a.kind) && is_fermionic(b.kind))) {
    std::uint64_t inter = a.support_mask & b.support_mask;
    return inter == 0 || a.support_mask == b.support_mask;
  }
  throw ValidationError("operator commutation undefined across pool kinds");
}

bool support_commute(const AnsatzElement& a, const AnsatzElement& b) {
  return (a.support_mask & b.support_mask) == 0;
}

CommutationRelation operator_relation() {
  return {RelationTag::op,
          [](const AnsatzElement& a, const AnsatzElement& b) { return operator_commute(a, b); }};
}

CommutationRelation support_relation() {
  return {RelationTag::support,
          [](const AnsatzElement& a, const AnsatzElement& b) { return support_commute(a, b); }};
}

std::vector<int> noncommuting_set(const Pool& pool, const std::vector<int>& subset_ids, int a_id,
                                  const CommutationRelation& rel) {
  const AnsatzElement& a = pool.elements.at(a_id);
  std::vector<int> out;
  for (int id : subset_ids) {
    if (id == a_id) continue;
    if (!rel.commutes(a, pool.elements.at(id))) out.push_back(id);
  }
  return out;
}

namespace {
long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}
}  // namespace

long long noncommuting_set_cardinality(PoolKind kind, RelationTag relation, int q, int n_qubits,
                                       const std::vector<int>& v_sizes) {
  if (kind == PoolKind::fermionic)
    throw ValidationError("closed-form set cardinality unsupported for the fermionic pool");
  if (std::find(v_sizes.begin(), v_sizes.end(), q) == v_sizes.end())
    throw ValidationError("q must be one of the pool support sizes");

  long long total = 0;
  for (int p : v_sizes) {
    if (p > n_qubits) continue;
    long long weight;
    if (relation == RelationTag::support)
      weight = (kind == PoolKind::qeb) ? binom(p - 1, p / 2) : (1LL << (p - 1));
    else
      weight = (kind == PoolKind::qeb) ? binom(p - 1, p / 2) : (1LL << (p - 2));
    int a_max = std::min(p, q);
    if (relation == RelationTag::op && p == q) a_max = q - 1;  // same-support elements commute
    for (int a = 1; a <= a_max; ++a)
      total += weight * binom(q, a) * binom(n_qubits - q, p - a);
  }
  if (relation == RelationTag::support) total -= 1;  // the element itself
  return total;
}

int pool_distance(const AnsatzElement& a, const AnsatzElement& b, const CommutationRelation& rel) {
  if (a.id == b.id && a.support_mask == b.support_mask && a.kind == b.kind) return 0;
  return rel.commutes(a, b) ? 2 : 1;
}

bool is_local_minimum(const Pool& pool, const std::vector<int>& subset_ids, int a_id,
                      const std::map<int, double>& loss_values, const CommutationRelation& rel) {
  auto it = loss_values.find(a_id);
  if (it == loss_values.end()) throw ValidationError("missing loss value for element");
  double la = it->second;
  for (int id : noncommuting_set(pool, subset_ids, a_id, rel)) {
    auto jt = loss_values.find(id);
    if (jt == loss_values.end()) throw ValidationError("missing loss value for ball element");
    if (jt->second < la) return false;
  }
  return true;
}

std::string pool_to_json(const Pool& pool) {
  nlohmann::json j;
  j["kind"] = to_string(pool.kind);
  j["n_qubits"] = pool.n_qubits;
  j["v_sizes"] = pool.v_sizes;
  j["elements"] = nlohmann::json::array();
  for (const auto& e : pool.elements) {
    nlohmann::json je;
    je["id"] = e.id;
    je["kind"] = to_string(e.kind);
    if (e.kind == ElementKind::pauli_rotation)
      je["string"] = e.pauli.to_string();
    else
      je["indices"] = e.indices;
    std::vector<int> sup;
    for (int q = 0; q < pool.n_qubits; ++q)
      if ((e.support_mask >> q) & 1) sup.push_back(q);
    je["support"] = sup;
    j["elements"].push_back(je);
  }
  return j.dump(2);
}

}  // namespace adaptvqe
