#include "adaptvqe/layout.hpp"

#include <algorithm>
#include <bit>

#include "adaptvqe/errors.hpp"
#include "json.hpp"

namespace adaptvqe {

namespace {

std::string kind_key(const AnsatzElement& e) {
  switch (e.kind) {
    case ElementKind::qeb_single: return "qeb_single";
    case ElementKind::qeb_double: return "qeb_double";
    case ElementKind::pauli_rotation: return "pauli_" + std::to_string(e.support_size());
    case ElementKind::fermionic_single: return "fermionic_single";
    case ElementKind::fermionic_double: return "fermionic_double";
  }
  return "?";
}

std::vector<std::vector<ScheduledGate>> pauli_rotation_columns(int q) {
  // basis singles | CNOT staircase down | Rz on slot 0 | staircase up | singles
  std::vector<std::vector<ScheduledGate>> cols;
  std::vector<ScheduledGate> singles;
  for (int s = 0; s < q; ++s) singles.push_back({false, s, 0});
  cols.push_back(singles);
  for (int s = q - 1; s >= 1; --s) cols.push_back({{true, s, s - 1}});
  cols.push_back({{false, 0, 0}});
  for (int s = 1; s <= q - 1; ++s) cols.push_back({{true, s, s - 1}});
  cols.push_back(singles);
  return cols;
}

}  // namespace

const std::vector<std::vector<ScheduledGate>>& GateSchedule::columns_for(
    const AnsatzElement& e) const {
  auto it = table.find(kind_key(e));
  if (it == table.end())
    throw ValidationError("gate schedule has no entry for element kind '" + kind_key(e) + "'");
  return it->second;
}

GateSchedule default_gate_schedule() {
  GateSchedule s;
  // 2-qubit excitation: 2 CNOTs plus single-qubit rotations
  s.table["qeb_single"] = {
      {{false, 0, 0}, {false, 1, 0}},
      {{true, 1, 0}},
      {{false, 0, 0}},
      {{true, 1, 0}},
      {{false, 0, 0}, {false, 1, 0}},
  };
  // 4-qubit excitation: 13 CNOTs (3 opening, 8 interleaved with rotations
  // on the lowest slot, 2 closing), control always the higher qubit.
  std::vector<std::vector<ScheduledGate>> d;
  d.push_back({{true, 1, 0}, {true, 3, 2}});
  d.push_back({{true, 2, 0}});
  const int mid_controls[8] = {3, 2, 3, 1, 3, 2, 3, 1};
  for (int c : mid_controls) {
    d.push_back({{false, 0, 0}});
    d.push_back({{true, c, 0}});
  }
  d.push_back({{false, 0, 0}});
  d.push_back({{true, 2, 0}});
  d.push_back({{true, 1, 0}});
  s.table["qeb_double"] = d;
  for (int q = 2; q <= 8; q += 2) s.table["pauli_" + std::to_string(q)] = pauli_rotation_columns(q);
  return s;
}

GateSchedule schedule_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("gate schedule JSON: ") + e.what());
  }
  GateSchedule s;
  if (j.contains("t1_ns")) s.times.t1 = j["t1_ns"].get<double>() * 1e-9;
  if (j.contains("t2_ns")) s.times.t2 = j["t2_ns"].get<double>() * 1e-9;
  if (!j.contains("kinds")) throw ParseError("gate schedule JSON: missing 'kinds'");
  for (auto& [key, cols] : j["kinds"].items()) {
    std::vector<std::vector<ScheduledGate>> out;
    for (auto& col : cols) {
      std::vector<ScheduledGate> c;
      for (auto& g : col) {
        ScheduledGate sg;
        std::string type = g.at("gate").get<std::string>();
        if (type == "cnot") {
          sg.is_cnot = true;
          sg.a = g.at("control").get<int>();
          sg.b = g.at("target").get<int>();
        } else if (type == "single") {
          sg.is_cnot = false;
          sg.a = g.at("qubit").get<int>();
        } else {
          throw ParseError("gate schedule JSON: unknown gate type '" + type + "'");
        }
        c.push_back(sg);
      }
      out.push_back(c);
    }
    s.table[key] = out;
  }
  return s;
}

std::string schedule_to_json(const GateSchedule& s) {
  nlohmann::json j;
  j["t1_ns"] = s.times.t1 * 1e9;
  j["t2_ns"] = s.times.t2 * 1e9;
  for (const auto& [key, cols] : s.table) {
    nlohmann::json jc = nlohmann::json::array();
    for (const auto& col : cols) {
      nlohmann::json jcol = nlohmann::json::array();
      for (const auto& g : col) {
        if (g.is_cnot)
          jcol.push_back({{"gate", "cnot"}, {"control", g.a}, {"target", g.b}});
        else
          jcol.push_back({{"gate", "single"}, {"qubit", g.a}});
      }
      jc.push_back(jcol);
    }
    j["kinds"][key] = jc;
  }
  return j.dump(2);
}

std::vector<Layer> decompose_into_layers(const AnsatzCircuit& circuit,
                                         const CommutationRelation& rel) {
  std::vector<Layer> layers;
  for (const auto& entry : circuit.entries) {
    // earliest layer after the last one holding a relation-violating element
    int blocked_after = -1;
    for (int l = int(layers.size()) - 1; l >= 0 && blocked_after < 0; --l)
      for (const auto& other : layers[l].entries)
        if (!rel.commutes(entry.element, other.element)) {
          blocked_after = l;
          break;
        }
    int slot = blocked_after + 1;
    if (slot == int(layers.size())) layers.push_back(Layer{slot, {}});
    layers[slot].entries.push_back(entry);
  }
  return layers;
}

std::vector<std::vector<ConcreteGate>> transpile_layer(const Layer& layer,
                                                       const GateSchedule& schedule) {
  std::vector<std::vector<ConcreteGate>> columns;
  for (const auto& entry : layer.entries) {
    const auto& cols = schedule.columns_for(entry.element);
    std::vector<int> support;
    for (int q = 0; q < entry.element.n_qubits; ++q)
      if ((entry.element.support_mask >> q) & 1) support.push_back(q);
    if (columns.size() < cols.size()) columns.resize(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& g : cols[c]) {
        ConcreteGate cg;
        cg.is_cnot = g.is_cnot;
        if (g.is_cnot) {
          cg.control = support.at(g.a);
          cg.target = support.at(g.b);
        } else {
          cg.q = support.at(g.a);
        }
        columns[c].push_back(cg);
      }
  }
  return columns;
}

double layer_duration(const std::vector<std::vector<ConcreteGate>>& columns,
                      const GateTimes& times) {
  double tau = 0;
  for (const auto& col : columns) {
    double longest = 0;
    for (const auto& g : col) longest = std::max(longest, g.is_cnot ? times.t2 : times.t1);
    tau += longest;
  }
  return tau;
}

LayerTiming cnot_accounting(const std::vector<Layer>& layers, int n_qubits,
                            const GateSchedule& schedule) {
  LayerTiming t;
  t.depth_element_layers = int(layers.size());
  for (const auto& layer : layers) {
    auto columns = transpile_layer(layer, schedule);
    t.depth_columns += int(columns.size());
    t.tau.push_back(layer_duration(columns, schedule.times));
    std::vector<int> m(n_qubits, 0);
    for (const auto& col : columns)
      for (const auto& g : col)
        if (g.is_cnot) {
          ++m[g.target];
          ++t.n_ii;
        }
    t.m.push_back(std::move(m));
  }
  for (double tau : t.tau) t.total_duration += tau;
  return t;
}

}  // namespace adaptvqe
