#include "adaptvqe/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "adaptvqe/errors.hpp"
#include "json.hpp"

namespace adaptvqe {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

long long to_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos;
    long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = section + "." + trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));

    if (key == "input.fcidump") cfg.fcidump_path = val;
    else if (key == "input.pauli") cfg.pauli_path = val;
    else if (key == "run.algorithm") {
      if (val == "all") cfg.all_algorithms = true;
      else cfg.run.algorithm = algorithm_from_string(val);
    } else if (key == "run.pool") cfg.run.pool_kind = pool_kind_from_string(val);
    else if (key == "run.relation") {
      if (val == "operator") cfg.run.relation = RelationTag::op;
      else if (val == "support") cfg.run.relation = RelationTag::support;
      else throw ConfigError("run.relation must be 'operator' or 'support'");
    } else if (key == "run.selection") {
      if (val == "gradient") cfg.run.selection = SelectionRule::gradient;
      else if (val == "energy") cfg.run.selection = SelectionRule::energy;
      else throw ConfigError("run.selection must be 'gradient' or 'energy'");
    } else if (key == "run.epsilon") cfg.run.epsilon = to_double(val, key);
    else if (key == "run.l_max") cfg.run.l_max = to_double(val, key);
    else if (key == "run.n_max") cfg.run.n_max = int(to_int(val, key));
    else if (key == "run.t_max") cfg.run.t_max = int(to_int(val, key));
    else if (key == "run.seed") cfg.run.seed = std::uint64_t(to_int(val, key));
    else if (key == "run.initial_subpool") cfg.run.initial_subpool_size = int(to_int(val, key));
    else if (key == "optimizer.grad_tol") cfg.run.optimizer.grad_tol = to_double(val, key);
    else if (key == "optimizer.max_iter") cfg.run.optimizer.max_iter = int(to_int(val, key));
    else if (key == "optimizer.rel_step_tol") cfg.run.optimizer.rel_step_tol = to_double(val, key);
    else if (key == "noise.enabled") cfg.noise_enabled = to_bool(val, key);
    else if (key == "noise.t1_s") cfg.noise.t1_s = to_double(val, key);
    else if (key == "noise.t2_star_s") cfg.noise.t2_star_s = to_double(val, key);
    else if (key == "noise.p") cfg.noise.p_depol = to_double(val, key);
    else if (key == "noise.omega_z") {
      if (val == "appendix") cfg.noise.omega_z_main_text = false;
      else if (val == "main") cfg.noise.omega_z_main_text = true;
      else throw ConfigError("noise.omega_z must be 'appendix' or 'main'");
    } else if (key == "layout.schedule") cfg.schedule_path = val;
    else if (key == "output.dir") cfg.output_dir = val;
    else if (key == "output.threads") cfg.threads = int(to_int(val, key));
    else if (key == "output.exact_cap") cfg.exact_cap = int(to_int(val, key));
    else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (cfg.fcidump_path.empty() == cfg.pauli_path.empty())
    throw ConfigError("config must set exactly one of input.fcidump / input.pauli");
  return cfg;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_experiment_config(ss.str());
}

std::string hamiltonian_hash(const QubitHamiltonian& h) {
  std::string canon = serialize_pauli_hamiltonian(h);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)hash);
  return buf;
}

namespace {

nlohmann::json element_to_json(const AnsatzElement& e) {
  nlohmann::json j;
  j["kind"] = to_string(e.kind);
  j["id"] = e.id;
  if (e.kind == ElementKind::pauli_rotation)
    j["string"] = e.pauli.to_string();
  else
    j["indices"] = e.indices;
  return j;
}

AnsatzElement element_from_json(const nlohmann::json& j, int n_qubits) {
  AnsatzElement e;
  e.n_qubits = n_qubits;
  e.id = j.value("id", -1);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "pauli_rotation") {
    e.kind = ElementKind::pauli_rotation;
    QubitHamiltonian tmp = parse_pauli_hamiltonian("1.0 " + j.at("string").get<std::string>());
    PauliString p = tmp.terms.at(0).string;
    p.n_qubits = n_qubits;
    e.pauli = p;
    e.support_mask = p.support();
  } else {
    if (kind == "fermionic_single") e.kind = ElementKind::fermionic_single;
    else if (kind == "fermionic_double") e.kind = ElementKind::fermionic_double;
    else if (kind == "qeb_single") e.kind = ElementKind::qeb_single;
    else if (kind == "qeb_double") e.kind = ElementKind::qeb_double;
    else throw ParseError("run record: unknown element kind '" + kind + "'");
    e.indices = j.at("indices").get<std::vector<int>>();
    for (int idx : e.indices) e.support_mask |= std::uint64_t(1) << idx;
  }
  return e;
}

nlohmann::json counters_to_json(const Counters& c) {
  return {{"loss_function_calls", c.loss_function_calls},
          {"loss_expectation_evals", c.loss_expectation_evals},
          {"optimizer_calls", c.optimizer_calls},
          {"optimizer_expectation_evals", c.optimizer_expectation_evals},
          {"subpools_searched", c.subpools_searched},
          {"searched_set_sizes", c.searched_set_sizes}};
}

}  // namespace

std::string run_record_to_json(const RunRecord& record, int n_qubits) {
  nlohmann::json j;
  j["n_qubits"] = n_qubits;
  j["algorithm"] = record.algorithm;
  j["pool"] = record.pool;
  j["relation"] = record.relation;
  j["selection"] = record.selection;
  j["seed"] = record.seed;
  j["initial_energy"] = record.initial_energy;
  if (record.reference_energy) j["reference_energy"] = *record.reference_energy;
  j["halt_reason"] = record.halt_reason;
  j["schedule_incomplete"] = record.schedule_incomplete;
  j["hamiltonian_hash"] = record.hamiltonian_hash;
  j["input_path"] = record.input_path;
  j["counters"] = counters_to_json(record.counters);
  j["iterations"] = nlohmann::json::array();
  for (const auto& it : record.iterations) {
    nlohmann::json ji;
    ji["t"] = it.t;
    ji["bound"] = it.bound;
    if (!std::isnan(it.delta)) ji["delta"] = it.delta;
    ji["n_params"] = it.n_params;
    ji["new_element_ids"] = it.new_element_ids;
    ji["parameters"] = it.parameters;
    ji["depth_element_layers"] = it.depth_element_layers;
    ji["depth_columns"] = it.depth_columns;
    ji["duration_s"] = it.duration_s;
    ji["n_ii"] = it.n_ii;
    ji["loss_calls"] = it.loss_calls;
    ji["loss_evals"] = it.loss_evals;
    ji["opt_calls"] = it.opt_calls;
    ji["opt_evals"] = it.opt_evals;
    ji["var_h"] = it.var_h;
    j["iterations"].push_back(ji);
  }
  j["final_circuit"] = nlohmann::json::array();
  for (const auto& entry : record.final_circuit.entries) {
    nlohmann::json je = element_to_json(entry.element);
    je["theta"] = entry.theta;
    je["iteration"] = entry.iteration;
    j["final_circuit"].push_back(je);
  }
  return j.dump(2);
}

LoadedRecord run_record_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("run record JSON: ") + e.what());
  }
  LoadedRecord out;
  out.n_qubits = j.at("n_qubits").get<int>();
  RunRecord& r = out.record;
  r.algorithm = j.value("algorithm", "");
  r.pool = j.value("pool", "");
  r.relation = j.value("relation", "support");
  r.selection = j.value("selection", "gradient");
  r.seed = j.value("seed", std::uint64_t(0));
  r.initial_energy = j.value("initial_energy", 0.0);
  if (j.contains("reference_energy")) r.reference_energy = j["reference_energy"].get<double>();
  r.halt_reason = j.value("halt_reason", "");
  r.schedule_incomplete = j.value("schedule_incomplete", false);
  r.hamiltonian_hash = j.value("hamiltonian_hash", "");
  r.input_path = j.value("input_path", "");
  if (j.contains("counters")) {
    const auto& c = j["counters"];
    r.counters.loss_function_calls = c.value("loss_function_calls", 0LL);
    r.counters.loss_expectation_evals = c.value("loss_expectation_evals", 0LL);
    r.counters.optimizer_calls = c.value("optimizer_calls", 0LL);
    r.counters.optimizer_expectation_evals = c.value("optimizer_expectation_evals", 0LL);
    if (c.contains("subpools_searched"))
      r.counters.subpools_searched = c["subpools_searched"].get<std::vector<int>>();
    if (c.contains("searched_set_sizes"))
      r.counters.searched_set_sizes = c["searched_set_sizes"].get<std::vector<long long>>();
  }
  for (const auto& ji : j.value("iterations", nlohmann::json::array())) {
    IterationRecord it;
    it.t = ji.at("t").get<int>();
    it.bound = ji.at("bound").get<double>();
    it.delta = ji.contains("delta") ? ji["delta"].get<double>() : std::nan("");
    it.n_params = ji.value("n_params", 0);
    it.new_element_ids = ji.value("new_element_ids", std::vector<int>{});
    it.parameters = ji.value("parameters", std::vector<double>{});
    it.depth_element_layers = ji.value("depth_element_layers", 0);
    it.depth_columns = ji.value("depth_columns", 0);
    it.duration_s = ji.value("duration_s", 0.0);
    it.n_ii = ji.value("n_ii", 0LL);
    it.loss_calls = ji.value("loss_calls", 0LL);
    it.loss_evals = ji.value("loss_evals", 0LL);
    it.opt_calls = ji.value("opt_calls", 0LL);
    it.opt_evals = ji.value("opt_evals", 0LL);
    it.var_h = ji.value("var_h", 0.0);
    r.iterations.push_back(std::move(it));
  }
  for (const auto& je : j.value("final_circuit", nlohmann::json::array())) {
    CircuitEntry entry;
    entry.element = element_from_json(je, out.n_qubits);
    entry.theta = je.value("theta", 0.0);
    entry.iteration = je.value("iteration", 0);
    r.final_circuit.entries.push_back(std::move(entry));
  }
  return out;
}

std::string iterations_csv(const RunRecord& record) {
  std::ostringstream out;
  out << "t,E_bound,Delta,params,depth_element_layers,depth_columns,duration_s,N_II,"
         "loss_calls,loss_evals,opt_calls,opt_evals,Var_H\n";
  for (const auto& it : record.iterations) {
    out << it.t << ',' << format17(it.bound) << ','
        << (std::isnan(it.delta) ? std::string() : format17(it.delta)) << ',' << it.n_params
        << ',' << it.depth_element_layers << ',' << it.depth_columns << ','
        << format17(it.duration_s) << ',' << it.n_ii << ',' << it.loss_calls << ','
        << it.loss_evals << ',' << it.opt_calls << ',' << it.opt_evals << ','
        << format17(it.var_h) << '\n';
  }
  return out.str();
}

std::string susceptibility_csv(const QubitHamiltonian& h, const RunRecord& record,
                               const StateVector& psi0, const CommutationRelation& rel,
                               const GateSchedule& schedule, int threads) {
  std::ostringstream out;
  out << "t,params,chi_F,chi_C,chi_D,L_t,N_II,depth_columns,duration_s\n";
  for (const auto& it : record.iterations) {
    AnsatzCircuit prefix;
    prefix.entries.assign(record.final_circuit.entries.begin(),
                          record.final_circuit.entries.begin() + it.n_params);
    AnsatzCircuit tuned = prefix;
    tuned.set_parameters(it.parameters);
    LayeredCircuit lc = layer_circuit(tuned, h.n_qubits, rel, schedule);
    SusceptibilityResult s = susceptibility(h, lc, psi0, threads);
    out << it.t << ',' << it.n_params << ',' << format17(s.chi_f) << ',' << format17(s.chi_c)
        << ',' << format17(s.chi_d) << ',' << s.l_t << ',' << s.n_ii << ','
        << lc.timing.depth_columns << ',' << format17(lc.timing.total_duration) << '\n';
  }
  return out.str();
}

std::string fidelity_report_json(const SusceptibilityResult& s) {
  FidelityRequirements req = fidelity_requirements(s.chi_f, s.chi_c, s.chi_d);
  nlohmann::json j;
  j["chi_F_ha_s"] = s.chi_f;
  j["chi_C_ha_s"] = s.chi_c;
  j["chi_D_ha"] = s.chi_d;
  j["target_ha"] = 1e-3;
  j["t1_min_s"] = req.t1_min_s;
  j["t2_star_min_s"] = req.t2_star_min_s;
  if (req.p_unbounded)
    j["p_max"] = "unbounded";
  else
    j["p_max"] = req.p_max;
  return j.dump(2);
}

std::string compare_runs(const std::vector<RunRecord>& records) {
  if (records.size() < 2) throw ValidationError("compare needs at least two records");
  for (const auto& r : records)
    if (r.hamiltonian_hash != records.front().hamiltonian_hash)
      throw ValidationError("records cover different Hamiltonians (hash mismatch)");

  struct Point {
    bool reached = false;
    long long evals = 0;
    int depth = 0;
    int params = 0;
    long long opt_calls = 0;
  };
  auto at_threshold = [](const RunRecord& r, double thr) {
    Point p;
    for (const auto& it : r.iterations) {
      if (!std::isnan(it.delta) && it.delta <= thr) {
        p.reached = true;
        p.evals = it.loss_evals + it.opt_evals;
        p.depth = it.depth_element_layers;
        p.params = it.n_params;
        p.opt_calls = it.opt_calls;
        break;
      }
    }
    return p;
  };

  std::ostringstream out;
  out << "threshold";
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::string tag = records[i].algorithm.empty() ? "rec" + std::to_string(i) : records[i].algorithm;
    out << ',' << tag << "_evals," << tag << "_depth," << tag << "_params," << tag
        << "_opt_calls";
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::string tag = records[i].algorithm.empty() ? "rec" + std::to_string(i) : records[i].algorithm;
    out << ',' << tag << "_evals_ratio," << tag << "_depth_ratio," << tag << "_params_ratio,"
        << tag << "_opt_calls_ratio";
  }
  out << '\n';
  for (int e = 1; e <= 9; ++e) {
    double thr = std::pow(10.0, -e);
    std::vector<Point> pts;
    for (const auto& r : records) pts.push_back(at_threshold(r, thr));
    out << format17(thr);
    for (const auto& p : pts) {
      if (p.reached)
        out << ',' << p.evals << ',' << p.depth << ',' << p.params << ',' << p.opt_calls;
      else
        out << ",,,,";
    }
    const Point& base = pts.front();
    for (const auto& p : pts) {
      if (p.reached && base.reached && base.evals > 0 && base.depth > 0 && base.params > 0 &&
          base.opt_calls > 0)
        out << ',' << format17(double(p.evals) / base.evals) << ','
            << format17(double(p.depth) / base.depth) << ','
            << format17(double(p.params) / base.params) << ','
            << format17(double(p.opt_calls) / base.opt_calls);
      else
        out << ",,,,";
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file: " + p.string());
  f << content;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  QubitHamiltonian h;
  StateVector psi0;
  std::string input_path;
  if (!config.fcidump_path.empty()) {
    FermionicIntegrals ints = parse_fcidump_file(config.fcidump_path);
    h = jordan_wigner(ints);
    psi0 = hartree_fock_state(h.n_qubits, ints.n_electrons);
    input_path = config.fcidump_path;
  } else {
    std::ifstream f(config.pauli_path);
    if (!f) throw ParseError("cannot open Pauli-sum file: " + config.pauli_path);
    std::stringstream ss;
    ss << f.rdbuf();
    h = parse_pauli_hamiltonian(ss.str());
    psi0 = hartree_fock_state(h.n_qubits, 0);
    input_path = config.pauli_path;
  }

  std::optional<double> reference;
  if (h.n_qubits <= config.exact_cap) reference = exact_ground_energy(h, config.exact_cap);

  GateSchedule schedule = default_gate_schedule();
  if (!config.schedule_path.empty()) {
    std::ifstream f(config.schedule_path);
    if (!f) throw ParseError("cannot open gate schedule: " + config.schedule_path);
    std::stringstream ss;
    ss << f.rdbuf();
    schedule = schedule_from_json(ss.str());
  }
  std::filesystem::create_directories(config.output_dir);
  std::string hash = hamiltonian_hash(h);

  std::vector<Algorithm> algs;
  if (config.all_algorithms)
    algs = {Algorithm::standard, Algorithm::explore, Algorithm::static_layered,
            Algorithm::dynamic_layered};
  else
    algs = {config.run.algorithm};

  std::vector<RunRecord> records;
  for (Algorithm alg : algs) {
    RunConfig rc = config.run;
    rc.algorithm = alg;
    RunRecord rec = run_adapt(h, psi0, rc, reference, &schedule);
    rec.hamiltonian_hash = hash;
    rec.input_path = input_path;
    std::string suffix = config.all_algorithms ? "_" + to_string(alg) : "";
    std::filesystem::path dir(config.output_dir);
    write_file(dir / ("run_record" + suffix + ".json"), run_record_to_json(rec, h.n_qubits));
    write_file(dir / ("iterations" + suffix + ".csv"), iterations_csv(rec));
    if (config.noise_enabled && !rec.schedule_incomplete && !rec.final_circuit.entries.empty()) {
      CommutationRelation rel = relation_from_tag(rc.relation);
      write_file(dir / ("susceptibility" + suffix + ".csv"),
                 susceptibility_csv(h, rec, psi0, rel, schedule, config.threads));
      LayeredCircuit lc = layer_circuit(rec.final_circuit, h.n_qubits, rel, schedule);
      SusceptibilityResult s = susceptibility(h, lc, psi0, config.threads);
      write_file(dir / ("fidelity" + suffix + ".json"), fidelity_report_json(s));
    }
    records.push_back(std::move(rec));
  }
  if (records.size() >= 2)
    write_file(std::filesystem::path(config.output_dir) / "comparison.csv",
               compare_runs(records));
  return records;
}

}  // namespace adaptvqe
