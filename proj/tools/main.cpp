#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adaptvqe/errors.hpp"
#include "adaptvqe/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;
constexpr int kExitResource = 4;
constexpr int kExitOptimizer = 5;

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw adaptvqe::ParseError("cannot open file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int cmd_run(const std::string& config_path, int threads_override) {
  adaptvqe::ExperimentConfig cfg = adaptvqe::parse_experiment_config_file(config_path);
  if (threads_override > 0) cfg.threads = threads_override;
  else if (const char* env = std::getenv("ADAPTVQE_THREADS")) cfg.threads = std::atoi(env);
  auto records = adaptvqe::run_experiment(cfg);
  for (const auto& rec : records) {
    const auto* last = rec.iterations.empty() ? nullptr : &rec.iterations.back();
    std::cout << rec.algorithm << ": " << rec.iterations.size() << " iterations, halt="
              << rec.halt_reason;
    if (last) {
      std::cout << ", E = " << adaptvqe::format17(last->bound);
      if (rec.reference_energy)
        std::cout << ", Delta = " << adaptvqe::format17(last->bound - *rec.reference_energy);
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& record_paths, const std::string& output) {
  std::vector<adaptvqe::RunRecord> records;
  for (const auto& p : record_paths)
    records.push_back(adaptvqe::run_record_from_json(slurp(p)).record);
  std::string csv = adaptvqe::compare_runs(records);
  if (output.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw adaptvqe::ConfigError("cannot write: " + output);
    f << csv;
  }
  return 0;
}

int cmd_pool_info(const std::string& kind, int n) {
  using namespace adaptvqe;
  PoolKind pk = pool_kind_from_string(kind);
  Pool pool = build_pool(pk, n);
  std::cout << "pool " << kind << " on " << n << " qubits: " << pool.size() << " elements\n";
  if (pk != PoolKind::fermionic) {
    for (int q : pool.v_sizes) {
      if (q > n) continue;
      std::cout << "  q=" << q
                << "  |N_S| = " << noncommuting_set_cardinality(pk, RelationTag::support, q, n)
                << "  |N_O| = " << noncommuting_set_cardinality(pk, RelationTag::op, q, n)
                << '\n';
    }
  }
  std::cout << pool_to_json(pool) << '\n';
  return 0;
}

int cmd_susceptibility(const std::string& record_path, const std::string& out_dir, int threads) {
  using namespace adaptvqe;
  LoadedRecord loaded = run_record_from_json(slurp(record_path));
  const RunRecord& rec = loaded.record;
  if (rec.input_path.empty())
    throw ValidationError("record has no input path; cannot rebuild the Hamiltonian");

  QubitHamiltonian h;
  StateVector psi0;
  if (rec.input_path.size() > 5 &&
      rec.input_path.substr(rec.input_path.size() - 5) == ".pauli") {
    h = parse_pauli_hamiltonian(slurp(rec.input_path));
    psi0 = hartree_fock_state(h.n_qubits, 0);
  } else {
    FermionicIntegrals ints = parse_fcidump_file(rec.input_path);
    h = jordan_wigner(ints);
    psi0 = hartree_fock_state(h.n_qubits, ints.n_electrons);
  }
  if (!rec.hamiltonian_hash.empty() && hamiltonian_hash(h) != rec.hamiltonian_hash)
    throw ValidationError("input file no longer matches the record's Hamiltonian hash");

  CommutationRelation rel =
      rec.relation == "operator" ? operator_relation() : support_relation();
  GateSchedule schedule = default_gate_schedule();
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream f(std::filesystem::path(out_dir) / "susceptibility.csv", std::ios::binary);
    f << susceptibility_csv(h, rec, psi0, rel, schedule, threads);
  }
  LayeredCircuit lc = layer_circuit(rec.final_circuit, h.n_qubits, rel, schedule);
  SusceptibilityResult s = susceptibility(h, lc, psi0, threads);
  {
    std::ofstream f(std::filesystem::path(out_dir) / "fidelity.json", std::ios::binary);
    f << fidelity_report_json(s);
  }
  std::cout << "chi_F = " << format17(s.chi_f) << " Ha s\nchi_C = " << format17(s.chi_c)
            << " Ha s\nchi_D = " << format17(s.chi_d) << " Ha\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive VQE simulator and noise-susceptibility analyzer"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--threads", threads, "thread count (1 = bit-reproducible)");

  std::vector<std::string> record_paths;
  std::string compare_out;
  auto* cmp = app.add_subcommand("compare", "Compare two or more run records");
  cmp->add_option("records", record_paths, "run_record.json files")->expected(2, -1);
  cmp->add_option("-o,--output", compare_out, "output CSV path (default: stdout)");

  std::string pool_kind = "qeb";
  int pool_n = 4;
  auto* pi = app.add_subcommand("pool-info", "Pool sizes and set cardinalities");
  pi->add_option("--kind", pool_kind, "fermionic | qeb | qubit");
  pi->add_option("--n", pool_n, "qubit count");

  std::string sus_record, sus_out = ".";
  int sus_threads = 1;
  auto* sus = app.add_subcommand("susceptibility", "Noise susceptibility of a recorded run");
  sus->add_option("record", sus_record, "run_record.json")->required();
  sus->add_option("-o,--output-dir", sus_out, "output directory");
  sus->add_option("--threads", sus_threads, "thread count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, threads);
    if (*cmp) return cmd_compare(record_paths, compare_out);
    if (*pi) return cmd_pool_info(pool_kind, pool_n);
    if (*sus) return cmd_susceptibility(sus_record, sus_out, sus_threads);
  } catch (const adaptvqe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const adaptvqe::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const adaptvqe::ValidationError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitParse;
  } catch (const adaptvqe::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const adaptvqe::OptimizerError& e) {
    std::cerr << "optimizer error: " << e.what() << '\n';
    return kExitOptimizer;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
