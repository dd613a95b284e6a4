#pragma once

#include <string>
#include <vector>

#include "adaptvqe/adapt.hpp"
#include "adaptvqe/hamiltonian.hpp"
#include "adaptvqe/noise_analysis.hpp"

namespace adaptvqe {

struct ExperimentConfig {
  std::string fcidump_path;  // exactly one of fcidump_path / pauli_path
  std::string pauli_path;
  RunConfig run;
  bool all_algorithms = false;
  bool noise_enabled = false;
  NoiseSpec noise;
  std::string schedule_path;  // optional gate-schedule JSON
  std::string output_dir = ".";
  int threads = 1;
  int exact_cap = 16;
};

// Flat key-value config with [section] headers; unknown keys rejected.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig parse_experiment_config_file(const std::string& path);

// FNV-1a over the canonical Pauli-sum serialization.
std::string hamiltonian_hash(const QubitHamiltonian& h);

std::string run_record_to_json(const RunRecord& record, int n_qubits);
struct LoadedRecord {
  RunRecord record;
  int n_qubits = 0;
};
LoadedRecord run_record_from_json(const std::string& text);

std::string iterations_csv(const RunRecord& record);
std::string susceptibility_csv(const QubitHamiltonian& h, const RunRecord& record,
                               const StateVector& psi0, const CommutationRelation& rel,
                               const GateSchedule& schedule, int threads = 1);
std::string fidelity_report_json(const SusceptibilityResult& s);

std::string compare_runs(const std::vector<RunRecord>& records);

// Orchestrates a full experiment; writes run_record[_<alg>].json,
// iterations[_<alg>].csv and optionally susceptibility/fidelity artifacts
// into config.output_dir. Returns the records.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

std::string format17(double v);

}  // namespace adaptvqe
