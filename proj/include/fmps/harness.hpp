#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fmps/bounds.hpp"
#include "fmps/entropy.hpp"
#include "fmps/funcgrid.hpp"
#include "fmps/mps.hpp"

namespace fmps {

/// One sweep over (function, N) pairs. `functions` holds spec strings in the
/// `family:key=val,...` grammar; a per-function domain may ride along as
/// lo/hi keys (default [0, 1]).
struct SweepConfig {
  std::vector<std::string> functions;
  int n_min = 2;
  int n_max = 2;
  int n_step = 1;
  std::vector<Eigen::Index> chi_list = {2};
  double delta = 0.01;
  std::string output_path;
  std::uint64_t seed = 0;
  int dense_cap = 16;   // dense Schmidt spectra up to here, MPS bonds above
  int jobs = 1;
  std::string format = "csv";  // csv | json
  bool timings = false;        // keep runtime_ms empty so files are reproducible

  void validate() const;
  std::vector<int> n_values() const;
};

struct SweepRow {
  std::string function_id;
  int n_qubits = 0;
  Eigen::Index chi_max_exact = 0;
  double s_max = 0.0;
  int argmax_cut = 0;
  std::vector<double> fidelity;  // one entry per config chi
  double theorem1_bound = 0.0;
  bool theorem1_pass = false;
  double runtime_ms = 0.0;
  std::string error;  // empty on success; failures do not abort the sweep
};

/// Runs every (function, N) job on a small worker pool and returns rows
/// sorted by (function_id, N) so parallel and serial runs emit identical
/// files.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// `#fmps-v1 <columns>` header line followed by one row per (function, N).
std::string sweep_csv(const SweepConfig& config, const std::vector<SweepRow>& rows);
std::string sweep_json(const SweepConfig& config, const std::vector<SweepRow>& rows);

/// Writes CSV or the JSON mirror per config.format to config.output_path.
void write_sweep_output(const SweepConfig& config, const std::vector<SweepRow>& rows);

/// Versioned structured-text (JSON) persistence of an MPS. Decimal
/// serialization is exact: loading returns bit-identical cores.
void save_mps(const MatrixProductState& mps, const std::string& path);
MatrixProductState load_mps(const std::string& path);
std::string mps_to_text(const MatrixProductState& mps);
MatrixProductState mps_from_text(const std::string& text);

/// Theorem-1 entropy bound for a spec: exact log2(degree+1) for polynomial
/// families, the overlap-degree bound otherwise (infinite for the step
/// control).
double theorem1_bound_for(const FunctionSpec& spec, const Domain& domain, int n_qubits,
                          double delta);

/// Domain for a spec string: explicit lo/hi keys win, else [0, 1].
Domain domain_for(const FunctionSpec& spec);

struct ReportConfig {
  std::vector<std::string> functions;
  int n_min = 4;
  int n_max = 10;
  int n_step = 2;
  double delta = 0.01;
  std::uint64_t seed = 42;
  int trials = 200;
  std::vector<double> eps_ladder = {1e-2, 1e-4, 1e-6, 1e-8};
  int dense_cap = 16;
  int degree_cap = 64;
};

struct BoundsReport {
  std::string text;               // human-readable, one section per result
  std::vector<BoundReport> rows;  // machine-readable mirror
  bool all_sdr_satisfied = true;  // step-control rows never count against this
};

/// Evaluates every closed-form bound against sweep measurements.
/// Throws MissingData when the config selects nothing.
BoundsReport report_bounds(const ReportConfig& config);

std::string bounds_csv(const BoundsReport& report);

/// key = value file (# comments). Recognized keys: functions (';'-separated),
/// n_min, n_max, n_step, chi (','-separated), delta, seed, out, format,
/// dense_cap, jobs, timings.
SweepConfig load_config_file(const std::string& path);

}  // namespace fmps
