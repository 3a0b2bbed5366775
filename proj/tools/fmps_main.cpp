// fmps command line: discretize SDR functions, encode them as MPS, measure
// entanglement, truncate, run sweeps, and evaluate the closed-form bounds.
//
// Exit codes: 0 success, 1 usage error, 2 data error,
//             3 bound violation (only with --strict).
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fmps/format.hpp"
#include "fmps/harness.hpp"

namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "csv";
  bool strict = false;
};

class BoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt_double(double x) { return fmps::format_double(x); }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw fmps::Error(fmps::ErrorCode::IoFailure, "cannot open " + out_path);
  out << text;
}

fmps::Domain parse_domain(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw fmps::Error(fmps::ErrorCode::ParseError, "domain must be lo:hi, got '" + text + "'");
  }
  try {
    return fmps::Domain{std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw fmps::Error(fmps::ErrorCode::ParseError, "domain must be lo:hi, got '" + text + "'");
  }
}

fmps::Domain resolve_domain(const fmps::FunctionSpec& spec, const std::string& domain_flag) {
  if (!domain_flag.empty()) return parse_domain(domain_flag);
  return fmps::domain_for(spec);
}

std::vector<std::string> split_function_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& entry : args) {
    std::stringstream ss(entry);
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (!item.empty()) out.push_back(item);
    }
  }
  return out;
}

json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

// --- discretize --------------------------------------------------------------

int cmd_discretize(const GlobalOptions& global, const std::string& function,
                   const std::string& domain_flag, int n) {
  const auto spec = fmps::FunctionSpec::parse(function);
  const auto domain = resolve_domain(spec, domain_flag);
  const auto state = fmps::discretize(spec, domain, n);

  if (global.format == "json") {
    json doc;
    doc["function_id"] = spec.id();
    doc["N"] = n;
    doc["domain"] = {domain.lo, domain.hi};
    doc["one_norm"] = fmps::one_norm(state);
    doc["values"] = json::array();
    for (Eigen::Index i = 0; i < state.values.size(); ++i) doc["values"].push_back(state.values[i]);
    emit(doc.dump(2) + "\n", global.out);
  } else {
    std::ostringstream out;
    out << "#fmps-v1 i,x,value\n";
    for (Eigen::Index i = 0; i < state.values.size(); ++i) {
      out << i << ',' << fmt_double(fmps::grid_point(domain, n, i)) << ','
          << fmt_double(state.values[i]) << '\n';
    }
    emit(out.str(), global.out);
  }
  return 0;
}

// --- encode ------------------------------------------------------------------

int cmd_encode(const GlobalOptions& global, const std::string& function,
               const std::string& domain_flag, int n, int degree, double rel_threshold) {
  const auto spec = fmps::FunctionSpec::parse(function);
  const auto domain = resolve_domain(spec, domain_flag);

  fmps::MatrixProductState mps;
  if (degree >= 0) {
    mps = fmps::poly_to_mps(fmps::fit_chebyshev(spec, domain, degree), n);
  } else {
    if (n > 24) {
      throw fmps::Error(fmps::ErrorCode::CapExceeded,
                        "exact factorization is dense and capped at 24 qubits; "
                        "use --degree for larger systems");
    }
    mps = fmps::from_state_vector(fmps::discretize(spec, domain, n), rel_threshold);
  }
  if (global.out.empty()) {
    throw fmps::Error(fmps::ErrorCode::IoFailure, "encode requires --out <file.mps>");
  }
  fmps::save_mps(mps, global.out);

  std::cout << "encoded " << spec.id() << " on [" << domain.lo << ", " << domain.hi
            << "], N=" << n << (degree >= 0 ? " via degree-" + std::to_string(degree) + " polynomial" : " exactly")
            << "; bond dims:";
  for (const auto d : mps.bond_dims()) std::cout << ' ' << d;
  std::cout << "\nwrote " << global.out << "\n";
  return 0;
}

// --- entropy -----------------------------------------------------------------

int cmd_entropy(const GlobalOptions& global, const std::string& in_path,
                const std::string& function, const std::string& domain_flag, int n,
                int dense_cap) {
  fmps::EntropyProfile profile;
  std::string id;
  int qubits = 0;
  if (!in_path.empty()) {
    const auto mps = fmps::load_mps(in_path);
    profile = fmps::entropy_profile(mps);
    id = in_path;
    qubits = mps.n_qubits();
  } else {
    if (function.empty()) {
      throw fmps::Error(fmps::ErrorCode::MissingData, "need --in or --function");
    }
    const auto spec = fmps::FunctionSpec::parse(function);
    const auto domain = resolve_domain(spec, domain_flag);
    const auto state = fmps::discretize(spec, domain, n);
    profile = n <= std::min(dense_cap, 20)
                  ? fmps::entropy_profile(state)
                  : fmps::entropy_profile(fmps::from_state_vector(state));
    id = spec.id();
    qubits = n;
  }

  if (global.format == "json") {
    json doc;
    doc["source"] = id;
    doc["N"] = qubits;
    doc["s_max"] = json_number(profile.s_max);
    doc["argmax_cut"] = profile.argmax_cut;
    doc["per_cut"] = json::array();
    for (const auto& c : profile.per_cut) {
      doc["per_cut"].push_back(
          {{"cut", c.cut}, {"entropy_bits", c.entropy_bits}, {"spectrum_len", c.spectrum_len}});
    }
    emit(doc.dump(2) + "\n", global.out);
  } else {
    std::ostringstream out;
    out << "#fmps-v1 cut,entropy_bits,spectrum_len\n";
    for (const auto& c : profile.per_cut) {
      out << c.cut << ',' << fmt_double(c.entropy_bits) << ',' << c.spectrum_len << '\n';
    }
    out << "# s_max " << fmt_double(profile.s_max) << " at cut " << profile.argmax_cut << '\n';
    emit(out.str(), global.out);
  }
  return 0;
}

// --- truncate ----------------------------------------------------------------

int cmd_truncate(const GlobalOptions& global, const std::string& in_path, long chi,
                 double sv_threshold) {
  const auto mps = fmps::load_mps(in_path);
  const auto result = fmps::truncate(mps, fmps::TruncationPolicy{chi, sv_threshold});
  const double fidelity = fmps::mps_inner(mps, result.mps);
  if (global.out.empty()) {
    throw fmps::Error(fmps::ErrorCode::IoFailure, "truncate requires --out <file.mps>");
  }
  fmps::save_mps(result.mps, global.out);

  if (global.format == "json") {
    json doc;
    doc["input"] = in_path;
    doc["chi_max"] = chi;
    doc["fidelity"] = json_number(fidelity);
    doc["discarded_weight"] = json_number(result.discarded_weight);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "truncated to chi <= " << chi << ": fidelity " << fmt_double(fidelity)
              << ", discarded weight " << fmt_double(result.discarded_weight) << "\nwrote "
              << global.out << "\n";
  }
  return 0;
}

// --- sweep -------------------------------------------------------------------

int cmd_sweep(const GlobalOptions& global, bool format_given, bool seed_given,
              fmps::SweepConfig config) {
  if (!global.out.empty()) config.output_path = global.out;
  if (format_given) config.format = global.format;
  if (seed_given) config.seed = global.seed;
  const auto rows = fmps::run_sweep(config);
  if (config.output_path.empty()) {
    std::cout << (config.format == "json" ? fmps::sweep_json(config, rows)
                                          : fmps::sweep_csv(config, rows));
  } else {
    fmps::write_sweep_output(config, rows);
    std::cout << "wrote " << rows.size() << " rows to " << config.output_path << "\n";
  }

  if (global.strict) {
    for (const auto& row : rows) {
      const auto spec = fmps::FunctionSpec::parse(row.function_id);
      if (!row.error.empty()) {
        throw fmps::Error(fmps::ErrorCode::MissingData,
                          row.function_id + " N=" + std::to_string(row.n_qubits) + ": " + row.error);
      }
      if (fmps::is_sdr(spec.family) && !row.theorem1_pass) {
        throw BoundViolation(row.function_id + " N=" + std::to_string(row.n_qubits) +
                             " exceeds its entropy bound");
      }
    }
  }
  return 0;
}

// --- bounds ------------------------------------------------------------------

int cmd_bounds(const GlobalOptions& global, const fmps::ReportConfig& config,
               const std::string& csv_path) {
  const auto report = fmps::report_bounds(config);
  emit(report.text, global.out);
  if (!csv_path.empty()) emit(fmps::bounds_csv(report), csv_path);
  if (global.strict && !report.all_sdr_satisfied) {
    throw BoundViolation("at least one bound check failed on an SDR family");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discretized-function MPS toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  GlobalOptions global;
  app.add_option("--seed", global.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--out", global.out, "output path (default: stdout)");
  app.add_option("--format", global.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_flag("--strict", global.strict, "exit 3 when a bound check fails");

  std::string function, domain_flag, in_path, config_path, csv_path;
  int n = 8;
  int degree = -1;
  long chi = 2;
  double sv_threshold = 0.0;
  double rel_threshold = 1e-12;
  int dense_cap = 16;

  auto* discretize_cmd = app.add_subcommand("discretize", "sample a function as a unit vector");
  discretize_cmd->add_option("--function", function, "spec, e.g. gaussian:mu=0,sigma=1")
      ->required();
  discretize_cmd->add_option("--domain", domain_flag, "interval lo:hi (default from spec)");
  discretize_cmd->add_option("-N,--qubits", n, "number of qubits")->required();

  auto* encode_cmd = app.add_subcommand("encode", "factorize a function into an MPS file");
  encode_cmd->add_option("--function", function)->required();
  encode_cmd->add_option("--domain", domain_flag);
  encode_cmd->add_option("-N,--qubits", n)->required();
  encode_cmd->add_option("--degree", degree,
                         "encode the degree-p interpolant instead of the exact state");
  encode_cmd->add_option("--rel-threshold", rel_threshold, "numerical-rank cutoff")
      ->capture_default_str();

  auto* entropy_cmd = app.add_subcommand("entropy", "per-cut entanglement entropies");
  entropy_cmd->add_option("--in", in_path, "MPS file to analyze");
  entropy_cmd->add_option("--function", function);
  entropy_cmd->add_option("--domain", domain_flag);
  entropy_cmd->add_option("-N,--qubits", n);
  entropy_cmd->add_option("--dense-cap", dense_cap)->capture_default_str();

  auto* truncate_cmd = app.add_subcommand("truncate", "cap the bond dimension of an MPS file");
  truncate_cmd->add_option("--in", in_path)->required();
  truncate_cmd->add_option("--chi", chi, "bond-dimension cap")->required();
  truncate_cmd->add_option("--sv-threshold", sv_threshold)->capture_default_str();

  fmps::SweepConfig sweep_config;
  std::vector<std::string> sweep_functions;
  std::string chi_flag;
  auto* sweep_cmd = app.add_subcommand("sweep", "run the (function, N) experiment grid");
  sweep_cmd->add_option("--functions", sweep_functions,
                        "function specs (repeatable or ';'-separated)");
  sweep_cmd->add_option("--n-min", sweep_config.n_min)->capture_default_str();
  sweep_cmd->add_option("--n-max", sweep_config.n_max)->capture_default_str();
  sweep_cmd->add_option("--n-step", sweep_config.n_step)->capture_default_str();
  sweep_cmd->add_option("--chi", chi_flag, "truncation ranks, e.g. 2,4");
  sweep_cmd->add_option("--delta", sweep_config.delta)->capture_default_str();
  sweep_cmd->add_option("--dense-cap", sweep_config.dense_cap)->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_config.jobs, "worker threads")->capture_default_str();
  sweep_cmd->add_flag("--timings", sweep_config.timings,
                      "fill runtime_ms (breaks byte-level reproducibility)");
  sweep_cmd->add_option("--config", config_path, "key = value file; flags win on conflict");

  fmps::ReportConfig report_config;
  std::vector<std::string> bound_functions;
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate every closed-form bound");
  bounds_cmd->add_option("--functions", bound_functions)->required();
  bounds_cmd->add_option("--n-min", report_config.n_min)->capture_default_str();
  bounds_cmd->add_option("--n-max", report_config.n_max)->capture_default_str();
  bounds_cmd->add_option("--n-step", report_config.n_step)->capture_default_str();
  bounds_cmd->add_option("--delta", report_config.delta)->capture_default_str();
  bounds_cmd->add_option("--trials", report_config.trials)->capture_default_str();
  bounds_cmd->add_option("--dense-cap", report_config.dense_cap)->capture_default_str();
  bounds_cmd->add_option("--csv", csv_path, "also write machine-readable rows here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (discretize_cmd->parsed()) return cmd_discretize(global, function, domain_flag, n);
    if (encode_cmd->parsed()) {
      return cmd_encode(global, function, domain_flag, n,
                        encode_cmd->count("--degree") ? degree : -1, rel_threshold);
    }
    if (entropy_cmd->parsed()) {
      return cmd_entropy(global, in_path, function, domain_flag, n, dense_cap);
    }
    if (truncate_cmd->parsed()) return cmd_truncate(global, in_path, chi, sv_threshold);
    if (sweep_cmd->parsed()) {
      fmps::SweepConfig config =
          config_path.empty() ? fmps::SweepConfig{} : fmps::load_config_file(config_path);
      if (!sweep_functions.empty()) {
        config.functions = split_function_args(sweep_functions);
      }
      if (sweep_cmd->count("--n-min")) config.n_min = sweep_config.n_min;
      if (sweep_cmd->count("--n-max")) config.n_max = sweep_config.n_max;
      if (sweep_cmd->count("--n-step")) config.n_step = sweep_config.n_step;
      if (sweep_cmd->count("--delta")) config.delta = sweep_config.delta;
      if (sweep_cmd->count("--dense-cap")) config.dense_cap = sweep_config.dense_cap;
      if (sweep_cmd->count("--jobs")) config.jobs = sweep_config.jobs;
      if (sweep_cmd->count("--timings")) config.timings = sweep_config.timings;
      if (!chi_flag.empty()) {
        config.chi_list.clear();
        std::stringstream ss(chi_flag);
        std::string item;
        while (std::getline(ss, item, ',')) {
          if (!item.empty()) config.chi_list.push_back(std::stol(item));
        }
      }
      return cmd_sweep(global, app.count("--format") > 0, app.count("--seed") > 0,
                       std::move(config));
    }
    if (bounds_cmd->parsed()) {
      report_config.functions = split_function_args(bound_functions);
      report_config.seed = global.seed;
      return cmd_bounds(global, report_config, csv_path);
    }
  } catch (const BoundViolation& e) {
    std::cerr << "bound violation: " << e.what() << "\n";
    return 3;
  } catch (const fmps::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == fmps::ErrorCode::ParseError ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
