#ifndef PLS_COMMANDS_HPP
#define PLS_COMMANDS_HPP

#include "pls/model.hpp"
#include "pls/synth.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pls::commands {

struct SynthOptions {
  int scenario = 1;
  std::optional<std::string> config_path;  // overrides scenario id when set
  int n = 1000;
  std::uint64_t seed = 1;
  std::string out_prefix;
};

/// Writes <out>_X.csv, <out>_y.csv, a combined <out>_xy.csv, and a
/// <out>_meta.txt sidecar with seed, sigma_noise and realized eigenvalues.
void cmd_synth(const SynthOptions& opts);

struct FitOptions {
  std::string data_path;
  std::string response;
  std::string method = "pls";  // pls | ols | pcr
  int l_max = 0;               // 0: use D
  std::string out_prefix;
  std::optional<double> threshold;
  bool standardize = false;  // unit-variance scaling on top of centering
};

/// Writes <out>_coefficients.csv (one row per L) and <out>_summary.csv
/// (L, r2, residual_norm).
void cmd_fit(const FitOptions& opts);

struct BoundOptions {
  std::optional<std::string> data_path;  // eigenvalues from sym_eig of X^T X
  std::string response;
  std::optional<std::string> eigenvalues_path;  // one value per line
  int l_max = 10;
  std::string out_path;
  std::optional<double> threshold;
  bool standardize = false;
};

/// Writes a CSV of (L, C_L, condition, clamped, carried_forward) with the
/// moment statistics and closed-form C1/C2 in header comments.
void cmd_bound(const BoundOptions& opts);

struct ExperimentRecord {
  std::string scenario;
  std::uint64_t seed = 0;
  int l = 0;
  double ned = 0.0;
  double c_l = 0.0;
  double r2_pls = 0.0;
  double r2_pcr = 0.0;
  int m_distinct = 0;
  bool error = false;
  std::string error_msg;
};

struct ExperimentOptions {
  std::vector<int> scenarios;
  std::vector<std::uint64_t> seeds;  // empty: 1..seed_count
  int seed_count = 20;
  int n = 1000;
  int l_max = 10;
  std::string out_prefix;
  std::optional<std::string> data_path;  // external CSV as pseudo-scenario
  std::string response;
  std::optional<double> threshold;
  bool standardize = false;
};

/// Per-seed experiment rows: NED_L and C_L from the generated population
/// spectrum (where the bound is exact), R^2 curves from fits on the sampled
/// data. Per-seed failures become error-marked rows.
std::vector<ExperimentRecord> run_experiment(const ExperimentOptions& opts);

/// Runs the experiment and writes <out>_records.csv plus <out>_aggregate.csv
/// of per-(scenario, L) means.
void cmd_experiment(const ExperimentOptions& opts);

/// Rows for one external dataset: everything computed from the empirical
/// X^T X spectrum, where the moment bound again dominates exactly.
std::vector<ExperimentRecord> dataset_records(const model::Dataset& d,
                                              const std::string& name, int l_max);

/// Number of eigenvalues distinct at relative tolerance 1e-8 * lambda_max.
int count_distinct(const Vector& lambdas);

std::string format_double(double value);

}  // namespace pls::commands

#endif  // PLS_COMMANDS_HPP
