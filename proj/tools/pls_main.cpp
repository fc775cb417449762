#include "pls/commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <exception>

int main(int argc, char** argv) {
  CLI::App app{"PLS regression, Krylov solvers, and eigenvalue-moment bounds"};
  app.require_subcommand(1);

  pls::commands::SynthOptions synth_opts;
  std::string synth_config;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic regression problem");
  synth->add_option("--scenario", synth_opts.scenario, "Built-in scenario id (1-5)");
  synth->add_option("--config", synth_config, "Scenario config file (overrides --scenario)");
  synth->add_option("--n", synth_opts.n, "Number of samples");
  synth->add_option("--seed", synth_opts.seed, "RNG seed");
  synth->add_option("--out", synth_opts.out_prefix, "Output file prefix")->required();

  pls::commands::FitOptions fit_opts;
  double fit_threshold = 0.0;
  auto* fit = app.add_subcommand("fit", "Fit PLS, OLS, or PCR coefficients");
  fit->add_option("--data", fit_opts.data_path, "Input CSV")->required();
  fit->add_option("--response", fit_opts.response, "Response column name")->required();
  fit->add_option("--method", fit_opts.method, "pls | ols | pcr");
  fit->add_option("--lmax", fit_opts.l_max, "Components to extract (default: D)");
  auto* fit_thresh_opt =
      fit->add_option("--threshold", fit_threshold, "Drop rows with response >= threshold");
  fit->add_flag("--standardize", fit_opts.standardize, "Scale columns to unit variance");
  fit->add_option("--out", fit_opts.out_prefix, "Output file prefix")->required();

  pls::commands::BoundOptions bound_opts;
  std::string bound_data, bound_eigs;
  double bound_threshold = 0.0;
  auto* bound = app.add_subcommand("bound", "Compute the moment-based bound C_L");
  bound->add_option("--data", bound_data, "Input CSV (spectrum from X^T X)");
  bound->add_option("--response", bound_opts.response, "Response column name");
  bound->add_option("--eigenvalues", bound_eigs, "File of eigenvalues, one per line");
  bound->add_option("--lmax", bound_opts.l_max, "Largest L");
  auto* bound_thresh_opt =
      bound->add_option("--threshold", bound_threshold, "Drop rows with response >= threshold");
  bound->add_flag("--standardize", bound_opts.standardize, "Scale columns to unit variance");
  bound->add_option("--out", bound_opts.out_path, "Output CSV path")->required();

  pls::commands::ExperimentOptions exp_opts;
  std::string exp_data;
  double exp_threshold = 0.0;
  auto* experiment =
      app.add_subcommand("experiment", "Reproduce the NED/C_L/R^2 experiment grid");
  experiment->add_option("--scenario", exp_opts.scenarios, "Scenario ids (repeatable)")
      ->required();
  experiment->add_option("--seeds", exp_opts.seed_count, "Number of seeds (1..N)");
  experiment->add_option("--seed-list", exp_opts.seeds, "Explicit seed list");
  experiment->add_option("--n", exp_opts.n, "Samples per problem");
  experiment->add_option("--lmax", exp_opts.l_max, "Largest component count");
  experiment->add_option("--data", exp_data, "External CSV as pseudo-scenario");
  experiment->add_option("--response", exp_opts.response, "Response column of --data");
  auto* exp_thresh_opt = experiment->add_option("--threshold", exp_threshold,
                                                "Drop rows with response >= threshold");
  experiment->add_flag("--standardize", exp_opts.standardize,
                       "Scale external data columns to unit variance");
  experiment->add_option("--out", exp_opts.out_prefix, "Output file prefix")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      if (!synth_config.empty()) {
        synth_opts.config_path = synth_config;
      }
      pls::commands::cmd_synth(synth_opts);
    } else if (fit->parsed()) {
      if (fit_thresh_opt->count() > 0) {
        fit_opts.threshold = fit_threshold;
      }
      pls::commands::cmd_fit(fit_opts);
    } else if (bound->parsed()) {
      if (!bound_data.empty()) {
        bound_opts.data_path = bound_data;
      }
      if (!bound_eigs.empty()) {
        bound_opts.eigenvalues_path = bound_eigs;
      }
      if (bound_thresh_opt->count() > 0) {
        bound_opts.threshold = bound_threshold;
      }
      pls::commands::cmd_bound(bound_opts);
    } else if (experiment->parsed()) {
      if (!exp_data.empty()) {
        exp_opts.data_path = exp_data;
      }
      if (exp_thresh_opt->count() > 0) {
        exp_opts.threshold = exp_threshold;
      }
      pls::commands::cmd_experiment(exp_opts);
    }
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
  return 0;
}
