#ifndef PLS_SYNTH_HPP
#define PLS_SYNTH_HPP

#include "pls/model.hpp"
#include "pls/rng.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace pls::synth {

struct EquallySpaced {
  double lo = 0.0;
  double hi = 0.0;
};

struct NormalCluster {
  double mean = 0.0;
  double sd = 0.0;
};

struct ClusterSpec {
  int count = 0;
  std::variant<EquallySpaced, NormalCluster> source;
};

struct Scenario {
  int id = 0;  // 1..5 built-in, 0 for config-defined
  std::vector<ClusterSpec> clusters;

  int d_total() const;
};

struct SyntheticProblem {
  model::Dataset dataset;
  Vector true_beta;
  double sigma_noise = 0.0;
  Vector realized_eigenvalues;  // in sampled order
  Matrix sigma;                 // population covariance the rows were drawn from
  std::uint64_t seed = 0;
};

/// The five built-in eigenvalue scenarios (D = 30).
Scenario builtin_scenario(int id);

/// Parses a scenario from key = value text: one `cluster = <kind> k=v ...`
/// line per cluster, kinds `equally_spaced` (lo, hi) and `normal` (mean, sd).
Scenario parse_scenario_config(const std::string& text);

/// Draws the scenario's eigenvalues. Equally spaced grids are deterministic;
/// normal clusters redraw values at or below the 1e-3 positivity floor.
Vector sample_eigenvalues(const Scenario& sc, rng::SplitMix64& gen);

/// Sigma = Q^T diag(lambda) Q with Q Haar-distributed via sign-fixed QR of a
/// Gaussian matrix.
Matrix covariance_from_eigenvalues(const Vector& lambdas, rng::SplitMix64& gen);

/// Full synthetic regression problem: X rows ~ N(0, Sigma), beta ~ U[0,1]^D,
/// noise sd 0.1 std(X beta); X and y centered before packing.
SyntheticProblem generate_problem(const Scenario& sc, int n, std::uint64_t seed);

}  // namespace pls::synth

#endif  // PLS_SYNTH_HPP
