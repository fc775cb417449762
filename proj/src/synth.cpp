#include "pls/synth.hpp"

#include "pls/numerics.hpp"

#include <cmath>
#include <sstream>

namespace pls::synth {

int Scenario::d_total() const {
  int total = 0;
  for (const auto& c : clusters) {
    total += c.count;
  }
  return total;
}

Scenario builtin_scenario(int id) {
  Scenario sc;
  sc.id = id;
  switch (id) {
    case 1:
      sc.clusters = {{30, EquallySpaced{2.5, 7.5}}};
      break;
    case 2:
      sc.clusters = {{30, NormalCluster{5.0, 0.1}}};
      break;
    case 3:
      sc.clusters = {{15, NormalCluster{2.5, 0.1}}, {15, NormalCluster{7.5, 0.1}}};
      break;
    case 4:
      sc.clusters = {{10, NormalCluster{2.5, 0.1}},
                     {10, NormalCluster{5.0, 0.1}},
                     {10, NormalCluster{7.5, 0.1}}};
      break;
    case 5:
      sc.clusters = {{10, NormalCluster{0.2, 0.1}},
                     {10, NormalCluster{5.0, 0.1}},
                     {10, NormalCluster{7.5, 0.1}}};
      break;
    default:
      throw Error("builtin_scenario: id must be 1..5");
  }
  return sc;
}

namespace {

double parse_value(const std::string& token, const std::string& key) {
  const auto pos = token.find('=');
  if (pos == std::string::npos || token.substr(0, pos) != key) {
    throw Error("scenario config: expected " + key + "=<value>, got '" + token + "'");
  }
  return std::stod(token.substr(pos + 1));
}

}  // namespace

Scenario parse_scenario_config(const std::string& text) {
  Scenario sc;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error("scenario config: expected key = value line: '" + line + "'");
    }
    std::istringstream keystream(line.substr(0, eq));
    std::string key;
    keystream >> key;
    std::istringstream rest(line.substr(eq + 1));
    if (key == "id") {
      int id = 0;
      rest >> id;
      sc.id = id;
    } else if (key == "cluster") {
      std::string kind;
      rest >> kind;
      std::string tok_count, tok_a, tok_b;
      rest >> tok_count >> tok_a >> tok_b;
      ClusterSpec spec;
      spec.count = static_cast<int>(parse_value(tok_count, "count"));
      if (kind == "equally_spaced") {
        spec.source = EquallySpaced{parse_value(tok_a, "lo"), parse_value(tok_b, "hi")};
      } else if (kind == "normal") {
        spec.source = NormalCluster{parse_value(tok_a, "mean"), parse_value(tok_b, "sd")};
      } else {
        throw Error("scenario config: unknown cluster kind '" + kind + "'");
      }
      sc.clusters.push_back(spec);
    } else {
      throw Error("scenario config: unknown key '" + key + "'");
    }
  }
  if (sc.clusters.empty()) {
    throw Error("scenario config: no clusters defined");
  }
  return sc;
}

Vector sample_eigenvalues(const Scenario& sc, rng::SplitMix64& gen) {
  const int d = sc.d_total();
  if (d < 1) {
    throw Error("sample_eigenvalues: scenario has no eigenvalues");
  }
  Vector lambdas(d);
  int at = 0;
  for (const auto& cluster : sc.clusters) {
    if (const auto* spaced = std::get_if<EquallySpaced>(&cluster.source)) {
      for (int i = 0; i < cluster.count; ++i) {
        const double frac =
            cluster.count == 1 ? 0.0 : static_cast<double>(i) / (cluster.count - 1);
        lambdas(at++) = spaced->lo + frac * (spaced->hi - spaced->lo);
      }
    } else {
      const auto& normal = std::get<NormalCluster>(cluster.source);
      for (int i = 0; i < cluster.count; ++i) {
        double value = 0.0;
        int attempts = 0;
        do {
          if (++attempts > 1000) {
            throw ResampleExhausted("sample_eigenvalues: positivity resampling cap hit");
          }
          value = gen.normal(normal.mean, normal.sd);
        } while (value <= 1e-3);
        lambdas(at++) = value;
      }
    }
  }
  return lambdas;
}

Matrix covariance_from_eigenvalues(const Vector& lambdas, rng::SplitMix64& gen) {
  const Eigen::Index d = lambdas.size();
  Matrix gauss(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      gauss(i, j) = gen.normal();
    }
  }
  const Matrix q = numerics::qr_orthonormal(gauss);
  Matrix sigma = q.transpose() * lambdas.asDiagonal() * q;
  return 0.5 * (sigma + sigma.transpose());
}

SyntheticProblem generate_problem(const Scenario& sc, int n, std::uint64_t seed) {
  const int d = sc.d_total();
  if (n < d + 1) {
    throw Error("generate_problem: need n >= D + 1");
  }
  rng::SplitMix64 gen(rng::mix_seed(seed, static_cast<std::uint64_t>(sc.id)));

  SyntheticProblem prob;
  prob.seed = seed;
  prob.realized_eigenvalues = sample_eigenvalues(sc, gen);
  prob.sigma = covariance_from_eigenvalues(prob.realized_eigenvalues, gen);

  const numerics::SymEig eig = numerics::sym_eig(prob.sigma);
  const Matrix sqrt_sigma = eig.eigenvectors *
                            eig.eigenvalues.cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                            eig.eigenvectors.transpose();

  prob.true_beta.resize(d);
  for (int j = 0; j < d; ++j) {
    prob.true_beta(j) = gen.uniform();
  }

  Matrix x(n, d);
  Vector z(d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      z(j) = gen.normal();
    }
    x.row(i) = (sqrt_sigma * z).transpose();
  }

  const Vector signal = x * prob.true_beta;
  const double signal_mean = signal.mean();
  const double signal_std =
      std::sqrt((signal.array() - signal_mean).square().mean());
  prob.sigma_noise = 0.1 * signal_std;

  Vector y(n);
  for (int i = 0; i < n; ++i) {
    y(i) = signal(i) + gen.normal(0.0, prob.sigma_noise);
  }

  x.rowwise() -= x.colwise().mean();
  y.array() -= y.mean();
  prob.dataset = model::Dataset{std::move(x), std::move(y), true, std::nullopt};
  return prob;
}

}  // namespace pls::synth
