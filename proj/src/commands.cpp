#include "pls/commands.hpp"

#include "pls/bounds.hpp"
#include "pls/estimators.hpp"
#include "pls/ingest.hpp"
#include "pls/krylov.hpp"
#include "pls/nipals.hpp"
#include "pls/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace pls::commands {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream file(path);
  if (!file) {
    throw IoError("cannot open for writing: " + path);
  }
  return file;
}

model::Dataset load_dataset(const std::string& path, const std::string& response,
                            std::optional<double> threshold, bool standardize) {
  const ingest::RawTable table = ingest::load_csv(path, response);
  if (standardize) {
    return ingest::preprocess(table, threshold);
  }
  // Center-only path: same filtering semantics, no unit-variance scaling.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < table.response.size(); ++i) {
    if (!threshold || table.response(i) < *threshold) {
      keep.push_back(i);
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(keep.size());
  const Eigen::Index d = table.features.cols();
  if (n < d + 2) {
    throw ingest::EmptyTable("fit: fewer than D + 2 rows after filtering");
  }
  Matrix x(n, d);
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) = table.features.row(keep[static_cast<size_t>(i)]);
    y(i) = table.response(keep[static_cast<size_t>(i)]);
  }
  x.rowwise() -= x.colwise().mean();
  y.array() -= y.mean();
  return model::Dataset{std::move(x), std::move(y), true, std::nullopt};
}

Vector load_eigenvalues(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw IoError("cannot open eigenvalues file: " + path);
  }
  std::vector<double> values;
  std::string token;
  while (std::getline(file, token)) {
    std::replace(token.begin(), token.end(), ',', ' ');
    std::istringstream stream(token);
    double v = 0.0;
    while (stream >> v) {
      values.push_back(v);
    }
  }
  if (values.empty()) {
    throw IoError("no eigenvalues in " + path);
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void check_record_invariants(const std::vector<ExperimentRecord>& rows) {
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.error) {
      continue;
    }
    if (r.ned > r.c_l + 1e-9) {
      throw Error("experiment record violates NED_L <= C_L at scenario " + r.scenario +
                  " seed " + std::to_string(r.seed) + " L " + std::to_string(r.l));
    }
    if (i > 0 && rows[i - 1].scenario == r.scenario && rows[i - 1].seed == r.seed &&
        !rows[i - 1].error) {
      if (r.ned > rows[i - 1].ned + 1e-9 || r.c_l > rows[i - 1].c_l + 1e-9) {
        throw Error("experiment record violates monotonicity at scenario " + r.scenario +
                    " seed " + std::to_string(r.seed) + " L " + std::to_string(r.l));
      }
    }
  }
}

void write_records(const std::string& path, const std::vector<ExperimentRecord>& rows) {
  auto file = open_out(path);
  file << "scenario,seed,l,ned,c_l,r2_pls,r2_pcr,m_distinct,error\n";
  for (const auto& r : rows) {
    if (r.error) {
      file << r.scenario << ',' << r.seed << ',' << r.l << ",,,,,," << r.error_msg << '\n';
    } else {
      file << r.scenario << ',' << r.seed << ',' << r.l << ',' << format_double(r.ned)
           << ',' << format_double(r.c_l) << ',' << format_double(r.r2_pls) << ','
           << format_double(r.r2_pcr) << ',' << r.m_distinct << ",\n";
    }
  }
}

void write_aggregate(const std::string& path, const std::vector<ExperimentRecord>& rows) {
  struct Acc {
    double ned = 0.0, c_l = 0.0, r2_pls = 0.0, r2_pcr = 0.0;
    int count = 0;
  };
  std::map<std::pair<std::string, int>, Acc> groups;
  for (const auto& r : rows) {
    if (r.error) {
      continue;
    }
    Acc& acc = groups[{r.scenario, r.l}];
    acc.ned += r.ned;
    acc.c_l += r.c_l;
    acc.r2_pls += r.r2_pls;
    acc.r2_pcr += r.r2_pcr;
    ++acc.count;
  }
  auto file = open_out(path);
  file << "scenario,l,mean_ned,mean_c_l,mean_r2_pls,mean_r2_pcr,seeds\n";
  for (const auto& [key, acc] : groups) {
    const double k = acc.count;
    file << key.first << ',' << key.second << ',' << format_double(acc.ned / k) << ','
         << format_double(acc.c_l / k) << ',' << format_double(acc.r2_pls / k) << ','
         << format_double(acc.r2_pcr / k) << ',' << acc.count << '\n';
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

int count_distinct(const Vector& lambdas) {
  std::vector<double> sorted(lambdas.data(), lambdas.data() + lambdas.size());
  std::sort(sorted.begin(), sorted.end());
  const double tol = 1e-8 * std::abs(sorted.back());
  int distinct = 1;
  for (size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] > tol) {
      ++distinct;
    }
  }
  return distinct;
}

void cmd_synth(const SynthOptions& opts) {
  synth::Scenario sc;
  if (opts.config_path) {
    std::ifstream config(*opts.config_path);
    if (!config) {
      throw IoError("cannot open scenario config: " + *opts.config_path);
    }
    std::ostringstream text;
    text << config.rdbuf();
    sc = synth::parse_scenario_config(text.str());
  } else {
    sc = synth::builtin_scenario(opts.scenario);
  }
  const synth::SyntheticProblem prob = synth::generate_problem(sc, opts.n, opts.seed);
  const Eigen::Index n = prob.dataset.n();
  const Eigen::Index d = prob.dataset.d();

  auto xfile = open_out(opts.out_prefix + "_X.csv");
  for (Eigen::Index j = 0; j < d; ++j) {
    xfile << (j ? "," : "") << 'x' << (j + 1);
  }
  xfile << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      xfile << (j ? "," : "") << format_double(prob.dataset.x(i, j));
    }
    xfile << '\n';
  }

  auto yfile = open_out(opts.out_prefix + "_y.csv");
  yfile << "y\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    yfile << format_double(prob.dataset.y(i)) << '\n';
  }

  auto xyfile = open_out(opts.out_prefix + "_xy.csv");
  for (Eigen::Index j = 0; j < d; ++j) {
    xyfile << 'x' << (j + 1) << ',';
  }
  xyfile << "y\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      xyfile << format_double(prob.dataset.x(i, j)) << ',';
    }
    xyfile << format_double(prob.dataset.y(i)) << '\n';
  }

  auto meta = open_out(opts.out_prefix + "_meta.txt");
  meta << "scenario = " << sc.id << '\n';
  meta << "n = " << n << '\n';
  meta << "d = " << d << '\n';
  meta << "seed = " << prob.seed << '\n';
  meta << "sigma_noise = " << format_double(prob.sigma_noise) << '\n';
  meta << "eigenvalues = ";
  for (Eigen::Index j = 0; j < prob.realized_eigenvalues.size(); ++j) {
    meta << (j ? "," : "") << format_double(prob.realized_eigenvalues(j));
  }
  meta << '\n';
}

void cmd_fit(const FitOptions& opts) {
  const model::Dataset data =
      load_dataset(opts.data_path, opts.response, opts.threshold, opts.standardize);
  const int d = static_cast<int>(data.d());
  const int l_max = opts.l_max > 0 ? std::min(opts.l_max, d) : d;

  std::vector<Vector> betas;
  std::vector<int> ls;
  if (opts.method == "ols") {
    betas.push_back(estimators::ols_fit(data));
    ls.push_back(d);
  } else if (opts.method == "pls") {
    const nipals::PlsFit fit = nipals::nipals_fit(data, l_max);
    for (int l = 1; l <= fit.l_done; ++l) {
      betas.push_back(fit.coefficient_path.at(l));
      ls.push_back(l);
    }
  } else if (opts.method == "pcr") {
    const estimators::PcrResult pcr = estimators::pcr_fit(data, l_max);
    for (int l = 1; l <= pcr.path.l_max(); ++l) {
      betas.push_back(pcr.path.at(l));
      ls.push_back(l);
    }
  } else {
    throw Error("cmd_fit: unknown method '" + opts.method + "'");
  }

  auto coef = open_out(opts.out_prefix + "_coefficients.csv");
  coef << "l";
  for (int j = 1; j <= d; ++j) {
    coef << ",b" << j;
  }
  coef << '\n';
  for (size_t i = 0; i < betas.size(); ++i) {
    coef << ls[i];
    for (int j = 0; j < d; ++j) {
      coef << ',' << format_double(betas[i](j));
    }
    coef << '\n';
  }

  auto summary = open_out(opts.out_prefix + "_summary.csv");
  summary << "l,r2,residual_norm\n";
  for (size_t i = 0; i < betas.size(); ++i) {
    summary << ls[i] << ',' << format_double(model::r2_score(data, betas[i])) << ','
            << format_double((data.y - data.x * betas[i]).norm()) << '\n';
  }
}

void cmd_bound(const BoundOptions& opts) {
  Vector lambdas;
  if (opts.eigenvalues_path) {
    lambdas = load_eigenvalues(*opts.eigenvalues_path);
  } else if (opts.data_path) {
    const model::Dataset data =
        load_dataset(*opts.data_path, opts.response, opts.threshold, opts.standardize);
    const auto [sxx, sxy] = model::covariance_pair(data);
    lambdas = numerics::sym_eig(sxx).eigenvalues;
  } else {
    throw Error("cmd_bound: need --data or --eigenvalues");
  }

  const bounds::MomentSet ms = bounds::moments(lambdas, opts.l_max);
  const bounds::BoundSeries series = bounds::bound_series(ms, opts.l_max);
  const bounds::ClosedFormBounds closed = bounds::closed_form_c1_c2(ms);

  auto file = open_out(opts.out_path);
  file << "# d = " << ms.d_count << '\n';
  file << "# cv = " << format_double(ms.cv) << '\n';
  file << "# gamma = " << format_double(ms.skewness) << '\n';
  file << "# kappa = " << format_double(ms.kurtosis) << '\n';
  file << "# C1_closed = " << format_double(closed.c1) << '\n';
  file << "# C2_closed = " << format_double(closed.c2) << '\n';
  if (opts.l_max >= 2 && !ms.degenerate) {
    const double c2_hankel = bounds::hankel_bound(ms, 2).c_l;
    file << "# C2_hankel = " << format_double(c2_hankel) << '\n';
    if (std::abs(c2_hankel - closed.c2) > 1e-9 * std::max(1.0, std::abs(c2_hankel))) {
      file << "# note: closed-form C2 disagrees with the Hankel value; "
              "the Hankel route is authoritative\n";
    }
  }
  file << "l,c_l,condition,clamped,carried_forward\n";
  for (int l = 1; l <= opts.l_max; ++l) {
    const size_t i = static_cast<size_t>(l) - 1;
    file << l << ',' << format_double(series.c_l_values[i]) << ','
         << format_double(series.hankel_condition[i]) << ','
         << (series.clamped[i] ? 1 : 0) << ','
         << (series.carried_forward[i] ? 1 : 0) << '\n';
  }
}

std::vector<ExperimentRecord> dataset_records(const model::Dataset& d,
                                              const std::string& name, int l_max) {
  const int dim = static_cast<int>(d.d());
  const int lmax = std::min(l_max, dim);
  const auto [sxx, sxy] = model::covariance_pair(d);
  const Vector beta_ols = estimators::ols_fit(d);
  const Vector lambdas = numerics::sym_eig(sxx).eigenvalues;
  const bounds::MomentSet ms = bounds::moments(lambdas, lmax);
  const bounds::BoundSeries series = bounds::bound_series(ms, lmax);
  const nipals::PlsFit fit = nipals::nipals_fit(d, lmax);
  const estimators::PcrResult pcr = estimators::pcr_fit(d, lmax);
  const int m_distinct = count_distinct(lambdas);

  std::vector<ExperimentRecord> rows;
  for (int l = 1; l <= lmax; ++l) {
    ExperimentRecord r;
    r.scenario = name;
    r.seed = 0;
    r.l = l;
    const Vector& beta_pls = fit.coefficient_path.at(std::min(l, fit.l_done));
    r.ned = bounds::ned(beta_pls, beta_ols, sxx);
    r.c_l = series.c_l_values[static_cast<size_t>(l) - 1];
    r.r2_pls = model::r2_score(d, beta_pls);
    r.r2_pcr = model::r2_score(d, pcr.path.at(std::min(l, pcr.path.l_max())));
    r.m_distinct = m_distinct;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentOptions& opts) {
  std::vector<std::uint64_t> seeds = opts.seeds;
  if (seeds.empty()) {
    for (int s = 1; s <= opts.seed_count; ++s) {
      seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }

  std::vector<ExperimentRecord> rows;
  for (int scenario_id : opts.scenarios) {
    const synth::Scenario sc = synth::builtin_scenario(scenario_id);
    const std::string name = "scenario" + std::to_string(scenario_id);
    for (std::uint64_t seed : seeds) {
      try {
        const synth::SyntheticProblem prob = synth::generate_problem(sc, opts.n, seed);
        const int dim = static_cast<int>(prob.true_beta.size());
        const int lmax = std::min(opts.l_max, dim);

        // Population side: the spectrum the bound is exact for.
        const Vector& lambdas = prob.realized_eigenvalues;
        const bounds::MomentSet ms = bounds::moments(lambdas, lmax);
        const bounds::BoundSeries series = bounds::bound_series(ms, lmax);
        const Vector pop_b = prob.sigma * prob.true_beta;
        const double ols_norm = prob.true_beta.dot(pop_b);
        const int m_distinct = count_distinct(lambdas);

        // Data side: R^2 curves for the sampled problem.
        const nipals::PlsFit fit = nipals::nipals_fit(prob.dataset, lmax);
        const estimators::PcrResult pcr = estimators::pcr_fit(prob.dataset, lmax);

        for (int l = 1; l <= lmax; ++l) {
          ExperimentRecord r;
          r.scenario = name;
          r.seed = seed;
          r.l = l;
          const Vector beta_l = krylov::restricted_ls(prob.sigma, pop_b, l);
          r.ned = bounds::sigma_norm_sq(beta_l - prob.true_beta, prob.sigma) / ols_norm;
          r.c_l = series.c_l_values[static_cast<size_t>(l) - 1];
          r.r2_pls =
              model::r2_score(prob.dataset, fit.coefficient_path.at(std::min(l, fit.l_done)));
          r.r2_pcr =
              model::r2_score(prob.dataset, pcr.path.at(std::min(l, pcr.path.l_max())));
          r.m_distinct = m_distinct;
          rows.push_back(std::move(r));
        }
      } catch (const std::exception& ex) {
        ExperimentRecord r;
        r.scenario = name;
        r.seed = seed;
        r.error = true;
        r.error_msg = ex.what();
        rows.push_back(std::move(r));
      }
    }
  }

  if (opts.data_path) {
    const model::Dataset data =
        load_dataset(*opts.data_path, opts.response, opts.threshold, opts.standardize);
    const auto extra = dataset_records(data, "dataset", opts.l_max);
    rows.insert(rows.end(), extra.begin(), extra.end());
  }

  std::sort(rows.begin(), rows.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
    return std::tie(a.scenario, a.seed, a.l) < std::tie(b.scenario, b.seed, b.l);
  });
  check_record_invariants(rows);
  return rows;
}

void cmd_experiment(const ExperimentOptions& opts) {
  const std::vector<ExperimentRecord> rows = run_experiment(opts);
  write_records(opts.out_prefix + "_records.csv", rows);
  write_aggregate(opts.out_prefix + "_aggregate.csv", rows);
}

}  // namespace pls::commands
