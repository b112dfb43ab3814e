#include "ganova/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

namespace ganova {

namespace {

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

void write_table(const std::string& path, const std::string& value_column,
                 const std::vector<double>& lambdas, const std::vector<double>& values,
                 const std::vector<std::string>& term_labels, const Eigen::MatrixXd& gsi) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << "lambda," << value_column;
  for (const auto& label : term_labels) out << ',' << label;
  out << '\n';
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    out << format_double(lambdas[i]) << ',' << format_double(values[i]);
    for (Eigen::Index t = 0; t < gsi.cols(); ++t)
      out << ',' << format_double(gsi(static_cast<Eigen::Index>(i), t));
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<std::string> non_empty_term_labels(const TermSet& terms) {
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < terms.size(); ++g)
    if (!terms.term(g).empty()) labels.push_back(term_label(terms.term(g)));
  return labels;
}

// sensitivity values of the non-empty terms, aligned with the labels above
Eigen::VectorXd non_empty_gsi(const FitResult& fit) {
  const TermSet& terms = fit.coefficients.index_set().term_set();
  Eigen::VectorXd values(static_cast<Eigen::Index>(terms.size()) -
                         (terms.contains(Term{}) ? 1 : 0));
  Eigen::Index w = 0;
  for (std::size_t g = 0; g < terms.size(); ++g)
    if (!terms.term(g).empty()) values[w++] = fit.sensitivity[g];
  return values;
}

TermSet nonzero_groups(const GroupedCoefficients& coeffs, double tolerance = 1e-12) {
  const GroupedIndexSet& set = coeffs.index_set();
  std::vector<Term> terms;
  for (std::size_t g = 0; g < set.group_count(); ++g)
    if (coeffs.group(g).norm() > tolerance) terms.push_back(set.term_set().term(g));
  return TermSet(set.term_set().dimension(), std::move(terms));
}

std::string insert_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || dot == 0) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

}  // namespace

std::vector<double> lambda_grid(const ExperimentConfig& config) {
  if (config.lambda_min <= 0.0 || config.lambda_max < config.lambda_min)
    throw std::invalid_argument("lambda grid endpoints must be positive and ordered");
  if (config.lambda_count < 1) throw std::invalid_argument("lambda count must be >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(config.lambda_count));
  if (config.lambda_count == 1) {
    grid.push_back(config.lambda_max);
    return grid;
  }
  const double hi = std::log(config.lambda_max);
  const double lo = std::log(config.lambda_min);
  for (int i = 0; i < config.lambda_count; ++i)
    grid.push_back(std::exp(hi - (hi - lo) * i / (config.lambda_count - 1)));
  return grid;
}

std::vector<int> preset_bandwidths(const ExperimentConfig& config) {
  if (config.preset == "small") return {26, 6, 4};
  if (config.preset == "large") return {352, 20, 8};
  if (config.preset == "census") return {82, 10};
  if (config.preset == "explicit") {
    if (config.bandwidths.empty())
      throw std::invalid_argument("preset 'explicit' requires --bandwidths");
    return config.bandwidths;
  }
  throw std::invalid_argument("unknown preset '" + config.preset + "'");
}

SyntheticResult run_synthetic(const ExperimentConfig& config) {
  const bool use_fista = config.kind == "synthetic-fista";
  if (!use_fista && config.kind != "synthetic-lsqr")
    throw std::invalid_argument("run_synthetic: kind must be synthetic-lsqr or synthetic-fista");
  if (config.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");

  const auto per_order = preset_bandwidths(config);
  auto index_set = std::make_shared<const GroupedIndexSet>(
      GroupedIndexSet::with_order_bandwidths(TermSet::superset(9, 3), per_order,
                                             Basis::exponential));
  const TermSet reference = testfn::active_terms();

  SolverOptions solver;
  solver.kind = use_fista ? SolverKind::fista : SolverKind::lsqr;
  solver.weights = config.smoothness > 0.0 ? WeightFunction::sobolev(config.smoothness)
                                           : WeightFunction::ones();
  solver.lsqr = config.lsqr;
  solver.fista = config.fista;
  solver.fista.exempt_constant_group = config.prox_exempt_mean;

  ActiveSetSpec detection;
  detection.thresholds = config.active_eps.empty()
                             ? std::vector<double>{1e-3, 1e-3, 1e-3}
                             : config.active_eps;

  FastParams fast{config.nfft_sigma, config.nfft_cutoff, config.direct_group_limit};

  SyntheticResult result;
  result.lambdas = lambda_grid(config);
  const std::size_t grid_size = result.lambdas.size();
  result.term_labels = non_empty_term_labels(index_set->term_set());
  result.mean_error.assign(grid_size, 0.0);
  result.mean_gsi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid_size),
                                          static_cast<Eigen::Index>(result.term_labels.size()));
  const L2Oracle truth = testfn::oracle();

  FitResult network_fit{GroupedCoefficients(index_set)};
  for (int rep = 0; rep < config.repetitions; ++rep) {
    const auto sample = testfn::sample(config.sample_count, config.noise,
                                       config.seed + static_cast<std::uint64_t>(rep),
                                       config.absolute_noise
                                           ? testfn::NoiseKind::absolute_sigma
                                           : testfn::NoiseKind::relative_l2);
    TransformPlan plan(sample.nodes, index_set, TransformMethod::fast, fast, config.threads);
    const Eigen::VectorXcd y = sample.values.cast<std::complex<double>>();

    const bool warm = use_fista && config.warm_start;
    auto fits = lambda_sweep(plan, y, solver, result.lambdas, warm);

    std::vector<double> errors(grid_size, 0.0);
    std::vector<TermSet> selected;
    selected.reserve(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
      if (use_fista) {
        errors[i] = relative_l2_error(fits[i].coefficients, truth);
        selected.push_back(nonzero_groups(fits[i].coefficients));
      } else {
        const TermSet active = detect_active_set(fits[i], detection);
        std::vector<int> refit_orders =
            config.refit_bandwidths.empty() ? per_order : config.refit_bandwidths;
        auto refit_set = std::make_shared<const GroupedIndexSet>(
            GroupedIndexSet::with_order_bandwidths(active, refit_orders, Basis::exponential));
        TransformPlan refit_plan(sample.nodes, refit_set, TransformMethod::fast, fast,
                                 config.threads);
        const FitResult refit =
            solve_annotated(refit_plan, y, result.lambdas[i], solver);
        errors[i] = relative_l2_error(refit.coefficients, truth);
        selected.push_back(active);
      }
      result.mean_error[i] += errors[i];
      result.mean_gsi.row(static_cast<Eigen::Index>(i)) += non_empty_gsi(fits[i]).transpose();
    }
    const std::size_t best =
        static_cast<std::size_t>(std::min_element(errors.begin(), errors.end()) -
                                 errors.begin());
    result.rep_optimal.push_back(best);
    result.rep_active_exact.push_back(selected[best] == reference);
    if (rep == config.repetitions - 1) network_fit = fits[best];
  }

  const double scale = 1.0 / config.repetitions;
  for (auto& e : result.mean_error) e *= scale;
  result.mean_gsi *= scale;
  const auto best = static_cast<std::size_t>(
      std::min_element(result.mean_error.begin(), result.mean_error.end()) -
      result.mean_error.begin());
  result.min_mean_error = result.mean_error[best];
  result.lambda_at_min = result.lambdas[best];

  if (!config.out.empty())
    write_table(config.out, "L2error", result.lambdas, result.mean_error, result.term_labels,
                result.mean_gsi);
  if (!config.emit_network.empty()) {
    // annotate the emitted network with the repetition-averaged indices
    Eigen::VectorXd mean = result.mean_gsi.row(static_cast<Eigen::Index>(best)).transpose();
    Eigen::Index w = 0;
    for (std::size_t g = 0; g < index_set->group_count(); ++g)
      if (!index_set->term_set().term(g).empty()) network_fit.sensitivity[g] = mean[w++];
    std::ofstream dot(config.emit_network);
    if (!dot) throw std::runtime_error("cannot open '" + config.emit_network + "'");
    dot << emit_anova_network(network_fit);
  }
  return result;
}

CensusResult run_census(const ExperimentConfig& config) {
  if (config.census_file.empty())
    throw std::invalid_argument("run_census: census file path required");
  tabular::Recipe recipe;
  if (!config.recipe_file.empty()) {
    std::ifstream stream(config.recipe_file);
    if (!stream) throw std::runtime_error("cannot open recipe '" + config.recipe_file + "'");
    std::string text((std::istreambuf_iterator<char>(stream)),
                     std::istreambuf_iterator<char>());
    recipe = tabular::recipe_from_json(text);
  } else {
    recipe = tabular::census_recipe();
  }
  const tabular::TabularDataset data =
      tabular::load_and_preprocess_file(config.census_file, recipe);

  const auto per_order =
      config.preset == "explicit" ? preset_bandwidths(config) : std::vector<int>{82, 10};
  auto index_set = std::make_shared<const GroupedIndexSet>(
      GroupedIndexSet::with_order_bandwidths(
          TermSet::superset(static_cast<int>(data.feature_count()), 2), per_order,
          Basis::cosine));

  CensusResult result;
  result.usable_rows = data.rows();
  result.index_cardinality = index_set->total_cardinality();
  result.lambdas = lambda_grid(config);
  result.term_labels = non_empty_term_labels(index_set->term_set());
  const auto grid_size = static_cast<Eigen::Index>(result.lambdas.size());
  const auto term_count = static_cast<Eigen::Index>(result.term_labels.size());
  result.accuracy_lsqr.assign(result.lambdas.size(), 0.0);
  result.accuracy_lsqr_refit.assign(result.lambdas.size(), 0.0);
  result.accuracy_fista.assign(result.lambdas.size(), 0.0);
  result.gsi_lsqr = Eigen::MatrixXd::Zero(grid_size, term_count);
  result.gsi_fista = Eigen::MatrixXd::Zero(grid_size, term_count);

  ActiveSetSpec detection;
  detection.thresholds =
      config.active_eps.empty() ? std::vector<double>{0.1, 0.1} : config.active_eps;
  const std::vector<int> refit_orders =
      config.refit_bandwidths.empty() ? std::vector<int>{300, 10} : config.refit_bandwidths;
  FastParams fast{config.nfft_sigma, config.nfft_cutoff, config.direct_group_limit};

  SolverOptions lsqr_solver;
  lsqr_solver.kind = SolverKind::lsqr;
  lsqr_solver.weights = config.smoothness > 0.0 ? WeightFunction::sobolev(config.smoothness)
                                                : WeightFunction::ones();
  lsqr_solver.lsqr = config.lsqr;
  SolverOptions fista_solver = lsqr_solver;
  fista_solver.kind = SolverKind::fista;
  fista_solver.fista = config.fista;
  fista_solver.fista.exempt_constant_group = config.prox_exempt_mean;

  const auto folds = tabular::kfold(data.rows(), config.folds, config.seed);
  for (const auto& [train_rows, test_rows] : folds) {
    const tabular::MinMaxScaler scaler = tabular::MinMaxScaler::fit(data, train_rows);
    auto train_nodes = std::make_shared<const NodeSet>(
        scaler.apply(data, train_rows).transpose(), Basis::cosine);
    NodeSet test_nodes(scaler.apply(data, test_rows).transpose(), Basis::cosine);
    Eigen::VectorXd train_labels(static_cast<Eigen::Index>(train_rows.size()));
    for (std::size_t i = 0; i < train_rows.size(); ++i)
      train_labels[static_cast<Eigen::Index>(i)] = data.labels[train_rows[i]];
    Eigen::VectorXd test_labels(static_cast<Eigen::Index>(test_rows.size()));
    for (std::size_t i = 0; i < test_rows.size(); ++i)
      test_labels[static_cast<Eigen::Index>(i)] = data.labels[test_rows[i]];
    const Eigen::VectorXcd y = train_labels.cast<std::complex<double>>();

    TransformPlan plan(train_nodes, index_set, TransformMethod::fast, fast, config.threads);
    auto lsqr_fits = lambda_sweep(plan, y, lsqr_solver, result.lambdas, false);
    auto fista_fits = lambda_sweep(plan, y, fista_solver, result.lambdas, config.warm_start);

    for (std::size_t i = 0; i < result.lambdas.size(); ++i) {
      result.accuracy_lsqr[i] +=
          tabular::classify_and_score(lsqr_fits[i].coefficients, test_nodes, test_labels,
                                      config.threads)
              .accuracy;
      result.accuracy_fista[i] +=
          tabular::classify_and_score(fista_fits[i].coefficients, test_nodes, test_labels,
                                      config.threads)
              .accuracy;
      result.gsi_lsqr.row(static_cast<Eigen::Index>(i)) +=
          non_empty_gsi(lsqr_fits[i]).transpose();
      result.gsi_fista.row(static_cast<Eigen::Index>(i)) +=
          non_empty_gsi(fista_fits[i]).transpose();

      const TermSet active = detect_active_set(lsqr_fits[i], detection);
      auto refit_set = std::make_shared<const GroupedIndexSet>(
          GroupedIndexSet::with_order_bandwidths(active, refit_orders, Basis::cosine));
      TransformPlan refit_plan(train_nodes, refit_set, TransformMethod::fast, fast,
                               config.threads);
      const FitResult refit =
          solve_annotated(refit_plan, y, result.lambdas[i], lsqr_solver);
      result.accuracy_lsqr_refit[i] +=
          tabular::classify_and_score(refit.coefficients, test_nodes, test_labels,
                                      config.threads)
              .accuracy;
    }
  }

  const double scale = 1.0 / static_cast<double>(folds.size());
  for (auto& a : result.accuracy_lsqr) a *= scale;
  for (auto& a : result.accuracy_lsqr_refit) a *= scale;
  for (auto& a : result.accuracy_fista) a *= scale;
  result.gsi_lsqr *= scale;
  result.gsi_fista *= scale;
  result.best_lsqr = *std::max_element(result.accuracy_lsqr.begin(), result.accuracy_lsqr.end());
  result.best_lsqr_refit =
      *std::max_element(result.accuracy_lsqr_refit.begin(), result.accuracy_lsqr_refit.end());
  result.best_fista =
      *std::max_element(result.accuracy_fista.begin(), result.accuracy_fista.end());

  if (!config.out.empty()) {
    write_table(insert_suffix(config.out, "-lsqr"), "accuracy", result.lambdas,
                result.accuracy_lsqr, result.term_labels, result.gsi_lsqr);
    write_table(insert_suffix(config.out, "-lsqr-refit"), "accuracy", result.lambdas,
                result.accuracy_lsqr_refit, result.term_labels,
                Eigen::MatrixXd::Zero(grid_size, term_count));
    write_table(insert_suffix(config.out, "-fista"), "accuracy", result.lambdas,
                result.accuracy_fista, result.term_labels, result.gsi_fista);
  }
  return result;
}

std::vector<BenchRow> run_transform_bench(const ExperimentConfig& config) {
  struct Case {
    int dimension;
    int superposition;
    std::vector<int> per_order;
    int nodes;
  };
  std::vector<Case> cases;
  const std::vector<int> per_order =
      config.preset == "explicit" ? preset_bandwidths(config) : std::vector<int>{26, 6, 4};
  for (int ds = 1; ds <= 3; ++ds)
    cases.push_back({9, ds,
                     std::vector<int>(per_order.begin(), per_order.begin() + ds),
                     config.sample_count});
  cases.push_back({1, 1, {64}, 100000});

  std::mt19937_64 gen(config.seed);
  std::vector<BenchRow> rows;
  for (const auto& test_case : cases) {
    auto index_set = std::make_shared<const GroupedIndexSet>(
        GroupedIndexSet::with_order_bandwidths(
            TermSet::superset(test_case.dimension, test_case.superposition),
            test_case.per_order, Basis::exponential));
    Eigen::MatrixXd points(test_case.dimension, test_case.nodes);
    for (Eigen::Index i = 0; i < points.size(); ++i)
      points.data()[i] = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    auto nodes = std::make_shared<const NodeSet>(std::move(points), Basis::exponential);
    Eigen::VectorXcd values(static_cast<Eigen::Index>(index_set->total_cardinality()));
    for (Eigen::Index i = 0; i < values.size(); ++i)
      values[i] = std::complex<double>(static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5,
                                       static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5);
    GroupedCoefficients coeffs(index_set, std::move(values));

    std::string bandwidth_label;
    for (std::size_t i = 0; i < test_case.per_order.size(); ++i)
      bandwidth_label += (i ? "|" : "") + std::to_string(test_case.per_order[i]);

    FastParams fast{config.nfft_sigma, config.nfft_cutoff, 0};  // force the fast kernel
    Eigen::VectorXcd direct_out, fast_out;
    for (const char* method : {"direct", "fast"}) {
      const bool is_direct = std::string(method) == "direct";
      TransformPlan plan(nodes, index_set,
                         is_direct ? TransformMethod::direct : TransformMethod::fast, fast,
                         config.threads);
      const auto start = std::chrono::steady_clock::now();
      Eigen::VectorXcd out = plan.forward(coeffs);
      const auto stop = std::chrono::steady_clock::now();
      BenchRow row;
      row.dimension = test_case.dimension;
      row.superposition = test_case.superposition;
      row.bandwidths = bandwidth_label;
      row.node_count = test_case.nodes;
      row.method = method;
      row.seconds = std::chrono::duration<double>(stop - start).count();
      if (is_direct) {
        direct_out = out;
      } else {
        fast_out = out;
        row.max_error_vs_direct = (fast_out - direct_out).cwiseAbs().maxCoeff() /
                                  direct_out.cwiseAbs().maxCoeff();
      }
      rows.push_back(std::move(row));
    }
  }

  if (!config.out.empty()) {
    std::ofstream out(config.out);
    if (!out) throw std::runtime_error("cannot open output file '" + config.out + "'");
    out << "d,d_s,N,M,method,wall_time_s,max_error_vs_direct\n";
    for (const auto& row : rows)
      out << row.dimension << ',' << row.superposition << ',' << row.bandwidths << ','
          << row.node_count << ',' << row.method << ',' << format_double(row.seconds) << ','
          << format_double(row.max_error_vs_direct) << '\n';
  }
  return rows;
}

}  // namespace ganova
