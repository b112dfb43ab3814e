#include "ganova/sensitivity.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ganova {

double term_variance(const GroupedCoefficients& coeffs, std::size_t term_index) {
  const GroupedIndexSet& set = coeffs.index_set();
  if (term_index >= set.group_count())
    throw std::out_of_range("term_variance: term index out of range");
  if (set.term_set().term(term_index).empty()) return 0.0;
  return coeffs.group(term_index).squaredNorm();
}

double term_variance(const GroupedCoefficients& coeffs, const Term& u) {
  const auto index = coeffs.index_set().term_set().index_of(u);
  if (!index) throw std::invalid_argument("term_variance: unknown term");
  return term_variance(coeffs, *index);
}

double global_variance(const GroupedCoefficients& coeffs) {
  double sum = 0.0;
  for (std::size_t g = 0; g < coeffs.index_set().group_count(); ++g)
    sum += term_variance(coeffs, g);
  return sum;
}

double global_sensitivity_index(const GroupedCoefficients& coeffs, const Term& u) {
  const double total = global_variance(coeffs);
  if (total <= 0.0)
    throw std::domain_error("global_sensitivity_index: zero global variance");
  return term_variance(coeffs, u) / total;
}

void annotate_sensitivity(FitResult& fit) {
  const std::size_t groups = fit.coefficients.index_set().group_count();
  fit.term_variances.resize(groups);
  fit.sensitivity.assign(groups, 0.0);
  double total = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    fit.term_variances[g] = term_variance(fit.coefficients, g);
    total += fit.term_variances[g];
  }
  fit.global_variance = total;
  if (total > 0.0)
    for (std::size_t g = 0; g < groups; ++g) fit.sensitivity[g] = fit.term_variances[g] / total;
}

TermSet detect_active_set(const FitResult& fit, const ActiveSetSpec& spec) {
  if (fit.sensitivity.size() != fit.coefficients.index_set().group_count())
    throw std::invalid_argument("detect_active_set: fit has no sensitivity annotations");
  for (double eps : spec.thresholds)
    if (eps < 0.0 || eps >= 1.0)
      throw std::invalid_argument("detect_active_set: thresholds must lie in [0,1)");
  const TermSet& terms = fit.coefficients.index_set().term_set();
  std::vector<Term> active;
  active.push_back({});  // the constant term is always retained
  for (std::size_t g = 0; g < terms.size(); ++g) {
    const Term& u = terms.term(g);
    if (u.empty()) continue;
    if (u.size() > spec.thresholds.size())
      throw std::invalid_argument("detect_active_set: no threshold for this term order");
    if (fit.sensitivity[g] > spec.thresholds[u.size() - 1]) active.push_back(u);
  }
  return TermSet(terms.dimension(), std::move(active));
}

double relative_l2_error(const GroupedCoefficients& coeffs, const L2Oracle& oracle) {
  if (oracle.norm_squared <= 0.0)
    throw std::invalid_argument("relative_l2_error: oracle norm must be positive");
  const GroupedIndexSet& set = coeffs.index_set();
  double mismatch = 0.0;  // sum |fhat_k - c_k|^2
  double captured = 0.0;  // sum |c_k|^2
  for (std::size_t g = 0; g < set.group_count(); ++g) {
    const auto frequencies = set.group_frequencies(g);
    const std::size_t begin = set.group_offset(g);
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
      const std::complex<double> exact = oracle.coefficient(frequencies[i]);
      mismatch += std::norm(coeffs[begin + i] - exact);
      captured += std::norm(exact);
    }
  }
  double radicand = oracle.norm_squared + mismatch - captured;
  if (radicand < -1e-12)
    throw std::domain_error("relative_l2_error: inconsistent oracle (negative radicand)");
  if (radicand < 0.0) radicand = 0.0;
  return std::sqrt(radicand) / std::sqrt(oracle.norm_squared);
}

std::string emit_anova_network(const FitResult& fit, double display_threshold) {
  if (fit.sensitivity.size() != fit.coefficients.index_set().group_count())
    throw std::invalid_argument("emit_anova_network: fit has no sensitivity annotations");
  const TermSet& terms = fit.coefficients.index_set().term_set();
  std::string dot = "digraph anova {\n  rankdir=LR;\n";
  for (int j = 1; j <= terms.dimension(); ++j)
    dot += "  x" + std::to_string(j) + " [shape=circle,label=\"x" + std::to_string(j) +
           "\"];\n";
  char buffer[64];
  for (std::size_t g = 0; g < terms.size(); ++g) {
    const Term& u = terms.term(g);
    const std::string name = "t_" + term_label(u);
    std::string label = term_label(u);
    if (!u.empty()) {
      std::snprintf(buffer, sizeof(buffer), "\\ngsi=%.4g", fit.sensitivity[g]);
      label += buffer;
    }
    const bool faint = !u.empty() && fit.sensitivity[g] < display_threshold;
    dot += "  \"" + name + "\" [shape=box,label=\"" + label + "\"" +
           (faint ? ",style=dashed,color=gray,fontcolor=gray" : "") + "];\n";
  }
  dot += "  sum [shape=circle,label=\"sum\"];\n";
  for (std::size_t g = 0; g < terms.size(); ++g) {
    const Term& u = terms.term(g);
    const std::string name = "t_" + term_label(u);
    const bool faint = !u.empty() && fit.sensitivity[g] < display_threshold;
    const std::string style = faint ? " [color=gray]" : "";
    for (int j : u)
      dot += "  x" + std::to_string(j) + " -> \"" + name + "\"" + style + ";\n";
    dot += "  \"" + name + "\" -> sum" + style + ";\n";
  }
  dot += "}\n";
  return dot;
}

}  // namespace ganova
