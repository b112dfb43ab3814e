#include "ganova/term_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace ganova {

bool term_less(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string term_label(const Term& u) {
  if (u.empty()) return "const";
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i > 0) out += '-';
    out += std::to_string(u[i]);
  }
  return out;
}

TermSet::TermSet(int dimension, std::vector<Term> terms)
    : dimension_(dimension), terms_(std::move(terms)) {
  if (dimension_ < 1) throw std::invalid_argument("TermSet: dimension must be positive");
  for (auto& u : terms_) {
    if (!std::is_sorted(u.begin(), u.end())) std::sort(u.begin(), u.end());
    if (std::adjacent_find(u.begin(), u.end()) != u.end())
      throw std::invalid_argument("TermSet: repeated coordinate in term");
    if (!u.empty() && (u.front() < 1 || u.back() > dimension_))
      throw std::invalid_argument("TermSet: coordinate outside {1,...,d}");
  }
  std::sort(terms_.begin(), terms_.end(), term_less);
  if (std::adjacent_find(terms_.begin(), terms_.end()) != terms_.end())
    throw std::invalid_argument("TermSet: duplicate term");
}

TermSet TermSet::superset(int dimension, int superposition_threshold) {
  if (superposition_threshold < 1 || superposition_threshold > dimension)
    throw std::invalid_argument("TermSet::superset: need 1 <= d_s <= d");
  std::vector<Term> terms;
  terms.push_back({});
  // enumerate subsets of each order via the revolving-door style walk
  for (int order = 1; order <= superposition_threshold; ++order) {
    Term u(order);
    for (int i = 0; i < order; ++i) u[i] = i + 1;
    while (true) {
      terms.push_back(u);
      int i = order - 1;
      while (i >= 0 && u[i] == dimension - (order - 1 - i)) --i;
      if (i < 0) break;
      ++u[i];
      for (int j = i + 1; j < order; ++j) u[j] = u[j - 1] + 1;
    }
  }
  return TermSet(dimension, std::move(terms));
}

std::optional<std::size_t> TermSet::index_of(const Term& u) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), u, term_less);
  if (it != terms_.end() && *it == u)
    return static_cast<std::size_t>(it - terms_.begin());
  return std::nullopt;
}

bool TermSet::downward_closed() const {
  for (const auto& u : terms_) {
    if (u.empty()) continue;
    // removing one element at a time reaches every subset by induction
    Term v(u.size() - 1);
    for (std::size_t skip = 0; skip < u.size(); ++skip) {
      std::size_t w = 0;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (i != skip) v[w++] = u[i];
      if (!contains(v)) return false;
    }
  }
  return true;
}

int TermSet::max_order() const {
  int order = 0;
  for (const auto& u : terms_) order = std::max<int>(order, static_cast<int>(u.size()));
  return order;
}

}  // namespace ganova
