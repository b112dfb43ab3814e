#include "ganova/grouped_index_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace ganova {

namespace {

void validate_bandwidth(int bandwidth, Basis basis, std::size_t order) {
  if (order == 0) return;
  if (bandwidth < 2) throw std::invalid_argument("bandwidth must be >= 2");
  if (basis == Basis::exponential && bandwidth % 2 != 0)
    throw std::invalid_argument("exponential basis requires even bandwidth");
}

}  // namespace

std::size_t group_cardinality(const Term& u, int bandwidth) {
  if (u.empty()) return 1;
  if (bandwidth < 2) throw std::invalid_argument("bandwidth must be >= 2");
  std::size_t card = 1;
  for (std::size_t i = 0; i < u.size(); ++i)
    card *= static_cast<std::size_t>(bandwidth - 1);
  return card;
}

std::vector<int> axis_frequency_values(int bandwidth, Basis basis) {
  std::vector<int> values;
  values.reserve(static_cast<std::size_t>(bandwidth - 1));
  if (basis == Basis::exponential) {
    validate_bandwidth(bandwidth, basis, 1);
    for (int k = -bandwidth / 2; k < bandwidth / 2; ++k)
      if (k != 0) values.push_back(k);
  } else {
    validate_bandwidth(bandwidth, basis, 1);
    for (int k = 1; k < bandwidth; ++k) values.push_back(k);
  }
  return values;
}

std::vector<std::vector<int>> enumerate_group(const Term& u, int bandwidth, Basis basis,
                                              int dimension) {
  if (u.empty()) return {std::vector<int>(static_cast<std::size_t>(dimension), 0)};
  validate_bandwidth(bandwidth, basis, u.size());
  const auto values = axis_frequency_values(bandwidth, basis);
  const std::size_t r = u.size();
  std::vector<std::vector<int>> out;
  out.reserve(group_cardinality(u, bandwidth));
  std::vector<std::size_t> idx(r, 0);
  std::vector<int> k(static_cast<std::size_t>(dimension), 0);
  while (true) {
    for (std::size_t a = 0; a < r; ++a) k[static_cast<std::size_t>(u[a] - 1)] = values[idx[a]];
    out.push_back(k);
    std::size_t a = 0;  // smallest coordinate varies fastest
    while (a < r && ++idx[a] == values.size()) {
      idx[a] = 0;
      ++a;
    }
    if (a == r) break;
  }
  return out;
}

std::vector<int> extension_index(const Term& u, const std::vector<int>& k) {
  std::vector<int> ku;
  ku.reserve(u.size());
  std::size_t next = 0;
  for (int j = 1; j <= static_cast<int>(k.size()); ++j) {
    const bool in_u = next < u.size() && u[next] == j;
    const int kj = k[static_cast<std::size_t>(j - 1)];
    if (in_u) {
      if (kj == 0) throw std::invalid_argument("extension_index: supp k != u");
      ku.push_back(kj);
      ++next;
    } else if (kj != 0) {
      throw std::invalid_argument("extension_index: supp k != u");
    }
  }
  if (next != u.size()) throw std::invalid_argument("extension_index: u exceeds dimension");
  return ku;
}

std::vector<int> embed_index(const Term& u, const std::vector<int>& ku, int dimension) {
  if (ku.size() != u.size()) throw std::invalid_argument("embed_index: size mismatch");
  std::vector<int> k(static_cast<std::size_t>(dimension), 0);
  for (std::size_t a = 0; a < u.size(); ++a) k[static_cast<std::size_t>(u[a] - 1)] = ku[a];
  return k;
}

GroupedIndexSet::GroupedIndexSet(TermSet term_set, std::vector<int> bandwidths, Basis basis)
    : terms_(std::move(term_set)), bandwidths_(std::move(bandwidths)), basis_(basis) {
  if (bandwidths_.size() != terms_.size())
    throw std::invalid_argument("GroupedIndexSet: one bandwidth per term required");
  offsets_.resize(terms_.size() + 1, 0);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& u = terms_.term(i);
    if (u.empty()) {
      bandwidths_[i] = 0;
      offsets_[i + 1] = offsets_[i] + 1;
    } else {
      validate_bandwidth(bandwidths_[i], basis_, u.size());
      offsets_[i + 1] = offsets_[i] + group_cardinality(u, bandwidths_[i]);
    }
  }
}

GroupedIndexSet GroupedIndexSet::with_order_bandwidths(TermSet term_set,
                                                       const std::vector<int>& per_order,
                                                       Basis basis) {
  std::vector<int> bandwidths(term_set.size(), 0);
  for (std::size_t i = 0; i < term_set.size(); ++i) {
    const std::size_t order = term_set.term(i).size();
    if (order == 0) continue;
    if (order > per_order.size())
      throw std::invalid_argument("with_order_bandwidths: no bandwidth for this term order");
    bandwidths[i] = per_order[order - 1];
  }
  return GroupedIndexSet(std::move(term_set), std::move(bandwidths), basis);
}

std::vector<int> GroupedIndexSet::frequency_at(std::size_t flat_index) const {
  const auto address = address_of(flat_index);
  const Term& u = terms_.term(address.term_index);
  std::vector<int> k(static_cast<std::size_t>(terms_.dimension()), 0);
  if (u.empty()) return k;
  const auto values = axis_values(address.term_index);
  std::size_t rest = address.offset;
  for (std::size_t a = 0; a < u.size(); ++a) {
    k[static_cast<std::size_t>(u[a] - 1)] = values[rest % values.size()];
    rest /= values.size();
  }
  return k;
}

FrequencyAddress GroupedIndexSet::address_of(std::size_t flat_index) const {
  if (flat_index >= total_cardinality())
    throw std::out_of_range("GroupedIndexSet: flat index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), flat_index);
  const std::size_t term_index = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {term_index, flat_index - offsets_[term_index]};
}

std::size_t GroupedIndexSet::flat_index(const FrequencyAddress& address) const {
  if (address.term_index >= group_count() || address.offset >= group_size(address.term_index))
    throw std::out_of_range("GroupedIndexSet: address out of range");
  return offsets_[address.term_index] + address.offset;
}

}  // namespace ganova
