#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ganova/term_set.hpp"

namespace ganova {

enum class Basis { exponential, cosine };

/// Position of a frequency inside the canonical flat coefficient layout:
/// which term it belongs to and its 0-based offset within that group
/// (odometer order, smallest coordinate varying fastest).
struct FrequencyAddress {
  std::size_t term_index = 0;
  std::size_t offset = 0;
  bool operator==(const FrequencyAddress&) const = default;
};

/// Number of frequencies in the group of u at bandwidth N: (N-1)^|u|,
/// 1 for the constant term.
std::size_t group_cardinality(const Term& u, int bandwidth);

/// Admissible per-axis frequency values for one coordinate of a group.
/// Exponential basis: Z `intersect` [-N/2, N/2) without 0, ascending (N even).
/// Cosine basis: {1, ..., N-1}.
std::vector<int> axis_frequency_values(int bandwidth, Basis basis);

/// All d-dimensional frequencies of the group of u at the given bandwidth,
/// in odometer order with the smallest coordinate of u varying fastest.
std::vector<std::vector<int>> enumerate_group(const Term& u, int bandwidth, Basis basis,
                                              int dimension);

/// Restriction k_u = (k_j)_{j in u} of a d-dimensional frequency with
/// supp k = u, in ascending-j order. Throws if supp k != u.
std::vector<int> extension_index(const Term& u, const std::vector<int>& k);

/// Embeds an |u|-dimensional frequency back into Z^d (zero off u).
std::vector<int> embed_index(const Term& u, const std::vector<int>& ku, int dimension);

/// A grouped frequency index set: one full cube of frequencies with
/// support exactly u per term, with per-term bandwidths. Groups are laid
/// out consecutively in canonical term order; inside a group the flat
/// order is the odometer order of enumerate_group.
class GroupedIndexSet {
public:
  /// `bandwidths` is aligned with term_set.terms(); the entry for the
  /// constant term is ignored (canonically stored as 0).
  GroupedIndexSet(TermSet term_set, std::vector<int> bandwidths, Basis basis);

  /// Convenience: one bandwidth per term order (element 0 applies to
  /// |u| = 1, element 1 to |u| = 2, ...).
  static GroupedIndexSet with_order_bandwidths(TermSet term_set,
                                               const std::vector<int>& per_order,
                                               Basis basis);

  const TermSet& term_set() const { return terms_; }
  Basis basis() const { return basis_; }
  std::size_t group_count() const { return terms_.size(); }

  int bandwidth(std::size_t term_index) const { return bandwidths_[term_index]; }
  std::size_t group_size(std::size_t term_index) const {
    return offsets_[term_index + 1] - offsets_[term_index];
  }
  std::size_t group_offset(std::size_t term_index) const { return offsets_[term_index]; }
  std::size_t total_cardinality() const { return offsets_.back(); }

  std::vector<int> axis_values(std::size_t term_index) const {
    return axis_frequency_values(bandwidths_[term_index], basis_);
  }

  std::vector<std::vector<int>> group_frequencies(std::size_t term_index) const {
    return enumerate_group(terms_.term(term_index), bandwidths_[term_index], basis_,
                           terms_.dimension());
  }

  /// d-dimensional frequency at a flat position.
  std::vector<int> frequency_at(std::size_t flat_index) const;

  FrequencyAddress address_of(std::size_t flat_index) const;
  std::size_t flat_index(const FrequencyAddress& address) const;

  bool operator==(const GroupedIndexSet& other) const {
    return basis_ == other.basis_ && bandwidths_ == other.bandwidths_ &&
           terms_ == other.terms_;
  }

private:
  TermSet terms_;
  std::vector<int> bandwidths_;
  Basis basis_;
  std::vector<std::size_t> offsets_;  // size group_count()+1, prefix sums
};

}  // namespace ganova
