#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ganova {

/// A coordinate subset u of {1,...,d}, stored sorted ascending. The empty
/// vector denotes the constant term.
using Term = std::vector<int>;

/// Canonical comparison: first by |u|, then lexicographically on elements.
bool term_less(const Term& a, const Term& b);

/// Report label for a term: elements joined with "-" (e.g. "1-3-8"),
/// "const" for the empty set.
std::string term_label(const Term& u);

/// An ordered collection of pairwise distinct coordinate subsets of
/// {1,...,d} in canonical order (by order, then lexicographic; the empty
/// set, when present, comes first).
class TermSet {
public:
  TermSet(int dimension, std::vector<Term> terms);

  /// All subsets u with |u| <= superposition_threshold, downward closed.
  static TermSet superset(int dimension, int superposition_threshold);

  int dimension() const { return dimension_; }
  std::size_t size() const { return terms_.size(); }
  const Term& term(std::size_t i) const { return terms_[i]; }
  const std::vector<Term>& terms() const { return terms_; }

  std::optional<std::size_t> index_of(const Term& u) const;
  bool contains(const Term& u) const { return index_of(u).has_value(); }

  /// True iff every subset of every member is also a member.
  bool downward_closed() const;

  /// Largest member order (0 for a set containing only the constant term).
  int max_order() const;

  bool operator==(const TermSet& other) const = default;

private:
  int dimension_;
  std::vector<Term> terms_;
};

}  // namespace ganova
