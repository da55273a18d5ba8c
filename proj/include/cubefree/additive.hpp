#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubefree/ambient.hpp"

namespace cubefree {

/// Largest prime accepted by the exhaustive Cauchy-Davenport check
/// ((2^13 - 1)^2 ~ 6.7e7 subset pairs).
inline constexpr std::int64_t kCauchyDavenportMaxPrime = 13;

/// A + B in Z_p. Both sets must live in the same cyclic ambient.
DenseSet sumset(const DenseSet& a, const DenseSet& b);

struct CauchyDavenportVerdict {
  std::int64_t p = 0;
  std::uint64_t pairs_checked = 0;
  bool pass = true;
  /// First failing pair in enumeration order, if any.
  std::optional<std::pair<std::vector<Element>, std::vector<Element>>> counterexample;
};

/// Checks |A + B| >= min(|A| + |B| - 1, p) for every pair of nonempty
/// subsets of Z_p.
CauchyDavenportVerdict cauchy_davenport_check(std::int64_t p);

struct SubsetSumProfile {
  std::int64_t modulus;
  std::vector<Element> coefficients;
  DenseSet achieved;
};

/// S_t: every sum of a nonempty sub-selection of the coefficients, mod d.
SubsetSumProfile s_t_set(const std::vector<Element>& coefficients, std::int64_t d);

struct SubsetSumLemmaVerdict {
  std::int64_t d = 0;
  int t_max = 0;
  std::uint64_t tuples_checked = 0;
  bool pass = true;
  std::optional<std::vector<Element>> counterexample;
};

/// For every t <= t_max and every tuple in (Z_d \ {0})^t: either 0 is in S_t
/// or |S_t| >= t.
SubsetSumLemmaVerdict verify_s_t_lemma(std::int64_t d, int t_max);

/// Lexicographically smallest nonempty index set (0-based, ascending) whose
/// residues sum to 0 mod d. Expects exactly d residues, none divisible by d;
/// such an index set always exists.
std::vector<std::size_t> zero_subset_sum(const std::vector<Element>& residues, std::int64_t d);

/// A family of sets counted with index multiplicity: member i is the set
/// generated by indices[i]. `support` is the region the family is claimed
/// to cover uniformly.
struct IndexedFamily {
  std::string id;
  Ambient ambient;
  std::vector<Element> indices;
  std::vector<DenseSet> members;
  DenseSet support;
};

/// {x, 2x, ..., (d-1)x} for every nonzero x in Z_N; support Z_N \ {0}.
IndexedFamily family_diagonal(std::int64_t n, std::int64_t d);

/// {x, 2x, ..., (p^d - 1)x} for x in layer a of Z_{p^l}; support is the
/// layer range L_a .. L_{a+d-1}. Requires 1 <= a <= l - d + 1.
IndexedFamily family_prime_power(std::int64_t p, int l, int d, int a);

struct IncidenceReport {
  std::string family_id;
  std::size_t family_size = 0;
  std::size_t expected_set_size = 0;
  std::size_t expected_multiplicity = 0;
  /// multiplicity value -> number of ambient elements with it.
  std::map<std::size_t, std::size_t> multiplicity_histogram;
  std::uint64_t member_total = 0;        // sum of |member|
  std::uint64_t multiplicity_total = 0;  // sum of element multiplicities
  /// expected_set_size * |family|  vs  expected_multiplicity * |support|.
  std::uint64_t identity_lhs = 0;
  std::uint64_t identity_rhs = 0;
  bool pass = true;
  std::optional<Element> offending_element;
  std::optional<Element> offending_index;
  std::string failure;
};

/// Counts, for each ambient element, how many indexed members contain it,
/// and checks member sizes, uniform multiplicity on the support (zero off
/// it) and the double-counting identity.
IncidenceReport incidence_report(const IndexedFamily& family, std::size_t expected_multiplicity,
                                 std::size_t expected_set_size);

}  // namespace cubefree
