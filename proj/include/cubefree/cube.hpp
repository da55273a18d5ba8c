#pragma once

#include <optional>
#include <vector>

#include "cubefree/ambient.hpp"

namespace cubefree {

/// A multiset of d ambient elements, stored as a nondecreasing sequence.
class GeneratorMultiset {
 public:
  GeneratorMultiset(Ambient ambient, std::vector<Element> entries);

  const Ambient& ambient() const { return ambient_; }
  const std::vector<Element>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const GeneratorMultiset&, const GeneratorMultiset&) = default;

 private:
  Ambient ambient_;
  std::vector<Element> entries_;
};

struct CubeWitness {
  GeneratorMultiset generator;
  DenseSet cube;
};

/// All nonempty subset sums of the generator (the full-index sum included).
/// On Z_N sums are reduced mod N; on [N] sums above N are dropped.
DenseSet project_cube(const GeneratorMultiset& generator);

/// Lexicographically smallest generator multiset of size d whose projective
/// cube lies inside `set`, or nothing if the set is d-cube-free.
///
/// Generators are enumerated as nondecreasing sequences of elements of the
/// set. The achieved subset sums P are extended entry by entry as
/// P | (P + a) | {a}; a prefix is dropped once any new sum leaves the set.
/// On [N] a sum above N counts as leaving the set.
std::optional<CubeWitness> find_cube(const DenseSet& set, int d);

bool is_cube_free(const DenseSet& set, int d);

/// Intersection of the translates A - j*x for j = 0..d-1. Z_N only.
DenseSet shifted_intersection(const DenseSet& set, Element x, int d);

/// Some x with {x, 2x, ..., (d-1)x} inside the set, scanning x upward.
/// x = 0 is only considered when `include_zero` is set (and only on Z_N).
std::optional<Element> diagonal_witness(const DenseSet& set, int d, bool include_zero = false);

}  // namespace cubefree
