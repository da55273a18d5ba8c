#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "cubefree/ambient.hpp"

namespace cubefree {

enum class ProblemKind {
  CubeFree,      // no projective d-cube
  DiagonalFree,  // no {x, 2x, ..., (d-1)x} with x != 0
  PairFree,      // A and d*A disjoint
};

struct Problem {
  ProblemKind kind;
  int d;
  Ambient ambient;
  /// DiagonalFree on Z_N only: also forbid x = 0, i.e. bar 0 from the set.
  bool include_zero = false;

  /// Throws std::invalid_argument if d is out of range for the kind.
  void validate() const;
  std::string describe() const;
};

/// Whether `set` avoids the problem's forbidden pattern. Cube and diagonal
/// patterns are tested through the cube engine.
bool satisfies(const Problem& problem, const DenseSet& set);

enum class Method { BruteForce, BranchAndBound, ChainDP, FunctionalGraphDP };

std::string to_string(ProblemKind kind);
std::string to_string(Method method);

struct SearchResult {
  Problem problem;
  std::size_t max_size = 0;
  DenseSet witness;
  Method method;
  std::uint64_t explored = 0;
  std::chrono::duration<double, std::milli> elapsed{0};
  /// False only when a time limit cut the search short.
  bool optimal = true;
};

inline constexpr std::int64_t kDefaultBruteForceCap = 22;
inline constexpr std::int64_t kDefaultBranchAndBoundCap = 30;
/// Patterns are 64-bit masks inside the branch and bound.
inline constexpr std::int64_t kBranchAndBoundHardCap = 64;

/// Exhaustive search. Sizes are tried from N downward and subsets of each
/// size in lexicographic order, so the witness is the lexicographically
/// smallest maximizer. Throws CapExceeded when N > cap.
SearchResult brute_force_max(const Problem& problem, std::int64_t cap = kDefaultBruteForceCap);

struct BranchAndBoundOptions {
  std::int64_t cap = kDefaultBranchAndBoundCap;
  int workers = 1;
  std::optional<std::chrono::milliseconds> time_limit;
};

/// Include-first depth-first search over elements in ascending order.
///
/// The first few decisions are expanded into a fixed list of subtrees that
/// workers pick up independently; each subtree prunes against its own best
/// and a greedy lower bound computed up front. Node counts and witnesses are
/// therefore the same for any worker count. Ties go to the lexicographically
/// smallest witness.
SearchResult branch_and_bound_max(const Problem& problem, const BranchAndBoundOptions& options = {});

/// Maximum {x, dx}-free subset of [N]: every chain l, dl, d^2 l, ... keeps
/// its odd positions.
SearchResult chain_dp_max_pairfree_interval(std::int64_t n, std::int64_t d);

/// Maximum independent set of the functional graph x -> dx mod N on Z_N,
/// fixed points excluded. Trees hanging off each cycle are folded in
/// leaves-first, then each cycle is solved with its first vertex forced out
/// or in.
SearchResult graph_dp_max_pairfree_cyclic(std::int64_t n, std::int64_t d);

/// Exact non-negative rational.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t num, std::int64_t den);
  std::int64_t floor() const { return num / den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class BoundId {
  CubeFreeConjecture,  // (d-1)N/d
  PairFreeInterval,    // dN/(d+1), main term only
  PairFreeCyclic,      // kN/(k+1), k = gcd(d, N)
  PairFreeShifted,     // kN/(k+1), k = gcd(d-1, N)
  PrimePowerDiagonal,  // (1 - 1/(p^d - 1)) p^l
};

struct BoundParams {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t p = 0;
  std::int64_t l = 0;
};

Rational bound_value(BoundId id, const BoundParams& params);
std::string to_string(BoundId id);
std::optional<BoundId> bound_from_string(const std::string& name);

}  // namespace cubefree
