#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubefree/extremal.hpp"

namespace cubefree {

enum class Comparator {
  AtMost,  // observed <= floor(bound)
  Equal,   // observed == bound exactly
  Within,  // |observed - bound| <= tolerance
  Holds,   // the observer decides; observed/bound are informational
};

std::string to_string(Comparator cmp);

using ParamList = std::vector<std::pair<std::string, std::int64_t>>;

struct Verdict {
  std::string claim;
  ParamList params;
  Rational observed;
  Rational bound;
  Comparator comparator = Comparator::Holds;
  double tolerance = 0.0;
  bool pass = false;
  std::string method;
  std::string detail;
};

/// How a claim turns a parameter point into an observation.
enum class Observer {
  CubeMax,               // CubeFree(d) on Z_N
  DiagonalMax,           // DiagonalFree(d) on Z_N
  PrimePowerDiagonalMax, // DiagonalFree(p^d) on Z_{p^l}
  PairChainInterval,     // chain DP on [N]
  PairChainVsBrute,      // chain DP against brute force on [N]
  PairGraphCyclic,       // functional-graph DP on Z_N
  PairGraphShifted,      // functional-graph DP on Z_N with ratio d-1
  PairGraphVsBrute,      // functional-graph DP against brute force on Z_N
  DiagonalIncidence,     // double counting of {x, ..., (d-1)x}
  PrimePowerIncidence,   // double counting of {x, ..., (p^d-1)x} over layer a
  SubsetSumLemma,        // S_t lemma over all tuples
  CauchyDavenport,       // exhaustive sumset inequality
  ResidueConstruction,   // residue set is d-cube-free of size (d-1)N/d
  IntervalDichotomy,     // (N/3, N] is 3-cube-free in [N] but not in Z_N
};

/// Which parameter points a claim accepts.
enum class PointFilter {
  None,
  DDividesN,
  DSmallestPrimeFactorOfN,
  NPrimePowerAndDDividesN,
  MultipleOfThree,
  Prime,              // parameter p prime
  ValidPrimePower,    // p prime, 1 <= d <= l
};

struct ClaimSpec {
  std::string_view id;
  std::string_view summary;
  /// Parameter names, in point order, e.g. {"N", "d"}.
  std::vector<std::string_view> params;
  /// Default range per parameter, same order, in range syntax ("3..15").
  std::vector<std::string_view> defaults;
  PointFilter filter;
  Observer observer;
  std::optional<BoundId> bound;
  Comparator comparator;
  /// Expand each (p, l, d) point over every valid layer index a.
  bool expand_layer_index = false;
};

const std::vector<ClaimSpec>& claim_catalogue();
const ClaimSpec* find_claim(std::string_view id);

/// "3..15", "2,4,8", "7", or a mix such as "2..4,9".
std::vector<std::int64_t> parse_range(std::string_view text);
/// "(25,5),(49,7)" -> {{25,5},{49,7}}.
std::vector<std::vector<std::int64_t>> parse_tuples(std::string_view text);

struct PointRequest {
  /// Range overrides keyed by parameter name.
  std::vector<std::pair<std::string, std::string>> ranges;
  /// Explicit tuples; take precedence over ranges when present.
  std::optional<std::vector<std::vector<std::int64_t>>> tuples;
};

/// Parameter points in order: explicit tuples, else the cartesian product of
/// ranges (leftmost parameter outermost), filtered by the claim.
std::vector<ParamList> expand_points(const ClaimSpec& claim, const PointRequest& request);

struct ClaimContext {
  std::int64_t brute_force_cap = kDefaultBruteForceCap;
  std::int64_t branch_and_bound_cap = kDefaultBranchAndBoundCap;
};

Verdict evaluate(const ClaimSpec& claim, const ParamList& point, const ClaimContext& context = {});

}  // namespace cubefree
