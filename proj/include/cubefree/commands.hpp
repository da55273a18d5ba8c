#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cubefree/claims.hpp"
#include "cubefree/report.hpp"

namespace cubefree {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapExceeded = 3;

enum class MethodChoice { Auto, BruteForce, BranchAndBound, DP };

struct MaxRequest {
  Problem problem;
  MethodChoice method = MethodChoice::Auto;
  std::optional<std::int64_t> cap{};
  /// Lifts the configured cap (up to the solver's hard limit).
  bool force = false;
  int workers = 1;
  std::optional<std::chrono::milliseconds> time_limit{};
  /// Also run brute force and fail if the sizes differ.
  bool cross_check = false;
};

/// Auto: chain DP for pair-free on [N], functional-graph DP for pair-free on
/// Z_N, branch and bound otherwise. Every witness is re-verified before it is
/// returned; throws CapExceeded when N is over the cap and `force` is unset.
SearchResult run_max(const MaxRequest& request);

/// Canonical command string identifying a max request in the cache. Worker
/// count, output options and cache flags are not part of it.
std::string fingerprint(const MaxRequest& request);

struct CheckOutcome {
  bool free = true;
  Json report;
};

/// Freeness of `set` under the problem's pattern, with a witness when
/// violated.
CheckOutcome run_check(const Problem& problem, const DenseSet& set);

struct VerifyRequest {
  std::string claim;
  PointRequest points;
  ClaimContext context;
  int workers = 1;
};

struct VerifySummary {
  std::string claim;
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool ok() const { return failed == 0; }
};

/// Evaluates every point of the claim on a worker pool. `sink` receives
/// verdicts in parameter order, on the calling thread, as soon as each one
/// and all its predecessors are done.
VerifySummary run_verify(const VerifyRequest& request, const std::function<void(const Verdict&)>& sink);

/// Machine-parseable summary line.
std::string summary_line(const VerifySummary& summary);

struct ConstructRequest {
  std::string name;  // residue, interval, alternating, chains, layers, blocks, matrix
  std::optional<std::int64_t> n{}, d{}, p{}, l{}, upto{};
  std::optional<AmbientKind> ambient{};
};

Json run_construct(const ConstructRequest& request);

/// Parses "1,2,4" (also whitespace separated) into a set.
DenseSet parse_set(const Ambient& ambient, const std::string& text);

}  // namespace cubefree
