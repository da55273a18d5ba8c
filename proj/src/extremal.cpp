#include "cubefree/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>
#include <vector>

#include "cubefree/cube.hpp"

namespace cubefree {

void Problem::validate() const {
  const int min_d = kind == ProblemKind::CubeFree ? 1 : 2;
  if (d < min_d) {
    throw std::invalid_argument(to_string(kind) + " needs d >= " + std::to_string(min_d) +
                                ", got " + std::to_string(d));
  }
  if (include_zero && (kind != ProblemKind::DiagonalFree || !ambient.is_cyclic())) {
    throw std::invalid_argument("barring x = 0 only applies to diagonal patterns on Z_N");
  }
}

std::string Problem::describe() const {
  return to_string(kind) + "(" + std::to_string(d) + (include_zero ? ", zero barred" : "") +
         ") on " + ambient.describe();
}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::CubeFree: return "cube";
    case ProblemKind::DiagonalFree: return "diag";
    case ProblemKind::PairFree: return "pair";
  }
  return "?";
}

std::string to_string(Method method) {
  switch (method) {
    case Method::BruteForce: return "brute_force";
    case Method::BranchAndBound: return "branch_and_bound";
    case Method::ChainDP: return "chain_dp";
    case Method::FunctionalGraphDP: return "functional_graph_dp";
  }
  return "?";
}

bool satisfies(const Problem& problem, const DenseSet& set) {
  switch (problem.kind) {
    case ProblemKind::CubeFree: return is_cube_free(set, problem.d);
    case ProblemKind::DiagonalFree:
      return !diagonal_witness(set, problem.d, problem.include_zero).has_value();
    case ProblemKind::PairFree: return (set & dilate(set, problem.d)).empty();
  }
  return false;
}

namespace {

using Clock = std::chrono::steady_clock;

// Advances idx to the next k-combination of 0..n-1 in lexicographic order.
bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

SearchResult brute_force_max(const Problem& problem, std::int64_t cap) {
  problem.validate();
  const auto& amb = problem.ambient;
  const auto n = amb.order();
  if (n > cap) {
    throw CapExceeded("brute force is capped at N <= " + std::to_string(cap) + ", got " +
                      std::to_string(n));
  }
  const auto start = Clock::now();
  SearchResult result{problem, 0, DenseSet(amb), Method::BruteForce};
  for (auto k = static_cast<int>(n); k >= 0; --k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    do {
      DenseSet candidate(amb);
      for (const auto i : idx) candidate.insert(amb.element_at(static_cast<std::size_t>(i)));
      ++result.explored;
      if (satisfies(problem, candidate)) {
        result.max_size = static_cast<std::size_t>(k);
        result.witness = std::move(candidate);
        result.elapsed = Clock::now() - start;
        return result;
      }
    } while (next_combination(idx, static_cast<int>(n)));
  }
  // Unreachable: the empty set avoids every pattern.
  throw std::logic_error("brute force found no feasible set");
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

using Mask = std::uint64_t;

// Guards the cube pattern enumeration, which is C(N + d - 1, d) generators.
constexpr std::uint64_t kMaxCubeGenerators = 20'000'000;

Mask low_bits(std::int64_t n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Bit i of a mask stands for ambient.element_at(i).
std::vector<Mask> cube_patterns(const Ambient& amb, int d) {
  const auto n = amb.order();
  const auto full = low_bits(n);
  std::vector<Mask> out;
  std::uint64_t generators = 0;
  // sums: achieved subset sums as a mask; for [N] a sum above N aborts.
  auto extend = [&](auto&& self, int depth, Element from, Mask sums) -> void {
    if (depth == d) {
      out.push_back(sums);
      if (++generators > kMaxCubeGenerators) {
        throw CapExceeded("too many cube generators for branch and bound");
      }
      return;
    }
    for (Element a = from; a <= amb.last(); ++a) {
      Mask shifted;
      if (amb.is_cyclic()) {
        shifted = a == 0 ? sums : ((sums << a) | (sums >> (n - a))) & full;
      } else {
        // Element e sits at bit e-1, so adding a shifts by a.
        if (sums && static_cast<std::int64_t>(std::bit_width(sums)) + a > n) break;
        shifted = sums << a;
      }
      const Mask next = sums | shifted | (Mask{1} << amb.index_of(a));
      self(self, depth + 1, a, next);
    }
  };
  extend(extend, 0, amb.first(), Mask{0});
  return out;
}

std::vector<Mask> diagonal_patterns(const Ambient& amb, int d, bool include_zero) {
  std::vector<Mask> out;
  if (include_zero && amb.is_cyclic()) out.push_back(Mask{1});
  for (Element x = std::max<Element>(1, amb.first()); x <= amb.last(); ++x) {
    Mask m = 0;
    bool inside = true;
    for (int j = 1; j < d && inside; ++j) {
      const auto r = amb.reduce(x * j);
      if (r) m |= Mask{1} << amb.index_of(*r);
      else inside = false;
    }
    if (inside) out.push_back(m);
  }
  return out;
}

std::vector<Mask> pair_patterns(const Ambient& amb, int d) {
  std::vector<Mask> out;
  for (Element x = amb.first(); x <= amb.last(); ++x) {
    if (const auto r = amb.reduce(x * d)) {
      out.push_back((Mask{1} << amb.index_of(x)) | (Mask{1} << amb.index_of(*r)));
    }
  }
  return out;
}

// Deduplicated, superset-free pattern list.
std::vector<Mask> minimal_patterns(std::vector<Mask> patterns) {
  std::sort(patterns.begin(), patterns.end(), [](Mask a, Mask b) {
    const auto pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  std::vector<Mask> kept;
  for (const auto m : patterns) {
    const bool dominated =
        std::any_of(kept.begin(), kept.end(), [m](Mask k) { return (k & ~m) == 0; });
    if (!dominated) kept.push_back(m);
  }
  return kept;
}

class BranchAndBound {
 public:
  BranchAndBound(const Problem& problem, Clock::time_point deadline, bool has_deadline)
      : n_(static_cast<int>(problem.ambient.order())),
        by_top_(static_cast<std::size_t>(n_)),
        deadline_(deadline),
        has_deadline_(has_deadline) {
    std::vector<Mask> raw;
    switch (problem.kind) {
      case ProblemKind::CubeFree: raw = cube_patterns(problem.ambient, problem.d); break;
      case ProblemKind::DiagonalFree: 
        raw = diagonal_patterns(problem.ambient, problem.d, problem.include_zero);
        break;
      case ProblemKind::PairFree: raw = pair_patterns(problem.ambient, problem.d); break;
    }
    for (const auto m : minimal_patterns(std::move(raw))) {
      by_top_[static_cast<std::size_t>(std::bit_width(m) - 1)].push_back(m);
    }
  }

  int n() const { return n_; }

  // Including element i into `chosen` (which holds only elements < i)
  // completes no pattern.
  bool can_include(Mask chosen, int i) const {
    const Mask with = chosen | (Mask{1} << i);
    for (const auto p : by_top_[static_cast<std::size_t>(i)]) {
      if ((p & ~with) == 0) return false;
    }
    return true;
  }

  Mask greedy() const {
    Mask chosen = 0;
    for (int i = 0; i < n_; ++i) {
      if (can_include(chosen, i)) chosen |= Mask{1} << i;
    }
    return chosen;
  }

  struct Subtree {
    int next;  // first undecided element
    Mask chosen;
  };

  // Prefixes over the first `depth` elements, include-first, that are
  // feasible and can still reach `floor` elements.
  std::vector<Subtree> split(int depth, int floor, std::uint64_t& explored) const {
    std::vector<Subtree> out;
    auto visit = [&](auto&& self, int i, Mask chosen) -> void {
      ++explored;
      if (std::popcount(chosen) + (n_ - i) < floor) return;
      if (i == depth) {
        out.push_back({i, chosen});
        return;
      }
      if (can_include(chosen, i)) self(self, i + 1, chosen | (Mask{1} << i));
      self(self, i + 1, chosen);
    };
    visit(visit, 0, Mask{0});
    return out;
  }

  struct Outcome {
    int best_size = -1;
    Mask best = 0;
    std::uint64_t explored = 0;
    bool timed_out = false;
  };

  // Solutions smaller than `floor` are ignored.
  Outcome solve(const Subtree& root, int floor, const std::atomic<bool>& stop) const {
    Outcome o;
    o.best_size = floor - 1;
    auto visit = [&](auto&& self, int i, Mask chosen, int size) -> void {
      if (o.timed_out) return;
      if ((++o.explored & 0xfff) == 0 && (stop.load(std::memory_order_relaxed) ||
                                          (has_deadline_ && Clock::now() > deadline_))) {
        o.timed_out = true;
        return;
      }
      if (size + (n_ - i) <= o.best_size) return;
      if (i == n_) {
        o.best_size = size;
        o.best = chosen;
        return;
      }
      if (can_include(chosen, i)) self(self, i + 1, chosen | (Mask{1} << i), size + 1);
      self(self, i + 1, chosen, size);
    };
    visit(visit, root.next, root.chosen, std::popcount(root.chosen));
    return o;
  }

 private:
  int n_;
  std::vector<std::vector<Mask>> by_top_;
  Clock::time_point deadline_;
  bool has_deadline_;
};

constexpr int kSplitDepth = 10;

}  // namespace

SearchResult branch_and_bound_max(const Problem& problem, const BranchAndBoundOptions& options) {
  problem.validate();
  const auto& amb = problem.ambient;
  const auto n = amb.order();
  const auto cap = std::min(options.cap, kBranchAndBoundHardCap);
  if (n > cap) {
    throw CapExceeded("branch and bound is capped at N <= " + std::to_string(cap) + ", got " +
                      std::to_string(n));
  }
  const auto start = Clock::now();
  const BranchAndBound bnb(problem, options.time_limit ? start + *options.time_limit : start,
                           options.time_limit.has_value());

  SearchResult result{problem, 0, DenseSet(amb), Method::BranchAndBound};
  const Mask greedy = bnb.greedy();
  const int floor = std::popcount(greedy);
  const auto subtrees = bnb.split(std::min(bnb.n(), kSplitDepth), floor, result.explored);

  std::vector<BranchAndBound::Outcome> outcomes(subtrees.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto work = [&] {
    for (auto i = next.fetch_add(1); i < subtrees.size(); i = next.fetch_add(1)) {
      outcomes[i] = bnb.solve(subtrees[i], floor, stop);
      if (outcomes[i].timed_out) stop = true;
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, options.workers));
  if (workers == 1 || subtrees.size() <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, subtrees.size()); ++w) pool.emplace_back(work);
  }

  // Subtrees are in lexicographic order, so a strict comparison keeps the
  // lexicographically smallest maximizer.
  int best_size = -1;
  Mask best = 0;
  for (const auto& o : outcomes) {
    result.explored += o.explored;
    if (o.timed_out) result.optimal = false;
    if (o.best_size >= floor && o.best_size > best_size) {
      best_size = o.best_size;
      best = o.best;
    }
  }
  if (best_size < floor) {
    best_size = floor;
    best = greedy;
  }
  result.max_size = static_cast<std::size_t>(best_size);
  for (int i = 0; i < bnb.n(); ++i) {
    if ((best >> i) & 1u) result.witness.insert(amb.element_at(static_cast<std::size_t>(i)));
  }
  result.elapsed = Clock::now() - start;
  return result;
}

}  // namespace cubefree
