#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "cubefree/extremal.hpp"

namespace cubefree {

namespace {
using Clock = std::chrono::steady_clock;
}

SearchResult chain_dp_max_pairfree_interval(std::int64_t n, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("pair-free ratio must be at least 2");
  if (d > std::numeric_limits<int>::max()) throw std::invalid_argument("pair-free ratio too large");
  const auto start = Clock::now();
  const auto amb = Ambient::interval(n);
  SearchResult result{{ProblemKind::PairFree, static_cast<int>(d), amb}, 0, DenseSet(amb),
                      Method::ChainDP};
  // On a path the maximum independent set is ceil(len / 2), realized by the
  // odd positions.
  for (std::int64_t l = 1; l <= n; ++l) {
    if (l % d == 0) continue;
    bool take = true;
    for (std::int64_t m = l;; m *= d) {
      ++result.explored;
      if (take) {
        result.witness.insert(m);
        ++result.max_size;
      }
      take = !take;
      if (m > n / d) break;
    }
  }
  result.elapsed = Clock::now() - start;
  return result;
}

SearchResult graph_dp_max_pairfree_cyclic(std::int64_t n, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("pair-free ratio must be at least 2");
  if (d > std::numeric_limits<int>::max()) throw std::invalid_argument("pair-free ratio too large");
  const auto start = Clock::now();
  const auto amb = Ambient::cyclic(n);
  const auto size = static_cast<std::size_t>(n);
  SearchResult result{{ProblemKind::PairFree, static_cast<int>(d), amb}, 0, DenseSet(amb),
                      Method::FunctionalGraphDP};

  std::vector<std::size_t> next(size);
  std::vector<std::size_t> indegree(size, 0);
  for (std::size_t x = 0; x < size; ++x) {
    next[x] = static_cast<std::size_t>((static_cast<__int128>(x) * d) % n);
    ++indegree[next[x]];
  }

  // Peel tree vertices leaves-first; whatever survives lies on a cycle.
  // in[x] / out[x]: best count in the subtree hanging at x with x taken / not.
  std::vector<std::int64_t> in(size, 1), out(size, 0);
  std::vector<std::size_t> order;
  order.reserve(size);
  std::vector<char> on_cycle(size, 1);
  for (std::size_t x = 0; x < size; ++x) {
    if (indegree[x] == 0) order.push_back(x);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto x = order[head];
    on_cycle[x] = 0;
    ++result.explored;
    const auto parent = next[x];
    in[parent] += out[x];
    out[parent] += std::max(in[x], out[x]);
    if (--indegree[parent] == 0) order.push_back(parent);
  }

  std::vector<char> taken(size, 0);
  std::vector<char> visited(size, 0);
  for (std::size_t root = 0; root < size; ++root) {
    if (!on_cycle[root] || visited[root]) continue;
    std::vector<std::size_t> cycle;
    for (auto v = root; !visited[v]; v = next[v]) {
      visited[v] = 1;
      cycle.push_back(v);
    }
    result.explored += cycle.size();
    const auto k = cycle.size();
    if (k == 1) {
      // x = dx: x can never be taken.
      continue;
    }
    // Path DP along cycle[first..k-1] given whether cycle[0] is taken; the
    // last vertex is adjacent to cycle[0].
    auto solve = [&](bool first_taken, std::vector<char>& pick) {
      const auto len = k - 1;
      std::vector<std::int64_t> with(len), without(len);
      for (std::size_t j = 0; j < len; ++j) {
        const auto v = cycle[j + 1];
        const bool blocked = (j == 0 && first_taken) || (j + 1 == len && first_taken);
        const auto prev_without = j == 0 ? 0 : without[j - 1];
        const auto prev_best = j == 0 ? 0 : std::max(with[j - 1], without[j - 1]);
        with[j] = blocked ? std::numeric_limits<std::int64_t>::min() / 4 : prev_without + in[v];
        without[j] = prev_best + out[v];
      }
      pick.assign(k, 0);
      pick[0] = first_taken;
      bool take_next = false;  // whether the successor on the path was taken
      for (std::size_t j = len; j-- > 0;) {
        const bool take = !take_next && with[j] > without[j];
        pick[j + 1] = take;
        take_next = take;
      }
      const auto first = first_taken ? in[cycle[0]] : out[cycle[0]];
      return first + std::max(with[len - 1], without[len - 1]);
    };
    std::vector<char> pick_out, pick_in;
    const auto best_out = solve(false, pick_out);
    const auto best_in = solve(true, pick_in);
    const auto& pick = best_in > best_out ? pick_in : pick_out;
    for (std::size_t j = 0; j < k; ++j) taken[cycle[j]] = pick[j];
  }

  // Push decisions down the trees: reverse peel order visits parents first.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto x = *it;
    taken[x] = !taken[next[x]] && in[x] > out[x];
  }
  for (std::size_t x = 0; x < size; ++x) {
    if (taken[x]) {
      result.witness.insert(static_cast<Element>(x));
      ++result.max_size;
    }
  }
  result.elapsed = Clock::now() - start;
  return result;
}

Rational Rational::of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num, den);
  return {num / (g ? g : 1), den / (g ? g : 1)};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational bound_value(BoundId id, const BoundParams& b) {
  switch (id) {
    case BoundId::CubeFreeConjecture:
      if (b.d < 1 || b.n < 1) break;
      return Rational::of((b.d - 1) * b.n, b.d);
    case BoundId::PairFreeInterval:
      if (b.d < 2 || b.n < 1) break;
      return Rational::of(b.d * b.n, b.d + 1);
    case BoundId::PairFreeCyclic: {
      if (b.d < 2 || b.n < 1) break;
      const auto k = std::gcd(b.d, b.n);
      return Rational::of(k * b.n, k + 1);
    }
    case BoundId::PairFreeShifted: {
      if (b.d < 3 || b.n < 1) break;
      const auto k = std::gcd(b.d - 1, b.n);
      return Rational::of(k * b.n, k + 1);
    }
    case BoundId::PrimePowerDiagonal: {
      if (!is_prime(b.p) || b.l < 1 || b.d < 1) break;
      const auto q = ipow(b.p, static_cast<int>(b.d)) - 1;
      return Rational::of(ipow(b.p, static_cast<int>(b.l)) * (q - 1), q);
    }
  }
  throw std::invalid_argument("invalid parameters for bound " + to_string(id));
}

std::string to_string(BoundId id) {
  switch (id) {
    case BoundId::CubeFreeConjecture: return "cube-free";
    case BoundId::PairFreeInterval: return "pair-free-interval";
    case BoundId::PairFreeCyclic: return "pair-free-cyclic";
    case BoundId::PairFreeShifted: return "pair-free-shifted";
    case BoundId::PrimePowerDiagonal: return "prime-power-diagonal";
  }
  return "?";
}

std::optional<BoundId> bound_from_string(const std::string& name) {
  for (const auto id : {BoundId::CubeFreeConjecture, BoundId::PairFreeInterval,
                        BoundId::PairFreeCyclic, BoundId::PairFreeShifted,
                        BoundId::PrimePowerDiagonal}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

}  // namespace cubefree
