#include "cubefree/constructions.hpp"

#include <algorithm>
#include <limits>

namespace cubefree {

DenseSet residue_construction(std::int64_t n, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("residue construction needs d >= 2");
  if (n < 1 || n % d != 0) {
    throw std::invalid_argument("residue construction needs d | N (N=" + std::to_string(n) +
                                ", d=" + std::to_string(d) + ")");
  }
  DenseSet out(Ambient::cyclic(n));
  for (Element a = 0; a < n; ++a) {
    if (a % d != 0) out.insert(a);
  }
  return out;
}

DenseSet interval_construction(Ambient ambient) {
  const auto n = ambient.order();
  if (n % 3 != 0) throw std::invalid_argument("interval construction needs 3 | N");
  DenseSet out(ambient);
  for (Element x = n / 3 + 1; x <= n; ++x) out.insert(*ambient.reduce(x));
  return out;
}

ChainDecomposition chain_decomposition(std::int64_t n, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("chain ratio must be at least 2");
  if (n < 1) throw std::invalid_argument("chain limit must be positive");
  ChainDecomposition out{d, n, {}};
  for (std::int64_t l = 1; l <= n; ++l) {
    if (l % d == 0) continue;
    std::vector<Element> chain;
    for (std::int64_t m = l;; m *= d) {
      chain.push_back(m);
      if (m > n / d) break;
    }
    out.chains.push_back(std::move(chain));
  }
  return out;
}

MatrixCoord matrix_coord(std::int64_t m, std::int64_t d) {
  const auto f = factorize(m, d);
  return {f.exponent + 1, f.cofactor - f.cofactor / d};
}

std::int64_t matrix_coord_inverse(MatrixCoord coord, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("matrix base must be at least 2");
  if (coord.row < 1 || coord.col < 1) throw std::invalid_argument("matrix coordinates start at 1");
  // Every block of d-1 consecutive non-multiples spans d integers.
  const auto l = coord.col + (coord.col - 1) / (d - 1);
  const auto scale = ipow(d, static_cast<int>(coord.row - 1));
  if (l > std::numeric_limits<std::int64_t>::max() / scale) {
    throw std::overflow_error("matrix coordinate does not fit in 64 bits");
  }
  return scale * l;
}

DenseSet LayerDecomposition::layer_range(std::size_t first, std::size_t last) const {
  if (first < 1 || last > layers.size() || first > last) {
    throw std::out_of_range("layer range [" + std::to_string(first) + "," + std::to_string(last) +
                            "] outside 1.." + std::to_string(layers.size()));
  }
  DenseSet out = layers[first - 1];
  for (auto i = first + 1; i <= last; ++i) out |= layers[i - 1];
  return out;
}

LayerDecomposition integer_layers(std::int64_t n, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("layer base must be at least 2");
  const auto amb = Ambient::interval(n);
  LayerDecomposition out{LayerContext::Integers, d, n, {}};
  for (Element x = 1; x <= n; ++x) {
    const auto i = static_cast<std::size_t>(valuation(x, d)) + 1;
    while (out.layers.size() < i) out.layers.emplace_back(amb);
    out.layers[i - 1].insert(x);
  }
  return out;
}

LayerDecomposition prime_power_layers(std::int64_t p, int l) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (l < 1) throw std::invalid_argument("prime power exponent must be at least 1");
  const auto n = ipow(p, l);
  const auto amb = Ambient::cyclic(n);
  LayerDecomposition out{LayerContext::PrimePower, p, l,
                         std::vector<DenseSet>(static_cast<std::size_t>(l) + 1, DenseSet(amb))};
  out.layers.back().insert(0);
  for (Element x = 1; x < n; ++x) {
    out.layers[static_cast<std::size_t>(valuation(x, p))].insert(x);
  }
  return out;
}

DenseSet alternating_chain_set(std::int64_t n, std::int64_t d) {
  const auto layers = integer_layers(n, d);
  DenseSet out(Ambient::interval(n));
  for (std::size_t i = 0; i < layers.layers.size(); i += 2) out |= layers.layers[i];
  return out;
}

BlockPartition block_partition(std::int64_t p, int l, int d) {
  if (d < 1) throw std::invalid_argument("block width must be at least 1");
  const auto layers = prime_power_layers(p, l);
  BlockPartition out{p, l, d, (l + 1) / d, {}, {}};
  for (int t = 0; t < out.q; ++t) out.ranges.emplace_back(t * d + 1, (t + 1) * d);
  if (out.q * d + 1 <= l + 1) out.ranges.emplace_back(out.q * d + 1, l + 1);
  for (const auto& [first, last] : out.ranges) {
    out.blocks.push_back(layers.layer_range(static_cast<std::size_t>(first),
                                            static_cast<std::size_t>(last)));
  }
  return out;
}

}  // namespace cubefree
