#pragma once

#include <utility>
#include <vector>

#include "cubefree/ambient.hpp"

namespace cubefree {

/// {a in Z_N : a mod d in {1, ..., d-1}}. Requires d | N.
DenseSet residue_construction(std::int64_t n, std::int64_t d);

/// {x : N/3 < x <= N} in the given ambient; on Z_N the element N becomes 0.
DenseSet interval_construction(Ambient ambient);

/// Geometric chains l, dl, d^2 l, ... inside [N], one per starter l with d not
/// dividing l, ordered by starter.
struct ChainDecomposition {
  std::int64_t ratio;
  std::int64_t limit;
  std::vector<std::vector<Element>> chains;
};

ChainDecomposition chain_decomposition(std::int64_t n, std::int64_t d);

struct MatrixCoord {
  std::int64_t row;
  std::int64_t col;
  friend bool operator==(const MatrixCoord&, const MatrixCoord&) = default;
};

/// m = d^s * l  ->  (s + 1, l - floor(l / d)).
MatrixCoord matrix_coord(std::int64_t m, std::int64_t d);
/// Inverse of matrix_coord: col selects the col-th positive integer not
/// divisible by d.
std::int64_t matrix_coord_inverse(MatrixCoord coord, std::int64_t d);

enum class LayerContext { Integers, PrimePower };

/// Layers indexed from 1; `layers[i - 1]` holds L_i.
///
/// Integers(N, d): L_i = {x in [N] : d^(i-1) | x, d^i does not divide x}.
/// PrimePower(p, l): L_i = {x in Z_{p^l} : v_p(x) = i - 1} for i <= l, and
/// L_{l+1} = {0}.
struct LayerDecomposition {
  LayerContext context;
  std::int64_t base;      // d for Integers, p for PrimePower
  std::int64_t extent;    // N for Integers, l for PrimePower
  std::vector<DenseSet> layers;

  const DenseSet& layer(std::size_t i) const { return layers.at(i - 1); }
  /// L_first | ... | L_last.
  DenseSet layer_range(std::size_t first, std::size_t last) const;
};

LayerDecomposition integer_layers(std::int64_t n, std::int64_t d);
LayerDecomposition prime_power_layers(std::int64_t p, int l);

/// Union of the odd-indexed integer layers L_1, L_3, ... inside [N]. This
/// takes every other element of each chain starting from the first, so it
/// is {x, dx}-free.
DenseSet alternating_chain_set(std::int64_t n, std::int64_t d);

/// Z_{p^l} split into consecutive layer ranges of width d, the last range
/// [qd + 1, l + 1] being whatever remains (omitted when empty).
struct BlockPartition {
  std::int64_t p;
  int l;
  int d;
  int q;
  std::vector<std::pair<int, int>> ranges;
  std::vector<DenseSet> blocks;
};

BlockPartition block_partition(std::int64_t p, int l, int d);

}  // namespace cubefree
