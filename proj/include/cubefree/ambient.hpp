#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubefree {

using Element = std::int64_t;

/// Largest supported ambient order. Bit vectors are sized to N, so this is a
/// memory bound rather than an arithmetic one.
inline constexpr std::int64_t kMaxOrder = std::int64_t{1} << 24;

/// Raised when an input exceeds a configured search or capacity limit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AmbientKind { Cyclic, Interval };

/// Z_N (residues 0..N-1) or the integer interval [N] = {1..N}.
class Ambient {
 public:
  static Ambient cyclic(std::int64_t order) { return {AmbientKind::Cyclic, order}; }
  static Ambient interval(std::int64_t order) { return {AmbientKind::Interval, order}; }

  AmbientKind kind() const { return kind_; }
  std::int64_t order() const { return order_; }
  bool is_cyclic() const { return kind_ == AmbientKind::Cyclic; }

  Element first() const { return is_cyclic() ? 0 : 1; }
  Element last() const { return is_cyclic() ? order_ - 1 : order_; }
  bool contains(Element e) const { return e >= first() && e <= last(); }

  std::size_t index_of(Element e) const { return static_cast<std::size_t>(e - first()); }
  Element element_at(std::size_t index) const { return static_cast<Element>(index) + first(); }

  /// Image of an integer in the ambient: value mod N for Z_N; for [N] the
  /// value itself when 1 <= value <= N, otherwise nothing.
  std::optional<Element> reduce(Element value) const;

  std::string describe() const;

  friend bool operator==(const Ambient&, const Ambient&) = default;

 private:
  Ambient(AmbientKind kind, std::int64_t order);

  AmbientKind kind_;
  std::int64_t order_;
};

/// Bit-indexed subset of an ambient.
class DenseSet {
 public:
  explicit DenseSet(Ambient ambient);

  static DenseSet from_elements(Ambient ambient, std::span<const Element> elements);
  static DenseSet from_elements(Ambient ambient, std::initializer_list<Element> elements) {
    return from_elements(ambient, std::span<const Element>(elements.begin(), elements.size()));
  }
  static DenseSet full(Ambient ambient);

  const Ambient& ambient() const { return ambient_; }

  bool contains(Element e) const {
    if (!ambient_.contains(e)) return false;
    const auto i = ambient_.index_of(e);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void insert(Element e);
  void erase(Element e);

  std::size_t size() const;
  bool empty() const;
  std::vector<Element> elements() const;
  bool is_subset_of(const DenseSet& other) const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(ambient_.element_at(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  std::span<const std::uint64_t> words() const { return words_; }

  DenseSet& operator&=(const DenseSet& other);
  DenseSet& operator|=(const DenseSet& other);
  friend DenseSet operator&(DenseSet a, const DenseSet& b) { return a &= b; }
  friend DenseSet operator|(DenseSet a, const DenseSet& b) { return a |= b; }
  friend bool operator==(const DenseSet&, const DenseSet&) = default;

 private:
  void require_same_ambient(const DenseSet& other) const;

  Ambient ambient_;
  std::vector<std::uint64_t> words_;
};

/// m = base^exponent * cofactor with base not dividing cofactor.
struct Factorization {
  std::int64_t base;
  int exponent;
  std::int64_t cofactor;

  std::int64_t reconstruct() const;
};

/// {c*a mod N} on Z_N, or {c*a : c*a <= N} on [N].
DenseSet dilate(const DenseSet& set, std::int64_t factor);

/// {a - shift mod N}. Cyclic ambient only.
DenseSet translate(const DenseSet& set, Element shift);

DenseSet complement(const DenseSet& set);

Factorization factorize(std::int64_t m, std::int64_t base);

/// Number of x in Z_N with factor*x == target (mod modulus).
std::int64_t preimage_count(Element target, std::int64_t factor, std::int64_t modulus);

// Number theory helpers shared by the other modules.
bool is_prime(std::int64_t n);
std::int64_t smallest_prime_factor(std::int64_t n);
/// Non-negative residue of value mod modulus.
inline std::int64_t mod(std::int64_t value, std::int64_t modulus) {
  const auto r = value % modulus;
  return r < 0 ? r + modulus : r;
}
/// Exact integer power; throws std::overflow_error when the result does not fit.
std::int64_t ipow(std::int64_t base, int exponent);
/// p-adic valuation of a nonzero x.
int valuation(std::int64_t x, std::int64_t p);

}  // namespace cubefree
