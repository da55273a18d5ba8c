#include "cubefree/ambient.hpp"

#include <bit>
#include <limits>
#include <numeric>

namespace cubefree {

Ambient::Ambient(AmbientKind kind, std::int64_t order) : kind_(kind), order_(order) {
  if (order < 1) throw std::invalid_argument("ambient order must be at least 1");
  if (order > kMaxOrder) {
    throw CapExceeded("ambient order " + std::to_string(order) + " exceeds the supported maximum " +
                      std::to_string(kMaxOrder));
  }
}

std::optional<Element> Ambient::reduce(Element value) const {
  if (is_cyclic()) return mod(value, order_);
  if (value < 1 || value > order_) return std::nullopt;
  return value;
}

std::string Ambient::describe() const {
  return (is_cyclic() ? "Z_" : "[") + std::to_string(order_) + (is_cyclic() ? "" : "]");
}

DenseSet::DenseSet(Ambient ambient)
    : ambient_(ambient), words_(static_cast<std::size_t>((ambient.order() + 63) / 64), 0) {}

DenseSet DenseSet::from_elements(Ambient ambient, std::span<const Element> elements) {
  DenseSet set(ambient);
  for (const auto e : elements) set.insert(e);
  return set;
}

DenseSet DenseSet::full(Ambient ambient) {
  DenseSet set(ambient);
  for (auto& w : set.words_) w = ~std::uint64_t{0};
  const auto tail = static_cast<unsigned>(ambient.order() % 64);
  if (tail != 0) set.words_.back() = (std::uint64_t{1} << tail) - 1;
  return set;
}

void DenseSet::insert(Element e) {
  if (!ambient_.contains(e)) {
    throw std::out_of_range("element " + std::to_string(e) + " is outside " + ambient_.describe());
  }
  const auto i = ambient_.index_of(e);
  words_[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void DenseSet::erase(Element e) {
  if (!ambient_.contains(e)) return;
  const auto i = ambient_.index_of(e);
  words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

std::size_t DenseSet::size() const {
  std::size_t n = 0;
  for (const auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool DenseSet::empty() const {
  for (const auto w : words_) {
    if (w) return false;
  }
  return true;
}

std::vector<Element> DenseSet::elements() const {
  std::vector<Element> out;
  out.reserve(size());
  for_each([&](Element e) { out.push_back(e); });
  return out;
}

bool DenseSet::is_subset_of(const DenseSet& other) const {
  require_same_ambient(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

DenseSet& DenseSet::operator&=(const DenseSet& other) {
  require_same_ambient(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

DenseSet& DenseSet::operator|=(const DenseSet& other) {
  require_same_ambient(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

void DenseSet::require_same_ambient(const DenseSet& other) const {
  if (!(ambient_ == other.ambient_)) {
    throw std::invalid_argument("set operation across different ambients: " + ambient_.describe() +
                                " vs " + other.ambient_.describe());
  }
}

std::int64_t Factorization::reconstruct() const { return ipow(base, exponent) * cofactor; }

DenseSet dilate(const DenseSet& set, std::int64_t factor) {
  if (factor < 0) throw std::invalid_argument("dilation factor must be non-negative");
  const auto& amb = set.ambient();
  DenseSet out(amb);
  const auto n = amb.order();
  set.for_each([&](Element a) {
    if (amb.is_cyclic()) {
      out.insert(static_cast<Element>((static_cast<__int128>(a) * factor) % n));
    } else if (factor != 0 && a <= n / factor) {
      out.insert(a * factor);
    }
  });
  return out;
}

DenseSet translate(const DenseSet& set, Element shift) {
  const auto& amb = set.ambient();
  if (!amb.is_cyclic()) throw std::invalid_argument("translation is only defined on Z_N");
  DenseSet out(amb);
  const auto n = amb.order();
  const auto s = mod(shift, n);
  set.for_each([&](Element a) { out.insert(mod(a - s, n)); });
  return out;
}

DenseSet complement(const DenseSet& set) {
  DenseSet out = DenseSet::full(set.ambient());
  set.for_each([&](Element a) { out.erase(a); });
  return out;
}

Factorization factorize(std::int64_t m, std::int64_t base) {
  if (base < 2) throw std::invalid_argument("factorization base must be at least 2");
  if (m < 1) throw std::invalid_argument("factorize expects a positive integer");
  Factorization f{base, 0, m};
  while (f.cofactor % base == 0) {
    f.cofactor /= base;
    ++f.exponent;
  }
  return f;
}

std::int64_t preimage_count(Element target, std::int64_t factor, std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  const auto k = std::gcd(mod(factor, modulus), modulus);
  return mod(target, modulus) % k == 0 ? k : 0;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  return smallest_prime_factor(n) == n;
}

std::int64_t smallest_prime_factor(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("smallest prime factor needs n >= 2");
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return f;
  }
  return n;
}

std::int64_t ipow(std::int64_t base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  std::int64_t r = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / (base < 0 ? -base : base)) {
      throw std::overflow_error("integer power overflows 64 bits");
    }
    r *= base;
  }
  return r;
}

int valuation(std::int64_t x, std::int64_t p) {
  if (x == 0) throw std::invalid_argument("valuation of zero is unbounded");
  if (p < 2) throw std::invalid_argument("valuation base must be at least 2");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace cubefree
