#include "cubefree/cube.hpp"

#include <algorithm>

namespace cubefree {

GeneratorMultiset::GeneratorMultiset(Ambient ambient, std::vector<Element> entries)
    : ambient_(ambient), entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("generator multiset must be nonempty");
  for (const auto e : entries_) {
    if (!ambient_.contains(e)) {
      throw std::out_of_range("generator entry " + std::to_string(e) + " is outside " +
                              ambient_.describe());
    }
  }
  std::sort(entries_.begin(), entries_.end());
}

DenseSet project_cube(const GeneratorMultiset& generator) {
  const auto& amb = generator.ambient();
  // Sums are tracked unreduced on [N] so that overflow is only dropped at
  // the end; on Z_N reduction commutes with addition.
  std::vector<Element> sums;
  for (const auto a : generator.entries()) {
    const auto prior = sums.size();
    for (std::size_t i = 0; i < prior; ++i) {
      auto s = sums[i] + a;
      if (amb.is_cyclic()) s = mod(s, amb.order());
      sums.push_back(s);
    }
    sums.push_back(a);
    std::sort(sums.begin(), sums.end());
    sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  }
  DenseSet cube(amb);
  for (const auto s : sums) {
    if (const auto r = amb.reduce(s)) cube.insert(*r);
  }
  return cube;
}

namespace {

class CubeSearch {
 public:
  CubeSearch(const DenseSet& set, int d)
      : set_(set), amb_(set.ambient()), depth_(d), members_(set.elements()),
        present_(static_cast<std::size_t>(amb_.order()), 0) {}

  std::optional<std::vector<Element>> run() {
    if (members_.empty()) return std::nullopt;
    if (extend(0)) return chosen_;
    return std::nullopt;
  }

 private:
  // Tries entries from members_[start..] at the next position.
  bool extend(std::size_t start) {
    if (static_cast<int>(chosen_.size()) == depth_) return true;
    for (std::size_t i = start; i < members_.size(); ++i) {
      const auto a = members_[i];
      const auto mark = sums_.size();
      if (!add_entry(a)) {
        rollback(mark);
        continue;
      }
      chosen_.push_back(a);
      if (extend(i)) return true;
      chosen_.pop_back();
      rollback(mark);
    }
    return false;
  }

  // Appends {a} and P + a to the achieved sums; false if any leaves the set.
  // Only sums not already achieved are appended, so rollback to the prior
  // size undoes exactly this entry.
  bool add_entry(Element a) {
    const auto prior = sums_.size();
    if (!accept(a)) return false;
    for (std::size_t i = 0; i < prior; ++i) {
      if (!accept(sums_[i] + a)) return false;
    }
    return true;
  }

  bool accept(Element raw) {
    const auto r = amb_.reduce(raw);
    if (!r || !set_.contains(*r)) return false;
    auto& seen = present_[amb_.index_of(*r)];
    if (!seen) {
      seen = 1;
      sums_.push_back(*r);
    }
    return true;
  }

  void rollback(std::size_t mark) {
    while (sums_.size() > mark) {
      present_[amb_.index_of(sums_.back())] = 0;
      sums_.pop_back();
    }
  }

  const DenseSet& set_;
  Ambient amb_;
  int depth_;
  std::vector<Element> members_;
  std::vector<Element> chosen_;
  std::vector<Element> sums_;
  std::vector<char> present_;
};

}  // namespace

std::optional<CubeWitness> find_cube(const DenseSet& set, int d) {
  if (d < 1) throw std::invalid_argument("cube dimension must be at least 1");
  CubeSearch search(set, d);
  auto entries = search.run();
  if (!entries) return std::nullopt;
  GeneratorMultiset generator(set.ambient(), std::move(*entries));
  auto cube = project_cube(generator);
  return CubeWitness{std::move(generator), std::move(cube)};
}

bool is_cube_free(const DenseSet& set, int d) { return !find_cube(set, d).has_value(); }

DenseSet shifted_intersection(const DenseSet& set, Element x, int d) {
  if (!set.ambient().is_cyclic()) {
    throw std::invalid_argument("shifted intersection is only defined on Z_N");
  }
  if (d < 1) throw std::invalid_argument("shift count must be at least 1");
  DenseSet out = set;
  for (int j = 1; j < d; ++j) out &= translate(set, x * j);
  return out;
}

std::optional<Element> diagonal_witness(const DenseSet& set, int d, bool include_zero) {
  if (d < 2) throw std::invalid_argument("diagonal pattern needs d >= 2");
  const auto& amb = set.ambient();
  const auto contains_pattern = [&](Element x) {
    for (int j = 1; j < d; ++j) {
      const auto r = amb.reduce(x * j);
      if (!r || !set.contains(*r)) return false;
    }
    return true;
  };
  if (include_zero && amb.is_cyclic() && contains_pattern(0)) return Element{0};
  for (Element x = std::max<Element>(1, amb.first()); x <= amb.last(); ++x) {
    if (contains_pattern(x)) return x;
  }
  return std::nullopt;
}

}  // namespace cubefree
