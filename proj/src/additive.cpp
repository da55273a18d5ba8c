#include "cubefree/additive.hpp"

#include <bit>

#include "cubefree/constructions.hpp"

namespace cubefree {

namespace {

// Subsets of Z_m (m <= 64) as bit masks; bit i is residue i.
using Mask = std::uint64_t;

Mask full_mask(std::int64_t m) {
  return m == 64 ? ~Mask{0} : (Mask{1} << m) - 1;
}

// {x + a mod m : x in s}
Mask rotate(Mask s, std::int64_t a, std::int64_t m) {
  a = mod(a, m);
  if (a == 0) return s;
  return ((s << a) | (s >> (m - a))) & full_mask(m);
}

std::vector<Element> mask_elements(Mask s) {
  std::vector<Element> out;
  for (; s; s &= s - 1) out.push_back(std::countr_zero(s));
  return out;
}

}  // namespace

DenseSet sumset(const DenseSet& a, const DenseSet& b) {
  const auto& amb = a.ambient();
  if (!(amb == b.ambient())) {
    throw std::invalid_argument("sumset operands live in different ambients: " + amb.describe() +
                                " vs " + b.ambient().describe());
  }
  if (!amb.is_cyclic()) throw std::invalid_argument("sumset is defined on Z_p only");
  DenseSet out(amb);
  const auto bs = b.elements();
  a.for_each([&](Element x) {
    for (const auto y : bs) out.insert(mod(x + y, amb.order()));
  });
  return out;
}

CauchyDavenportVerdict cauchy_davenport_check(std::int64_t p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("Cauchy-Davenport needs a prime modulus, got " + std::to_string(p));
  }
  if (p > kCauchyDavenportMaxPrime) {
    throw CapExceeded("exhaustive Cauchy-Davenport check is capped at p <= " +
                      std::to_string(kCauchyDavenportMaxPrime));
  }
  CauchyDavenportVerdict v;
  v.p = p;
  const Mask limit = Mask{1} << p;
  for (Mask a = 1; a < limit; ++a) {
    const auto size_a = std::popcount(a);
    for (Mask b = 1; b < limit; ++b) {
      Mask sum = 0;
      for (Mask rest = a; rest; rest &= rest - 1) sum |= rotate(b, std::countr_zero(rest), p);
      ++v.pairs_checked;
      const auto bound = std::min<std::int64_t>(size_a + std::popcount(b) - 1, p);
      if (std::popcount(sum) < bound && v.pass) {
        v.pass = false;
        v.counterexample.emplace(mask_elements(a), mask_elements(b));
      }
    }
  }
  return v;
}

SubsetSumProfile s_t_set(const std::vector<Element>& coefficients, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("S_t modulus must be at least 2");
  if (static_cast<std::int64_t>(coefficients.size()) > d) {
    throw std::invalid_argument("S_t needs t <= d");
  }
  const auto amb = Ambient::cyclic(d);
  DenseSet achieved(amb);
  for (const auto raw : coefficients) {
    const auto a = mod(raw, d);
    if (a == 0) throw std::invalid_argument("S_t coefficients must be nonzero mod d");
    DenseSet next = translate(achieved, -a);
    next.insert(a);
    achieved |= next;
  }
  return {d, coefficients, std::move(achieved)};
}

SubsetSumLemmaVerdict verify_s_t_lemma(std::int64_t d, int t_max) {
  if (d < 2) throw std::invalid_argument("lemma check needs d >= 2");
  if (d > 64) throw CapExceeded("lemma check is limited to d <= 64");
  if (t_max < 1 || t_max > d) throw std::invalid_argument("lemma check needs 1 <= t_max <= d");
  SubsetSumLemmaVerdict v;
  v.d = d;
  v.t_max = t_max;
  std::vector<Element> tuple;
  // Depth-first over tuples; every prefix of length t is itself a tuple of
  // length t, so a single traversal covers all t <= t_max.
  auto visit = [&](auto&& self, Mask achieved) -> void {
    for (Element a = 1; a < d; ++a) {
      const Mask next = achieved | rotate(achieved, a, d) | (Mask{1} << a);
      tuple.push_back(a);
      ++v.tuples_checked;
      const bool zero_reached = next & 1u;
      if (!zero_reached && std::popcount(next) < static_cast<int>(tuple.size()) && v.pass) {
        v.pass = false;
        v.counterexample = tuple;
      }
      if (static_cast<int>(tuple.size()) < t_max) self(self, next);
      tuple.pop_back();
    }
  };
  visit(visit, Mask{0});
  return v;
}

std::vector<std::size_t> zero_subset_sum(const std::vector<Element>& residues, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("modulus must be positive");
  if (static_cast<std::int64_t>(residues.size()) != d) {
    throw std::invalid_argument("expected exactly " + std::to_string(d) + " residues, got " +
                                std::to_string(residues.size()));
  }
  for (const auto r : residues) {
    if (mod(r, d) == 0) throw std::invalid_argument("residues must be nonzero mod d");
  }
  std::vector<std::size_t> chosen;
  // Preorder over ascending index lists is lexicographic order.
  auto visit = [&](auto&& self, std::size_t start, std::int64_t sum) -> bool {
    for (auto i = start; i < residues.size(); ++i) {
      chosen.push_back(i);
      const auto s = mod(sum + residues[i], d);
      if (s == 0 || self(self, i + 1, s)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!visit(visit, 0, 0)) {
    throw std::logic_error("no zero-sum subset found; the d-residue pigeonhole argument failed");
  }
  return chosen;
}

namespace {

IndexedFamily dilation_family(std::string id, Ambient amb, const DenseSet& index_set,
                              std::int64_t max_multiplier, DenseSet support) {
  IndexedFamily f{std::move(id), amb, {}, {}, std::move(support)};
  index_set.for_each([&](Element x) {
    DenseSet member(amb);
    for (std::int64_t j = 1; j <= max_multiplier; ++j) member.insert(mod(j * x, amb.order()));
    f.indices.push_back(x);
    f.members.push_back(std::move(member));
  });
  return f;
}

}  // namespace

IndexedFamily family_diagonal(std::int64_t n, std::int64_t d) {
  if (d < 2) throw std::invalid_argument("diagonal family needs d >= 2");
  const auto amb = Ambient::cyclic(n);
  auto nonzero = DenseSet::full(amb);
  nonzero.erase(0);
  return dilation_family("diagonal(N=" + std::to_string(n) + ",d=" + std::to_string(d) + ")", amb,
                         nonzero, d - 1, nonzero);
}

IndexedFamily family_prime_power(std::int64_t p, int l, int d, int a) {
  if (d < 1) throw std::invalid_argument("prime-power family needs d >= 1");
  if (a < 1 || a > l - d + 1) {
    throw std::invalid_argument("layer index a=" + std::to_string(a) + " outside 1.." +
                                std::to_string(l - d + 1));
  }
  const auto layers = prime_power_layers(p, l);
  auto support = layers.layer_range(static_cast<std::size_t>(a), static_cast<std::size_t>(a + d - 1));
  return dilation_family("prime_power(p=" + std::to_string(p) + ",l=" + std::to_string(l) +
                             ",d=" + std::to_string(d) + ",a=" + std::to_string(a) + ")",
                         Ambient::cyclic(ipow(p, l)), layers.layer(static_cast<std::size_t>(a)),
                         ipow(p, d) - 1, std::move(support));
}

IncidenceReport incidence_report(const IndexedFamily& family, std::size_t expected_multiplicity,
                                 std::size_t expected_set_size) {
  IncidenceReport r;
  r.family_id = family.id;
  r.family_size = family.members.size();
  r.expected_set_size = expected_set_size;
  r.expected_multiplicity = expected_multiplicity;
  const auto n = static_cast<std::size_t>(family.ambient.order());
  std::vector<std::size_t> multiplicity(n, 0);

  const auto fail = [&](std::string why) {
    if (r.pass) {
      r.pass = false;
      r.failure = std::move(why);
    }
  };

  for (std::size_t i = 0; i < family.members.size(); ++i) {
    const auto& member = family.members[i];
    const auto size = member.size();
    r.member_total += size;
    member.for_each([&](Element e) { ++multiplicity[family.ambient.index_of(e)]; });
    if (size != expected_set_size) {
      if (r.pass) r.offending_index = family.indices[i];
      fail("member for index " + std::to_string(family.indices[i]) + " has size " +
           std::to_string(size) + ", expected " + std::to_string(expected_set_size));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto e = family.ambient.element_at(i);
    const auto m = multiplicity[i];
    r.multiplicity_total += m;
    ++r.multiplicity_histogram[m];
    const auto want = family.support.contains(e) ? expected_multiplicity : 0;
    if (m != want) {
      if (r.pass) r.offending_element = e;
      fail("element " + std::to_string(e) + " has multiplicity " + std::to_string(m) +
           ", expected " + std::to_string(want));
    }
  }

  r.identity_lhs = static_cast<std::uint64_t>(expected_set_size) * r.family_size;
  r.identity_rhs = static_cast<std::uint64_t>(expected_multiplicity) * family.support.size();
  if (r.identity_lhs != r.identity_rhs) {
    fail("double-counting identity " + std::to_string(r.identity_lhs) +
         " != " + std::to_string(r.identity_rhs));
  }
  if (r.member_total != r.multiplicity_total) {
    fail("incidence totals disagree: " + std::to_string(r.member_total) + " vs " +
         std::to_string(r.multiplicity_total));
  }
  return r;
}

}  // namespace cubefree
