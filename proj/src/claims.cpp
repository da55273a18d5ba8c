#include "cubefree/claims.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cubefree/additive.hpp"
#include "cubefree/constructions.hpp"
#include "cubefree/cube.hpp"

namespace cubefree {

std::string to_string(Comparator cmp) {
  switch (cmp) {
    case Comparator::AtMost: return "<=";
    case Comparator::Equal: return "==";
    case Comparator::Within: return "~=";
    case Comparator::Holds: return "holds";
  }
  return "?";
}

const std::vector<ClaimSpec>& claim_catalogue() {
  using enum Observer;
  using enum PointFilter;
  static const std::vector<ClaimSpec> catalogue = {
      {"thm5i", "3-cube-free subsets of Z_N with 3 | N have at most 2N/3 elements",
       {"N", "d"}, {"3..15", "3"}, DDividesN, CubeMax, BoundId::CubeFreeConjecture,
       Comparator::AtMost},
      {"thm5ii", "d-cube-free subsets of Z_N have at most (d-1)N/d elements when d is the "
                 "smallest prime factor of N",
       {"N", "d"}, {"2..16", "2..7"}, DSmallestPrimeFactorOfN, CubeMax,
       BoundId::CubeFreeConjecture, Comparator::AtMost},
      {"thm5iii", "d-cube-free subsets of Z_{p^l} with d | p^l have at most (d-1)N/d elements",
       {"N", "d"}, {"2..16", "2..4"}, NPrimePowerAndDDividesN, CubeMax,
       BoundId::CubeFreeConjecture, Comparator::AtMost},
      {"thm6", "3-cube-free subsets of any Z_N have at most 2N/3 elements",
       {"N", "d"}, {"1..15", "3"}, None, CubeMax, BoundId::CubeFreeConjecture,
       Comparator::AtMost},
      {"thm8", "maximum {x,dx}-free subset of [N] is dN/(d+1) up to 2 log2 N",
       {"N", "d"}, {"1..64", "2..4"}, None, PairChainInterval, BoundId::PairFreeInterval,
       Comparator::Within},
      {"thm8-exact", "chain DP on [N] matches exhaustive search",
       {"N", "d"}, {"1..20", "2..4"}, None, PairChainVsBrute, std::nullopt, Comparator::Equal},
      {"thm9", "{x,dx}-free subsets of Z_N have at most kN/(k+1) elements, k = gcd(d, N)",
       {"N", "d"}, {"1..20", "2..6"}, None, PairGraphCyclic, BoundId::PairFreeCyclic,
       Comparator::AtMost},
      {"thm9-exact", "functional-graph DP on Z_N matches exhaustive search",
       {"N", "d"}, {"1..20", "2..6"}, None, PairGraphVsBrute, std::nullopt, Comparator::Equal},
      {"cor10", "{x,(d-1)x}-free subsets of Z_N with d | N have at most kN/(k+1) <= (d-1)N/d "
                "elements, k = gcd(d-1, N)",
       {"N", "d"}, {"1..20", "3..6"}, DDividesN, PairGraphShifted, BoundId::PairFreeShifted,
       Comparator::AtMost},
      {"sec4.1", "{x,...,(d-1)x} family over nonzero x: sizes d-1, multiplicities d-1, "
                 "(d-1)|F| = (d-1)(N-1)",
       {"N", "d"}, {"25,35,49", "5,7"}, DSmallestPrimeFactorOfN, DiagonalIncidence,
       std::nullopt, Comparator::Equal},
      {"sec4.1-bound", "{x,...,(d-1)x}-free subsets of Z_N have at most (d-1)N/d elements when "
                       "d is the smallest prime factor of N",
       {"N", "d"}, {"2..16", "2..7"}, DSmallestPrimeFactorOfN, DiagonalMax,
       BoundId::CubeFreeConjecture, Comparator::AtMost},
      {"sec4.2", "{x,...,(p^d-1)x} family over layer a of Z_{p^l}: sizes p^d-1, multiplicities "
                 "(p-1)p^(d-1) on layers a..a+d-1",
       {"p", "l", "d"}, {"2,3", "3..4", "2"}, ValidPrimePower, PrimePowerIncidence,
       std::nullopt, Comparator::Equal, true},
      {"sec4.2-bound", "subsets of Z_{p^l} \\ {0} free of {x,...,(p^d-1)x} have at most "
                       "(1 - 1/(p^d-1)) p^l elements",
       {"p", "l", "d"}, {"2,3", "1..3", "1..2"}, ValidPrimePower, PrimePowerDiagonalMax,
       BoundId::PrimePowerDiagonal, Comparator::AtMost},
      {"lemma-s_t", "for nonzero a_1..a_t in Z_d with t <= d: 0 in S_t or |S_t| >= t",
       {"d"}, {"2..7"}, None, SubsetSumLemma, std::nullopt, Comparator::Holds},
      {"cauchy-davenport", "|A+B| >= min(|A|+|B|-1, p) for all nonempty A, B in Z_p",
       {"p"}, {"2..7"}, Prime, CauchyDavenport, std::nullopt, Comparator::Holds},
      {"construction-sec2", "{a : a mod d != 0} is d-cube-free with (d-1)N/d elements",
       {"N", "d"}, {"2..60", "2..5"}, DDividesN, ResidueConstruction,
       BoundId::CubeFreeConjecture, Comparator::Equal},
      {"interval-sec1", "(N/3, N] is 3-cube-free in [N] but not in Z_N",
       {"N"}, {"3..12"}, MultipleOfThree, IntervalDichotomy, std::nullopt, Comparator::Holds},
  };
  return catalogue;
}

const ClaimSpec* find_claim(std::string_view id) {
  const auto& all = claim_catalogue();
  const auto it = std::find_if(all.begin(), all.end(), [&](const ClaimSpec& c) { return c.id == id; });
  return it == all.end() ? nullptr : &*it;
}

namespace {

std::int64_t parse_int(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      out.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::int64_t get(const ParamList& point, std::string_view name) {
  for (const auto& [k, v] : point) {
    if (k == name) return v;
  }
  throw std::invalid_argument("missing parameter " + std::string(name));
}

bool is_prime_power(std::int64_t n) {
  if (n < 2) return false;
  const auto p = smallest_prime_factor(n);
  while (n % p == 0) n /= p;
  return n == 1;
}

bool accepts(PointFilter filter, const ParamList& point) {
  switch (filter) {
    case PointFilter::None: return true;
    case PointFilter::DDividesN: {
      const auto n = get(point, "N"), d = get(point, "d");
      return n >= 1 && d >= 1 && n % d == 0;
    }
    case PointFilter::DSmallestPrimeFactorOfN: {
      const auto n = get(point, "N"), d = get(point, "d");
      return n >= 2 && smallest_prime_factor(n) == d;
    }
    case PointFilter::NPrimePowerAndDDividesN: {
      const auto n = get(point, "N"), d = get(point, "d");
      return is_prime_power(n) && d >= 2 && n % d == 0;
    }
    case PointFilter::MultipleOfThree: {
      const auto n = get(point, "N");
      return n >= 3 && n % 3 == 0;
    }
    case PointFilter::Prime: return is_prime(get(point, "p"));
    case PointFilter::ValidPrimePower: {
      const auto p = get(point, "p"), l = get(point, "l"), d = get(point, "d");
      return is_prime(p) && l >= 1 && d >= 1 && d <= l;
    }
  }
  return false;
}

}  // namespace

std::vector<std::int64_t> parse_range(std::string_view text) {
  std::vector<std::int64_t> out;
  for (const auto part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_int(part));
      continue;
    }
    const auto lo = parse_int(part.substr(0, dots)), hi = parse_int(part.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range '" + std::string(part) + "'");
    if (hi - lo > 10'000'000) throw std::invalid_argument("range too long: '" + std::string(part) + "'");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<std::int64_t>> parse_tuples(std::string_view text) {
  std::vector<std::vector<std::int64_t>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ' || text[i] == ',') {
      ++i;
      continue;
    }
    if (text[i] != '(') throw std::invalid_argument("expected '(' in tuple list '" + std::string(text) + "'");
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated tuple in '" + std::string(text) + "'");
    std::vector<std::int64_t> tuple;
    for (const auto part : split(text.substr(i + 1, close - i - 1), ',')) tuple.push_back(parse_int(part));
    out.push_back(std::move(tuple));
    i = close + 1;
  }
  return out;
}

std::vector<ParamList> expand_points(const ClaimSpec& claim, const PointRequest& request) {
  std::vector<ParamList> raw;
  const auto arity = claim.params.size();
  if (request.tuples) {
    for (const auto& t : *request.tuples) {
      if (t.size() != arity) {
        throw std::invalid_argument("claim " + std::string(claim.id) + " expects tuples of " +
                                    std::to_string(arity) + " values");
      }
      ParamList point;
      for (std::size_t i = 0; i < arity; ++i) point.emplace_back(std::string(claim.params[i]), t[i]);
      raw.push_back(std::move(point));
    }
  } else {
    std::vector<std::vector<std::int64_t>> values;
    for (std::size_t i = 0; i < arity; ++i) {
      std::string_view text = claim.defaults[i];
      for (const auto& [name, range] : request.ranges) {
        if (name == claim.params[i]) text = range;
      }
      values.push_back(parse_range(text));
    }
    ParamList point;
    auto product = [&](auto&& self, std::size_t i) -> void {
      if (i == arity) {
        raw.push_back(point);
        return;
      }
      for (const auto v : values[i]) {
        point.emplace_back(std::string(claim.params[i]), v);
        self(self, i + 1);
        point.pop_back();
      }
    };
    product(product, 0);
  }
  for (const auto& [name, range] : request.ranges) {
    if (std::find(claim.params.begin(), claim.params.end(), name) == claim.params.end()) {
      throw std::invalid_argument("claim " + std::string(claim.id) + " takes no parameter " + name);
    }
  }

  std::vector<ParamList> out;
  for (auto& point : raw) {
    if (!accepts(claim.filter, point)) continue;
    if (!claim.expand_layer_index) {
      out.push_back(std::move(point));
      continue;
    }
    const auto l = get(point, "l"), d = get(point, "d");
    for (std::int64_t a = 1; a <= l - d + 1; ++a) {
      auto with_a = point;
      with_a.emplace_back("a", a);
      out.push_back(std::move(with_a));
    }
  }
  return out;
}

namespace {

std::string list(const std::vector<Element>& xs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << '}';
  return os.str();
}

// Exact cube/diagonal maxima go through branch and bound; brute force is
// reserved for the cross-check claims.
SearchResult exact_max(const Problem& problem, const ClaimContext& ctx) {
  BranchAndBoundOptions options;
  options.cap = ctx.branch_and_bound_cap;
  return branch_and_bound_max(problem, options);
}

void compare(Verdict& v) {
  switch (v.comparator) {
    case Comparator::AtMost: v.pass = v.observed.num <= v.bound.floor() * v.observed.den; break;
    case Comparator::Equal: v.pass = v.observed == v.bound; break;
    case Comparator::Within:
      v.pass = std::abs(v.observed.value() - v.bound.value()) <= v.tolerance;
      break;
    case Comparator::Holds: break;
  }
}

}  // namespace

Verdict evaluate(const ClaimSpec& claim, const ParamList& point, const ClaimContext& ctx) {
  Verdict v;
  v.claim = std::string(claim.id);
  v.params = point;
  v.comparator = claim.comparator;

  const auto param = [&](std::string_view name) { return get(point, name); };
  const auto bound = [&](BoundParams b) { return bound_value(*claim.bound, b); };
  const auto take_search = [&](const SearchResult& r) {
    v.observed = Rational::of(static_cast<std::int64_t>(r.max_size), 1);
    v.method = to_string(r.method);
    v.detail = "witness " + list(r.witness.elements());
  };

  switch (claim.observer) {
    case Observer::CubeMax: {
      const auto n = param("N"), d = param("d");
      take_search(exact_max({ProblemKind::CubeFree, static_cast<int>(d), Ambient::cyclic(n)}, ctx));
      v.bound = bound({.n = n, .d = d});
      break;
    }
    case Observer::DiagonalMax: {
      const auto n = param("N"), d = param("d");
      take_search(exact_max({ProblemKind::DiagonalFree, static_cast<int>(d), Ambient::cyclic(n)}, ctx));
      v.bound = bound({.n = n, .d = d});
      break;
    }
    case Observer::PrimePowerDiagonalMax: {
      const auto p = param("p"), l = param("l"), d = param("d");
      const auto n = ipow(p, static_cast<int>(l));
      const auto pattern = ipow(p, static_cast<int>(d));
      if (pattern > std::numeric_limits<int>::max()) throw std::invalid_argument("p^d too large");
      take_search(exact_max({ProblemKind::DiagonalFree, static_cast<int>(pattern), Ambient::cyclic(n),
                             /*include_zero=*/true},
                            ctx));
      v.bound = bound({.d = d, .p = p, .l = l});
      break;
    }
    case Observer::PairChainInterval: {
      const auto n = param("N"), d = param("d");
      const auto r = chain_dp_max_pairfree_interval(n, d);
      v.observed = Rational::of(static_cast<std::int64_t>(r.max_size), 1);
      v.method = to_string(r.method);
      v.bound = bound({.n = n, .d = d});
      v.tolerance = 2.0 * std::log2(static_cast<double>(std::max<std::int64_t>(n, 2)));
      break;
    }
    case Observer::PairChainVsBrute:
    case Observer::PairGraphVsBrute: {
      const auto n = param("N"), d = param("d");
      const bool interval = claim.observer == Observer::PairChainVsBrute;
      const auto dp = interval ? chain_dp_max_pairfree_interval(n, d) : graph_dp_max_pairfree_cyclic(n, d);
      const auto amb = interval ? Ambient::interval(n) : Ambient::cyclic(n);
      const Problem problem{ProblemKind::PairFree, static_cast<int>(d), amb};
      const auto brute = brute_force_max(problem, ctx.brute_force_cap);
      v.observed = Rational::of(static_cast<std::int64_t>(dp.max_size), 1);
      v.bound = Rational::of(static_cast<std::int64_t>(brute.max_size), 1);
      v.method = to_string(dp.method) + " vs " + to_string(brute.method);
      if (!satisfies(problem, dp.witness) || dp.witness.size() != dp.max_size) {
        v.detail = "DP witness fails re-verification";
        v.comparator = Comparator::Holds;
        v.pass = false;
        return v;
      }
      break;
    }
    case Observer::PairGraphCyclic:
    case Observer::PairGraphShifted: {
      const auto n = param("N"), d = param("d");
      const auto ratio = claim.observer == Observer::PairGraphShifted ? d - 1 : d;
      take_search(graph_dp_max_pairfree_cyclic(n, ratio));
      v.bound = bound({.n = n, .d = d});
      if (claim.observer == Observer::PairGraphShifted) {
        const auto weaker = bound_value(BoundId::CubeFreeConjecture, {.n = n, .d = d});
        if (v.bound.value() > weaker.value()) {
          v.comparator = Comparator::Holds;
          v.pass = false;
          v.detail = "kN/(k+1) = " + v.bound.str() + " exceeds (d-1)N/d = " + weaker.str();
          return v;
        }
      }
      break;
    }
    case Observer::DiagonalIncidence: {
      const auto n = param("N"), d = param("d");
      const auto report = incidence_report(family_diagonal(n, d), static_cast<std::size_t>(d - 1),
                                           static_cast<std::size_t>(d - 1));
      v.observed = Rational::of(static_cast<std::int64_t>(report.identity_lhs), 1);
      v.bound = Rational::of(static_cast<std::int64_t>(report.identity_rhs), 1);
      v.method = "incidence_scan";
      v.detail = report.pass ? "sizes and multiplicities uniform" : report.failure;
      v.pass = report.pass;
      return v;
    }
    case Observer::PrimePowerIncidence: {
      const auto p = param("p"), l = param("l"), d = param("d"), a = param("a");
      const auto set_size = ipow(p, static_cast<int>(d)) - 1;
      const auto multiplicity = (p - 1) * ipow(p, static_cast<int>(d - 1));
      const auto report = incidence_report(
          family_prime_power(p, static_cast<int>(l), static_cast<int>(d), static_cast<int>(a)),
          static_cast<std::size_t>(multiplicity), static_cast<std::size_t>(set_size));
      v.observed = Rational::of(static_cast<std::int64_t>(report.identity_lhs), 1);
      v.bound = Rational::of(static_cast<std::int64_t>(report.identity_rhs), 1);
      v.method = "incidence_scan";
      v.detail = report.pass ? "sizes and multiplicities uniform" : report.failure;
      v.pass = report.pass;
      return v;
    }
    case Observer::SubsetSumLemma: {
      const auto d = param("d");
      const auto r = verify_s_t_lemma(d, static_cast<int>(d));
      v.observed = Rational::of(static_cast<std::int64_t>(r.tuples_checked), 1);
      v.bound = v.observed;
      v.method = "exhaustive";
      v.pass = r.pass;
      v.detail = r.pass ? "tuples checked" : "counterexample " + list(*r.counterexample);
      return v;
    }
    case Observer::CauchyDavenport: {
      const auto r = cauchy_davenport_check(param("p"));
      v.observed = Rational::of(static_cast<std::int64_t>(r.pairs_checked), 1);
      v.bound = v.observed;
      v.method = "exhaustive";
      v.pass = r.pass;
      v.detail = r.pass ? "pairs checked"
                        : "counterexample A=" + list(r.counterexample->first) +
                              " B=" + list(r.counterexample->second);
      return v;
    }
    case Observer::ResidueConstruction: {
      const auto n = param("N"), d = param("d");
      const auto set = residue_construction(n, d);
      const auto witness = find_cube(set, static_cast<int>(d));
      v.observed = Rational::of(static_cast<std::int64_t>(set.size()), 1);
      v.bound = bound({.n = n, .d = d});
      v.method = "find_cube";
      if (witness) {
        v.comparator = Comparator::Holds;
        v.pass = false;
        v.detail = "cube generated by " + list(witness->generator.entries());
        return v;
      }
      v.detail = "cube-free";
      break;
    }
    case Observer::IntervalDichotomy: {
      const auto n = param("N");
      const auto in_interval = interval_construction(Ambient::interval(n));
      const auto in_cyclic = interval_construction(Ambient::cyclic(n));
      const bool free_interval = is_cube_free(in_interval, 3);
      const auto witness = find_cube(in_cyclic, 3);
      const bool reverified = witness && witness->cube.is_subset_of(in_cyclic) &&
                              project_cube(witness->generator) == witness->cube;
      v.observed = Rational::of(static_cast<std::int64_t>(in_interval.size()), 1);
      v.bound = v.observed;
      v.method = "find_cube";
      v.pass = free_interval && reverified;
      v.detail = std::string(free_interval ? "free in [N]" : "NOT free in [N]") + "; Z_N witness " +
                 (witness ? list(witness->generator.entries()) : std::string("none"));
      return v;
    }
  }
  compare(v);
  return v;
}

}  // namespace cubefree
