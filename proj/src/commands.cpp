#include "cubefree/commands.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace cubefree {

namespace {

std::int64_t effective_cap(const MaxRequest& r, std::int64_t default_cap, std::int64_t hard_cap) {
  if (r.force) return hard_cap;
  return std::min(r.cap.value_or(default_cap), hard_cap);
}

}  // namespace

SearchResult run_max(const MaxRequest& request) {
  const auto& problem = request.problem;
  problem.validate();
  const auto n = problem.ambient.order();

  auto method = request.method;
  if (method == MethodChoice::Auto) {
    method = problem.kind == ProblemKind::PairFree ? MethodChoice::DP : MethodChoice::BranchAndBound;
  }

  SearchResult result = [&] {
    switch (method) {
      case MethodChoice::BruteForce:
        return brute_force_max(problem, effective_cap(request, kDefaultBruteForceCap, kBranchAndBoundHardCap));
      case MethodChoice::DP:
        if (problem.kind != ProblemKind::PairFree) {
          throw std::invalid_argument("the DP solvers only handle pair-free problems");
        }
        return problem.ambient.is_cyclic() ? graph_dp_max_pairfree_cyclic(n, problem.d)
                                           : chain_dp_max_pairfree_interval(n, problem.d);
      case MethodChoice::BranchAndBound:
      case MethodChoice::Auto:
        break;
    }
    BranchAndBoundOptions options;
    options.cap = effective_cap(request, kDefaultBranchAndBoundCap, kBranchAndBoundHardCap);
    options.workers = request.workers;
    options.time_limit = request.time_limit;
    return branch_and_bound_max(problem, options);
  }();

  if (result.witness.size() != result.max_size || !satisfies(problem, result.witness)) {
    throw std::logic_error("witness for " + problem.describe() + " failed re-verification");
  }
  if (request.cross_check) {
    const auto brute = brute_force_max(problem, effective_cap(request, kDefaultBruteForceCap, kBranchAndBoundHardCap));
    if (brute.max_size != result.max_size) {
      throw std::runtime_error("cross-check mismatch: " + to_string(result.method) + " found " +
                               std::to_string(result.max_size) + ", brute force found " +
                               std::to_string(brute.max_size));
    }
  }
  return result;
}

std::string fingerprint(const MaxRequest& r) {
  std::ostringstream os;
  os << "max " << (r.problem.ambient.is_cyclic() ? "--cyclic " : "--interval ") << r.problem.ambient.order()
     << " --" << to_string(r.problem.kind) << ' ' << r.problem.d;
  if (r.problem.include_zero) os << " --include-zero";
  switch (r.method) {
    case MethodChoice::Auto: break;
    case MethodChoice::BruteForce: os << " --method brute"; break;
    case MethodChoice::BranchAndBound: os << " --method bnb"; break;
    case MethodChoice::DP: os << " --method dp"; break;
  }
  if (r.time_limit) os << " --time-limit " << r.time_limit->count();
  if (r.cross_check) os << " --cross-check";
  return os.str();
}

CheckOutcome run_check(const Problem& problem, const DenseSet& set) {
  problem.validate();
  CheckOutcome out;
  const auto& amb = problem.ambient;
  out.report = {{"ambient", amb.is_cyclic() ? "cyclic" : "interval"},
                {"N", amb.order()},
                {"pattern", to_string(problem.kind)},
                {"d", problem.d},
                {"set", set.elements()}};
  Json witness = nullptr;
  switch (problem.kind) {
    case ProblemKind::CubeFree:
      if (const auto w = find_cube(set, problem.d)) witness = to_json(*w);
      break;
    case ProblemKind::DiagonalFree:
      if (const auto x = diagonal_witness(set, problem.d, problem.include_zero)) {
        std::vector<Element> pattern;
        for (int j = 1; j < problem.d; ++j) pattern.push_back(*amb.reduce(*x * j));
        witness = {{"x", *x}, {"pattern", pattern}};
      }
      break;
    case ProblemKind::PairFree:
      set.for_each([&](Element a) {
        if (!witness.is_null()) return;
        const auto image = amb.reduce(a * problem.d);
        if (image && set.contains(*image)) witness = {{"x", a}, {"dx", *image}};
      });
      break;
  }
  out.free = witness.is_null();
  out.report["free"] = out.free;
  out.report["witness"] = witness;
  return out;
}

VerifySummary run_verify(const VerifyRequest& request, const std::function<void(const Verdict&)>& sink) {
  const auto* claim = find_claim(request.claim);
  if (!claim) throw std::invalid_argument("unknown claim id '" + request.claim + "'");
  const auto points = expand_points(*claim, request.points);

  VerifySummary summary;
  summary.claim = request.claim;
  const auto deliver = [&](const Verdict& v) {
    ++summary.total;
    ++(v.pass ? summary.passed : summary.failed);
    sink(v);
  };

  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, request.workers)), points.size());
  if (workers <= 1) {
    for (const auto& p : points) deliver(evaluate(*claim, p, request.context));
    return summary;
  }

  std::vector<std::optional<Verdict>> done(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto i = next.fetch_add(1); i < points.size() && !abort; i = next.fetch_add(1)) {
          std::optional<Verdict> v;
          std::exception_ptr error;
          try {
            v = evaluate(*claim, points[i], request.context);
          } catch (...) {
            error = std::current_exception();
          }
          std::lock_guard lock(mutex);
          done[i] = std::move(v);
          errors[i] = error;
          ready.notify_all();
        }
      });
    }
    try {
      for (std::size_t i = 0; i < points.size(); ++i) {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return done[i].has_value() || errors[i]; });
        if (errors[i]) std::rethrow_exception(errors[i]);
        const auto v = *done[i];
        lock.unlock();
        deliver(v);
      }
    } catch (...) {
      abort = true;
      throw;
    }
  }
  return summary;
}

std::string summary_line(const VerifySummary& s) {
  return "summary claim=" + s.claim + " total=" + std::to_string(s.total) +
         " passed=" + std::to_string(s.passed) + " failed=" + std::to_string(s.failed) +
         " status=" + (s.ok() ? "pass" : "fail");
}

namespace {

std::int64_t need(const std::optional<std::int64_t>& v, const char* flag, const std::string& name) {
  if (!v) throw std::invalid_argument("construct " + name + " needs --" + flag);
  return *v;
}

}  // namespace

Json run_construct(const ConstructRequest& r) {
  const auto& name = r.name;
  Json out = {{"construction", name}};
  const auto put_set = [&](const DenseSet& s) {
    out["ambient"] = to_json(s.ambient());
    out["elements"] = s.elements();
    out["size"] = s.size();
  };
  if (name == "residue") {
    put_set(residue_construction(need(r.n, "N", name), need(r.d, "d", name)));
  } else if (name == "interval") {
    const auto n = need(r.n, "N", name);
    const auto kind = r.ambient.value_or(AmbientKind::Interval);
    put_set(interval_construction(kind == AmbientKind::Cyclic ? Ambient::cyclic(n) : Ambient::interval(n)));
  } else if (name == "alternating") {
    put_set(alternating_chain_set(need(r.n, "N", name), need(r.d, "d", name)));
  } else if (name == "chains") {
    const auto c = chain_decomposition(need(r.n, "N", name), need(r.d, "d", name));
    out.update(to_json(c));
    out["count"] = c.chains.size();
  } else if (name == "layers") {
    if (r.p) {
      out.update(to_json(prime_power_layers(*r.p, static_cast<int>(need(r.l, "l", name)))));
    } else {
      out.update(to_json(integer_layers(need(r.n, "N", name), need(r.d, "d", name))));
    }
  } else if (name == "blocks") {
    out.update(to_json(block_partition(need(r.p, "p", name), static_cast<int>(need(r.l, "l", name)),
                                       static_cast<int>(need(r.d, "d", name)))));
  } else if (name == "matrix") {
    const auto d = need(r.d, "d", name);
    const auto upto = need(r.upto, "upto", name);
    if (upto < 1) throw std::invalid_argument("construct matrix needs --upto >= 1");
    Json rows = Json::array();
    for (std::int64_t m = 1; m <= upto; ++m) {
      const auto c = matrix_coord(m, d);
      rows.push_back({{"m", m}, {"row", c.row}, {"col", c.col}});
    }
    out["d"] = d;
    out["rows"] = rows;
  } else {
    throw std::invalid_argument("unknown construction '" + name +
                                "' (expected residue, interval, alternating, chains, layers, blocks, matrix)");
  }
  return out;
}

DenseSet parse_set(const Ambient& ambient, const std::string& text) {
  DenseSet out(ambient);
  std::string token;
  const auto flush = [&] {
    if (token.empty()) return;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw std::invalid_argument("malformed set element '" + token + "'");
    out.insert(v);
    token.clear();
  };
  for (const char c : text) {
    if (c == ',' || c == ' ' || c == '\n' || c == '\t' || c == '\r' || c == '{' || c == '}' ||
        c == '[' || c == ']') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return out;
}

}  // namespace cubefree
