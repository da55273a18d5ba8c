#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cubefree/cache.hpp"
#include "cubefree/commands.hpp"

using namespace cubefree;

using V = std::vector<Element>;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cubefree-unit";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::filesystem::remove(path);
  return path;
}

std::vector<Json> verify_payloads(const std::string& claim, int workers, PointRequest points = {}) {
  VerifyRequest req;
  req.claim = claim;
  req.points = std::move(points);
  req.workers = workers;
  std::vector<Json> out;
  run_verify(req, [&](const Verdict& v) { out.push_back(strip_timing(to_json(v))); });
  return out;
}

}  // namespace

TEST_CASE("range and tuple parsing") {
  CHECK(parse_range("3..6") == std::vector<std::int64_t>{3, 4, 5, 6});
  CHECK(parse_range("2,4,8") == std::vector<std::int64_t>{2, 4, 8});
  CHECK(parse_range("7") == std::vector<std::int64_t>{7});
  CHECK(parse_range("2..4,9") == std::vector<std::int64_t>{2, 3, 4, 9});
  CHECK_THROWS_AS(parse_range("5..3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_range("x"), std::invalid_argument);
  CHECK(parse_tuples("(25,5),(49,7)") == std::vector<std::vector<std::int64_t>>{{25, 5}, {49, 7}});
  CHECK_THROWS_AS(parse_tuples("(25,5"), std::invalid_argument);
}

TEST_CASE("claim catalogue lookups and point expansion") {
  for (const auto& c : claim_catalogue()) {
    REQUIRE(find_claim(c.id) == &c);
    REQUIRE(c.params.size() == c.defaults.size());
  }
  CHECK(find_claim("thm99") == nullptr);

  PointRequest req;
  req.ranges = {{"N", "3..15"}};
  const auto points = expand_points(*find_claim("thm5i"), req);
  REQUIRE(points.size() == 5);
  CHECK(points[0] == ParamList{{"N", 3}, {"d", 3}});
  CHECK(points[4] == ParamList{{"N", 15}, {"d", 3}});

  PointRequest tuples;
  tuples.tuples = std::vector<std::vector<std::int64_t>>{{25, 5}, {49, 7}};
  CHECK(expand_points(*find_claim("sec4.1"), tuples).size() == 2);
  tuples.tuples = std::vector<std::vector<std::int64_t>>{{25}};
  CHECK_THROWS_AS(expand_points(*find_claim("sec4.1"), tuples), std::invalid_argument);

  // Prime-power families expand over every layer index a.
  PointRequest pp;
  pp.tuples = std::vector<std::vector<std::int64_t>>{{2, 4, 2}};
  const auto a_points = expand_points(*find_claim("sec4.2"), pp);
  REQUIRE(a_points.size() == 3);
  CHECK(a_points[2].back() == std::pair<std::string, std::int64_t>{"a", 3});
}

TEST_CASE("every catalogued claim passes on its default points") {
  for (const auto& c : claim_catalogue()) {
    CAPTURE(c.id);
    VerifyRequest req;
    req.claim = std::string(c.id);
    const auto s = run_verify(req, [&](const Verdict& v) {
      CAPTURE(verdict_text(v));
      CHECK(v.pass);
    });
    CHECK(s.total > 0);
    CHECK(s.ok());
  }
}

TEST_CASE("verdict comparators") {
  const auto v = evaluate(*find_claim("thm9"), {{"N", 10}, {"d", 2}});
  CHECK(v.pass);
  CHECK(v.observed == Rational::of(5, 1));
  CHECK(v.bound == Rational::of(20, 3));
  CHECK(v.method == "functional_graph_dp");
  const auto e = evaluate(*find_claim("thm8-exact"), {{"N", 20}, {"d", 3}});
  CHECK(e.pass);
  CHECK(e.observed == e.bound);
}

TEST_CASE("verify streams in parameter order for any worker count") {
  PointRequest pts;
  pts.ranges = {{"N", "3..18"}};
  const auto base = verify_payloads("thm6", 1, pts);
  REQUIRE(base.size() == 16);
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(base[i]["params"]["N"] == 3 + i);
  for (const int w : {2, 4, 8}) CHECK(verify_payloads("thm6", w, pts) == base);
}

TEST_CASE("verify rejects unknown claims") {
  VerifyRequest req;
  req.claim = "nope";
  CHECK_THROWS_AS(run_verify(req, [](const Verdict&) {}), std::invalid_argument);
}

TEST_CASE("summary line is machine-parseable") {
  VerifySummary s{"thm5i", 5, 4, 1};
  CHECK(summary_line(s) == "summary claim=thm5i total=5 passed=4 failed=1 status=fail");
}

TEST_CASE("run_max picks solvers and caps") {
  MaxRequest cube{{ProblemKind::CubeFree, 3, Ambient::cyclic(9)}};
  const auto r = run_max(cube);
  CHECK(r.max_size == 6);
  CHECK(r.method == Method::BranchAndBound);

  MaxRequest chain{{ProblemKind::PairFree, 2, Ambient::interval(10)}};
  CHECK(run_max(chain).max_size == 6);
  CHECK(run_max(chain).method == Method::ChainDP);

  MaxRequest graph{{ProblemKind::PairFree, 2, Ambient::cyclic(10)}};
  graph.cross_check = true;
  CHECK(run_max(graph).max_size == 5);
  CHECK(run_max(graph).method == Method::FunctionalGraphDP);

  MaxRequest big{{ProblemKind::CubeFree, 3, Ambient::cyclic(33)}};
  CHECK_THROWS_AS(run_max(big), CapExceeded);
  big.cap = 40;
  big.problem.ambient = Ambient::cyclic(24);
  CHECK(run_max(big).max_size == 16);

  MaxRequest dp_on_cube = cube;
  dp_on_cube.method = MethodChoice::DP;
  CHECK_THROWS_AS(run_max(dp_on_cube), std::invalid_argument);

  MaxRequest brute = cube;
  brute.method = MethodChoice::BruteForce;
  CHECK(run_max(brute).witness == r.witness);
}

TEST_CASE("max payloads are identical across worker counts") {
  MaxRequest req{{ProblemKind::CubeFree, 3, Ambient::cyclic(21)}};
  const auto base = strip_timing(to_json(run_max(req)));
  for (const int w : {1, 4, 8}) {
    req.workers = w;
    for (int rep = 0; rep < 3; ++rep) CHECK(strip_timing(to_json(run_max(req))) == base);
  }
  CHECK_FALSE(base.contains("elapsed_ms"));
}

TEST_CASE("fingerprint ignores workers and caps") {
  MaxRequest a{{ProblemKind::CubeFree, 3, Ambient::cyclic(9)}};
  MaxRequest b = a;
  b.workers = 8;
  b.cap = 12;
  CHECK(fingerprint(a) == fingerprint(b));
  CHECK(fingerprint(a) == "max --cyclic 9 --cube 3");
  b.problem.ambient = Ambient::interval(9);
  CHECK(fingerprint(a) != fingerprint(b));
}

TEST_CASE("run_check reports witnesses") {
  const auto z9 = Ambient::cyclic(9);
  const Problem cube{ProblemKind::CubeFree, 3, z9};
  CHECK(run_check(cube, parse_set(z9, "1,2,4,5,7,8")).free);
  const auto bad = run_check(cube, parse_set(z9, "0"));
  CHECK_FALSE(bad.free);
  CHECK(bad.report["witness"]["generator"] == Json::array({0, 0, 0}));
  CHECK(run_check({ProblemKind::CubeFree, 3, Ambient::interval(9)},
                  parse_set(Ambient::interval(9), "4 5 6 7 8 9"))
            .free);
  const auto pair = run_check({ProblemKind::PairFree, 2, Ambient::cyclic(10)}, parse_set(Ambient::cyclic(10), "3,6"));
  CHECK_FALSE(pair.free);
  CHECK(pair.report["witness"]["x"] == 3);
  CHECK(pair.report["witness"]["dx"] == 6);
  const auto diag = run_check({ProblemKind::DiagonalFree, 4, z9}, parse_set(z9, "{2,4,6}"));
  CHECK(diag.report["witness"]["x"] == 2);
}

TEST_CASE("parse_set") {
  const auto z = Ambient::cyclic(10);
  CHECK(parse_set(z, "").empty());
  CHECK(parse_set(z, "[1, 2,\n3]").elements() == V{1, 2, 3});
  CHECK_THROWS_AS(parse_set(z, "1,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_set(z, "10"), std::out_of_range);
  CHECK_THROWS_AS(parse_set(Ambient::interval(10), "0"), std::out_of_range);
}

TEST_CASE("run_construct") {
  ConstructRequest residue{"residue"};
  residue.n = 9;
  residue.d = 3;
  CHECK(run_construct(residue)["elements"] == Json::array({1, 2, 4, 5, 7, 8}));

  ConstructRequest chains{"chains"};
  chains.n = 10;
  chains.d = 2;
  CHECK(run_construct(chains)["count"] == 5);

  ConstructRequest matrix{"matrix"};
  matrix.d = 2;
  matrix.upto = 12;
  const auto rows = run_construct(matrix)["rows"];
  REQUIRE(rows.size() == 12);
  for (std::int64_t m = 1; m <= 12; ++m) {
    const auto& row = rows[static_cast<std::size_t>(m - 1)];
    const auto f = factorize(m, 2);
    CHECK(row["row"] == f.exponent + 1);
    CHECK(row["col"] == f.cofactor - f.cofactor / 2);
  }

  ConstructRequest layers{"layers"};
  layers.p = 2;
  layers.l = 3;
  CHECK(run_construct(layers)["layers"]["4"] == Json::array({0}));

  CHECK_THROWS_AS(run_construct({"residue"}), std::invalid_argument);
  CHECK_THROWS_AS(run_construct({"nonsense"}), std::invalid_argument);
}

TEST_CASE("strip_timing removes timing keys recursively") {
  const Json j = {{"elapsed_ms", 1.0}, {"max", 3}, {"inner", {{"timestamp", "x"}, {"cached", true}, {"k", 1}}}};
  CHECK(strip_timing(j) == Json{{"max", 3}, {"inner", {{"k", 1}}}});
}

TEST_CASE("csv rows follow the documented columns") {
  MaxRequest req{{ProblemKind::CubeFree, 3, Ambient::cyclic(6)}};
  const auto row = search_csv_row(run_max(req));
  CHECK(row.rfind("cube,cyclic,6,3,4,branch_and_bound,", 0) == 0);
  CHECK(row.substr(row.rfind(',') + 1) == "1 2 4 5");
  const auto v = evaluate(*find_claim("thm9"), {{"N", 10}, {"d", 2}});
  CHECK(verdict_csv_row(v) == "thm9,N=10;d=2,5,<=,20/3,pass,functional_graph_dp,\"witness {1,3,5,7,9}\"");
}

TEST_CASE("result cache round trip, corruption and schema versions") {
  const auto path = temp_file("cache.jsonl");
  std::vector<std::string> warnings;
  ResultCache cache(path, [&](const std::string& w) { warnings.push_back(w); });
  CHECK_FALSE(cache.lookup("max --cyclic 9 --cube 3"));

  RunRecord rec;
  rec.timestamp = utc_timestamp();
  rec.command = "max --cyclic 9 --cube 3";
  rec.fingerprint = rec.command;
  rec.payload = {{"max", 6}};
  cache.append(rec);
  {
    std::ofstream out(path, std::ios::app);
    out << "{not json\n";
    out << R"({"schema":999,"fingerprint":"max --cyclic 5 --cube 3","payload":{}})" << '\n';
  }
  const auto hit = cache.lookup("max --cyclic 9 --cube 3");
  REQUIRE(hit);
  CHECK(hit->payload["max"] == 6);
  CHECK(warnings.size() == 1);
  CHECK_FALSE(cache.lookup("max --cyclic 5 --cube 3"));
  CHECK(cache.records().size() == 1);

  // The newest record for a fingerprint wins.
  rec.payload = {{"max", 7}};
  cache.append(rec);
  CHECK(cache.lookup(rec.fingerprint)->payload["max"] == 7);

  cache.clear();
  CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("default cache path honours the environment") {
  ::setenv(kCacheEnvVar, "/tmp/elsewhere.jsonl", 1);
  CHECK(default_cache_path() == "/tmp/elsewhere.jsonl");
  ::unsetenv(kCacheEnvVar);
  CHECK(default_cache_path() == kDefaultCacheFile);
}
