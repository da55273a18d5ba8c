#include "cubefree/report.hpp"

#include <sstream>

namespace cubefree {

Json strip_timing(Json payload) {
  if (payload.is_object()) {
    for (const auto* key : kTimingKeys) payload.erase(key);
    for (auto& [_, value] : payload.items()) value = strip_timing(std::move(value));
  } else if (payload.is_array()) {
    for (auto& value : payload) value = strip_timing(std::move(value));
  }
  return payload;
}

Json to_json(const Ambient& ambient) {
  return {{"kind", ambient.is_cyclic() ? "cyclic" : "interval"}, {"N", ambient.order()}};
}

Json to_json(const SearchResult& r) {
  Json j = {
      {"problem", to_string(r.problem.kind)},
      {"ambient", r.problem.ambient.is_cyclic() ? "cyclic" : "interval"},
      {"N", r.problem.ambient.order()},
      {"d", r.problem.d},
      {"max", r.max_size},
      {"witness", r.witness.elements()},
      {"method", to_string(r.method)},
      {"explored", r.explored},
      {"elapsed_ms", r.elapsed.count()},
      {"optimal", r.optimal},
  };
  if (r.problem.include_zero) j["include_zero"] = true;
  return j;
}

Json to_json(const CubeWitness& w) {
  return {{"generator", w.generator.entries()}, {"cube", w.cube.elements()}};
}

Json to_json(const IncidenceReport& r) {
  Json histogram = Json::object();
  for (const auto& [multiplicity, count] : r.multiplicity_histogram) {
    histogram[std::to_string(multiplicity)] = count;
  }
  Json j = {
      {"family", r.family_id},
      {"size", r.family_size},
      {"expected_set_size", r.expected_set_size},
      {"expected_multiplicity", r.expected_multiplicity},
      {"multiplicity_histogram", histogram},
      {"identity", {{"lhs", r.identity_lhs}, {"rhs", r.identity_rhs}}},
      {"member_total", r.member_total},
      {"multiplicity_total", r.multiplicity_total},
      {"verdict", r.pass ? "pass" : "fail"},
  };
  if (!r.pass) j["failure"] = r.failure;
  if (r.offending_element) j["offending_element"] = *r.offending_element;
  if (r.offending_index) j["offending_index"] = *r.offending_index;
  return j;
}

Json to_json(const Verdict& v) {
  Json params = Json::object();
  for (const auto& [k, value] : v.params) params[k] = value;
  Json j = {
      {"claim", v.claim},
      {"params", params},
      {"observed", v.observed.str()},
      {"comparator", to_string(v.comparator)},
      {"bound", v.bound.str()},
      {"pass", v.pass},
      {"method", v.method},
      {"detail", v.detail},
  };
  if (v.comparator == Comparator::Within) j["tolerance"] = v.tolerance;
  return j;
}

Json to_json(const ChainDecomposition& c) {
  return {{"ratio", c.ratio}, {"N", c.limit}, {"chains", c.chains}};
}

Json to_json(const LayerDecomposition& l) {
  Json layers = Json::object();
  for (std::size_t i = 0; i < l.layers.size(); ++i) layers[std::to_string(i + 1)] = l.layers[i].elements();
  if (l.context == LayerContext::Integers) {
    return {{"context", "integers"}, {"N", l.extent}, {"d", l.base}, {"layers", layers}};
  }
  return {{"context", "prime_power"}, {"p", l.base}, {"l", l.extent}, {"layers", layers}};
}

Json to_json(const BlockPartition& b) {
  Json blocks = Json::array();
  for (std::size_t i = 0; i < b.ranges.size(); ++i) {
    blocks.push_back({{"layers", {b.ranges[i].first, b.ranges[i].second}},
                      {"elements", b.blocks[i].elements()}});
  }
  return {{"p", b.p}, {"l", b.l}, {"d", b.d}, {"q", b.q}, {"blocks", blocks}};
}

namespace {

std::string params_text(const ParamList& params, char sep) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += sep;
    out += k + "=" + std::to_string(v);
  }
  return out;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string verdict_csv_header() { return "claim,params,observed,comparator,bound,pass,method,detail"; }

std::string verdict_csv_row(const Verdict& v) {
  std::ostringstream os;
  os << csv_quote(v.claim) << ',' << csv_quote(params_text(v.params, ';')) << ',' << v.observed.str()
     << ',' << csv_quote(to_string(v.comparator)) << ',' << v.bound.str() << ','
     << (v.pass ? "pass" : "fail") << ',' << csv_quote(v.method) << ',' << csv_quote(v.detail);
  return os.str();
}

std::string search_csv_header() {
  return "problem,ambient,N,d,max,method,explored,optimal,elapsed_ms,witness";
}

std::string search_csv_row(const SearchResult& r) {
  std::ostringstream os;
  os << to_string(r.problem.kind) << ',' << (r.problem.ambient.is_cyclic() ? "cyclic" : "interval")
     << ',' << r.problem.ambient.order() << ',' << r.problem.d << ',' << r.max_size << ','
     << to_string(r.method) << ',' << r.explored << ',' << (r.optimal ? "true" : "false") << ','
     << r.elapsed.count() << ',';
  bool first = true;
  r.witness.for_each([&](Element e) {
    os << (first ? "" : " ") << e;
    first = false;
  });
  return os.str();
}

std::string verdict_text(const Verdict& v) {
  std::ostringstream os;
  os << (v.pass ? "PASS " : "FAIL ") << v.claim << " [" << params_text(v.params, ' ') << "] "
     << v.observed.str() << ' ' << to_string(v.comparator) << ' ' << v.bound.str();
  if (v.comparator == Comparator::Within) os << " (tol " << v.tolerance << ")";
  os << "  " << v.method;
  if (!v.detail.empty()) os << "  " << v.detail;
  return os.str();
}

}  // namespace cubefree
