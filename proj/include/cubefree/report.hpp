#pragma once

#include <string>

#include <json.hpp>

#include "cubefree/additive.hpp"
#include "cubefree/claims.hpp"
#include "cubefree/constructions.hpp"
#include "cubefree/cube.hpp"
#include "cubefree/extremal.hpp"

namespace cubefree {

using Json = nlohmann::json;

/// Keys excluded from the determinism contract.
inline constexpr const char* kTimingKeys[] = {"elapsed_ms", "timestamp", "cached"};

/// Drops timing keys recursively so payloads can be compared.
Json strip_timing(Json payload);

Json to_json(const Ambient& ambient);
/// {problem, ambient, N, d, max, witness, method, explored, elapsed_ms, optimal}
Json to_json(const SearchResult& result);
Json to_json(const CubeWitness& witness);
Json to_json(const IncidenceReport& report);
Json to_json(const Verdict& verdict);
Json to_json(const ChainDecomposition& chains);
Json to_json(const LayerDecomposition& layers);
Json to_json(const BlockPartition& blocks);

/// CSV header and row for verdict tables:
/// claim,params,observed,comparator,bound,pass,method,detail
std::string verdict_csv_header();
std::string verdict_csv_row(const Verdict& verdict);

/// CSV header and row for search results:
/// problem,ambient,N,d,max,method,explored,optimal,elapsed_ms,witness
std::string search_csv_header();
std::string search_csv_row(const SearchResult& result);

/// Human-readable one-line verdict.
std::string verdict_text(const Verdict& verdict);

}  // namespace cubefree
