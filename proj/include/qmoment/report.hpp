#pragma once

// JSON renderings of results and the density-table file format.
//
// Numbers are written as decimal strings so that no value passes through a
// binary double; keys keep insertion order so output is byte-stable.

#include <string>
#include <string_view>

#include <json.hpp>

#include "qmoment/determinacy.hpp"
#include "qmoment/lattice.hpp"
#include "qmoment/moments.hpp"
#include "qmoment/witness.hpp"

namespace qmoment {

using Json = nlohmann::ordered_json;

Json to_json(const Verdict& v);
Json to_json(const QMomentReport& r, const PrecisionContext& ctx);
Json to_json(const KreinResult& k, const PrecisionContext& ctx);
/// Parameters, alpha bounds and the residual table; no lattice values.
Json to_json(const WitnessPair& p, const PrecisionContext& ctx);

/// {q, j_min, j_max, values, normalized} for a Table density.
Json density_table_json(const QDensity& table);
std::string write_density_table(const QDensity& table);

/// Parses the density-table format. Throws std::invalid_argument on
/// malformed input (missing keys, wrong types, length mismatch, negative or
/// non-numeric values) and DomainError for q outside (0, 1).
QDensity read_density_table(std::string_view text);

}  // namespace qmoment
