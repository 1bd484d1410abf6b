// Parsing and serialization: rational number parsing from decimal,
// scientific, and fraction notation; canonical JSON documents for digit
// streams, series, evidence reports, and checks; CSV writers for tabular
// inspection.  All numeric output is produced by exact integer arithmetic
// (rational strings or fixed-point decimal), never by binary floating
// point, so a fixed configuration yields byte-identical documents.

#pragma once

#include <cfcircle/cf.hpp>
#include <cfcircle/density.hpp>
#include <cfcircle/norms.hpp>
#include <cfcircle/ostrowski.hpp>
#include <cfcircle/statconv.hpp>
#include <cfcircle/witness.hpp>

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace cfcircle {

using json = nlohmann::json;

/// "p/q" (or "p" for integers), always in lowest terms.
std::string rat_to_string(const Rat& v);

/// Accepts integers ("3", "-12"), fractions ("17/72"), decimals ("0.25",
/// "-1.5"), and scientific notation ("1e-2", "2.5e-3").
Rat parse_rational(const std::string& text);

/// Fixed 15-digit decimal for a stored quantized endpoint.
std::string quantized_to_decimal(std::int64_t value);

json to_json(const Enclosure& e);
json to_json(const DensityReport& r);
json to_json(const IndexSet& s, long long preview_limit = 64);
json to_json(const SeriesEntry& e);
json to_json(const NormSeries& s, bool include_entries = false);
json to_json(const EvidenceReport& r);
json to_json(const WindowCheckResult& r);
json to_json(const CrossCheckResult& r);
json to_json(const MergedSequence& xs, long long preview_limit = 64);

/// Canonical serialization (sorted keys, no whitespace surprises) plus a
/// short content digest for reproducibility checks.
std::string canonical_dump(const json& doc);
std::string document_digest(const json& doc);

void write_convergents_csv(std::ostream& os, const ContinuedFraction& cf,
                           long long n);
void write_series_csv(std::ostream& os, const NormSeries& s, const Rat& eps);
void write_merged_csv(std::ostream& os, const MergedSequence& xs);
void write_density_csv(std::ostream& os, const DensityReport& r);

}  // namespace cfcircle
