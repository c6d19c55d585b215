#pragma once

// JSON views of result records. Big integers and ring elements are decimal
// strings; certified intervals are {"lo", "hi"} pairs of decimal strings.

#include <vector>

#include "binrec/harness.hpp"
#include "binrec/muldep.hpp"
#include "binrec/padic.hpp"
#include "binrec/primitive.hpp"
#include "json.hpp"

namespace binrec {

using Json = nlohmann::ordered_json;

Json to_json(const Interval& x);
Json to_json(const RecurrenceSpec& spec);
Json to_json(const RankRecord& r);
Json to_json(const PhiPrimeReport& r);
Json to_json(const OrdpMargin& m);
Json to_json(const DependenceWitness& w);
Json to_json(const ThetaData& th);
Json to_json(const DivisibilityResult& d);
Json to_json(const LogGapMargin& m);
Json to_json(const PartialPhiMargin& m);
Json to_json(const CycloFactorization& f);
Json to_json(const PrimitiveResult& r);
Json to_json(const EvenOddSplit& s);
Json to_json(const SweepRecord& r);

/// Flattens nested objects into dotted column names and arrays into
/// semicolon-joined cells, taking the column set from the first row.
Table flatten(const std::vector<Json>& rows);

/// JSON lines of the rows as given, or CSV of the flattened rows.
std::string render(const std::vector<Json>& rows, OutputFormat format);

}  // namespace binrec
