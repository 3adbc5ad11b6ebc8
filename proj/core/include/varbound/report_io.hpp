#pragma once

// Serialization of reports. JSON goes through nlohmann::json; infinite bounds
// are written as the strings "+inf" / "-inf" and NaN as null.

#include <ostream>
#include <vector>

#include "varbound/bounds.hpp"
#include "varbound/exactcheck.hpp"

namespace varbound {

enum class Format { Json, Csv, Table };

/// "json", "csv", "table"; throws std::invalid_argument otherwise.
Format parse_format(std::string_view text);

/// Header of sweep CSV output.
inline constexpr const char* kSweepCsvHeader = "m,n,bound,variance,gap,residual,sign_ok,equality,verdict";

void write_bound(std::ostream& os, const BoundReport& report, Format format);
void write_sweep(std::ostream& os, const std::vector<BoundReport>& rows, Format format);
void write_comparison(std::ostream& os, const ComparisonTable& table, Format format);
void write_verify(std::ostream& os, const std::vector<VerifyRow>& rows, Format format);

}  // namespace varbound
