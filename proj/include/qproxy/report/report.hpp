#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qproxy/report/detection.hpp"

namespace qproxy::report {

/// Non-finite numbers are written as the strings "inf", "-inf", "nan".
Json report_to_json(const WitnessReport& report);
/// Inverse of report_to_json; throws FormatError on schema violations.
WitnessReport report_from_json(const Json& doc);

/// Columns: state_id,criterion,value,threshold,detected,margin (value = mean value).
std::string report_to_csv(const WitnessReport& report);

/// format is "json" or "csv"; an empty path writes to `out`.
void emit_report(const WitnessReport& report, std::string_view format, const std::filesystem::path& path,
                 std::ostream& out);

}  // namespace qproxy::report
