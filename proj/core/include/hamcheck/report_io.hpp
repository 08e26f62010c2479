#pragma once

#include "hamcheck/corpus_analytics.hpp"
#include "hamcheck/multilabel_codec.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace hamcheck {

enum class ReportFormat { Csv, Json };

std::optional<ReportFormat> report_format_from_string(std::string_view name);

/// Shortest float form that still reads as a float: %.10g plus a ".0"
/// suffix when the result has no decimal point or exponent ("80.0", "5.0").
std::string format_double(double value);

/// All emitters are deterministic: identical values yield identical bytes,
/// and nothing time- or locale-dependent is written.
void emit_report(const ConsistencyReport& report, ReportFormat format, std::ostream& out);
void emit_report(const DistributionReport& report, ReportFormat format, std::ostream& out);
void emit_report(const EtaResult& result, ReportFormat format, std::ostream& out);
void emit_report(const std::map<std::string, EtaResult>& per_language, ReportFormat format,
                 std::ostream& out);

/// Path variants. Errors: WriteFailed.
void emit_report(const ConsistencyReport& report, ReportFormat format,
                 const std::string& path);
void emit_report(const DistributionReport& report, ReportFormat format,
                 const std::string& path);
void emit_report(const EtaResult& result, ReportFormat format, const std::string& path);
void emit_report(const std::map<std::string, EtaResult>& per_language, ReportFormat format,
                 const std::string& path);

} // namespace hamcheck
