#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scg/crucial.hpp"
#include "scg/partition.hpp"
#include "scg/summary.hpp"

namespace scg {

enum class ReportFormat { Txt, Html, Tex, Csv, Json };

std::optional<ReportFormat> parseReportFormat(std::string_view name);
std::string_view extension(ReportFormat format);

std::string renderSummary(const SummaryStats& stats, ReportFormat format);
std::string renderCrucial(const CrucialReport& report, ReportFormat format);

/// Sweep table: one row per (k, algorithm). CSV lists the quality scores;
/// the per-node assignments are written by exportPartitionCsv instead. When
/// `graph` is given, HTML also lists the dominant partition of every file and
/// package for each split.
std::string renderPartitions(const std::string& project, const std::vector<PartitionResult>& results,
                             ReportFormat format, const SemanticCodeGraph* graph = nullptr);

/// "%.<digits>f", with "inf" for infinity.
std::string formatFixed(double value, int digits);

}  // namespace scg
