#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gravodiff/diagnostics.hpp"
#include "gravodiff/run.hpp"

namespace gravodiff {

// Shortest text with 17 significant digits, '.' decimal, locale independent.
std::string format_double(double v);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const DiagnosticsRecord& r);
void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records);

// Final-state snapshot: outcome, final record, fields and monitor summary.
std::string snapshot_json(const RunConfig& config, const RunResult& result);

// Compact monitor summary as a JSON object (shared by snapshots and sweep lines).
std::string monitors_json(const MonitorSummary& m);
std::string record_json(const DiagnosticsRecord& r);

} // namespace gravodiff
