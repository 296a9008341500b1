#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cafsim/metrics.hpp"

namespace cafsim {

/// One sweep point evaluated by one engine. `quality` is the balance residual
/// for analytical rows and the largest 95% confidence half-width across the
/// four metrics for simulation rows.
struct ResultRow {
    std::string scenario;
    double sweep_value = 0.0;
    std::string engine;  // "analytical" or "simulation"
    Metrics metrics;
    double quality = 0.0;
    bool ok = true;      // false when the engine failed at this point
    std::string error;   // failure description when !ok (metrics are nan)
};

enum class OutputFormat { Csv, Json };

/// CSV header: scenario,sweep_value,engine,p_block,p_drop,utilization,throughput,quality
/// Values render with 12 significant digits; fields containing commas or
/// quotes are quoted. The JSON format carries the same decimal strings.
/// Output is byte-identical for identical rows. Throws on an empty row list.
void emit_results(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& out);

/// File variant; reports I/O failures with the path. Nothing is written when
/// `rows` is empty.
void emit_results(const std::vector<ResultRow>& rows, OutputFormat format,
                  const std::filesystem::path& path);

/// Parses emit_results CSV output back into rows (ok/error are not part of
/// the format and come back defaulted).
std::vector<ResultRow> parse_results_csv(std::istream& in);

}  // namespace cafsim
