#include "cafsim/results.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cafsim/format.hpp"

namespace cafsim {
namespace {

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string json_string(const std::string& value) {
    std::string out = "\"";
    for (char c : value) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

// Same decimal strings as the CSV, except non-finite values become null to
// keep the output valid JSON.
std::string json_number(double value) {
    if (!std::isfinite(value)) return "null";
    return format_double(value);
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "scenario,sweep_value,engine,p_block,p_drop,utilization,throughput,quality\n";
    for (const auto& row : rows) {
        out << csv_field(row.scenario) << ',' << format_double(row.sweep_value) << ','
            << row.engine << ',' << format_double(row.metrics.blocking_probability) << ','
            << format_double(row.metrics.dropping_probability) << ','
            << format_double(row.metrics.utilization) << ','
            << format_double(row.metrics.throughput) << ',' << format_double(row.quality) << '\n';
    }
}

void emit_json(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "{\n  \"results\": [\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& row = rows[k];
        out << "    {\"scenario\": " << json_string(row.scenario)
            << ", \"sweep_value\": " << json_number(row.sweep_value)
            << ", \"engine\": " << json_string(row.engine)
            << ", \"p_block\": " << json_number(row.metrics.blocking_probability)
            << ", \"p_drop\": " << json_number(row.metrics.dropping_probability)
            << ", \"utilization\": " << json_number(row.metrics.utilization)
            << ", \"throughput\": " << json_number(row.metrics.throughput)
            << ", \"quality\": " << json_number(row.quality) << "}"
            << (k + 1 < rows.size() ? "," : "") << '\n';
    }
    out << "  ]\n}\n";
}

// One CSV record, honoring quoted fields.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (quoted) {
            if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                field += '"';
                ++k;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

double parse_value(const std::string& text) {
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    return std::stod(text);
}

}  // namespace

void emit_results(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& out) {
    if (rows.empty()) throw std::invalid_argument("emit_results: no rows to write");
    if (format == OutputFormat::Csv)
        emit_csv(rows, out);
    else
        emit_json(rows, out);
}

void emit_results(const std::vector<ResultRow>& rows, OutputFormat format,
                  const std::filesystem::path& path) {
    if (rows.empty()) throw std::invalid_argument("emit_results: no rows to write");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_results: cannot open " + path.string());
    emit_results(rows, format, out);
    out.flush();
    if (!out) throw std::runtime_error("emit_results: write failed for " + path.string());
}

std::vector<ResultRow> parse_results_csv(std::istream& in) {
    std::vector<ResultRow> rows;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_results_csv: empty input");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 8)
            throw std::runtime_error("parse_results_csv: line " + std::to_string(lineno) +
                                     ": expected 8 fields, got " + std::to_string(fields.size()));
        ResultRow row;
        row.scenario = fields[0];
        row.sweep_value = parse_value(fields[1]);
        row.engine = fields[2];
        row.metrics.blocking_probability = parse_value(fields[3]);
        row.metrics.dropping_probability = parse_value(fields[4]);
        row.metrics.utilization = parse_value(fields[5]);
        row.metrics.throughput = parse_value(fields[6]);
        row.quality = parse_value(fields[7]);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace cafsim
