#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cutspan/engine.hpp"
#include "cutspan/metric.hpp"
#include "cutspan/oracle.hpp"
#include "cutspan/realization.hpp"

namespace cutspan {

enum class InputFormat { Csv, Phylip };

/// Throws std::invalid_argument for anything but "csv" or "phylip".
InputFormat parse_format(std::string_view name);

/// CSV: a header row of labels (an empty leading corner cell is allowed),
/// then one row per point, "label,v1,...,vn", labels in header order.
/// PHYLIP: the point count on the first line, then "label v1 ... vn" per
/// line (full square matrix). Values are exact decimals or p/q fractions.
/// Throws ParseError with 1-based line and column, or MetricError.
Metric parse_matrix(std::string_view text, InputFormat format);

/// Inverse of parse_matrix; values written as exact fractions.
std::string format_matrix(const Metric& d, InputFormat format);

using Json = nlohmann::ordered_json;

Json to_json(const Metric& d);
Json splits_to_json(const Metric& d, const std::vector<BlockSplitRecord>& splits);
Json to_json(const CutSystem& cs);
Json to_json(const RealizationGraph& g, const BlockStructure& blocks);
Json to_json(const Metric& d, const BlockDecomposition& dec);
Json to_json(const VerificationReport& report);

/// Undirected DOT graph; edge labels are the exact weights.
std::string to_dot(const RealizationGraph& g);

/// Ordinary least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Command-line entry point. Exit status 0 on success, 1 for usage, parse
/// and validation errors, 2 when an internal check fails.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cutspan
