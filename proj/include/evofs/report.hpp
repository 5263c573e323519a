#pragma once

#include <string>
#include <vector>

#include "evofs/experiment.hpp"

namespace evofs {

// Human-diffable key:value text with stable key order and 6-decimal rates.
// Wall times sit in a trailing [timing] block excluded from the canonical
// section.
std::string emit_report(const ExperimentReport& report);

// The text with the [timing] block stripped; byte-identical across repeated
// runs with equal seeds.
std::string canonical_section(const std::string& report_text);

// Inverse of emit_report; non-time fields reproduce exactly. Throws on
// malformed input with the offending line.
ExperimentReport parse_report(const std::string& text);

ExperimentReport read_report(const std::string& path);
void write_report(const ExperimentReport& report, const std::string& path);

// "iteration,best_fitness" rows for plotting convergence curves.
std::string trace_csv(const ExperimentReport& report);

// Side-by-side table for reports sharing a dataset/classifier, with percent
// change columns against the optimizer=none baseline when present.
std::string compare_reports(const std::vector<ExperimentReport>& reports);

// Rounds to 6 decimals; applied to every canonical real-valued result field.
double quantize_rate(double v);

}  // namespace evofs
