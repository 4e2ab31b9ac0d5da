#pragma once

#include "polibench/evaluation.hpp"
#include "polibench/overlap.hpp"
#include "polibench/splits.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polibench {

/// A rendered table: markdown for people, tab-separated values for machines.
/// Both are produced from one in-memory grid.
struct RenderedTable {
    std::string markdown;
    std::string tsv;
};

/// Half-up rounding to an integer percentage.
long round_half_up(double value);

/// Half-up rounding of 100 * value to one decimal ("80.2").
std::string percent_one_decimal(double fraction);

/// Row dataset is the denominator side. Diagonal cells are "--", zero cells
/// are shown as "_0_" and cells without a report are left blank.
RenderedTable render_intersection_table(const IntersectionMatrix& matrix, double threshold_pct = kDefaultSignificanceThreshold);

enum class BenchmarkLayout : std::uint8_t { LeaveOneIn, LeaveOneOut, Existing };

std::optional<BenchmarkLayout> parse_layout(std::string_view text);

/// One evaluated model run. `row` is the left-in / left-out dataset for the
/// benchmark layouts and unused for Existing.
struct BenchmarkEntry {
    std::string model;
    std::string row;
    EvaluationReport report;
};

/// Macro F1 tables (percent, one decimal) in three layouts:
///   LeaveOneIn : rows = left-in dataset; per model (left-in, unseen)
///   LeaveOneOut: rows = left-out dataset; per model (trained, left-out)
///   Existing   : rows = evaluated dataset; one column per model
/// An average row is appended. A column with no values at all is omitted and
/// named in a trailing note.
RenderedTable render_benchmark_table(std::span<const BenchmarkEntry> entries, BenchmarkLayout layout);

/// Per-dataset metric table of one evaluation (percent, one decimal).
RenderedTable render_evaluation_table(const EvaluationReport& report);

struct SplitSummary {
    std::string config_name;
    SplitMode mode = SplitMode::LeaveOneIn;
    std::size_t train = 0;
    std::size_t validation = 0;
    std::size_t test = 0;
    std::optional<double> center_multiplier;
    bool multiplier_capped = false;
    std::vector<Exclusion> excluded;
};

SplitSummary summarize(const SplitPlan& plan);

struct ReportBundle {
    std::optional<IntersectionMatrix> intersection_matrix;
    std::vector<BenchmarkEntry> eval_reports;
    std::vector<SplitSummary> split_summaries;
};

/// Every dataset named by the bundle's reports must appear in `known`.
/// Returns the unknown names.
std::vector<std::string> undefined_datasets(const ReportBundle& bundle, std::span<const std::string> known);

/// Markdown summary of everything in the bundle.
std::string render_bundle(const ReportBundle& bundle, BenchmarkLayout layout);

}  // namespace polibench
