#pragma once

#include "polibench/corpus.hpp"
#include "polibench/sampling.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polibench {

enum class SplitMode : std::uint8_t { LeaveOneIn, LeaveOneOut, FullTrain, Aggregate };

std::string_view split_mode_name(SplitMode mode);
std::optional<SplitMode> parse_split_mode(std::string_view text);

struct Exclusion {
    std::string dataset;
    std::string reason;

    friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

struct SplitPlan {
    std::string config_name;
    SplitMode mode = SplitMode::LeaveOneIn;
    Task task = Task::Leaning;
    /// Dataset a leave-one-in model trains on, or the left-out dataset.
    std::optional<std::string> subject;
    std::vector<std::string> trained_on;
    std::vector<std::string> train;
    std::vector<std::string> validation;
    std::map<std::string, std::vector<std::string>> test;
    std::vector<Exclusion> excluded_datasets;
    /// Center multiplier applied to the training concatenation.
    std::optional<double> center_multiplier;
    bool multiplier_capped = false;

    friend bool operator==(const SplitPlan&, const SplitPlan&) = default;
};

inline constexpr std::size_t kLeaveOneInTrainRows = 2000;
inline constexpr double kHeldOutFraction = 0.15;
inline constexpr std::size_t kLeaveOneOutValidationRows = 1000;
inline constexpr std::size_t kFullTrainValidationRows = 100;
inline constexpr std::size_t kAggregateRowsPerDataset = 1000;

struct LeaveOneInOptions {
    std::size_t train_n = kLeaveOneInTrainRows;
    double val_frac = kHeldOutFraction;
    double test_frac = kHeldOutFraction;
};

/// Test and validation (fractions of the whole dataset) first, then up to
/// train_n rows from what remains. Throws TooSmall when a class runs dry.
SplitPlan make_leave_one_in(const Dataset& dataset, const LeaveOneInOptions& options = {});

/// Leave-one-in plan for `subject` whose test map also carries the held-out
/// test set of every other dataset, so one model run covers the unseen ones.
SplitPlan make_leave_one_in_benchmark(std::span<const Dataset> datasets, std::string_view subject,
                                      const LeaveOneInOptions& options = {});

struct MultiDatasetOptions {
    std::size_t per_dataset_n = kLeaveOneInTrainRows;
    double test_frac = kHeldOutFraction;
    /// nullopt: compute_center_multiplier over the training remainders (1 when
    /// no dataset has Center rows).
    std::optional<double> center_multiplier;
    std::vector<Exclusion> exclusions;
};

struct LeaveOneOutOptions : MultiDatasetOptions {
    std::size_t val_n = kLeaveOneOutValidationRows;
};

SplitPlan make_leave_one_out(std::span<const Dataset> datasets, std::string_view left_out,
                             const LeaveOneOutOptions& options = {});

struct FullTrainOptions : MultiDatasetOptions {
    std::size_t val_per_dataset = kFullTrainValidationRows;
};

SplitPlan make_full_train(std::span<const Dataset> datasets, const FullTrainOptions& options = {});

struct AggregateEval {
    Dataset dataset;
    std::size_t political = 0;
    std::size_t non_political = 0;

    double political_share() const noexcept;
};

/// Per-dataset systematic samples of min(per_dataset_n, size) rows by
/// politicalness, concatenated. Throws MissingLabels.
AggregateEval make_aggregate_eval(std::span<const Dataset> datasets,
                                  std::size_t per_dataset_n = kAggregateRowsPerDataset);

/// Plan describing the aggregate set, for export alongside the other modes.
SplitPlan aggregate_plan(const AggregateEval& aggregate);

/// Pairwise-disjointness violations (train/validation/test), as id lists.
struct HygieneReport {
    std::vector<std::string> train_validation;
    std::vector<std::string> train_test;
    std::vector<std::string> validation_test;
    std::vector<std::string> duplicates;

    bool clean() const noexcept {
        return train_validation.empty() && train_test.empty() && validation_test.empty() && duplicates.empty();
    }
};

HygieneReport check_hygiene(const SplitPlan& plan);

/// The dataset-name part of a document id ("<dataset>:<ordinal>[#k]").
std::string_view dataset_of_id(std::string_view id);

}  // namespace polibench
