#pragma once

#include "polibench/corpus.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polibench {

struct Prediction {
    std::string doc_id;
    ClassLabel predicted_label;
    double confidence = 1.0;
};

/// Rows are gold labels, columns predicted labels, both in `labels` order.
struct ConfusionMatrix {
    std::vector<ClassLabel> labels;
    std::vector<std::vector<std::size_t>> counts;

    explicit ConfusionMatrix(std::vector<ClassLabel> labels);

    std::size_t total() const noexcept;
    std::size_t index_of(ClassLabel label) const;

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion_matrix(std::span<const ClassLabel> golds, std::span<const ClassLabel> preds,
                                 std::vector<ClassLabel> labels);

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Macro (unweighted class mean) precision, recall and F1 plus accuracy. A
/// class with a zero denominator scores 0 and still counts in the mean.
Metrics macro_metrics(const ConfusionMatrix& matrix);

/// The matrix without labels that occur neither as gold nor as prediction.
/// Per-dataset scores are averaged over these observed classes only, so a
/// class a dataset lacks altogether does not drag its macro scores down.
ConfusionMatrix observed_classes(const ConfusionMatrix& matrix);

struct ScoredItems {
    std::vector<ClassLabel> golds;
    std::vector<ClassLabel> preds;
};

/// Gold/prediction pairs for `dataset` joined by id. When `drop_center` is
/// set, items whose gold label is Center are removed.
ScoredItems join_predictions(const Dataset& dataset, std::span<const Prediction> preds, bool drop_center);

/// Scoring view for a model without a Center class: Center golds are dropped.
ScoredItems restrict_binary(const Dataset& dataset, std::span<const Prediction> preds);

struct DatasetScore {
    Metrics metrics;
    ConfusionMatrix confusion;
    std::size_t scored = 0;
    /// Gold labels contain a single class; macro scores are then misleading.
    bool single_class = false;
};

struct EvaluationReport {
    Task task = Task::Leaning;
    bool model_supports_center = true;
    std::map<std::string, DatasetScore> per_dataset;
    std::optional<Metrics> in_distribution;
    std::optional<Metrics> out_of_distribution;
    std::optional<Metrics> overall;
};

/// Unweighted mean of the metric values.
Metrics average_metrics(std::span<const Metrics> values);

/// Scores every test dataset separately, then averages per group with equal
/// weight per dataset. Throws MissingPredictions listing uncovered ids.
EvaluationReport evaluate_per_dataset(const std::map<std::string, Dataset>& test_sets,
                                      const std::map<std::string, std::vector<Prediction>>& preds,
                                      bool model_supports_center, const std::vector<std::string>& trained_on);

inline constexpr double kDefaultConfidenceThreshold = 0.99;

/// Drops documents predicted as `target_label` with confidence strictly above
/// `threshold`.
Dataset apply_confidence_filter(const Dataset& dataset, std::span<const Prediction> preds, ClassLabel target_label,
                                double threshold = kDefaultConfidenceThreshold);

}  // namespace polibench
