#pragma once

#include "polibench/corpus.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace polibench {

struct AbsoluteSize {
    std::size_t rows = 0;
};

struct FractionSize {
    double fraction = 1.0;  // (0, 1]
};

struct SampleSpec {
    std::variant<AbsoluteSize, FractionSize> size;
    /// Scales the Center quota; >= 1.
    double center_multiplier = 1.0;

    static SampleSpec absolute(std::size_t rows, double center_multiplier = 1.0);
    static SampleSpec fraction(double fraction, double center_multiplier = 1.0);

    /// Requested row count for a dataset of `population` rows; fractions floor.
    std::size_t resolve(std::size_t population) const;

    void validate() const;
};

using ClassQuotas = std::map<ClassLabel, std::size_t>;

/// Rank positions floor(i * population / quota) for i in [0, quota).
std::vector<std::size_t> systematic_positions(std::size_t population, std::size_t quota);

/// Document indices of each class ordered by (body_word_count, id).
std::map<ClassLabel, std::vector<std::size_t>> members_by_length(const Dataset& dataset);

/// floor(n/k) per class, plus one for the first n mod k classes in label order.
ClassQuotas even_quotas(const std::map<ClassLabel, std::size_t>& populations, std::size_t n);

/// The per-class counts systematic_sample takes: even quotas, all capped to the
/// smallest class when one class cannot fill its quota, then the Center quota
/// scaled by the multiplier and capped at the Center population.
ClassQuotas sample_quotas(const std::map<ClassLabel, std::size_t>& populations, std::size_t n,
                          double center_multiplier = 1.0);

/// Draws exactly `quotas` (each <= class size) by regular rank intervals.
/// Output order is (class, pick order).
Dataset sample_with_quotas(const Dataset& dataset, const ClassQuotas& quotas);

Dataset systematic_sample(const Dataset& dataset, const SampleSpec& spec);

struct CenterMultiplier {
    double value = 1.0;
    /// True when the balancing target was out of reach and `value` is the
    /// largest multiplier every dataset's Center class can supply.
    bool capped = false;
};

/// One global multiplier that lifts the concatenation's Center total to the
/// mean of its Left and Right totals. Never below 1. Throws NoCenterData.
CenterMultiplier compute_center_multiplier(std::span<const Dataset> datasets, std::size_t per_dataset_n);

/// Systematic samples of every dataset (Center quota scaled by `multiplier`)
/// concatenated in input order.
Dataset concat_balanced(std::span<const Dataset> datasets, std::size_t per_dataset_n, double multiplier,
                        std::string name = "concatenation");

/// Documents of `dataset` whose ids are not in `exclude`, order preserved.
Dataset without_documents(const Dataset& dataset, const std::vector<std::string>& exclude);

std::vector<std::string> document_ids(const Dataset& dataset);

}  // namespace polibench
