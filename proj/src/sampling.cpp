#include "polibench/sampling.hpp"

#include "polibench/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace polibench {

SampleSpec SampleSpec::absolute(std::size_t rows, double center_multiplier) {
    return SampleSpec{AbsoluteSize{rows}, center_multiplier};
}

SampleSpec SampleSpec::fraction(double fraction, double center_multiplier) {
    return SampleSpec{FractionSize{fraction}, center_multiplier};
}

std::size_t SampleSpec::resolve(std::size_t population) const {
    if (const auto* abs = std::get_if<AbsoluteSize>(&size)) {
        return abs->rows;
    }
    const double f = std::get<FractionSize>(size).fraction;
    // The epsilon keeps products such as 0.15 * 1000 from flooring to 149.
    return static_cast<std::size_t>(std::floor(f * static_cast<double>(population) + 1e-9));
}

void SampleSpec::validate() const {
    if (const auto* frac = std::get_if<FractionSize>(&size)) {
        if (!(frac->fraction > 0.0 && frac->fraction <= 1.0)) {
            throw Error(ErrorKind::InvalidArgument, "sample fraction must lie in (0, 1]");
        }
    }
    if (!(center_multiplier >= 1.0) || !std::isfinite(center_multiplier)) {
        throw Error(ErrorKind::InvalidArgument, "center multiplier must be a finite value >= 1");
    }
}

std::vector<std::size_t> systematic_positions(std::size_t population, std::size_t quota) {
    std::vector<std::size_t> positions;
    if (quota == 0 || population == 0) {
        return positions;
    }
    quota = std::min(quota, population);
    positions.reserve(quota);
    for (std::size_t i = 0; i < quota; ++i) {
        // i * population fits easily: both are document counts
        positions.push_back(i * population / quota);
    }
    return positions;
}

std::map<ClassLabel, std::vector<std::size_t>> members_by_length(const Dataset& dataset) {
    std::map<ClassLabel, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < dataset.documents.size(); ++i) {
        members[dataset.label_of(dataset.documents[i])].push_back(i);
    }
    for (auto& [label, indices] : members) {
        std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
            const Document& da = dataset.documents[a];
            const Document& db = dataset.documents[b];
            if (da.body_word_count != db.body_word_count) {
                return da.body_word_count < db.body_word_count;
            }
            return da.id < db.id;
        });
    }
    return members;
}

ClassQuotas even_quotas(const std::map<ClassLabel, std::size_t>& populations, std::size_t n) {
    ClassQuotas quotas;
    const std::size_t k = populations.size();
    if (k == 0) {
        return quotas;
    }
    std::size_t extra = n % k;
    for (const auto& [label, population] : populations) {
        quotas[label] = n / k + (extra > 0 ? 1 : 0);
        if (extra > 0) --extra;
    }
    return quotas;
}

ClassQuotas sample_quotas(const std::map<ClassLabel, std::size_t>& populations, std::size_t n,
                          double center_multiplier) {
    std::map<ClassLabel, std::size_t> present;
    for (const auto& [label, population] : populations) {
        if (population > 0) present.emplace(label, population);
    }
    ClassQuotas quotas = even_quotas(present, n);

    bool exhausted = false;
    std::size_t smallest = std::numeric_limits<std::size_t>::max();
    for (const auto& [label, population] : present) {
        smallest = std::min(smallest, population);
        exhausted = exhausted || population < quotas[label];
    }
    if (exhausted) {
        for (auto& [label, quota] : quotas) {
            quota = std::min(quota, smallest);
        }
    }

    const ClassLabel center = Leaning::Center;
    if (center_multiplier != 1.0) {
        if (const auto it = quotas.find(center); it != quotas.end()) {
            const double scaled = std::round(center_multiplier * static_cast<double>(it->second));
            it->second = std::min(static_cast<std::size_t>(scaled), present.at(center));
        }
    }
    return quotas;
}

Dataset sample_with_quotas(const Dataset& dataset, const ClassQuotas& quotas) {
    Dataset out;
    out.name = dataset.name;
    out.task = dataset.task;
    const auto members = members_by_length(dataset);
    for (const auto& [label, indices] : members) {
        const auto it = quotas.find(label);
        if (it == quotas.end()) continue;
        for (const std::size_t rank : systematic_positions(indices.size(), it->second)) {
            out.documents.push_back(dataset.documents[indices[rank]]);
        }
    }
    return out;
}

namespace {

std::map<ClassLabel, std::size_t> populations_of(const Dataset& dataset) {
    return dataset.class_counts();
}

}  // namespace

Dataset systematic_sample(const Dataset& dataset, const SampleSpec& spec) {
    spec.validate();
    const std::size_t n = spec.resolve(dataset.size());
    return sample_with_quotas(dataset, sample_quotas(populations_of(dataset), n, spec.center_multiplier));
}

CenterMultiplier compute_center_multiplier(std::span<const Dataset> datasets, std::size_t per_dataset_n) {
    const ClassLabel left = Leaning::Left;
    const ClassLabel center = Leaning::Center;
    const ClassLabel right = Leaning::Right;

    std::size_t base_left = 0;
    std::size_t base_right = 0;
    std::size_t base_center = 0;
    // Largest multiplier each Center-bearing dataset can supply.
    double feasible = std::numeric_limits<double>::infinity();

    for (const Dataset& dataset : datasets) {
        if (dataset.task != Task::Leaning) continue;
        const auto populations = populations_of(dataset);
        const ClassQuotas quotas = sample_quotas(populations, per_dataset_n);
        const auto count = [&](ClassLabel label) {
            const auto it = quotas.find(label);
            return it == quotas.end() ? std::size_t{0} : it->second;
        };
        base_left += count(left);
        base_right += count(right);
        const std::size_t c = count(center);
        base_center += c;
        if (c > 0) {
            feasible = std::min(feasible, static_cast<double>(populations.at(center)) / static_cast<double>(c));
        }
    }
    if (base_center == 0) {
        throw Error(ErrorKind::NoCenterData, "none of the datasets contributes Center examples");
    }

    const double target = (static_cast<double>(base_left) + static_cast<double>(base_right)) / 2.0;
    CenterMultiplier result;
    result.value = std::max(1.0, target / static_cast<double>(base_center));
    if (result.value > feasible) {
        result.value = std::max(1.0, feasible);
        result.capped = true;
    }
    return result;
}

Dataset concat_balanced(std::span<const Dataset> datasets, std::size_t per_dataset_n, double multiplier,
                        std::string name) {
    Dataset out;
    out.name = std::move(name);
    if (!datasets.empty()) out.task = datasets.front().task;
    const SampleSpec spec = SampleSpec::absolute(per_dataset_n, multiplier);
    for (const Dataset& dataset : datasets) {
        Dataset part = systematic_sample(dataset, spec);
        std::move(part.documents.begin(), part.documents.end(), std::back_inserter(out.documents));
    }
    return out;
}

Dataset without_documents(const Dataset& dataset, const std::vector<std::string>& exclude) {
    const std::unordered_set<std::string> drop(exclude.begin(), exclude.end());
    Dataset out;
    out.name = dataset.name;
    out.task = dataset.task;
    for (const Document& doc : dataset.documents) {
        if (!drop.contains(doc.id)) out.documents.push_back(doc);
    }
    return out;
}

std::vector<std::string> document_ids(const Dataset& dataset) {
    std::vector<std::string> ids;
    ids.reserve(dataset.size());
    for (const Document& doc : dataset.documents) ids.push_back(doc.id);
    return ids;
}

}  // namespace polibench
