#include "polibench/splits.hpp"

#include "polibench/errors.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace polibench {

std::string_view split_mode_name(SplitMode mode) {
    switch (mode) {
        case SplitMode::LeaveOneIn: return "loi";
        case SplitMode::LeaveOneOut: return "loo";
        case SplitMode::FullTrain: return "full";
        case SplitMode::Aggregate: return "aggregate";
    }
    return "loi";
}

std::optional<SplitMode> parse_split_mode(std::string_view text) {
    for (const SplitMode mode :
         {SplitMode::LeaveOneIn, SplitMode::LeaveOneOut, SplitMode::FullTrain, SplitMode::Aggregate}) {
        if (split_mode_name(mode) == text) return mode;
    }
    return std::nullopt;
}

std::string_view dataset_of_id(std::string_view id) {
    const auto colon = id.rfind(':');
    return colon == std::string_view::npos ? id : id.substr(0, colon);
}

namespace {

struct HeldOut {
    Dataset sample;
    Dataset remainder;
};

HeldOut hold_out(const Dataset& dataset, std::size_t rows) {
    HeldOut out;
    out.sample = systematic_sample(dataset, SampleSpec::absolute(rows));
    out.remainder = without_documents(dataset, document_ids(out.sample));
    return out;
}

std::size_t fraction_of(double fraction, std::size_t population) {
    return SampleSpec::fraction(fraction).resolve(population);
}

void require_classes(const Dataset& dataset, const std::map<ClassLabel, std::size_t>& original,
                     std::string_view stage) {
    const auto now = dataset.class_counts();
    for (const auto& [label, count] : original) {
        if (!now.contains(label)) {
            throw Error(ErrorKind::TooSmall, dataset.name + ": class " + std::string(label.name()) +
                                                 " has no rows left before drawing the " + std::string(stage));
        }
    }
}

void check_fraction(double fraction, std::string_view what) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " must lie in (0, 1)");
    }
}

const Dataset& find_dataset(std::span<const Dataset> datasets, std::string_view name) {
    for (const Dataset& d : datasets) {
        if (d.name == name) return d;
    }
    throw Error(ErrorKind::UnknownDataset, "no dataset named '" + std::string(name) + "'");
}

std::vector<const Dataset*> active_datasets(std::span<const Dataset> datasets,
                                            const std::vector<Exclusion>& exclusions) {
    for (const Exclusion& ex : exclusions) (void)find_dataset(datasets, ex.dataset);
    std::vector<const Dataset*> active;
    for (const Dataset& d : datasets) {
        const bool excluded = std::any_of(exclusions.begin(), exclusions.end(),
                                          [&](const Exclusion& ex) { return ex.dataset == d.name; });
        if (!excluded) active.push_back(&d);
    }
    return active;
}

void append_ids(std::vector<std::string>& out, const Dataset& dataset) {
    for (const Document& doc : dataset.documents) out.push_back(doc.id);
}

double resolve_multiplier(const std::optional<double>& requested, std::span<const Dataset> pool,
                          std::size_t per_dataset_n, bool& capped) {
    capped = false;
    if (requested) return *requested;
    try {
        const CenterMultiplier m = compute_center_multiplier(pool, per_dataset_n);
        capped = m.capped;
        return m.value;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NoCenterData) return 1.0;
        throw;
    }
}

}  // namespace

SplitPlan make_leave_one_in(const Dataset& dataset, const LeaveOneInOptions& options) {
    check_fraction(options.val_frac, "validation fraction");
    check_fraction(options.test_frac, "test fraction");
    const auto original = dataset.class_counts();
    for (const auto& [label, count] : original) {
        if (count < 3) {
            throw Error(ErrorKind::TooSmall, dataset.name + ": class " + std::string(label.name()) + " has only " +
                                                 std::to_string(count) + " rows (need 3)");
        }
    }
    if (original.empty()) throw Error(ErrorKind::TooSmall, dataset.name + ": dataset is empty");

    const HeldOut test = hold_out(dataset, fraction_of(options.test_frac, dataset.size()));
    require_classes(test.remainder, original, "validation set");
    const HeldOut validation = hold_out(test.remainder, fraction_of(options.val_frac, dataset.size()));
    require_classes(validation.remainder, original, "training sample");
    const Dataset train = systematic_sample(
        validation.remainder, SampleSpec::absolute(std::min(options.train_n, validation.remainder.size())));

    SplitPlan plan;
    plan.config_name = "loi-" + dataset.name;
    plan.mode = SplitMode::LeaveOneIn;
    plan.task = dataset.task;
    plan.subject = dataset.name;
    plan.trained_on = {dataset.name};
    append_ids(plan.train, train);
    append_ids(plan.validation, validation.sample);
    append_ids(plan.test[dataset.name], test.sample);
    return plan;
}

SplitPlan make_leave_one_in_benchmark(std::span<const Dataset> datasets, std::string_view subject,
                                      const LeaveOneInOptions& options) {
    SplitPlan plan = make_leave_one_in(find_dataset(datasets, subject), options);
    for (const Dataset& d : datasets) {
        if (d.name == plan.subject) continue;
        append_ids(plan.test[d.name], hold_out(d, fraction_of(options.test_frac, d.size())).sample);
    }
    return plan;
}

SplitPlan make_leave_one_out(std::span<const Dataset> datasets, std::string_view left_out,
                             const LeaveOneOutOptions& options) {
    check_fraction(options.test_frac, "test fraction");
    const Dataset& held = find_dataset(datasets, left_out);
    for (const Exclusion& ex : options.exclusions) {
        if (ex.dataset == left_out) {
            throw Error(ErrorKind::ExcludedLeftOut,
                        "'" + std::string(left_out) + "' is excluded (" + ex.reason + ") and cannot be left out");
        }
    }
    const auto active = active_datasets(datasets, options.exclusions);

    SplitPlan plan;
    plan.config_name = "loo-" + held.name;
    plan.mode = SplitMode::LeaveOneOut;
    plan.task = held.task;
    plan.subject = held.name;
    plan.excluded_datasets = options.exclusions;

    std::vector<Dataset> pool;
    for (const Dataset* d : active) {
        HeldOut test = hold_out(*d, fraction_of(options.test_frac, d->size()));
        append_ids(plan.test[d->name], test.sample);
        if (d->name == held.name) {
            const Dataset validation = systematic_sample(
                test.remainder, SampleSpec::absolute(std::min(options.val_n, test.remainder.size())));
            append_ids(plan.validation, validation);
        } else {
            plan.trained_on.push_back(d->name);
            pool.push_back(std::move(test.remainder));
        }
    }

    bool capped = false;
    const double m = resolve_multiplier(options.center_multiplier, pool, options.per_dataset_n, capped);
    plan.center_multiplier = m;
    plan.multiplier_capped = capped;
    append_ids(plan.train, concat_balanced(pool, options.per_dataset_n, m));
    return plan;
}

SplitPlan make_full_train(std::span<const Dataset> datasets, const FullTrainOptions& options) {
    check_fraction(options.test_frac, "test fraction");
    const auto active = active_datasets(datasets, options.exclusions);

    SplitPlan plan;
    plan.config_name = "full";
    plan.mode = SplitMode::FullTrain;
    plan.task = active.empty() ? Task::Leaning : active.front()->task;
    plan.excluded_datasets = options.exclusions;

    std::vector<Dataset> pool;
    for (const Dataset* d : active) {
        const HeldOut test = hold_out(*d, fraction_of(options.test_frac, d->size()));
        append_ids(plan.test[d->name], test.sample);
        HeldOut validation =
            hold_out(test.remainder, std::min(options.val_per_dataset, test.remainder.size()));
        append_ids(plan.validation, validation.sample);
        plan.trained_on.push_back(d->name);
        pool.push_back(std::move(validation.remainder));
    }

    bool capped = false;
    const double m = resolve_multiplier(options.center_multiplier, pool, options.per_dataset_n, capped);
    plan.center_multiplier = m;
    plan.multiplier_capped = capped;
    append_ids(plan.train, concat_balanced(pool, options.per_dataset_n, m));
    return plan;
}

double AggregateEval::political_share() const noexcept {
    const std::size_t total = political + non_political;
    return total == 0 ? 0.0 : static_cast<double>(political) / static_cast<double>(total);
}

AggregateEval make_aggregate_eval(std::span<const Dataset> datasets, std::size_t per_dataset_n) {
    AggregateEval out;
    out.dataset.name = "aggregate";
    out.dataset.task = Task::Politicalness;
    for (const Dataset& d : datasets) {
        Dataset view = d;
        view.task = Task::Politicalness;
        view.check_labels();
        const Dataset sample =
            systematic_sample(view, SampleSpec::absolute(std::min(per_dataset_n, view.size())));
        for (const Document& doc : sample.documents) {
            if (*doc.politicalness == Politicalness::Political) {
                ++out.political;
            } else {
                ++out.non_political;
            }
            out.dataset.documents.push_back(doc);
        }
    }
    return out;
}

SplitPlan aggregate_plan(const AggregateEval& aggregate) {
    SplitPlan plan;
    plan.config_name = "aggregate";
    plan.mode = SplitMode::Aggregate;
    plan.task = Task::Politicalness;
    for (const Document& doc : aggregate.dataset.documents) {
        plan.test[std::string(dataset_of_id(doc.id))].push_back(doc.id);
    }
    return plan;
}

HygieneReport check_hygiene(const SplitPlan& plan) {
    HygieneReport report;
    std::unordered_set<std::string_view> train;
    std::unordered_set<std::string_view> validation;
    std::unordered_set<std::string_view> test;
    for (const auto& id : plan.train) {
        if (!train.insert(id).second) report.duplicates.push_back(id);
    }
    for (const auto& id : plan.validation) {
        if (!validation.insert(id).second) report.duplicates.push_back(id);
        if (train.contains(id)) report.train_validation.push_back(id);
    }
    for (const auto& [name, ids] : plan.test) {
        for (const auto& id : ids) {
            if (!test.insert(id).second) report.duplicates.push_back(id);
            if (train.contains(id)) report.train_test.push_back(id);
            if (validation.contains(id)) report.validation_test.push_back(id);
        }
    }
    return report;
}

}  // namespace polibench
