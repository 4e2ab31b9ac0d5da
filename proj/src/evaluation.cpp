#include "polibench/evaluation.hpp"

#include "polibench/errors.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace polibench {

ConfusionMatrix::ConfusionMatrix(std::vector<ClassLabel> l)
    : labels(std::move(l)), counts(labels.size(), std::vector<std::size_t>(labels.size(), 0)) {}

std::size_t ConfusionMatrix::total() const noexcept {
    std::size_t sum = 0;
    for (const auto& row : counts) {
        for (const std::size_t c : row) sum += c;
    }
    return sum;
}

std::size_t ConfusionMatrix::index_of(ClassLabel label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw Error(ErrorKind::UnknownLabel, "label '" + std::string(label.name()) + "' is not scored here");
    }
    return static_cast<std::size_t>(it - labels.begin());
}

ConfusionMatrix confusion_matrix(std::span<const ClassLabel> golds, std::span<const ClassLabel> preds,
                                 std::vector<ClassLabel> labels) {
    if (golds.size() != preds.size()) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(golds.size()) + " gold labels but " +
                                                   std::to_string(preds.size()) + " predictions");
    }
    ConfusionMatrix matrix(std::move(labels));
    for (std::size_t i = 0; i < golds.size(); ++i) {
        ++matrix.counts[matrix.index_of(golds[i])][matrix.index_of(preds[i])];
    }
    return matrix;
}

Metrics macro_metrics(const ConfusionMatrix& matrix) {
    const std::size_t total = matrix.total();
    if (total == 0) {
        throw Error(ErrorKind::EmptyMatrix, "cannot compute metrics of an empty confusion matrix");
    }
    const std::size_t k = matrix.labels.size();
    Metrics m;
    std::size_t trace = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const std::size_t tp = matrix.counts[c][c];
        trace += tp;
        std::size_t gold = 0;
        std::size_t predicted = 0;
        for (std::size_t o = 0; o < k; ++o) {
            gold += matrix.counts[c][o];
            predicted += matrix.counts[o][c];
        }
        const double p = predicted == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(predicted);
        const double r = gold == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(gold);
        const double f = (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
        m.precision += p;
        m.recall += r;
        m.f1 += f;
    }
    m.precision /= static_cast<double>(k);
    m.recall /= static_cast<double>(k);
    m.f1 /= static_cast<double>(k);
    m.accuracy = static_cast<double>(trace) / static_cast<double>(total);
    return m;
}

ConfusionMatrix observed_classes(const ConfusionMatrix& matrix) {
    const std::size_t k = matrix.labels.size();
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t seen = 0;
        for (std::size_t o = 0; o < k; ++o) seen += matrix.counts[c][o] + matrix.counts[o][c];
        if (seen > 0) keep.push_back(c);
    }
    std::vector<ClassLabel> labels;
    for (const std::size_t c : keep) labels.push_back(matrix.labels[c]);
    ConfusionMatrix out(std::move(labels));
    for (std::size_t r = 0; r < keep.size(); ++r) {
        for (std::size_t c = 0; c < keep.size(); ++c) out.counts[r][c] = matrix.counts[keep[r]][keep[c]];
    }
    return out;
}

ScoredItems join_predictions(const Dataset& dataset, std::span<const Prediction> preds, bool drop_center) {
    std::unordered_map<std::string_view, const Prediction*> by_id;
    for (const Prediction& p : preds) by_id.emplace(p.doc_id, &p);

    ScoredItems items;
    std::vector<std::string> missing;
    const ClassLabel center = Leaning::Center;
    for (const Document& doc : dataset.documents) {
        const ClassLabel gold = dataset.label_of(doc);
        const auto it = by_id.find(doc.id);
        if (it == by_id.end()) {
            missing.push_back(doc.id);
            continue;
        }
        if (drop_center && gold == center) continue;
        items.golds.push_back(gold);
        items.preds.push_back(it->second->predicted_label);
    }
    if (!missing.empty()) {
        std::string list;
        const std::size_t shown = std::min<std::size_t>(missing.size(), 50);
        for (std::size_t i = 0; i < shown; ++i) {
            if (i) list += ", ";
            list += missing[i];
        }
        if (missing.size() > shown) list += ", ... (" + std::to_string(missing.size() - shown) + " more)";
        throw Error(ErrorKind::MissingPredictions,
                    dataset.name + ": no prediction for " + std::to_string(missing.size()) + " ids: " + list);
    }
    return items;
}

ScoredItems restrict_binary(const Dataset& dataset, std::span<const Prediction> preds) {
    return join_predictions(dataset, preds, true);
}

Metrics average_metrics(std::span<const Metrics> values) {
    Metrics avg;
    if (values.empty()) return avg;
    for (const Metrics& m : values) {
        avg.accuracy += m.accuracy;
        avg.precision += m.precision;
        avg.recall += m.recall;
        avg.f1 += m.f1;
    }
    const auto n = static_cast<double>(values.size());
    avg.accuracy /= n;
    avg.precision /= n;
    avg.recall /= n;
    avg.f1 /= n;
    return avg;
}

EvaluationReport evaluate_per_dataset(const std::map<std::string, Dataset>& test_sets,
                                      const std::map<std::string, std::vector<Prediction>>& preds,
                                      bool model_supports_center, const std::vector<std::string>& trained_on) {
    EvaluationReport report;
    report.model_supports_center = model_supports_center;
    if (!test_sets.empty()) report.task = test_sets.begin()->second.task;

    const std::set<std::string> in_group(trained_on.begin(), trained_on.end());
    std::vector<Metrics> in_scores;
    std::vector<Metrics> out_scores;
    std::vector<Metrics> all_scores;
    static const std::vector<Prediction> kNone;
    std::string missing;

    for (const auto& [name, dataset] : test_sets) {
        const auto it = preds.find(name);
        const std::vector<Prediction>& dataset_preds = it == preds.end() ? kNone : it->second;
        const bool binary = !model_supports_center && dataset.task == Task::Leaning;
        ScoredItems items;
        try {
            items = join_predictions(dataset, dataset_preds, binary);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::MissingPredictions) throw;
            if (!missing.empty()) missing += "; ";
            missing += e.what();
            continue;
        }

        std::vector<ClassLabel> labels = labels_for(dataset.task);
        if (binary) {
            labels = {Leaning::Left, Leaning::Right};
        }
        if (items.golds.empty()) continue;  // nothing left to score (e.g. all-Center under binary restriction)

        DatasetScore score{Metrics{}, confusion_matrix(items.golds, items.preds, labels), items.golds.size(), false};
        score.metrics = macro_metrics(observed_classes(score.confusion));
        score.single_class = std::set<ClassLabel>(items.golds.begin(), items.golds.end()).size() == 1;

        all_scores.push_back(score.metrics);
        (in_group.contains(name) ? in_scores : out_scores).push_back(score.metrics);
        report.per_dataset.emplace(name, std::move(score));
    }
    if (!missing.empty()) throw Error(ErrorKind::MissingPredictions, missing);
    if (!in_scores.empty()) report.in_distribution = average_metrics(in_scores);
    if (!out_scores.empty()) report.out_of_distribution = average_metrics(out_scores);
    if (!all_scores.empty()) report.overall = average_metrics(all_scores);
    return report;
}

Dataset apply_confidence_filter(const Dataset& dataset, std::span<const Prediction> preds, ClassLabel target_label,
                                double threshold) {
    std::unordered_map<std::string_view, const Prediction*> by_id;
    for (const Prediction& p : preds) by_id.emplace(p.doc_id, &p);

    Dataset out;
    out.name = dataset.name;
    out.task = dataset.task;
    std::vector<std::string> missing;
    for (const Document& doc : dataset.documents) {
        const auto it = by_id.find(doc.id);
        if (it == by_id.end()) {
            missing.push_back(doc.id);
            continue;
        }
        const Prediction& p = *it->second;
        if (p.predicted_label == target_label && p.confidence > threshold) continue;
        out.documents.push_back(doc);
    }
    if (!missing.empty()) {
        throw Error(ErrorKind::MissingPredictions, dataset.name + ": " + std::to_string(missing.size()) +
                                                       " documents have no prediction, first " + missing.front());
    }
    return out;
}

}  // namespace polibench
