#pragma once

#include "polibench/corpus.hpp"
#include "polibench/evaluation.hpp"
#include "polibench/overlap.hpp"
#include "polibench/sampling.hpp"
#include "polibench/splits.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace polibench::storage {

using nlohmann::json;

// Canonical document file: one JSON object per line with the keys id, title
// (optional), body, leaning / politicalness (optional, wire vocabulary),
// topic (optional) and body_word_count.
json document_to_json(const Document& doc);
Document document_from_json(const json& value);

void write_documents(std::ostream& out, const std::vector<Document>& docs);
std::vector<Document> read_documents(std::istream& in, const std::string& source_name);

/// Workdir dataset store: datasets/index.json plus datasets/<file>.jsonl.
void save_datasets(const std::filesystem::path& workdir, const std::vector<Dataset>& datasets);
std::vector<Dataset> load_datasets(const std::filesystem::path& workdir);

/// File-system friendly form of a dataset or config name.
std::string slug(std::string_view name);

json plan_to_json(const SplitPlan& plan);
SplitPlan plan_from_json(const json& value);

/// Reconstructible description of one systematic sample.
struct SampleRecord {
    std::string dataset;
    SampleSpec spec;
    std::vector<std::string> ids;
};

json sample_record_to_json(const SampleRecord& record);
SampleRecord sample_record_from_json(const json& value);

/// Prediction wire format: {"doc_id": ..., "label": ..., "confidence": ...}
/// per line; confidence defaults to 1.0 and must lie in [0, 1].
json prediction_to_json(const Prediction& p);
std::vector<Prediction> read_predictions(std::istream& in, Task task, const std::string& source_name);
void write_predictions(std::ostream& out, const std::vector<Prediction>& preds);

json report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const json& value);

json matrix_to_json(const IntersectionMatrix& matrix, double threshold_pct);
IntersectionMatrix matrix_from_json(const json& value);

json read_json_file(const std::filesystem::path& path);
/// Writes to a temporary sibling, then renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace polibench::storage
