#include "polibench/storage.hpp"

#include "polibench/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace polibench::storage {

namespace {

[[noreturn]] void parse_error(const std::string& source, std::size_t line, const std::string& message) {
    throw Error(ErrorKind::ParseError, source + ": line " + std::to_string(line) + ": " + message);
}

std::optional<std::string> optional_string(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return it->get<std::string>();
}

ClassLabel parse_label(Task task, const std::string& name) {
    const auto label = ClassLabel::parse(task, name);
    if (!label) {
        throw Error(ErrorKind::UnknownLabel,
                    "'" + name + "' is not a " + std::string(task_name(task)) + " label");
    }
    return *label;
}

json metrics_to_json(const Metrics& m) {
    return json{{"accuracy", m.accuracy}, {"macro_precision", m.precision}, {"macro_recall", m.recall},
                {"macro_f1", m.f1}};
}

Metrics metrics_from_json(const json& v) {
    return Metrics{v.at("accuracy").get<double>(), v.at("macro_precision").get<double>(),
                   v.at("macro_recall").get<double>(), v.at("macro_f1").get<double>()};
}

}  // namespace

json document_to_json(const Document& doc) {
    json out = json::object();
    out["id"] = doc.id;
    if (doc.title) out["title"] = *doc.title;
    out["body"] = doc.body;
    if (doc.leaning) out["leaning"] = ClassLabel(*doc.leaning).name();
    if (doc.politicalness) out["politicalness"] = ClassLabel(*doc.politicalness).name();
    if (doc.topic) out["topic"] = *doc.topic;
    out["body_word_count"] = doc.body_word_count;
    return out;
}

Document document_from_json(const json& value) {
    Document doc;
    doc.id = value.at("id").get<std::string>();
    doc.title = optional_string(value, "title");
    doc.body = value.at("body").get<std::string>();
    if (const auto leaning = optional_string(value, "leaning")) {
        doc.leaning = static_cast<Leaning>(parse_label(Task::Leaning, *leaning).index());
    }
    if (const auto pol = optional_string(value, "politicalness")) {
        doc.politicalness = static_cast<Politicalness>(parse_label(Task::Politicalness, *pol).index());
    }
    doc.topic = optional_string(value, "topic");
    doc.body_word_count = value.contains("body_word_count") ? value["body_word_count"].get<std::size_t>()
                                                            : count_words(doc.body);
    return doc;
}

void write_documents(std::ostream& out, const std::vector<Document>& docs) {
    for (const Document& doc : docs) out << document_to_json(doc).dump() << '\n';
}

std::vector<Document> read_documents(std::istream& in, const std::string& source_name) {
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            docs.push_back(document_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            parse_error(source_name, line_no, e.what());
        }
    }
    return docs;
}

std::string slug(std::string_view name) {
    std::string out;
    for (const char c : name) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                          c == '.' || c == '_';
        out += keep ? c : '_';
    }
    return out.empty() ? std::string("_") : out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Io, tmp.string() + ": cannot write");
        out << text;
        if (!out) throw Error(ErrorKind::Io, tmp.string() + ": write failed");
    }
    std::filesystem::rename(tmp, path);
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, path.string() + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
}

void save_datasets(const std::filesystem::path& workdir, const std::vector<Dataset>& datasets) {
    const auto dir = workdir / "datasets";
    std::filesystem::create_directories(dir);
    json index = json::array();
    std::set<std::string> used;
    for (const Dataset& d : datasets) {
        std::string file = slug(d.name);
        for (int n = 2; used.contains(file); ++n) file = slug(d.name) + "_" + std::to_string(n);
        used.insert(file);
        file += ".jsonl";
        std::ostringstream body;
        write_documents(body, d.documents);
        write_text_file(dir / file, body.str());
        index.push_back(json{{"name", d.name}, {"task", task_name(d.task)}, {"file", file}, {"documents", d.size()}});
    }
    write_text_file(dir / "index.json", index.dump(2) + "\n");
}

std::vector<Dataset> load_datasets(const std::filesystem::path& workdir) {
    const auto dir = workdir / "datasets";
    if (!std::filesystem::exists(dir / "index.json")) {
        throw Error(ErrorKind::Io, (dir / "index.json").string() + ": no ingested datasets (run ingest first)");
    }
    const json index = read_json_file(dir / "index.json");
    std::vector<Dataset> datasets;
    for (const json& entry : index) {
        Dataset d;
        d.name = entry.at("name").get<std::string>();
        const auto task = parse_task(entry.at("task").get<std::string>());
        if (!task) throw Error(ErrorKind::ParseError, "datasets/index.json: bad task for " + d.name);
        d.task = *task;
        const auto path = dir / entry.at("file").get<std::string>();
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error(ErrorKind::Io, path.string() + ": cannot open");
        d.documents = read_documents(in, path.string());
        datasets.push_back(std::move(d));
    }
    return datasets;
}

json plan_to_json(const SplitPlan& plan) {
    json out;
    out["config_name"] = plan.config_name;
    out["mode"] = split_mode_name(plan.mode);
    out["task"] = task_name(plan.task);
    out["subject"] = plan.subject ? json(*plan.subject) : json(nullptr);
    out["trained_on"] = plan.trained_on;
    out["train"] = plan.train;
    out["validation"] = plan.validation;
    out["test"] = json::object();
    for (const auto& [name, ids] : plan.test) out["test"][name] = ids;
    out["excluded_datasets"] = json::array();
    for (const auto& ex : plan.excluded_datasets) {
        out["excluded_datasets"].push_back(json{{"name", ex.dataset}, {"reason", ex.reason}});
    }
    out["center_multiplier"] = plan.center_multiplier ? json(*plan.center_multiplier) : json(nullptr);
    out["multiplier_capped"] = plan.multiplier_capped;
    return out;
}

SplitPlan plan_from_json(const json& value) {
    try {
        SplitPlan plan;
        plan.config_name = value.at("config_name").get<std::string>();
        const auto mode = parse_split_mode(value.at("mode").get<std::string>());
        const auto task = parse_task(value.at("task").get<std::string>());
        if (!mode || !task) throw Error(ErrorKind::ParseError, "split plan has an unknown mode or task");
        plan.mode = *mode;
        plan.task = *task;
        plan.subject = optional_string(value, "subject");
        plan.trained_on = value.at("trained_on").get<std::vector<std::string>>();
        plan.train = value.at("train").get<std::vector<std::string>>();
        plan.validation = value.at("validation").get<std::vector<std::string>>();
        for (const auto& [name, ids] : value.at("test").items()) {
            plan.test[name] = ids.get<std::vector<std::string>>();
        }
        for (const json& ex : value.at("excluded_datasets")) {
            plan.excluded_datasets.push_back({ex.at("name").get<std::string>(), ex.at("reason").get<std::string>()});
        }
        if (value.contains("center_multiplier") && !value["center_multiplier"].is_null()) {
            plan.center_multiplier = value["center_multiplier"].get<double>();
        }
        plan.multiplier_capped = value.value("multiplier_capped", false);
        return plan;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("split plan: ") + e.what());
    }
}

json sample_record_to_json(const SampleRecord& record) {
    json spec;
    if (const auto* abs = std::get_if<AbsoluteSize>(&record.spec.size)) {
        spec["rows"] = abs->rows;
    } else {
        spec["fraction"] = std::get<FractionSize>(record.spec.size).fraction;
    }
    spec["center_multiplier"] = record.spec.center_multiplier;
    return json{{"dataset", record.dataset}, {"spec", spec}, {"ids", record.ids}};
}

SampleRecord sample_record_from_json(const json& value) {
    SampleRecord record;
    record.dataset = value.at("dataset").get<std::string>();
    const json& spec = value.at("spec");
    const double m = spec.value("center_multiplier", 1.0);
    record.spec = spec.contains("rows") ? SampleSpec::absolute(spec["rows"].get<std::size_t>(), m)
                                        : SampleSpec::fraction(spec.at("fraction").get<double>(), m);
    record.ids = value.at("ids").get<std::vector<std::string>>();
    return record;
}

json prediction_to_json(const Prediction& p) {
    return json{{"doc_id", p.doc_id}, {"label", p.predicted_label.name()}, {"confidence", p.confidence}};
}

void write_predictions(std::ostream& out, const std::vector<Prediction>& preds) {
    for (const Prediction& p : preds) out << prediction_to_json(p).dump() << '\n';
}

std::vector<Prediction> read_predictions(std::istream& in, Task task, const std::string& source_name) {
    std::vector<Prediction> preds;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            parse_error(source_name, line_no, e.what());
        }
        if (!obj.is_object()) parse_error(source_name, line_no, "prediction must be a JSON object");
        const auto id = obj.find("doc_id");
        const auto label = obj.find("label");
        if (id == obj.end() || !id->is_string()) parse_error(source_name, line_no, "missing string key 'doc_id'");
        if (label == obj.end() || !label->is_string()) parse_error(source_name, line_no, "missing string key 'label'");
        const auto parsed = ClassLabel::parse(task, label->get<std::string>());
        if (!parsed) {
            throw Error(ErrorKind::UnknownLabel, source_name + ": line " + std::to_string(line_no) + ": label '" +
                                                     label->get<std::string>() + "' is not a " +
                                                     std::string(task_name(task)) + " label");
        }
        double confidence = 1.0;
        if (const auto c = obj.find("confidence"); c != obj.end() && !c->is_null()) {
            if (!c->is_number()) parse_error(source_name, line_no, "confidence must be a number");
            confidence = c->get<double>();
            if (!(confidence >= 0.0 && confidence <= 1.0)) {
                parse_error(source_name, line_no, "confidence must lie in [0, 1]");
            }
        }
        preds.push_back(Prediction{id->get<std::string>(), *parsed, confidence});
    }
    return preds;
}

json report_to_json(const EvaluationReport& report) {
    json out;
    out["task"] = task_name(report.task);
    out["model_supports_center"] = report.model_supports_center;
    out["per_dataset"] = json::object();
    for (const auto& [name, score] : report.per_dataset) {
        json entry = metrics_to_json(score.metrics);
        json labels = json::array();
        for (const ClassLabel l : score.confusion.labels) labels.push_back(l.name());
        entry["confusion"] = json{{"labels", labels}, {"counts", score.confusion.counts}};
        entry["scored"] = score.scored;
        entry["single_class"] = score.single_class;
        out["per_dataset"][name] = entry;
    }
    out["averages"] = json::object();
    if (report.in_distribution) out["averages"]["in_distribution"] = metrics_to_json(*report.in_distribution);
    if (report.out_of_distribution) {
        out["averages"]["out_of_distribution"] = metrics_to_json(*report.out_of_distribution);
    }
    if (report.overall) out["averages"]["overall"] = metrics_to_json(*report.overall);
    return out;
}

EvaluationReport report_from_json(const json& value) {
    try {
        EvaluationReport report;
        const auto task = parse_task(value.at("task").get<std::string>());
        if (!task) throw Error(ErrorKind::ParseError, "evaluation report has an unknown task");
        report.task = *task;
        report.model_supports_center = value.value("model_supports_center", true);
        for (const auto& [name, entry] : value.at("per_dataset").items()) {
            std::vector<ClassLabel> labels;
            for (const json& l : entry.at("confusion").at("labels")) labels.push_back(parse_label(*task, l.get<std::string>()));
            DatasetScore score{metrics_from_json(entry), ConfusionMatrix(labels), entry.at("scored").get<std::size_t>(),
                               entry.value("single_class", false)};
            score.confusion.counts = entry.at("confusion").at("counts").get<std::vector<std::vector<std::size_t>>>();
            report.per_dataset.emplace(name, std::move(score));
        }
        const json& avg = value.at("averages");
        if (avg.contains("in_distribution")) report.in_distribution = metrics_from_json(avg["in_distribution"]);
        if (avg.contains("out_of_distribution")) {
            report.out_of_distribution = metrics_from_json(avg["out_of_distribution"]);
        }
        if (avg.contains("overall")) report.overall = metrics_from_json(avg["overall"]);
        return report;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("evaluation report: ") + e.what());
    }
}

json matrix_to_json(const IntersectionMatrix& matrix, double threshold_pct) {
    json out;
    out["datasets"] = matrix.names;
    out["threshold_pct"] = threshold_pct;
    out["reports"] = json::array();
    for (const IntersectionReport& r : matrix.reports) {
        json pairs = json::array();
        for (const auto& [a, b] : r.matched_pairs) pairs.push_back(json::array({a, b}));
        out["reports"].push_back(json{{"dataset_a", r.dataset_a},
                                      {"dataset_b", r.dataset_b},
                                      {"size_a", r.size_a},
                                      {"size_b", r.size_b},
                                      {"match_count", r.match_count},
                                      {"match_count_b", r.match_count_b},
                                      {"pct_of_a", r.pct_of_a},
                                      {"pct_of_b", r.pct_of_b},
                                      {"significant", flag_significant(r, threshold_pct)},
                                      {"matched_pairs", pairs}});
    }
    return out;
}

IntersectionMatrix matrix_from_json(const json& value) {
    try {
        IntersectionMatrix matrix;
        matrix.names = value.at("datasets").get<std::vector<std::string>>();
        for (const json& r : value.at("reports")) {
            IntersectionReport report;
            report.dataset_a = r.at("dataset_a").get<std::string>();
            report.dataset_b = r.at("dataset_b").get<std::string>();
            report.size_a = r.at("size_a").get<std::size_t>();
            report.size_b = r.at("size_b").get<std::size_t>();
            report.match_count = r.at("match_count").get<std::size_t>();
            report.match_count_b = r.at("match_count_b").get<std::size_t>();
            report.pct_of_a = r.at("pct_of_a").get<double>();
            report.pct_of_b = r.at("pct_of_b").get<double>();
            for (const json& p : r.at("matched_pairs")) {
                report.matched_pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
            }
            matrix.reports.push_back(std::move(report));
        }
        return matrix;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("intersection matrix: ") + e.what());
    }
}

}  // namespace polibench::storage
