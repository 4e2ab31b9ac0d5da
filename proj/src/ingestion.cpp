#include "polibench/ingestion.hpp"

#include "polibench/delimited.hpp"
#include "polibench/errors.hpp"
#include "polibench/sampling.hpp"
#include "polibench/unicode.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace polibench {

using nlohmann::json;

std::optional<MappedLabel> parse_mapped_label(std::string_view name) {
    if (name == "left") return Leaning::Left;
    if (name == "center") return Leaning::Center;
    if (name == "right") return Leaning::Right;
    if (name == "extreme_left") return FiveLevelLeaning::ExtremeLeft;
    if (name == "moderate_left") return FiveLevelLeaning::ModerateLeft;
    if (name == "moderate_right") return FiveLevelLeaning::ModerateRight;
    if (name == "extreme_right") return FiveLevelLeaning::ExtremeRight;
    if (name == "political") return Politicalness::Political;
    if (name == "non_political") return Politicalness::NonPolitical;
    return std::nullopt;
}

namespace {

std::optional<FieldRole> parse_role(std::string_view name) {
    if (name == "title") return FieldRole::Title;
    if (name == "body") return FieldRole::Body;
    if (name == "label") return FieldRole::Label;
    if (name == "topic") return FieldRole::Topic;
    return std::nullopt;
}

std::optional<TopicAction> parse_topic_action(std::string_view name) {
    if (name == "political") return TopicAction::Political;
    if (name == "non_political") return TopicAction::NonPolitical;
    if (name == "discard") return TopicAction::Discard;
    return std::nullopt;
}

[[noreturn]] void config_error(const std::filesystem::path& path, const std::string& message) {
    throw Error(ErrorKind::Config, path.string() + ": " + message);
}

LabelRule parse_label_rule(const json& value, const std::filesystem::path& path) {
    if (value.is_string()) {
        const auto name = value.get<std::string>();
        if (name == "all_political") return AllPolitical{};
        if (name == "all_non_political") return AllNonPolitical{};
        config_error(path, "unknown label_rule '" + name + "'");
    }
    if (value.is_object() && value.contains("topic_map") && value["topic_map"].is_object()) {
        TopicMap map;
        for (const auto& [topic, action] : value["topic_map"].items()) {
            const auto parsed = action.is_string() ? parse_topic_action(action.get<std::string>()) : std::nullopt;
            if (!parsed) config_error(path, "topic '" + topic + "' maps to an unknown action");
            map.topics.emplace(topic, *parsed);
        }
        return map;
    }
    config_error(path, "label_rule must be \"all_political\", \"all_non_political\" or {\"topic_map\": {...}}");
}

bool mapped_label_fits(const MappedLabel& label, Task task) {
    const bool political = std::holds_alternative<Politicalness>(label);
    return political == (task == Task::Politicalness);
}

}  // namespace

void DatasetManifest::validate() const {
    if (name.empty()) {
        throw Error(ErrorKind::Config, "manifest has an empty name");
    }
    const auto has_role = [&](FieldRole role) {
        return std::any_of(field_map.begin(), field_map.end(), [&](const auto& kv) { return kv.second == role; });
    };
    for (const FieldRole role : {FieldRole::Title, FieldRole::Body, FieldRole::Label, FieldRole::Topic}) {
        const auto n = std::count_if(field_map.begin(), field_map.end(),
                                     [&](const auto& kv) { return kv.second == role; });
        if (n > 1) throw Error(ErrorKind::Config, name + ": several source fields map to the same role");
    }
    if (!has_role(FieldRole::Body)) {
        throw Error(ErrorKind::Config, name + ": field_map must map a source field to body");
    }
    if (label_rule && task != Task::Politicalness) {
        throw Error(ErrorKind::Config, name + ": label_rule requires task politicalness");
    }
    if (!label_rule) {
        if (!has_role(FieldRole::Label)) {
            throw Error(ErrorKind::Config, name + ": field_map must map a label column (or set label_rule)");
        }
        for (const auto& [source, label] : label_map) {
            if (!mapped_label_fits(label, task)) {
                throw Error(ErrorKind::Config,
                            name + ": label_map value for '" + source + "' does not belong to task " +
                                std::string(task_name(task)));
            }
        }
    }
    if (label_rule && std::holds_alternative<TopicMap>(*label_rule) && !has_role(FieldRole::Topic)) {
        throw Error(ErrorKind::Config, name + ": a topic_map label_rule needs a topic field");
    }
    if (downsample_target && *downsample_target < labels_for(task).size()) {
        throw Error(ErrorKind::Config, name + ": downsample_target must be at least the number of classes");
    }
    if (paragraph_split_every && *paragraph_split_every == 0) {
        throw Error(ErrorKind::Config, name + ": paragraph_split_every must be positive");
    }
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, path.string() + ": cannot open manifest");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        config_error(path, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) config_error(path, "manifest must be a JSON object");

    DatasetManifest m;
    try {
        m.name = doc.at("name").get<std::string>();
        const auto task = parse_task(doc.at("task").get<std::string>());
        if (!task) config_error(path, "task must be \"leaning\" or \"politicalness\"");
        m.task = *task;

        std::filesystem::path source = doc.at("source_path").get<std::string>();
        m.source_path = source.is_relative() ? path.parent_path() / source : source;

        const auto format = doc.at("format").get<std::string>();
        if (format == "delimited-table") {
            m.format = SourceFormat::DelimitedTable;
        } else if (format == "json-lines") {
            m.format = SourceFormat::JsonLines;
        } else {
            config_error(path, "format must be \"delimited-table\" or \"json-lines\"");
        }
        if (doc.contains("delimiter")) {
            const auto delim = doc["delimiter"].get<std::string>();
            if (delim.size() != 1) config_error(path, "delimiter must be a single character");
            m.delimiter = delim[0];
        }

        for (const auto& [source_field, role] : doc.at("field_map").items()) {
            const auto parsed = parse_role(role.get<std::string>());
            if (!parsed) config_error(path, "field_map role for '" + source_field + "' must be title|body|label|topic");
            m.field_map.emplace(source_field, *parsed);
        }
        if (doc.contains("label_map")) {
            for (const auto& [source_label, target] : doc["label_map"].items()) {
                const auto parsed = parse_mapped_label(target.get<std::string>());
                if (!parsed) config_error(path, "label_map target for '" + source_label + "' is not a known label");
                m.label_map.emplace(source_label, *parsed);
            }
        }
        if (doc.contains("min_body_words")) m.min_body_words = doc["min_body_words"].get<std::size_t>();
        if (doc.contains("downsample_target") && !doc["downsample_target"].is_null()) {
            m.downsample_target = doc["downsample_target"].get<std::size_t>();
        }
        if (doc.contains("paragraph_split_every") && !doc["paragraph_split_every"].is_null()) {
            m.paragraph_split_every = doc["paragraph_split_every"].get<std::size_t>();
        }
        if (doc.contains("label_rule") && !doc["label_rule"].is_null()) {
            m.label_rule = parse_label_rule(doc["label_rule"], path);
        }
    } catch (const json::exception& e) {
        config_error(path, std::string("bad manifest field: ") + e.what());
    }
    try {
        m.validate();
    } catch (const Error& e) {
        config_error(path, e.what());
    }
    return m;
}

std::string compose_text(const Document& doc) {
    if (doc.title && !doc.title->empty()) {
        return *doc.title + "\n\n" + doc.body;
    }
    return doc.body;
}

namespace {

bool is_blank_line(std::string_view line) {
    return line.find_first_not_of(" \t\r\f\v") == std::string_view::npos;
}

std::string join_paragraphs(const std::vector<std::string>& paragraphs, std::size_t begin, std::size_t end) {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
        if (i > begin) out += "\n\n";
        out += paragraphs[i];
    }
    return out;
}

// One source record with raw field values, before label mapping.
struct RawRecord {
    std::size_t ordinal = 0;
    std::size_t line = 0;
    std::optional<std::string> title;
    std::optional<std::string> body;
    std::optional<std::string> label;
    std::optional<std::string> topic;
};

std::string row_context(const DatasetManifest& m, const RawRecord& r) {
    return m.source_path.string() + ": row " + std::to_string(r.ordinal) + " (line " + std::to_string(r.line) + ")";
}

void check_text(const DatasetManifest& m, const RawRecord& r, const std::optional<std::string>& value) {
    if (!value) return;
    if (const auto bad = unicode::find_invalid_utf8(*value)) {
        throw Error(ErrorKind::ParseError,
                    row_context(m, r) + ": invalid UTF-8 at byte " + std::to_string(*bad) + " of a field");
    }
}

std::optional<std::string>* slot_for(RawRecord& r, FieldRole role) {
    switch (role) {
        case FieldRole::Title: return &r.title;
        case FieldRole::Body: return &r.body;
        case FieldRole::Label: return &r.label;
        case FieldRole::Topic: return &r.topic;
    }
    return nullptr;
}

std::vector<RawRecord> read_delimited(const DatasetManifest& m) {
    std::ifstream in(m.source_path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, m.source_path.string() + ": cannot open source file");
    DelimitedReader reader(in, m.delimiter);
    const auto header = reader.next();
    if (!header) throw Error(ErrorKind::ParseError, m.source_path.string() + ": missing header row");

    std::vector<std::pair<std::size_t, FieldRole>> columns;
    for (const auto& [source, role] : m.field_map) {
        const auto it = std::find(header->begin(), header->end(), source);
        if (it == header->end()) {
            throw Error(ErrorKind::MissingField,
                        m.source_path.string() + ": header has no column '" + source + "'");
        }
        columns.emplace_back(static_cast<std::size_t>(it - header->begin()), role);
    }

    std::vector<RawRecord> records;
    while (auto row = reader.next()) {
        if (row->size() == 1 && (*row)[0].empty()) continue;  // blank line
        RawRecord r;
        r.ordinal = records.size();
        r.line = reader.record_line();
        if (row->size() != header->size()) {
            throw Error(ErrorKind::ParseError,
                        row_context(m, r) + ": expected " + std::to_string(header->size()) + " fields, found " +
                            std::to_string(row->size()));
        }
        for (const auto& [index, role] : columns) {
            *slot_for(r, role) = (*row)[index];
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::optional<std::string> json_text(const json& value) {
    if (value.is_null()) return std::nullopt;
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    return value.dump();
}

std::vector<RawRecord> read_json_lines(const DatasetManifest& m) {
    std::ifstream in(m.source_path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, m.source_path.string() + ": cannot open source file");
    std::vector<RawRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank_line(line)) continue;
        RawRecord r;
        r.ordinal = records.size();
        r.line = line_no;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            const std::string what = e.what();
            throw Error(ErrorKind::ParseError, row_context(m, r) + ": " + what);
        }
        if (!obj.is_object()) throw Error(ErrorKind::ParseError, row_context(m, r) + ": not a JSON object");
        for (const auto& [source, role] : m.field_map) {
            const auto it = obj.find(source);
            if (it == obj.end()) {
                if (role == FieldRole::Title) continue;  // titles are optional per row
                throw Error(ErrorKind::MissingField, row_context(m, r) + ": missing key '" + source + "'");
            }
            *slot_for(r, role) = json_text(*it);
        }
        records.push_back(std::move(r));
    }
    return records;
}

Document to_document(const DatasetManifest& m, const RawRecord& r) {
    check_text(m, r, r.title);
    check_text(m, r, r.body);
    check_text(m, r, r.topic);
    if (!r.body) throw Error(ErrorKind::MissingField, row_context(m, r) + ": body is null");

    std::optional<std::string> title = r.title;
    if (title && title->empty()) title.reset();
    Document doc = make_document(make_document_id(m.name, r.ordinal), std::move(title), *r.body);
    doc.topic = r.topic;

    if (m.label_rule) {
        return doc;  // politicalness comes from the rule
    }
    const std::string source_label = r.label.value_or("");
    const auto it = m.label_map.find(source_label);
    if (it == m.label_map.end()) {
        throw Error(ErrorKind::UnknownLabel,
                    row_context(m, r) + ": label '" + source_label + "' is not in the label_map");
    }
    const MappedLabel& mapped = it->second;
    if (const auto* three = std::get_if<Leaning>(&mapped)) {
        doc.leaning = *three;
    } else if (const auto* five = std::get_if<FiveLevelLeaning>(&mapped)) {
        doc.leaning = reduce_five_to_three(*five);
    } else {
        doc.politicalness = std::get<Politicalness>(mapped);
    }
    return doc;
}

}  // namespace

std::vector<std::string> split_paragraphs(std::string_view body) {
    std::vector<std::string> paragraphs;
    std::string current;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t end = body.find('\n', pos);
        if (end == std::string_view::npos) end = body.size();
        std::string_view line = body.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (is_blank_line(line)) {
            if (!current.empty()) paragraphs.push_back(std::move(current));
            current.clear();
        } else {
            if (!current.empty()) current += '\n';
            current += line;
        }
        pos = end + 1;
    }
    if (!current.empty()) paragraphs.push_back(std::move(current));
    return paragraphs;
}

Dataset split_long_documents(const Dataset& dataset, std::size_t every_n_paragraphs) {
    if (every_n_paragraphs == 0) {
        throw Error(ErrorKind::InvalidArgument, "paragraph split interval must be positive");
    }
    Dataset out;
    out.name = dataset.name;
    out.task = dataset.task;
    for (const Document& doc : dataset.documents) {
        const auto paragraphs = split_paragraphs(doc.body);
        if (paragraphs.size() <= every_n_paragraphs) {
            out.documents.push_back(doc);
            continue;
        }
        for (std::size_t k = 0; k * every_n_paragraphs < paragraphs.size(); ++k) {
            const std::size_t begin = k * every_n_paragraphs;
            const std::size_t end = std::min(paragraphs.size(), begin + every_n_paragraphs);
            Document child = doc;
            child.id = doc.id + "#" + std::to_string(k);
            child.body = join_paragraphs(paragraphs, begin, end);
            child.body_word_count = count_words(child.body);
            out.documents.push_back(std::move(child));
        }
    }
    return out;
}

Dataset filter_short_documents(const Dataset& dataset, std::size_t min_body_words) {
    Dataset out;
    out.name = dataset.name;
    out.task = dataset.task;
    for (const Document& doc : dataset.documents) {
        if (doc.body_word_count > 0 && doc.body_word_count >= min_body_words) {
            out.documents.push_back(doc);
        }
    }
    return out;
}

Dataset downsample_per_class(const Dataset& dataset, std::size_t target) {
    const auto counts = dataset.class_counts();
    ClassQuotas quotas = even_quotas(counts, target);
    for (auto& [label, quota] : quotas) {
        quota = std::min(quota, counts.at(label));
    }
    const Dataset picked = sample_with_quotas(dataset, quotas);

    std::unordered_map<std::string_view, std::size_t> source_position;
    for (std::size_t i = 0; i < dataset.documents.size(); ++i) {
        source_position.emplace(dataset.documents[i].id, i);
    }
    Dataset out = picked;
    std::sort(out.documents.begin(), out.documents.end(), [&](const Document& a, const Document& b) {
        return source_position.at(a.id) < source_position.at(b.id);
    });
    return out;
}

Dataset load_dataset(const DatasetManifest& manifest) {
    manifest.validate();
    const std::vector<RawRecord> records = manifest.format == SourceFormat::DelimitedTable
                                               ? read_delimited(manifest)
                                               : read_json_lines(manifest);
    Dataset dataset;
    dataset.name = manifest.name;
    dataset.task = manifest.task;
    dataset.documents.reserve(records.size());
    for (const RawRecord& r : records) {
        dataset.documents.push_back(to_document(manifest, r));
    }
    if (manifest.label_rule) {
        dataset = derive_politicalness(dataset, *manifest.label_rule);
    }
    if (manifest.paragraph_split_every) {
        dataset = split_long_documents(dataset, *manifest.paragraph_split_every);
    }
    dataset = filter_short_documents(dataset, manifest.min_body_words);
    if (manifest.downsample_target) {
        dataset = downsample_per_class(dataset, *manifest.downsample_target);
    }
    return dataset;
}

}  // namespace polibench
