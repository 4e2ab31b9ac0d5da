#include "polibench/corpus.hpp"

#include "polibench/errors.hpp"
#include "polibench/unicode.hpp"

#include <unicode/utf8.h>

namespace polibench {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config: return "Config";
        case ErrorKind::Io: return "Io";
        case ErrorKind::UnknownDataset: return "UnknownDataset";
        case ErrorKind::ExcludedLeftOut: return "ExcludedLeftOut";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnknownLabel: return "UnknownLabel";
        case ErrorKind::MissingField: return "MissingField";
        case ErrorKind::UnknownTopic: return "UnknownTopic";
        case ErrorKind::EmptyBody: return "EmptyBody";
        case ErrorKind::NoCenterData: return "NoCenterData";
        case ErrorKind::TooSmall: return "TooSmall";
        case ErrorKind::MissingLabels: return "MissingLabels";
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::EmptyMatrix: return "EmptyMatrix";
        case ErrorKind::MissingPredictions: return "MissingPredictions";
    }
    return "Unknown";
}

bool is_data_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Config:
        case ErrorKind::Io:
        case ErrorKind::UnknownDataset:
        case ErrorKind::ExcludedLeftOut:
        case ErrorKind::InvalidArgument:
            return false;
        default:
            return true;
    }
}

std::string_view task_name(Task task) {
    return task == Task::Leaning ? "leaning" : "politicalness";
}

std::optional<Task> parse_task(std::string_view text) {
    if (text == "leaning") return Task::Leaning;
    if (text == "politicalness") return Task::Politicalness;
    return std::nullopt;
}

namespace {
constexpr std::string_view kLeaningNames[] = {"left", "center", "right"};
constexpr std::string_view kPoliticalnessNames[] = {"non_political", "political"};
}  // namespace

std::string_view ClassLabel::name() const noexcept {
    return task_ == Task::Leaning ? kLeaningNames[index_] : kPoliticalnessNames[index_];
}

std::optional<ClassLabel> ClassLabel::parse(Task task, std::string_view name) {
    for (const ClassLabel label : labels_for(task)) {
        if (label.name() == name) {
            return label;
        }
    }
    return std::nullopt;
}

std::vector<ClassLabel> labels_for(Task task) {
    if (task == Task::Leaning) {
        return {Leaning::Left, Leaning::Center, Leaning::Right};
    }
    return {Politicalness::NonPolitical, Politicalness::Political};
}

Leaning reduce_five_to_three(FiveLevelLeaning label) noexcept {
    switch (label) {
        case FiveLevelLeaning::ExtremeLeft:
        case FiveLevelLeaning::ModerateLeft:
            return Leaning::Left;
        case FiveLevelLeaning::Center:
            return Leaning::Center;
        case FiveLevelLeaning::ModerateRight:
        case FiveLevelLeaning::ExtremeRight:
            return Leaning::Right;
    }
    return Leaning::Center;
}

std::size_t count_words(std::string_view text) {
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto length = static_cast<std::int32_t>(text.size());
    std::size_t words = 0;
    bool in_word = false;
    std::int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(s, i, length, c);
        const bool space = c >= 0 && unicode::is_white_space(static_cast<char32_t>(c));
        if (space) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++words;
        }
    }
    return words;
}

Document make_document(std::string id, std::optional<std::string> title, std::string body) {
    Document doc;
    doc.id = std::move(id);
    doc.title = std::move(title);
    doc.body = std::move(body);
    doc.body_word_count = count_words(doc.body);
    return doc;
}

std::string make_document_id(std::string_view dataset_name, std::size_t ordinal) {
    std::string id(dataset_name);
    id += ':';
    id += std::to_string(ordinal);
    return id;
}

ClassLabel Dataset::label_of(const Document& doc) const {
    if (task == Task::Leaning) {
        if (!doc.leaning) {
            throw Error(ErrorKind::MissingLabels,
                        "document " + doc.id + " in " + name + " has no leaning label");
        }
        return *doc.leaning;
    }
    if (!doc.politicalness) {
        throw Error(ErrorKind::MissingLabels,
                    "document " + doc.id + " in " + name + " has no politicalness label");
    }
    return *doc.politicalness;
}

std::map<ClassLabel, std::size_t> Dataset::class_counts() const {
    std::map<ClassLabel, std::size_t> counts;
    for (const Document& doc : documents) {
        ++counts[label_of(doc)];
    }
    return counts;
}

void Dataset::check_labels() const {
    for (const Document& doc : documents) {
        (void)label_of(doc);
    }
}

Dataset derive_politicalness(const Dataset& dataset, const LabelRule& rule) {
    Dataset out;
    out.name = dataset.name;
    out.task = Task::Politicalness;
    out.documents.reserve(dataset.documents.size());

    for (const Document& doc : dataset.documents) {
        std::optional<Politicalness> label;
        if (std::holds_alternative<AllPolitical>(rule)) {
            label = Politicalness::Political;
        } else if (std::holds_alternative<AllNonPolitical>(rule)) {
            label = Politicalness::NonPolitical;
        } else {
            const auto& topics = std::get<TopicMap>(rule).topics;
            const auto it = doc.topic ? topics.find(*doc.topic) : topics.end();
            if (it == topics.end()) {
                throw Error(ErrorKind::UnknownTopic,
                            "document " + doc.id + " has topic '" + doc.topic.value_or("") +
                                "' which the topic map of " + dataset.name + " does not cover");
            }
            if (it->second == TopicAction::Discard) {
                continue;
            }
            label = it->second == TopicAction::Political ? Politicalness::Political
                                                         : Politicalness::NonPolitical;
        }
        Document copy = doc;
        copy.politicalness = label;
        out.documents.push_back(std::move(copy));
    }
    return out;
}

}  // namespace polibench
