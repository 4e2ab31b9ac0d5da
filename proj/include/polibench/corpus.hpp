#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polibench {

enum class Task : std::uint8_t { Leaning, Politicalness };

enum class Leaning : std::uint8_t { Left, Center, Right };

enum class FiveLevelLeaning : std::uint8_t {
    ExtremeLeft,
    ModerateLeft,
    Center,
    ModerateRight,
    ExtremeRight,
};

enum class Politicalness : std::uint8_t { NonPolitical, Political };

std::string_view task_name(Task task);
std::optional<Task> parse_task(std::string_view text);

/// The shared class space used by sampling, splitting and scoring. A label
/// always belongs to one task; within a task labels order as
/// Left < Center < Right and NonPolitical < Political.
class ClassLabel {
public:
    constexpr ClassLabel(Leaning value) noexcept
        : task_(Task::Leaning), index_(static_cast<std::uint8_t>(value)) {}
    constexpr ClassLabel(Politicalness value) noexcept
        : task_(Task::Politicalness), index_(static_cast<std::uint8_t>(value)) {}

    constexpr Task task() const noexcept { return task_; }
    constexpr std::uint8_t index() const noexcept { return index_; }

    /// Wire vocabulary: "left" | "center" | "right" | "political" | "non_political".
    std::string_view name() const noexcept;

    static std::optional<ClassLabel> parse(Task task, std::string_view name);

    friend constexpr auto operator<=>(const ClassLabel&, const ClassLabel&) = default;

private:
    Task task_;
    std::uint8_t index_;
};

/// All admissible labels of a task in label order.
std::vector<ClassLabel> labels_for(Task task);

Leaning reduce_five_to_three(FiveLevelLeaning label) noexcept;

struct Document {
    std::string id;
    std::optional<std::string> title;
    std::string body;
    std::optional<Leaning> leaning;
    std::optional<Politicalness> politicalness;
    std::optional<std::string> topic;
    std::size_t body_word_count = 0;

    friend bool operator==(const Document&, const Document&) = default;
};

/// Builds a document with body_word_count filled in.
Document make_document(std::string id, std::optional<std::string> title, std::string body);

/// Number of tokens separated by Unicode white space.
std::size_t count_words(std::string_view text);

std::string make_document_id(std::string_view dataset_name, std::size_t ordinal);

struct Dataset {
    std::string name;
    Task task = Task::Leaning;
    std::vector<Document> documents;

    /// Label of `doc` under this dataset's task; throws MissingLabels when absent.
    ClassLabel label_of(const Document& doc) const;

    /// Per-class document counts, only for classes that occur.
    std::map<ClassLabel, std::size_t> class_counts() const;

    /// Throws MissingLabels if some document lacks the label required by task.
    void check_labels() const;

    std::size_t size() const noexcept { return documents.size(); }
    bool empty() const noexcept { return documents.empty(); }
};

enum class TopicAction : std::uint8_t { Political, NonPolitical, Discard };

struct AllPolitical {};
struct AllNonPolitical {};
struct TopicMap {
    std::map<std::string, TopicAction> topics;
};

using LabelRule = std::variant<AllPolitical, AllNonPolitical, TopicMap>;

/// Attaches politicalness labels under `rule`. The result is a Politicalness
/// dataset; documents whose topic maps to Discard are dropped. Throws
/// UnknownTopic for a document whose topic is missing from a TopicMap.
Dataset derive_politicalness(const Dataset& dataset, const LabelRule& rule);

}  // namespace polibench
