#pragma once

#include "polibench/corpus.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace polibench {

enum class SourceFormat : std::uint8_t { DelimitedTable, JsonLines };

enum class FieldRole : std::uint8_t { Title, Body, Label, Topic };

/// A source label maps to a three-level leaning, a five-level leaning (reduced
/// on load) or a politicalness value.
using MappedLabel = std::variant<Leaning, FiveLevelLeaning, Politicalness>;

std::optional<MappedLabel> parse_mapped_label(std::string_view name);

inline constexpr std::size_t kDefaultMinBodyWords = 5;

struct DatasetManifest {
    std::string name;
    Task task = Task::Leaning;
    std::filesystem::path source_path;
    SourceFormat format = SourceFormat::DelimitedTable;
    char delimiter = ',';
    /// source column / key -> role
    std::map<std::string, FieldRole> field_map;
    /// source label value -> domain label
    std::map<std::string, MappedLabel> label_map;
    std::size_t min_body_words = kDefaultMinBodyWords;
    std::optional<std::size_t> downsample_target;
    std::optional<std::size_t> paragraph_split_every;
    std::optional<LabelRule> label_rule;

    /// Throws Config when the manifest violates its invariants.
    void validate() const;
};

/// Reads a JSON manifest. A relative source_path resolves against the
/// manifest's own directory.
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Parse, label, then split -> filter -> downsample.
Dataset load_dataset(const DatasetManifest& manifest);

/// Title and body separated by a blank line; the body alone when the title is
/// absent or empty.
std::string compose_text(const Document& doc);

/// Paragraphs are runs of non-blank lines separated by one or more blank lines.
std::vector<std::string> split_paragraphs(std::string_view body);

Dataset split_long_documents(const Dataset& dataset, std::size_t every_n_paragraphs);

Dataset filter_short_documents(const Dataset& dataset, std::size_t min_body_words);

/// Balanced per-class downsample to at most `target` documents. Each class
/// gets floor(target/k) (+1 for the first target mod k classes in label
/// order), capped at its size, picked at regular intervals of body length.
/// Survivors keep their source order.
Dataset downsample_per_class(const Dataset& dataset, std::size_t target);

}  // namespace polibench
