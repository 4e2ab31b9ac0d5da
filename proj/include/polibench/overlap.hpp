#pragma once

#include "polibench/corpus.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace polibench {

inline constexpr std::size_t kDefaultSliceLength = 50;
inline constexpr double kDefaultSignificanceThreshold = 10.0;

/// Letters-only lowercase forms of a row's title and body. A field whose
/// canonical form is empty counts as absent.
struct CanonicalKey {
    std::optional<std::string> canonical_title;
    std::optional<std::string> canonical_body;
    std::optional<std::string> middle_slice;

    bool has_title() const noexcept { return canonical_title.has_value(); }
    bool has_body() const noexcept { return canonical_body.has_value(); }
};

/// Which of the row's fields take part in comparison.
enum class RowShape : std::uint8_t { TitleOnly, BodyOnly, Both, Neither };

RowShape row_shape(const CanonicalKey& key) noexcept;

std::string canonicalize(std::string_view text);

/// Centered slice of min(slice_len, length) code points starting at
/// floor((length - L) / 2). Throws EmptyBody for an empty body.
std::string middle_slice(std::string_view canonical_body, std::size_t slice_len = kDefaultSliceLength);

CanonicalKey make_key(const Document& doc, std::size_t slice_len = kDefaultSliceLength);

/// Directional row comparison with `a` as the first dataset's row:
///   both titled                     -> titles are equal
///   one title-only, other body-only -> the body contains the title
///   otherwise (bodies on both sides) -> b's body contains a's middle slice
bool compare_rows(const CanonicalKey& a, const CanonicalKey& b);

struct IntersectionReport {
    std::string dataset_a;
    std::string dataset_b;
    std::size_t size_a = 0;
    std::size_t size_b = 0;
    /// Rows of A with at least one partner in B.
    std::size_t match_count = 0;
    /// Rows of B with at least one partner in A.
    std::size_t match_count_b = 0;
    double pct_of_a = 0.0;
    double pct_of_b = 0.0;
    /// Sorted by (id_a, id_b).
    std::vector<std::pair<std::string, std::string>> matched_pairs;
};

/// Canonical keys of one dataset, computed once and reused across pairs.
struct KeyedDataset {
    std::string name;
    std::vector<std::string> ids;
    std::vector<CanonicalKey> keys;
};

KeyedDataset make_keyed(const Dataset& dataset, std::size_t slice_len = kDefaultSliceLength);

struct OverlapOptions {
    /// 0 = hardware concurrency
    unsigned threads = 0;
};

/// Index pairs (i, j) with compare_rows(a.keys[i], b.keys[j]), sorted. Same
/// result as the double loop over compare_rows, found through hash lookups
/// and multi-pattern automata instead.
std::vector<std::pair<std::size_t, std::size_t>> find_matches(const KeyedDataset& a, const KeyedDataset& b,
                                                              const OverlapOptions& options = {});

/// Fills counts and percentages from index pairs.
IntersectionReport make_report(const KeyedDataset& a, const KeyedDataset& b,
                               const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

IntersectionReport intersect_datasets(const Dataset& a, const Dataset& b, const OverlapOptions& options = {});

struct IntersectionMatrix {
    std::vector<std::string> names;
    /// Every ordered pair (row, column), row != column, row-major.
    std::vector<IntersectionReport> reports;

    const IntersectionReport* find(std::string_view row, std::string_view column) const;
};

IntersectionMatrix intersection_matrix(std::span<const Dataset> datasets, const OverlapOptions& options = {});

bool flag_significant(const IntersectionReport& report, double threshold_pct = kDefaultSignificanceThreshold);

}  // namespace polibench
