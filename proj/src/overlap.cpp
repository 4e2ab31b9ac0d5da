#include "polibench/overlap.hpp"

#include "polibench/aho_corasick.hpp"
#include "polibench/errors.hpp"
#include "polibench/unicode.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

namespace polibench {

RowShape row_shape(const CanonicalKey& key) noexcept {
    if (key.has_title()) return key.has_body() ? RowShape::Both : RowShape::TitleOnly;
    return key.has_body() ? RowShape::BodyOnly : RowShape::Neither;
}

std::string canonicalize(std::string_view text) {
    return unicode::canonicalize(text);
}

std::string middle_slice(std::string_view canonical_body, std::size_t slice_len) {
    if (canonical_body.empty()) {
        throw Error(ErrorKind::EmptyBody, "cannot slice an empty body");
    }
    const std::size_t length = unicode::code_point_count(canonical_body);
    const std::size_t take = std::min(slice_len, length);
    return std::string(unicode::substr_code_points(canonical_body, (length - take) / 2, take));
}

CanonicalKey make_key(const Document& doc, std::size_t slice_len) {
    CanonicalKey key;
    if (doc.title) {
        std::string title = canonicalize(*doc.title);
        if (!title.empty()) key.canonical_title = std::move(title);
    }
    std::string body = canonicalize(doc.body);
    if (!body.empty()) {
        key.middle_slice = middle_slice(body, slice_len);
        key.canonical_body = std::move(body);
    }
    return key;
}

bool compare_rows(const CanonicalKey& a, const CanonicalKey& b) {
    const RowShape sa = row_shape(a);
    const RowShape sb = row_shape(b);
    if (sa == RowShape::Neither || sb == RowShape::Neither) return false;
    if (a.has_title() && b.has_title()) {
        return *a.canonical_title == *b.canonical_title;
    }
    if (sa == RowShape::TitleOnly && sb == RowShape::BodyOnly) {
        return b.canonical_body->find(*a.canonical_title) != std::string::npos;
    }
    if (sa == RowShape::BodyOnly && sb == RowShape::TitleOnly) {
        return a.canonical_body->find(*b.canonical_title) != std::string::npos;
    }
    return b.canonical_body->find(*a.middle_slice) != std::string::npos;
}

KeyedDataset make_keyed(const Dataset& dataset, std::size_t slice_len) {
    KeyedDataset keyed;
    keyed.name = dataset.name;
    keyed.ids.reserve(dataset.size());
    keyed.keys.reserve(dataset.size());
    for (const Document& doc : dataset.documents) {
        keyed.ids.push_back(doc.id);
        keyed.keys.push_back(make_key(doc, slice_len));
    }
    return keyed;
}

namespace {

using IndexPairs = std::vector<std::pair<std::size_t, std::size_t>>;

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs `work(begin, end, out)` over [0, count) split into contiguous shards.
template <typename Work>
IndexPairs sharded(std::size_t count, unsigned threads, Work work) {
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count / 256, 1)));
    std::vector<IndexPairs> results(threads);
    if (threads == 1) {
        work(std::size_t{0}, count, results[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = count * t / threads;
            const std::size_t end = count * (t + 1) / threads;
            pool.emplace_back([&, begin, end, t] { work(begin, end, results[t]); });
        }
        for (auto& th : pool) th.join();
    }
    IndexPairs merged;
    for (auto& part : results) merged.insert(merged.end(), part.begin(), part.end());
    return merged;
}

// Probes are substrings searched for inside bodies. `probe_rows[p]` is the
// row that contributed pattern p; `text_rows` are the rows whose bodies are
// scanned. `accept(probe_row, text_row)` filters shape combinations and
// `emit` orients the pair as (a index, b index).
template <typename Accept, typename Emit>
IndexPairs containment_pass(const std::vector<std::string_view>& probes, const std::vector<std::size_t>& probe_rows,
                            const std::vector<std::size_t>& text_rows, const std::vector<CanonicalKey>& text_keys,
                            unsigned threads, Accept accept, Emit emit) {
    if (probes.empty() || text_rows.empty()) return {};
    const PatternAutomaton automaton(probes);
    return sharded(text_rows.size(), threads, [&](std::size_t begin, std::size_t end, IndexPairs& out) {
        std::vector<std::uint32_t> seen(probes.size(), 0);
        for (std::size_t t = begin; t < end; ++t) {
            const std::size_t text_row = text_rows[t];
            const auto stamp = static_cast<std::uint32_t>(t + 1);
            automaton.scan(*text_keys[text_row].canonical_body, [&](PatternAutomaton::PatternId p) {
                if (seen[p] == stamp) return;
                seen[p] = stamp;
                if (accept(probe_rows[p], text_row)) out.push_back(emit(probe_rows[p], text_row));
            });
        }
    });
}

}  // namespace

IndexPairs find_matches(const KeyedDataset& a, const KeyedDataset& b, const OverlapOptions& options) {
    const unsigned threads = resolve_threads(options.threads);
    std::vector<RowShape> shape_a(a.keys.size());
    std::vector<RowShape> shape_b(b.keys.size());
    for (std::size_t i = 0; i < a.keys.size(); ++i) shape_a[i] = row_shape(a.keys[i]);
    for (std::size_t j = 0; j < b.keys.size(); ++j) shape_b[j] = row_shape(b.keys[j]);

    IndexPairs pairs;

    // both titled: exact title equality
    {
        std::unordered_map<std::string_view, std::vector<std::size_t>> by_title;
        for (std::size_t j = 0; j < b.keys.size(); ++j) {
            if (b.keys[j].has_title()) by_title[*b.keys[j].canonical_title].push_back(j);
        }
        for (std::size_t i = 0; i < a.keys.size(); ++i) {
            if (!a.keys[i].has_title()) continue;
            const auto it = by_title.find(*a.keys[i].canonical_title);
            if (it == by_title.end()) continue;
            for (const std::size_t j : it->second) pairs.emplace_back(i, j);
        }
    }

    // a's probes (title-only titles, middle slices) inside b's bodies
    {
        std::vector<std::string_view> probes;
        std::vector<std::size_t> probe_rows;
        for (std::size_t i = 0; i < a.keys.size(); ++i) {
            if (shape_a[i] == RowShape::TitleOnly) {
                probes.emplace_back(*a.keys[i].canonical_title);
                probe_rows.push_back(i);
            } else if (shape_a[i] == RowShape::BodyOnly || shape_a[i] == RowShape::Both) {
                probes.emplace_back(*a.keys[i].middle_slice);
                probe_rows.push_back(i);
            }
        }
        std::vector<std::size_t> text_rows;
        for (std::size_t j = 0; j < b.keys.size(); ++j) {
            if (b.keys[j].has_body()) text_rows.push_back(j);
        }
        auto found = containment_pass(
            probes, probe_rows, text_rows, b.keys, threads,
            [&](std::size_t i, std::size_t j) {
                switch (shape_a[i]) {
                    case RowShape::TitleOnly: return shape_b[j] == RowShape::BodyOnly;
                    case RowShape::BodyOnly: return true;
                    case RowShape::Both: return shape_b[j] == RowShape::BodyOnly;
                    case RowShape::Neither: return false;
                }
                return false;
            },
            [](std::size_t i, std::size_t j) { return std::pair{i, j}; });
        pairs.insert(pairs.end(), found.begin(), found.end());
    }

    // b's title-only titles inside a's body-only bodies
    {
        std::vector<std::string_view> probes;
        std::vector<std::size_t> probe_rows;
        for (std::size_t j = 0; j < b.keys.size(); ++j) {
            if (shape_b[j] == RowShape::TitleOnly) {
                probes.emplace_back(*b.keys[j].canonical_title);
                probe_rows.push_back(j);
            }
        }
        std::vector<std::size_t> text_rows;
        for (std::size_t i = 0; i < a.keys.size(); ++i) {
            if (shape_a[i] == RowShape::BodyOnly) text_rows.push_back(i);
        }
        auto found = containment_pass(
            probes, probe_rows, text_rows, a.keys, threads, [](std::size_t, std::size_t) { return true; },
            [](std::size_t j, std::size_t i) { return std::pair{i, j}; });
        pairs.insert(pairs.end(), found.begin(), found.end());
    }

    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

IntersectionReport make_report(const KeyedDataset& a, const KeyedDataset& b, const IndexPairs& pairs) {
    IntersectionReport report;
    report.dataset_a = a.name;
    report.dataset_b = b.name;
    report.size_a = a.keys.size();
    report.size_b = b.keys.size();

    std::vector<bool> hit_a(a.keys.size(), false);
    std::vector<bool> hit_b(b.keys.size(), false);
    report.matched_pairs.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        if (!hit_a[i]) {
            hit_a[i] = true;
            ++report.match_count;
        }
        if (!hit_b[j]) {
            hit_b[j] = true;
            ++report.match_count_b;
        }
        report.matched_pairs.emplace_back(a.ids[i], b.ids[j]);
    }
    std::sort(report.matched_pairs.begin(), report.matched_pairs.end());
    if (report.size_a > 0) {
        report.pct_of_a = 100.0 * static_cast<double>(report.match_count) / static_cast<double>(report.size_a);
    }
    if (report.size_b > 0) {
        report.pct_of_b = 100.0 * static_cast<double>(report.match_count_b) / static_cast<double>(report.size_b);
    }
    return report;
}

IntersectionReport intersect_datasets(const Dataset& a, const Dataset& b, const OverlapOptions& options) {
    if (a.name == b.name) {
        throw Error(ErrorKind::InvalidArgument, "cannot intersect dataset '" + a.name + "' with itself");
    }
    const KeyedDataset ka = make_keyed(a);
    const KeyedDataset kb = make_keyed(b);
    return make_report(ka, kb, find_matches(ka, kb, options));
}

const IntersectionReport* IntersectionMatrix::find(std::string_view row, std::string_view column) const {
    for (const IntersectionReport& r : reports) {
        if (r.dataset_a == row && r.dataset_b == column) return &r;
    }
    return nullptr;
}

IntersectionMatrix intersection_matrix(std::span<const Dataset> datasets, const OverlapOptions& options) {
    if (datasets.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "an intersection matrix needs at least two datasets");
    }
    IntersectionMatrix matrix;
    std::vector<KeyedDataset> keyed;
    keyed.reserve(datasets.size());
    for (const Dataset& d : datasets) {
        if (std::find(matrix.names.begin(), matrix.names.end(), d.name) != matrix.names.end()) {
            throw Error(ErrorKind::InvalidArgument, "dataset name '" + d.name + "' appears twice");
        }
        matrix.names.push_back(d.name);
        keyed.push_back(make_keyed(d));
    }
    for (std::size_t r = 0; r < keyed.size(); ++r) {
        for (std::size_t c = 0; c < keyed.size(); ++c) {
            if (r == c) continue;
            matrix.reports.push_back(make_report(keyed[r], keyed[c], find_matches(keyed[r], keyed[c], options)));
        }
    }
    return matrix;
}

bool flag_significant(const IntersectionReport& report, double threshold_pct) {
    return std::max(report.pct_of_a, report.pct_of_b) >= threshold_pct;
}

}  // namespace polibench
