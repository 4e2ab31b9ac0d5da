#include "doctest.h"

#include "oracles.hpp"
#include "synth.hpp"

#include "polibench/aho_corasick.hpp"
#include "polibench/errors.hpp"
#include "polibench/overlap.hpp"

#include <set>

using namespace polibench;

namespace {

CanonicalKey key(std::optional<std::string> title, std::optional<std::string> body) {
    CanonicalKey k;
    k.canonical_title = std::move(title);
    if (body) {
        k.middle_slice = middle_slice(*body);
        k.canonical_body = std::move(body);
    }
    return k;
}

Dataset dataset(const std::string& name, const std::vector<std::pair<std::optional<std::string>, std::string>>& rows) {
    Dataset d{name, Task::Leaning, {}};
    for (std::size_t i = 0; i < rows.size(); ++i) d.documents.push_back(synth::doc(name, i, rows[i].first, rows[i].second));
    return d;
}

}  // namespace

TEST_CASE("canonicalize") {
    CHECK(canonicalize("Hello, World! 2024") == "helloworld");
    CHECK(canonicalize("") == "");
    CHECK(canonicalize("Café-Bar") == "cafébar");
    CHECK(canonicalize("ÀÉÎ straße ΣΟΦΊΑ") == "àéîstraßeσοφία");
    CHECK(canonicalize("123 -- !!") == "");
    CHECK(canonicalize("tab\tand\nnewline") == "tabandnewline");
}

TEST_CASE("canonicalize is idempotent") {
    synth::Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const std::string text = synth::noisify(rng, synth::words(rng, 12, 50));
        const std::string once = canonicalize(text);
        CHECK(canonicalize(once) == once);
    }
}

TEST_CASE("middle_slice") {
    CHECK(middle_slice("abcdefghij") == "abcdefghij");
    CHECK(middle_slice("abcdefgh", 4) == "cdef");
    const std::string fifty(50, 'q');
    CHECK(middle_slice(fifty) == fifty);
    CHECK(middle_slice("abcdefghi", 4) == "cdef");  // offset floor(5/2) = 2
    CHECK(middle_slice("ééééaéééé", 1) == "a");      // measured in code points
    CHECK_THROWS_AS(middle_slice(""), Error);

    synth::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const std::string body = canonicalize(synth::words(rng, 1 + i % 30, 100));
        const std::string s = middle_slice(body);
        CHECK(body.find(s) != std::string::npos);
        CHECK(s == oracle::slice(body));
    }
}

TEST_CASE("row keys treat empty canonical fields as absent") {
    const CanonicalKey k = make_key(synth::doc("x", 0, std::string("2024!"), "Real body"));
    CHECK_FALSE(k.has_title());
    CHECK(row_shape(k) == RowShape::BodyOnly);
    CHECK(row_shape(make_key(synth::doc("x", 0, std::string("T"), "42"))) == RowShape::TitleOnly);
    CHECK(row_shape(make_key(synth::doc("x", 0, std::nullopt, "..."))) == RowShape::Neither);
}

TEST_CASE("compare_rows follows the nine-case table") {
    const std::string body_a = "theprimeministerannouncedthatthesgovernmentshutdownwouldendsoon";
    const CanonicalKey t = key("senatevote", std::nullopt);
    const CanonicalKey b_with_title = key(std::nullopt, "yesterdaythesenatevotewasheld");
    CHECK(compare_rows(key("senatevote", std::nullopt), key("senatevote", std::nullopt)));
    CHECK(compare_rows(key("taxreform", std::nullopt), key(std::nullopt, "thedebateontaxreformcontinues")));
    CHECK(compare_rows(key(std::nullopt, "thedebateontaxreformcontinues"), key("taxreform", std::nullopt)));
    CHECK(compare_rows(t, b_with_title));

    const CanonicalKey a_body = key(std::nullopt, body_a);
    CHECK(*a_body.middle_slice == oracle::slice(body_a));
    CHECK(compare_rows(a_body, key(std::nullopt, "xx" + *a_body.middle_slice + "yy")));
    CHECK(compare_rows(a_body, key("other", "xx" + *a_body.middle_slice + "yy")));
    CHECK_FALSE(compare_rows(a_body, key(std::nullopt, a_body.middle_slice->substr(1))));

    // both titled: bodies are ignored
    CHECK(compare_rows(key("same", "aaaa"), key("same", "bbbb")));
    CHECK_FALSE(compare_rows(key("one", body_a), key("two", body_a)));
    CHECK(compare_rows(key("same", std::nullopt), key("same", "zzz")));
    CHECK(compare_rows(key("same", "zzz"), key("same", std::nullopt)));

    // titled a vs body-only b compares a's slice, not its title
    CHECK_FALSE(compare_rows(key("taxreform", "qqqqqq"), key(std::nullopt, "taxreform")));
    CHECK(compare_rows(key("taxreform", "qqqqqq"), key(std::nullopt, "aqqqqqqb")));
    // body-only a vs titled b: b's body must contain a's slice
    CHECK(compare_rows(key(std::nullopt, "qqqqqq"), key("title", "aqqqqqqb")));
    CHECK_FALSE(compare_rows(key(std::nullopt, "qqqqqq"), key("qqqqqq", "zzz")));

    // direction matters for slice containment
    const CanonicalKey small = key(std::nullopt, "shortbody");
    const CanonicalKey large = key(std::nullopt, "averylongbodythatcontainsshortbodyinside");
    CHECK(compare_rows(small, large));
    CHECK_FALSE(compare_rows(large, small));

    CHECK_FALSE(compare_rows(CanonicalKey{}, key("x", std::nullopt)));
}

TEST_CASE("pattern automaton reports every occurrence") {
    const std::vector<std::string_view> patterns = {"he", "she", "his", "hers", "e"};
    PatternAutomaton automaton(patterns);
    std::multiset<std::size_t> hits;
    automaton.scan("ushers", [&](std::size_t id) { hits.insert(id); });
    CHECK(hits.count(0) == 1);  // he
    CHECK(hits.count(1) == 1);  // she
    CHECK(hits.count(2) == 0);
    CHECK(hits.count(3) == 1);  // hers
    CHECK(hits.count(4) == 1);  // e

    synth::Rng rng(5);
    for (int round = 0; round < 50; ++round) {
        std::vector<std::string> owned;
        for (int i = 0; i < 30; ++i) owned.push_back(canonicalize(synth::words(rng, 1 + i % 2, 20)));
        std::vector<std::string_view> views(owned.begin(), owned.end());
        PatternAutomaton a(views);
        const std::string text = canonicalize(synth::words(rng, 40, 20));
        std::vector<std::size_t> expected(owned.size(), 0);
        for (std::size_t p = 0; p < owned.size(); ++p) {
            for (std::size_t pos = text.find(owned[p]); pos != std::string::npos; pos = text.find(owned[p], pos + 1)) {
                ++expected[p];
            }
        }
        std::vector<std::size_t> got(owned.size(), 0);
        a.scan(text, [&](std::size_t id) { ++got[id]; });
        // duplicated patterns report each of their ids
        CHECK(got == expected);
    }
}

TEST_CASE("intersect_datasets against a copy of itself") {
    synth::Rng rng(9);
    const auto corpus = synth::overlap_corpus(rng, {});
    Dataset copy = corpus.a;
    copy.name = "A copy";
    // rows without comparable fields cannot match anything, even themselves
    std::size_t comparable = 0;
    for (const auto& doc : corpus.a.documents) comparable += row_shape(make_key(doc)) != RowShape::Neither ? 1 : 0;
    const IntersectionReport r = intersect_datasets(corpus.a, copy);
    CHECK(r.match_count == comparable);
    CHECK(r.match_count_b == comparable);

    Dataset clean = dataset("clean", {{std::string("First"), "one body here"}, {std::nullopt, "another body"}});
    Dataset clean_copy = clean;
    clean_copy.name = "clean copy";
    const IntersectionReport full = intersect_datasets(clean, clean_copy);
    CHECK(full.pct_of_a == 100.0);
    CHECK(full.pct_of_b == 100.0);
}

TEST_CASE("disjoint datasets") {
    const Dataset a = dataset("a", {{std::nullopt, "alpha beta"}, {std::string("Gamma"), "delta"}, {std::nullopt, "epsilon"}});
    const Dataset b = dataset("b", {{std::nullopt, "zeta eta"}, {std::string("Theta"), "iota"}, {std::nullopt, "kappa"}});
    const IntersectionReport r = intersect_datasets(a, b);
    CHECK(r.match_count == 0);
    CHECK(r.pct_of_a == 0.0);
    CHECK(r.pct_of_b == 0.0);
    CHECK(r.matched_pairs.empty());
}

TEST_CASE("three against two with one planted containment") {
    const Dataset b = dataset("b", {{std::nullopt, "The government shutdown ended on Friday."},
                                    {std::nullopt, "Completely unrelated sports coverage."}});
    const Dataset a = dataset("a", {{std::nullopt, "Earlier reports said: the government shutdown ended on Friday, "
                                                   "according to officials."},
                                    {std::nullopt, "Weather is mild today."},
                                    {std::nullopt, "Recipes for the weekend."}});
    // b:0's whole canonical body is its slice and sits inside a:0's body, so
    // only the (b, a) direction matches.
    const auto oracle_ab = oracle::brute_force_matches(a, b);
    const auto oracle_ba = oracle::brute_force_matches(b, a);
    CHECK(oracle_ab.empty());
    REQUIRE(oracle_ba.size() == 1);

    const IntersectionReport ba = intersect_datasets(b, a);
    CHECK(ba.match_count == 1);
    CHECK(ba.pct_of_a == doctest::Approx(50.0));
    CHECK(ba.pct_of_b == doctest::Approx(100.0 / 3.0));
    REQUIRE(ba.matched_pairs.size() == 1);
    CHECK(ba.matched_pairs[0] == std::pair<std::string, std::string>("b:0", "a:0"));
    CHECK(intersect_datasets(a, b).match_count == 0);
}

TEST_CASE("a row with several partners counts once") {
    const Dataset a = dataset("a", {{std::string("Same"), "x"}});
    const Dataset b = dataset("b", {{std::string("same!"), "y"}, {std::string("SAME"), "z"}, {std::string("other"), "w"}});
    const IntersectionReport r = intersect_datasets(a, b);
    CHECK(r.matched_pairs.size() == 2);
    CHECK(r.match_count == 1);
    CHECK(r.match_count_b == 2);
    CHECK(r.pct_of_a == 100.0);
    CHECK(r.pct_of_b == doctest::Approx(200.0 / 3.0));
}

TEST_CASE("indexed engine equals the brute-force oracle") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        synth::Rng rng(seed);
        synth::OverlapShape shape;
        shape.rows_a = 30 + seed * 7;
        shape.rows_b = 25 + seed * 11;
        shape.vocab = 20 + seed * 10;  // small vocabularies produce accidental matches too
        shape.body_words_min = 1;
        shape.body_words_max = 15;
        const auto c = synth::overlap_corpus(rng, shape);
        const auto ka = make_keyed(c.a);
        const auto kb = make_keyed(c.b);
        CHECK(find_matches(ka, kb) == oracle::brute_force_matches(c.a, c.b));
        CHECK(find_matches(kb, ka) == oracle::brute_force_matches(c.b, c.a));
    }
}

TEST_CASE("results do not depend on the thread count") {
    synth::Rng rng(21);
    synth::OverlapShape shape;
    shape.rows_a = 400;
    shape.rows_b = 300;
    const auto c = synth::overlap_corpus(rng, shape);
    const IntersectionReport one = intersect_datasets(c.a, c.b, OverlapOptions{1});
    for (unsigned threads : {2u, 3u, 8u}) {
        const IntersectionReport many = intersect_datasets(c.a, c.b, OverlapOptions{threads});
        CHECK(many.matched_pairs == one.matched_pairs);
        CHECK(many.match_count == one.match_count);
        CHECK(many.match_count_b == one.match_count_b);
    }
    CHECK(std::is_sorted(one.matched_pairs.begin(), one.matched_pairs.end()));
}

TEST_CASE("intersect_datasets needs distinct names") {
    const Dataset a = dataset("a", {{std::nullopt, "text"}});
    CHECK_THROWS_AS(intersect_datasets(a, a), Error);
}

TEST_CASE("intersection_matrix") {
    synth::Rng rng(4);
    const auto c1 = synth::overlap_corpus(rng, {60, 60, 20, 200, 5, 20});
    Dataset x = c1.a;
    Dataset y = c1.b;
    // z repeats some of y's rows: a duplicate chain x -> y -> z
    Dataset z{"C", Task::Leaning, {}};
    for (std::size_t i = 0; i < 20; ++i) {
        Document doc = y.documents[i * 3];
        doc.id = make_document_id("C", i);
        z.documents.push_back(doc);
    }
    const std::vector<Dataset> all = {x, y, z};
    const IntersectionMatrix m = intersection_matrix(all);
    CHECK(m.names == std::vector<std::string>{"A", "B", "C"});
    REQUIRE(m.reports.size() == 6);
    for (const auto& row : all) {
        for (const auto& col : all) {
            if (row.name == col.name) {
                CHECK(m.find(row.name, col.name) == nullptr);
                continue;
            }
            const IntersectionReport* r = m.find(row.name, col.name);
            REQUIRE(r != nullptr);
            const IntersectionReport direct = intersect_datasets(row, col);
            CHECK(r->matched_pairs == direct.matched_pairs);
            CHECK(r->pct_of_a == direct.pct_of_a);
            CHECK(r->pct_of_b == direct.pct_of_b);
        }
    }
    CHECK(m.find("B", "C")->match_count_b == 20);

    const std::vector<Dataset> two = {x, y};
    CHECK(intersection_matrix(two).reports.size() == 2);
    const std::vector<Dataset> one = {x};
    CHECK_THROWS_AS(intersection_matrix(one), Error);
    const std::vector<Dataset> dup = {x, x};
    CHECK_THROWS_AS(intersection_matrix(dup), Error);
}

TEST_CASE("flag_significant") {
    IntersectionReport r;
    r.pct_of_a = 80.2;
    r.pct_of_b = 66.5;
    CHECK(flag_significant(r));
    r.pct_of_a = 2;
    r.pct_of_b = 1;
    CHECK_FALSE(flag_significant(r));
    r.pct_of_a = 10;
    r.pct_of_b = 0;
    CHECK(flag_significant(r));
    r.pct_of_a = 0;
    r.pct_of_b = 9.999;
    CHECK_FALSE(flag_significant(r));
    CHECK(flag_significant(r, 5.0));
}

TEST_CASE("percentages stay in range") {
    synth::Rng rng(31);
    for (int i = 0; i < 10; ++i) {
        const auto c = synth::overlap_corpus(rng, {50, 80, 40, 60, 1, 10});
        const IntersectionReport r = intersect_datasets(c.a, c.b);
        CHECK(r.pct_of_a >= 0.0);
        CHECK(r.pct_of_a <= 100.0);
        CHECK(r.pct_of_b <= 100.0);
        CHECK(r.match_count <= r.size_a);
        if (r.match_count == 0) CHECK(r.pct_of_b == 0.0);
    }
}
